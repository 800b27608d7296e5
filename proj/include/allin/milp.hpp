#pragma once

// Mixed-integer models of the indicator sums and an exact branch-and-bound
// solver for them.
//
// Continuous variables are x, y, z. Each literal binary records whether a
// hyperplane h satisfies h >= 0 (weak literal) or h > 0 (strict literal); an
// indicator constraint owning the boundary uses the weak one, a constraint that
// excludes it uses the strict one, so h <= 0 and h < 0 are the complements.
// Each distinct region gets a binary linked to its literals, and the objective
// is a weighted sum of region binaries.

#include "allin/expansion.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace allin {

/// form + constant (>= or >) 0.
struct AffineIneq {
  LinForm form;
  Rat constant = 0;
  Rel rel = Rel::Ge;

  friend bool operator==(const AffineIneq&, const AffineIneq&) = default;
};

AffineIneq to_affine(const Ineq& c);
std::string to_string(const AffineIneq& c);

/// Replaces every f > 0 by f - epsilon >= 0; weak constraints pass through.
/// Throws std::invalid_argument for epsilon <= 0 or a nonzero constant.
std::vector<AffineIneq> eps_reduce(const std::vector<AffineIneq>& cs, const Rat& epsilon);

enum class LiteralKind : std::uint8_t { Weak, Strict };

struct Literal {
  LinForm hyperplane;  // canonical
  LiteralKind kind;
};

/// An ambient-free indicator constraint as a literal and the value it needs.
struct LiteralUse {
  std::size_t literal;
  bool value;

  friend bool operator==(const LiteralUse&, const LiteralUse&) = default;
  friend auto operator<=>(const LiteralUse&, const LiteralUse&) = default;
};

/// Region binary: 1 exactly when every listed literal takes its value. A
/// region without literals is an unconstrained binary.
struct RegionLink {
  std::vector<LiteralUse> literals;
  Rat coefficient;
};

/// sum coef * var >= rhs, enforced only when `when` (variable, value) holds.
struct Row {
  std::string name;
  std::vector<std::pair<std::size_t, Rat>> terms;
  Rat rhs;
  std::optional<std::pair<std::size_t, int>> when;
};

struct MilpModel {
  Region ambient;
  std::vector<Literal> literals;
  std::vector<RegionLink> regions;
  Rat offset = 0;
  bool cap = false;  // objective <= 0 is a constraint
  Rat epsilon = 1;
  std::vector<Row> rows;

  // Variable layout: x, y, z, literal binaries, region binaries.
  std::size_t literal_var(std::size_t i) const { return 3 + i; }
  std::size_t region_var(std::size_t r) const { return 3 + literals.size() + r; }
  std::size_t num_vars() const { return 3 + literals.size() + regions.size(); }
  std::string var_name(std::size_t v) const;
};

/// The constraint a literal stands for when it takes `value`, as a homogeneous inequality.
Ineq literal_constraint(const Literal& lit, bool value);

/// Literal and value expressing c.
LiteralUse literal_for(const Ineq& c, std::vector<Literal>& literals);

/// Model minimizing constant + sum of signed weighted indicators of ps.
MilpModel build_milp(const PiecewiseSum& ps, bool include_cap, const Rat& epsilon = 1);

/// Objective Delta_n - alpha_n; the cap row Delta_n - alpha_n <= 0 when include_cap.
MilpModel build_milp_full(int n, const Substitution& s, const Substitution& t, const Region& ambient,
                          bool include_cap, const ExpandOptions& opts = {});

/// Objective h_n(s) - h_n(t), no cap.
MilpModel build_milp_h_diff(int n, const Substitution& s, const Substitution& t,
                            const Region& ambient, const ExpandOptions& opts = {});

/// Binary values in variable order (literals, then regions).
using Assignment = std::vector<std::int8_t>;

Rat objective_value(const MilpModel& m, const Assignment& a);

/// Checks every row exactly. Returns the name of the first violated row, or nullopt.
std::optional<std::string> first_violation(const MilpModel& m, const Point& p, const Assignment& a);

/// Rows with each indicator replaced by a big-M term, M taken from the box
/// |x|, |y|, |z| <= box. Throws std::invalid_argument for box <= 0.
std::vector<Row> big_m_rows(const MilpModel& m, const Rat& box);

/// CPLEX LP text of the big-M formulation, for comparison with external solvers.
std::string export_lp(const MilpModel& m, const Rat& box);

enum class SolveStatus { Optimal, Infeasible, BoundOnly };

std::string to_string(SolveStatus s);

struct SolveOptions {
  std::optional<std::uint64_t> node_budget;
  int threads = 0;
  /// Nodes popped and evaluated together; fixed so results do not depend on threads.
  std::size_t batch = 32;
};

struct BnBResult {
  SolveStatus status = SolveStatus::Infeasible;
  Rat value;  // optimum, or a valid lower bound when BoundOnly
  std::optional<Point> witness;
  Assignment assignment;
  std::uint64_t node_count = 0;
  std::size_t open_nodes = 0;
};

BnBResult solve(const MilpModel& m, const SolveOptions& opts = {});

struct Decomposition {
  BnBResult previous;    // min Delta_{n-1} - alpha_{n-1}
  BnBResult level;       // min h_n(s) - h_n(t)
  Rat margin;            // previous + level + alpha_n, a lower bound on Delta_n - alpha_n
  Rat delta_bound;       // margin + alpha_n, a lower bound on Delta_n
};

/// Throws std::invalid_argument for n < 2. A part that is not solved to
/// optimality still yields a valid (weaker) bound from its lower bound.
Decomposition certify_decomposed(int n, const Substitution& s, const Substitution& t,
                                 const Region& ambient, const SolveOptions& opts = {});

}  // namespace allin
