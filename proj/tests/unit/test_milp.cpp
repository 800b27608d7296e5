#include "doctest.h"
#include "oracles.hpp"

#include "allin/arrangement.hpp"
#include "allin/feasibility.hpp"
#include "allin/milp.hpp"

#include <map>
#include <random>

using namespace allin;
using oracle::rat;

namespace {

const Region V = Region::ordered_positive();
const Substitution kXYZ = Substitution::identity();
const Substitution kYXZ = Substitution::swap12();
const Substitution kYZX{LinForm::y(), LinForm::z(), LinForm::x()};
const Substitution kZYX{LinForm::z(), LinForm::y(), LinForm::x()};

bool has_row(const MilpModel& m, const std::string& name) {
  for (const auto& r : m.rows)
    if (r.name == name) return true;
  return false;
}

// Assignment that the point p induces: literals by their constraint, regions by conjunction.
Assignment induced(const MilpModel& m, const Point& p) {
  Assignment a(m.num_vars() - 3, 0);
  for (std::size_t i = 0; i < m.literals.size(); ++i) a[i] = literal_constraint(m.literals[i], true).sat(p);
  for (std::size_t k = 0; k < m.regions.size(); ++k) {
    bool all = true;
    for (const auto& u : m.regions[k].literals) all = all && (a[u.literal] == u.value);
    a[m.literals.size() + k] = all;
  }
  return a;
}

// Smallest power-of-two multiple of p meeting every strict constraint with margin 1.
Point lift(const MilpModel& m, Point p) {
  for (;;) {
    Assignment a = induced(m, p);
    if (!first_violation(m, p, a)) return p;
    p = p.scaled(2);
  }
}

}  // namespace

TEST_CASE("eps_reduce") {
  auto a = eps_reduce({to_affine(Ineq::gt(LinForm(1, -1, 0)))}, 1);
  REQUIRE(a.size() == 1);
  CHECK(a[0] == AffineIneq{LinForm(1, -1, 0), -1, Rel::Ge});
  auto b = eps_reduce({to_affine(Ineq::le(LinForm(1, -1, 0)))}, 1);
  CHECK(b[0] == to_affine(Ineq::le(LinForm(1, -1, 0))));
  std::vector<AffineIneq> v;
  for (const auto& c : V.constraints()) v.push_back(to_affine(c));
  std::vector<AffineIneq> expect;
  for (const auto& c : V.constraints()) expect.push_back({c.form(), -1, Rel::Ge});
  CHECK(eps_reduce(v, 1) == expect);
  CHECK_THROWS_AS(eps_reduce(v, 0), std::invalid_argument);
  CHECK_THROWS_AS(eps_reduce({AffineIneq{LinForm(1, 0, 0), 3, Rel::Ge}}, 1), std::invalid_argument);
  CHECK(to_string(a[0]) == "x-y - 1 >= 0");
}

TEST_CASE("literals and complements") {
  std::vector<Literal> lits;
  LiteralUse ge = literal_for(Ineq::ge(LinForm(1, -1, 0)), lits);
  LiteralUse gt = literal_for(Ineq::gt(LinForm(1, -1, 0)), lits);
  LiteralUse le = literal_for(Ineq::le(LinForm(1, -1, 0)), lits);  // y - x >= 0, the complement of x - y > 0
  LiteralUse lt = literal_for(Ineq::lt(LinForm(1, -1, 0)), lits);  // the complement of x - y >= 0
  CHECK(lits.size() == 2);
  CHECK(ge.literal == lt.literal);
  CHECK(gt.literal == le.literal);
  CHECK(ge.value);
  CHECK_FALSE(lt.value);
  CHECK(gt.value);
  CHECK_FALSE(le.value);
  CHECK(literal_constraint(lits[ge.literal], false) == Ineq::lt(LinForm(1, -1, 0)));
  CHECK(literal_constraint(lits[gt.literal], false) == Ineq::le(LinForm(1, -1, 0)));
  CHECK(literal_for(Ineq::ge(LinForm(2, -2, 0)), lits) == ge);
}

TEST_CASE("n = 1 model") {
  MilpModel m = build_milp_full(1, kXYZ, kYXZ, V, false, {false});
  REQUIRE(m.regions.size() == 4);
  int pos = 0, neg = 0;
  for (const auto& r : m.regions) {
    CHECK(abs(r.coefficient) == rat(1, 6));
    (r.coefficient > 0 ? pos : neg)++;
  }
  CHECK(pos == 2);
  CHECK(neg == 2);
  std::set<LinForm> planes;
  for (const auto& l : m.literals) planes.insert(l.hyperplane);
  CHECK(planes == std::set<LinForm>{LinForm(1, -1, 0), LinForm(1, 0, -1), LinForm(0, 1, -1)});
  CHECK(m.offset == -alpha(1));
  CHECK_FALSE(has_row(m, "cap"));
  CHECK(has_row(build_milp_full(1, kXYZ, kYXZ, V, true), "cap"));
  BnBResult r = solve(m);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.value == rat(1, 6) - alpha(1));
}

TEST_CASE("region count bound") {
  for (int n = 1; n <= 4; ++n) {
    long six = 1;
    for (int i = 0; i < n; ++i) six *= 6;
    MilpModel m = build_milp_full(n, kXYZ, kYXZ, V, true);
    CHECK(m.regions.size() * 5 <= static_cast<std::size_t>(12 * (six - 1)));
  }
}

TEST_CASE("shared literals and conjunction linking") {
  MilpModel m = build_milp_full(2, kXYZ, kYXZ, V, false, {false});
  // Each (hyperplane, kind) appears once.
  for (std::size_t i = 0; i + 1 < m.literals.size(); ++i)
    CHECK_FALSE((m.literals[i].hyperplane == m.literals[i + 1].hyperplane && m.literals[i].kind == m.literals[i + 1].kind));
  // Every region constraint maps back to the literal the model already holds.
  PiecewiseSum ps = build_delta(2, kXYZ, kYXZ, V, {false});
  std::vector<Literal> copy = m.literals;
  for (const auto& t : ps.terms)
    for (const auto& c : t.region.constraints()) {
      LiteralUse u = literal_for(c, copy);
      CHECK(copy.size() == m.literals.size());
      CHECK(literal_constraint(m.literals[u.literal], u.value) == c);
    }

  // Feasible integral assignments: literal and region values are forced by the point.
  std::mt19937_64 rng(8);
  for (int i = 0; i < 30; ++i) {
    Point p = lift(m, oracle::random_v_point(rng).primitive());
    Assignment a = induced(m, p);
    CHECK_FALSE(first_violation(m, p, a));
    for (std::size_t v = 0; v < a.size(); ++v) {
      Assignment b = a;
      b[v] ^= 1;
      CHECK(first_violation(m, p, b));
    }
  }
}

TEST_CASE("solver values") {
  CHECK(solve(build_milp_h_diff(4, kXYZ, kYXZ, V)).value == rat(-11, 648));
  CHECK(solve(build_milp_h_diff(4, kYZX, kZYX, V)).value == rat(-7, 324));
  BnBResult same = solve(build_milp_h_diff(3, kXYZ, kXYZ, V));
  CHECK(same.status == SolveStatus::Optimal);
  CHECK(same.value == 0);

  BnBResult capped3 = solve(build_milp_full(3, kXYZ, kYXZ, V, true));
  CHECK(capped3.status == SolveStatus::Optimal);
  CHECK(capped3.value == rat(-1, 60));
  REQUIRE(capped3.witness);
  CHECK(V.sat(*capped3.witness));
  CHECK(evaluate(build_delta(3, kXYZ, kYXZ, V), *capped3.witness) - alpha(3) == rat(-1, 60));

  CHECK(solve(build_milp_full(4, kXYZ, kYXZ, V, true)).status == SolveStatus::Infeasible);
  CHECK(solve(build_milp_full(4, kYZX, kZYX, V, true)).status == SolveStatus::Infeasible);

  MilpModel lone;
  lone.regions.push_back({{}, 1});
  BnBResult r = solve(lone);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.value == 0);
  REQUIRE(r.assignment.size() == 1);
  CHECK(r.assignment[0] == 0);
}

TEST_CASE("solver agrees with the arrangement oracle") {
  for (auto [s, t] : {std::pair{kXYZ, kYXZ}, std::pair{kYZX, kZYX}}) {
    for (int n = 1; n <= 3; ++n) {
      PiecewiseSum d = build_delta(n, s, t, V);
      d.constant = -alpha(n);
      BnBResult r = solve(build_milp_full(n, s, t, V, false));
      CHECK(r.status == SolveStatus::Optimal);
      CHECK(r.value == global_min(d).min_value);
      REQUIRE(r.witness);
      CHECK(evaluate(d, *r.witness) == r.value);
      MilpModel m = build_milp_full(n, s, t, V, false);
      CHECK_FALSE(first_violation(m, *r.witness, r.assignment));
      CHECK(objective_value(m, r.assignment) == r.value);
    }
  }
}

TEST_CASE("node budgets give valid bounds") {
  MilpModel m = build_milp_h_diff(4, kXYZ, kYXZ, V);
  BnBResult full = solve(m);
  REQUIRE(full.status == SolveStatus::Optimal);
  for (std::uint64_t budget : {std::uint64_t{1}, full.node_count / 10, full.node_count / 2}) {
    if (budget == 0) continue;
    SolveOptions o;
    o.node_budget = budget;
    BnBResult r = solve(m, o);
    CHECK(r.value <= full.value);
    CHECK(r.node_count <= budget);
    if (r.status == SolveStatus::BoundOnly) CHECK(r.open_nodes > 0);
  }
  SolveOptions four;
  four.threads = 4;
  BnBResult again = solve(m, four);
  CHECK(again.value == full.value);
  CHECK(again.node_count == full.node_count);
  CHECK(again.witness == full.witness);
}

TEST_CASE("decomposition") {
  Decomposition a = certify_decomposed(4, kXYZ, kYXZ, V);
  CHECK(a.previous.value == rat(-1, 60));
  CHECK(a.level.value == rat(-11, 648));
  CHECK(a.margin == rat(53, 3240));
  CHECK(a.delta_bound == rat(43, 648));
  Decomposition b = certify_decomposed(4, kYZX, kZYX, V);
  CHECK(b.previous.value == rat(-23, 1080));
  CHECK(b.level.value == rat(-7, 324));
  CHECK(b.margin == rat(23, 3240));
  CHECK(b.delta_bound == rat(37, 648));
  Decomposition c = certify_decomposed(4, kXYZ, kXYZ, V);
  CHECK(c.margin == -alpha(3) + 0 + alpha(4));
  CHECK(c.previous.value == -alpha(3));
  CHECK(c.level.value == 0);
  CHECK_THROWS_AS(certify_decomposed(1, kXYZ, kYXZ, V), std::invalid_argument);
}

TEST_CASE("big-M rows and LP export") {
  MilpModel m = build_milp_full(2, kXYZ, kYXZ, V, false);
  BnBResult r = solve(m);
  REQUIRE(r.witness);
  Point p = *r.witness;
  Rat box = std::max({abs(p.x), abs(p.y), abs(p.z)});
  auto rows = big_m_rows(m, box);
  for (const auto& row : rows) {
    CHECK_FALSE(row.when);
    Rat lhs = 0;
    for (const auto& [v, c] : row.terms) lhs += c * (v == 0 ? p.x : v == 1 ? p.y : v == 2 ? p.z : Rat(r.assignment[v - 3]));
    CHECK(lhs >= row.rhs);
  }
  CHECK_THROWS_AS(big_m_rows(m, 0), std::invalid_argument);
  std::string lp = export_lp(m, 1000);
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("Binaries") != std::string::npos);
  CHECK(export_lp(build_milp_full(2, kXYZ, kYXZ, V, true), 1000).find(" cap:") != std::string::npos);
  CHECK_THROWS_AS(export_lp(m, rat(1, 2)), std::invalid_argument);
  CHECK(to_string(SolveStatus::BoundOnly) == "bound-only");
}
