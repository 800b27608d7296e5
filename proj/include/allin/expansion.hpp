#pragma once

// Unrolling of the elimination-round probabilities h_n into signed sums of
// region indicators, and pointwise evaluation of those sums.
//
//   h_1(a,b,c) = [a,b,c > 0] / 6 * ([a <= b] + [a <= c])
//   h_n(a,b,c) = [a,b,c > 0] / 6 * sum over the six successor triples of h_{n-1}
//
// Each root-to-leaf path of the recursion is one indicator term of weight 6^-n.

#include "allin/linear.hpp"

#include <array>
#include <string>
#include <vector>

namespace allin {

/// The three stack expressions fed to h_n.
struct Substitution {
  LinForm s1, s2, s3;

  static Substitution identity() { return {LinForm::x(), LinForm::y(), LinForm::z()}; }
  /// (y, x, z): players 1 and 2 trade stacks.
  static Substitution swap12() { return {LinForm::y(), LinForm::x(), LinForm::z()}; }

  std::array<LinForm, 3> args() const { return {s1, s2, s3}; }
  Point apply(const Point& p) const { return {s1.eval(p), s2.eval(p), s3.eval(p)}; }

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

std::string to_string(const Substitution& s);

struct IndicatorTerm {
  int level = 1;
  int sign = 1;
  Region region;

  /// sign * 6^-level
  Rat coefficient() const;

  friend bool operator==(const IndicatorTerm&, const IndicatorTerm&) = default;
};

/// constant + sum of sign * 6^-level * [p in region] over the terms, defined on ambient.
struct PiecewiseSum {
  Region ambient;
  std::vector<IndicatorTerm> terms;
  Rat constant = 0;
};

struct ExpandOptions {
  /// Drop paths whose accumulated region is infeasible within the ambient.
  bool prune = true;
};

/// Weight 6^-level of a single indicator at that level.
Rat level_weight(int level);

/// (1/2)^n * 4/5, the most the unresolved tail after round n can contribute.
Rat alpha(int n);

/// Indicator terms of h_n(sub) restricted to ambient, sorted by region.
/// Throws std::invalid_argument for n < 1.
std::vector<IndicatorTerm> expand_h(int n, const Substitution& sub, const Region& ambient,
                                    const ExpandOptions& opts = {});

/// sum_{j<=n} h_j(s) - sum_{j<=n} h_j(t).
PiecewiseSum build_delta(int n, const Substitution& s, const Substitution& t, const Region& ambient,
                         const ExpandOptions& opts = {});

/// h_n(s) - h_n(t) alone.
PiecewiseSum build_level_difference(int n, const Substitution& s, const Substitution& t,
                                    const Region& ambient, const ExpandOptions& opts = {});

/// Exact value at p. Throws std::domain_error if p is outside the ambient.
Rat evaluate(const PiecewiseSum& ps, const Point& p);

}  // namespace allin
