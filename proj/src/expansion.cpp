#include "allin/expansion.hpp"

#include "allin/feasibility.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace allin {

std::string to_string(const Substitution& s) {
  return "(" + to_string(s.s1) + ", " + to_string(s.s2) + ", " + to_string(s.s3) + ")";
}

Rat level_weight(int level) { return pow(Rat(1, 6), static_cast<unsigned>(level)); }

Rat IndicatorTerm::coefficient() const { return sign * level_weight(level); }

Rat alpha(int n) {
  if (n < 1) throw std::invalid_argument("alpha: n must be >= 1");
  return pow(Rat(1, 2), static_cast<unsigned>(n)) * Rat(4, 5);
}

namespace {

using Triple = std::array<LinForm, 3>;

// Successor argument triples of h_n(a, b, c), in the order of the recursion:
// players (1,2), (1,3), (2,3) meet and the surviving configuration is passed on.
std::array<Triple, 6> successors(const Triple& t) {
  const auto& [a, b, c] = t;
  const Int two = 2;
  return {{{two * a, b - a, c},
           {two * a, b, c - a},
           {a - b, two * b, c},
           {a, two * b, c - b},
           {a - c, b, two * c},
           {a, b - c, two * c}}};
}

class Expander {
 public:
  Expander(const Region& ambient, const ExpandOptions& opts) : ambient_(ambient), opts_(opts) {}

  std::vector<IndicatorTerm> run(int n, const Substitution& sub) {
    std::vector<IndicatorTerm> out;
    descend(n, n, sub.args(), Region{}, out);
    std::sort(out.begin(), out.end(), [](const IndicatorTerm& a, const IndicatorTerm& b) {
      return a.region < b.region;
    });
    return out;
  }

 private:
  bool implied_by_ambient(const Ineq& c) {
    auto it = implied_.find(c);
    if (it != implied_.end()) return it->second;
    bool v = region_implies(ambient_, c);
    implied_.emplace(c, v);
    return v;
  }

  bool feasible(const Region& r) {
    auto it = feasible_.find(r);
    if (it != feasible_.end()) return it->second;
    bool v = region_feasible(r, ambient_);
    feasible_.emplace(r, v);
    return v;
  }

  // Adds c unless the ambient already forces it.
  Region add(const Region& acc, const Ineq& c) { return implied_by_ambient(c) ? acc : acc.with(c); }

  void descend(int n, int k, const Triple& args, Region acc, std::vector<IndicatorTerm>& out) {
    for (const LinForm& s : args) {
      if (s.is_zero()) return;  // [0 > 0] vanishes identically
      acc = add(acc, Ineq::gt(s));
    }
    if (opts_.prune && !feasible(acc)) return;
    if (k == 1) {
      for (const LinForm* other : {&args[1], &args[2]}) {
        LinForm gap = *other - args[0];
        Region r = gap.is_zero() ? acc : acc.with(Ineq::ge(gap));
        if (opts_.prune && !feasible(r)) continue;
        out.push_back({n, 1, std::move(r)});
      }
      return;
    }
    for (const Triple& next : successors(args)) descend(n, k - 1, next, acc, out);
  }

  Region ambient_;
  ExpandOptions opts_;
  std::map<Ineq, bool> implied_;
  std::map<Region, bool> feasible_;
};

PiecewiseSum combine_levels(int lo, int hi, const Substitution& s, const Substitution& t,
                            const Region& ambient, const ExpandOptions& opts) {
  if (lo < 1) throw std::invalid_argument("expansion level must be >= 1");
  PiecewiseSum ps{ambient, {}, 0};
  for (int sign : {1, -1}) {
    Expander ex(ambient, opts);
    for (int j = lo; j <= hi; ++j) {
      for (IndicatorTerm& term : ex.run(j, sign > 0 ? s : t)) {
        term.sign = sign;
        ps.terms.push_back(std::move(term));
      }
    }
  }
  return ps;
}

}  // namespace

std::vector<IndicatorTerm> expand_h(int n, const Substitution& sub, const Region& ambient,
                                    const ExpandOptions& opts) {
  if (n < 1) throw std::invalid_argument("expand_h: n must be >= 1");
  return Expander(ambient, opts).run(n, sub);
}

PiecewiseSum build_delta(int n, const Substitution& s, const Substitution& t, const Region& ambient,
                         const ExpandOptions& opts) {
  if (n < 1) throw std::invalid_argument("build_delta: n must be >= 1");
  return combine_levels(1, n, s, t, ambient, opts);
}

PiecewiseSum build_level_difference(int n, const Substitution& s, const Substitution& t,
                                    const Region& ambient, const ExpandOptions& opts) {
  return combine_levels(n, n, s, t, ambient, opts);
}

Rat evaluate(const PiecewiseSum& ps, const Point& p) {
  if (!ps.ambient.sat(p)) throw std::domain_error("evaluate: point " + to_string(p) + " is outside the ambient region");
  Rat total = ps.constant;
  for (const IndicatorTerm& term : ps.terms)
    if (term.region.sat(p)) total += term.coefficient();
  return total;
}

}  // namespace allin
