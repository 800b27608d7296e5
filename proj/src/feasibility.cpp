#include "allin/feasibility.hpp"

namespace allin {

HalfPlane to_chart(const Ineq& c) {
  const LinForm& f = c.form();
  return {f.a() - f.c(), f.b() - f.c(), f.c(), c.strict()};
}

void PlanarSystem::Bounds::add(const Int& alpha, const Int& beta, bool strict) {
  if (alpha == 0) {
    int s = ::sgn(beta);
    if (s < 0 || (s == 0 && strict)) contradiction = true;
    return;
  }
  Rat v = make_rat(-beta, alpha);
  if (alpha > 0) {
    if (!lo.finite || v > lo.value || (v == lo.value && strict && !lo.strict)) lo = {true, v, strict};
  } else {
    if (!hi.finite || v < hi.value || (v == hi.value && strict && !hi.strict)) hi = {true, v, strict};
  }
}

bool PlanarSystem::Bounds::nonempty() const {
  if (contradiction) return false;
  if (!lo.finite || !hi.finite) return true;
  int c = ::cmp(lo.value, hi.value);
  return c < 0 || (c == 0 && !lo.strict && !hi.strict);
}

// Positive combination of a lower bound on v (q > 0) and an upper bound (q < 0)
// that cancels v.
void PlanarSystem::combine(Bounds& b, const HalfPlane& lower, const HalfPlane& upper) {
  Int alpha = lower.q * upper.p - upper.q * lower.p;
  Int beta = lower.q * upper.r - upper.q * lower.r;
  b.add(alpha, beta, lower.strict || upper.strict);
}

PlanarSystem::PlanarSystem(std::vector<HalfPlane> constraints) : all_(std::move(constraints)) {
  for (const HalfPlane& h : all_) {
    int s = ::sgn(h.q);
    if (s > 0) lower_.push_back(h);
    else if (s < 0) upper_.push_back(h);
    else bounds_.add(h.p, h.r, h.strict);
  }
  for (const HalfPlane& l : lower_)
    for (const HalfPlane& u : upper_) combine(bounds_, l, u);
}

bool PlanarSystem::feasible() const { return bounds_.nonempty(); }

bool PlanarSystem::feasible_with(std::span<const HalfPlane> extra) const {
  if (bounds_.contradiction) return false;
  Bounds b = bounds_;
  for (std::size_t i = 0; i < extra.size(); ++i) {
    const HalfPlane& e = extra[i];
    int s = ::sgn(e.q);
    if (s == 0) {
      b.add(e.p, e.r, e.strict);
    } else if (s > 0) {
      for (const HalfPlane& u : upper_) combine(b, e, u);
    } else {
      for (const HalfPlane& l : lower_) combine(b, l, e);
    }
    for (std::size_t j = i + 1; j < extra.size(); ++j) {
      const HalfPlane& f = extra[j];
      if (s > 0 && f.q < 0) combine(b, e, f);
      else if (s < 0 && f.q > 0) combine(b, f, e);
    }
    if (b.contradiction) return false;
  }
  return b.nonempty();
}

namespace {

Rat pick(const UBound& lo, const UBound& hi) {
  if (lo.finite && hi.finite) {
    if (lo.value == hi.value) return lo.value;
    return (lo.value + hi.value) / 2;
  }
  if (lo.finite) return lo.value + 1;
  if (hi.finite) return hi.value - 1;
  return 0;
}

}  // namespace

std::optional<Point> PlanarSystem::interior_point() const {
  if (!feasible()) return std::nullopt;
  Rat u = pick(bounds_.lo, bounds_.hi);
  UBound lo, hi;
  for (const HalfPlane& h : all_) {
    if (h.q == 0) continue;
    Rat v = (-Rat(h.r) - Rat(h.p) * u) / Rat(h.q);
    UBound& b = h.q > 0 ? lo : hi;
    int c = b.finite ? ::cmp(v, b.value) : 0;
    if (!b.finite || (h.q > 0 ? c > 0 : c < 0)) b = {true, v, h.strict};
    else if (c == 0) b.strict = b.strict || h.strict;
  }
  Rat v = pick(lo, hi);
  return Point(u, v, 1 - u - v);
}

PlanarSystem to_system(const Region& r) {
  std::vector<HalfPlane> hs;
  hs.reserve(r.size());
  for (const Ineq& c : r.constraints()) hs.push_back(to_chart(c));
  return PlanarSystem(std::move(hs));
}

bool region_feasible(const Region& r, const Region& ambient) {
  return to_system(region_intersect(r, ambient)).feasible();
}

std::optional<Point> region_interior_point(const Region& r, const Region& ambient) {
  auto p = to_system(region_intersect(r, ambient)).interior_point();
  if (!p) return std::nullopt;
  return p->primitive();
}

bool region_implies(const Region& r, const Ineq& c) {
  return !region_feasible(r.with(c.negation()), Region{});
}

}  // namespace allin
