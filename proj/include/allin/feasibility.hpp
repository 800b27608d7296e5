#pragma once

// Exact feasibility for homogeneous constraint systems in (x, y, z).
//
// Every system is decided on the affine chart x + y + z = 1 (x = u, y = v,
// z = 1 - u - v). Homogeneous constraints are invariant under positive scaling,
// so a point with positive coordinate sum exists iff one exists on the chart.
// The two remaining variables are handled by Fourier-Motzkin elimination that
// carries strict/weak flags, so strict inequalities stay strict.

#include "allin/linear.hpp"

#include <optional>
#include <span>
#include <vector>

namespace allin {

/// p*u + q*v + r >= 0 (or > 0 when strict) on the chart.
struct HalfPlane {
  Int p, q, r;
  bool strict = false;
};

HalfPlane to_chart(const Ineq& c);

/// One side of the feasible u-interval after v has been eliminated.
struct UBound {
  bool finite = false;
  Rat value;
  bool strict = false;
};

/// A planar system with its v-elimination precomputed, so that testing the
/// system together with one or two extra half-planes costs O(m) instead of O(m^2).
class PlanarSystem {
 public:
  PlanarSystem() = default;
  explicit PlanarSystem(std::vector<HalfPlane> constraints);

  bool feasible() const;
  bool feasible_with(std::span<const HalfPlane> extra) const;
  /// Deterministic relative-interior point on the chart, or nullopt if infeasible.
  std::optional<Point> interior_point() const;

  const std::vector<HalfPlane>& constraints() const { return all_; }

 private:
  struct Bounds {
    UBound lo, hi;
    bool contradiction = false;
    void add(const Int& alpha, const Int& beta, bool strict);
    bool nonempty() const;
  };
  static void combine(Bounds& b, const HalfPlane& lower, const HalfPlane& upper);

  std::vector<HalfPlane> all_, lower_, upper_;
  Bounds bounds_;
};

PlanarSystem to_system(const Region& r);

/// True iff some point with x + y + z > 0 satisfies every constraint of r and ambient.
bool region_feasible(const Region& r, const Region& ambient);

/// A primitive integer point satisfying r and ambient, taken from the relative
/// interior of the feasible set; nullopt iff infeasible.
std::optional<Point> region_interior_point(const Region& r, const Region& ambient);

/// True iff every point of r (with x + y + z > 0) satisfies c.
bool region_implies(const Region& r, const Ineq& c);

}  // namespace allin
