#pragma once

// Homogeneous linear forms over (x, y, z), sign constraints against zero and
// conjunctions of those constraints.

#include "allin/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace allin {

struct Point {
  Rat x, y, z;

  Point() = default;
  Point(Rat x_, Rat y_, Rat z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  Point scaled(const Rat& k) const { return {x * k, y * k, z * k}; }
  Rat sum() const { return x + y + z; }

  /// Positive multiple with coprime integer coordinates. Only meaningful
  /// for points with x + y + z > 0, which is the domain everything here lives on.
  Point primitive() const;

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

std::string to_string(const Point& p);

/// Compares the points after projecting onto x + y + z = 1, so positive
/// multiples of one point compare equal.
int compare_projective(const Point& a, const Point& b);

/// a*x + b*y + c*z with integer coefficients.
class LinForm {
 public:
  LinForm() = default;
  LinForm(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

  static LinForm x() { return {1, 0, 0}; }
  static LinForm y() { return {0, 1, 0}; }
  static LinForm z() { return {0, 0, 1}; }

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }

  bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0; }

  Rat eval(const Point& p) const { return a_ * p.x + b_ * p.y + c_ * p.z; }
  Int eval(const Int& x, const Int& y, const Int& z) const { return a_ * x + b_ * y + c_ * z; }

  /// Coefficients divided by their gcd; orientation kept.
  LinForm primitive() const;
  /// Primitive with the first nonzero coefficient positive. Identifies the hyperplane.
  LinForm canonical() const;
  /// +1 if the first nonzero coefficient is positive, -1 if negative, 0 for the zero form.
  int orientation() const;

  LinForm operator-() const { return {-a_, -b_, -c_}; }
  friend LinForm operator+(const LinForm& f, const LinForm& g) {
    return {f.a_ + g.a_, f.b_ + g.b_, f.c_ + g.c_};
  }
  friend LinForm operator-(const LinForm& f, const LinForm& g) {
    return {f.a_ - g.a_, f.b_ - g.b_, f.c_ - g.c_};
  }
  friend LinForm operator*(const Int& k, const LinForm& f) { return {k * f.a_, k * f.b_, k * f.c_}; }

  friend bool operator==(const LinForm& f, const LinForm& g) {
    return f.a_ == g.a_ && f.b_ == g.b_ && f.c_ == g.c_;
  }
  friend std::strong_ordering operator<=>(const LinForm& f, const LinForm& g);

 private:
  Int a_ = 0, b_ = 0, c_ = 0;
};

/// Renders like "2x-y+z"; the zero form renders as "0".
std::string to_string(const LinForm& f);

enum class Rel : std::uint8_t { Ge, Gt };

/// Sign masks over a hyperplane's canonical form.
inline constexpr std::uint8_t kSignNeg = 1, kSignZero = 2, kSignPos = 4;

inline std::uint8_t sign_bit(int s) {
  return s < 0 ? kSignNeg : (s == 0 ? kSignZero : kSignPos);
}

/// form >= 0 or form > 0. Forms written with <= or < are stored negated, and the
/// form is kept primitive. The zero form is rejected since it is a constant.
class Ineq {
 public:
  Ineq(LinForm form, Rel rel);

  static Ineq ge(const LinForm& f) { return {f, Rel::Ge}; }
  static Ineq gt(const LinForm& f) { return {f, Rel::Gt}; }
  static Ineq le(const LinForm& f) { return {-f, Rel::Ge}; }
  static Ineq lt(const LinForm& f) { return {-f, Rel::Gt}; }

  const LinForm& form() const { return form_; }
  Rel rel() const { return rel_; }
  bool strict() const { return rel_ == Rel::Gt; }

  bool sat(const Point& p) const;
  Ineq negation() const;

  LinForm hyperplane() const { return form_.canonical(); }
  /// +1 when form() equals the canonical hyperplane, -1 when it is its negative.
  int side() const { return form_.orientation(); }
  /// Signs of the canonical hyperplane form this constraint admits.
  std::uint8_t sign_mask() const;

  friend bool operator==(const Ineq&, const Ineq&) = default;
  friend std::strong_ordering operator<=>(const Ineq& a, const Ineq& b);

 private:
  LinForm form_;
  Rel rel_;
};

std::string to_string(const Ineq& c);

/// Conjunction of constraints, kept sorted and deduplicated.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Ineq> constraints);

  /// 0 < x < y < z.
  static Region ordered_positive();

  const std::vector<Ineq>& constraints() const { return cs_; }
  std::size_t size() const { return cs_.size(); }
  bool empty() const { return cs_.empty(); }

  bool sat(const Point& p) const;
  Region with(const Ineq& c) const;
  bool contains(const Ineq& c) const;

  friend bool operator==(const Region&, const Region&) = default;
  friend std::strong_ordering operator<=>(const Region& a, const Region& b);

 private:
  std::vector<Ineq> cs_;
};

Region region_intersect(const Region& r1, const Region& r2);

std::string to_string(const Region& r);

}  // namespace allin
