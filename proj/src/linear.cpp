#include "allin/linear.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace allin {

namespace {

std::strong_ordering cmp(const Int& a, const Int& b) {
  int c = ::cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Int lcm_den(const Point& p) {
  Int l = 1;
  for (const Rat* v : {&p.x, &p.y, &p.z}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v->get_den_mpz_t());
  return l;
}

}  // namespace

Point Point::primitive() const {
  Int l = lcm_den(*this);
  Int xs = Rat(x * l).get_num(), ys = Rat(y * l).get_num(), zs = Rat(z * l).get_num();
  Int g;
  mpz_gcd(g.get_mpz_t(), xs.get_mpz_t(), ys.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), zs.get_mpz_t());
  if (g == 0) return *this;
  return {Rat(xs / g), Rat(ys / g), Rat(zs / g)};
}

std::string to_string(const Point& p) {
  return "(" + to_string(p.x) + ", " + to_string(p.y) + ", " + to_string(p.z) + ")";
}

int compare_projective(const Point& a, const Point& b) {
  Rat sa = a.sum(), sb = b.sum();
  for (auto [u, v] : {std::pair{&a.x, &b.x}, {&a.y, &b.y}, {&a.z, &b.z}}) {
    int c = ::cmp(*u * sb, *v * sa);
    if (c != 0) return c;
  }
  return 0;
}

LinForm LinForm::primitive() const {
  Int g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  if (g == 0 || g == 1) return *this;
  return {a_ / g, b_ / g, c_ / g};
}

int LinForm::orientation() const {
  for (const Int* v : {&a_, &b_, &c_})
    if (*v != 0) return ::sgn(*v);
  return 0;
}

LinForm LinForm::canonical() const {
  LinForm p = primitive();
  return p.orientation() < 0 ? -p : p;
}

std::strong_ordering operator<=>(const LinForm& f, const LinForm& g) {
  if (auto c = cmp(f.a_, g.a_); c != 0) return c;
  if (auto c = cmp(f.b_, g.b_); c != 0) return c;
  return cmp(f.c_, g.c_);
}

std::string to_string(const LinForm& f) {
  std::ostringstream os;
  bool first = true;
  const char names[3] = {'x', 'y', 'z'};
  const Int* cs[3] = {&f.a(), &f.b(), &f.c()};
  for (int i = 0; i < 3; ++i) {
    const Int& v = *cs[i];
    if (v == 0) continue;
    if (v < 0) os << '-';
    else if (!first) os << '+';
    Int mag = abs(v);
    if (mag != 1) os << mag.get_str();
    os << names[i];
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

Ineq::Ineq(LinForm form, Rel rel) : form_(form.primitive()), rel_(rel) {
  if (form_.is_zero()) throw std::invalid_argument("Ineq: zero form compares a constant against 0");
}

bool Ineq::sat(const Point& p) const {
  int s = sgn(form_.eval(p));
  return rel_ == Rel::Gt ? s > 0 : s >= 0;
}

Ineq Ineq::negation() const {
  return rel_ == Rel::Ge ? Ineq(-form_, Rel::Gt) : Ineq(-form_, Rel::Ge);
}

std::uint8_t Ineq::sign_mask() const {
  std::uint8_t own = strict() ? kSignPos : (kSignPos | kSignZero);
  if (side() > 0) return own;
  // Mirror the mask: a constraint on -h admits the opposite signs of h.
  std::uint8_t mirrored = 0;
  if (own & kSignPos) mirrored |= kSignNeg;
  if (own & kSignZero) mirrored |= kSignZero;
  return mirrored;
}

std::strong_ordering operator<=>(const Ineq& a, const Ineq& b) {
  if (auto c = a.form_ <=> b.form_; c != 0) return c;
  return a.rel_ <=> b.rel_;
}

std::string to_string(const Ineq& c) {
  return to_string(c.form()) + (c.strict() ? " > 0" : " >= 0");
}

Region::Region(std::vector<Ineq> constraints) : cs_(std::move(constraints)) {
  std::sort(cs_.begin(), cs_.end());
  cs_.erase(std::unique(cs_.begin(), cs_.end()), cs_.end());
}

Region Region::ordered_positive() {
  return Region({Ineq::gt(LinForm::x()), Ineq::gt(LinForm::y() - LinForm::x()),
                 Ineq::gt(LinForm::z() - LinForm::y())});
}

bool Region::sat(const Point& p) const {
  return std::all_of(cs_.begin(), cs_.end(), [&](const Ineq& c) { return c.sat(p); });
}

Region Region::with(const Ineq& c) const {
  auto it = std::lower_bound(cs_.begin(), cs_.end(), c);
  if (it != cs_.end() && *it == c) return *this;
  Region out = *this;
  out.cs_.insert(out.cs_.begin() + (it - cs_.begin()), c);
  return out;
}

bool Region::contains(const Ineq& c) const { return std::binary_search(cs_.begin(), cs_.end(), c); }

std::strong_ordering operator<=>(const Region& a, const Region& b) {
  return std::lexicographical_compare_three_way(a.cs_.begin(), a.cs_.end(), b.cs_.begin(),
                                                b.cs_.end());
}

Region region_intersect(const Region& r1, const Region& r2) {
  std::vector<Ineq> all = r1.constraints();
  all.insert(all.end(), r2.constraints().begin(), r2.constraints().end());
  return Region(std::move(all));
}

std::string to_string(const Region& r) {
  std::string out = "{";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ", ";
    out += to_string(r.constraints()[i]);
  }
  return out + "}";
}

}  // namespace allin
