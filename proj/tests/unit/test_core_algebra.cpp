#include "doctest.h"
#include "oracles.hpp"

#include "allin/feasibility.hpp"
#include "allin/parse.hpp"

#include <random>

using namespace allin;
using oracle::rat;

namespace {

const Region V = Region::ordered_positive();

Point pt(long x, long y, long z) { return {Rat(x), Rat(y), Rat(z)}; }

}  // namespace

TEST_CASE("eval_form") {
  CHECK(LinForm(1, -1, 0).eval(pt(4, 5, 6)) == -1);
  CHECK(LinForm(0, 0, 0).eval(pt(1, 2, 3)) == 0);
  CHECK(LinForm(2, 1, -1).eval(pt(4, 5, 6)) == 7);
  CHECK(LinForm(3, 0, -2).eval(Point{rat(1, 3), 0, rat(1, 2)}) == 0);
}

TEST_CASE("rationals stay exact") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000000, 1000000), q(1, 999983);
  for (int i = 0; i < 500; ++i) {
    Rat p = rat(d(rng), q(rng));
    Rat r = rat(d(rng), q(rng));
    CHECK((p + r) - r == p);
    if (r != 0) CHECK((p * r) / r == p);
  }
  CHECK(make_rat(6, -4) == rat(-3, 2));
  CHECK(to_string(make_rat(2, 6)) == "1/3");
  CHECK(to_string(make_rat(12, 4)) == "3");
  CHECK_THROWS_AS(make_rat(1, 0), std::domain_error);
  CHECK(parse_rat("-53/3240") == rat(-53, 3240));
  CHECK(parse_rat("+4/6") == rat(2, 3));
  CHECK(parse_rat("17") == 17);
  for (const char* bad : {"", "1/", "/2", "a", "1/-2", "1.5", "--1"}) CHECK_THROWS_AS(parse_rat(bad), std::invalid_argument);
  CHECK(pow(rat(1, 2), 4) == rat(1, 16));
}

TEST_CASE("zero form is rejected") {
  CHECK_THROWS_AS(Ineq::gt(LinForm(0, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(Ineq::ge(LinForm(0, 0, 0)), std::invalid_argument);
}

TEST_CASE("canonical hyperplanes") {
  Ineq a = Ineq::le(LinForm(2, -4, 0));  // 2x <= 4y
  CHECK(a.form() == LinForm(-1, 2, 0));
  CHECK(a.hyperplane() == LinForm(1, -2, 0));
  CHECK(a.side() == -1);
  CHECK(Ineq::ge(LinForm(3, -6, 0)).hyperplane() == a.hyperplane());
  CHECK(a.sign_mask() == (kSignNeg | kSignZero));
  CHECK(Ineq::lt(LinForm(1, -2, 0)).sign_mask() == kSignNeg);
  CHECK(Ineq::gt(LinForm(1, -2, 0)).sign_mask() == kSignPos);
  CHECK(Ineq::ge(LinForm(1, -2, 0)).negation() == Ineq::lt(LinForm(1, -2, 0)));
}

TEST_CASE("region_feasible examples") {
  CHECK_FALSE(region_feasible(Region({Ineq::gt(LinForm(1, -1, 0))}), V));
  Region r({Ineq::le(LinForm(1, 1, -1))});
  CHECK(region_feasible(r, V));
  CHECK(r.sat(pt(1, 2, 4)));
  CHECK(V.sat(pt(1, 2, 4)));
  CHECK_FALSE(region_feasible(Region({Ineq::ge(LinForm(1, -1, 0)), Ineq::gt(LinForm(-1, 1, 0))}), Region()));
}

TEST_CASE("region_interior_point examples") {
  auto p = region_interior_point(Region(), V);
  REQUIRE(p);
  CHECK(V.sat(*p));
  CHECK_FALSE(region_interior_point(Region({Ineq::gt(LinForm(1, -1, 0))}), V));
  Region r({Ineq::le(LinForm(3, -1, 0))});
  auto q = region_interior_point(r, V);
  REQUIRE(q);
  CHECK(r.sat(*q));
  CHECK(V.sat(*q));
  CHECK(*q == q->primitive());
  CHECK(region_interior_point(r, V) == q);
}

TEST_CASE("region_intersect examples") {
  Region a({Ineq::gt(LinForm(1, -1, 0))});
  CHECK(region_intersect(a, a) == a);
  CHECK(region_intersect(a, a).size() == 1);
  CHECK(region_intersect(Region(), V) == V);
  Region both = region_intersect(Region({Ineq::le(LinForm(1, -1, 0))}), Region({Ineq::le(LinForm(0, 1, -1) + LinForm(-1, 0, 1))}));
  CHECK(both.size() == 2);
  CHECK(region_feasible(both, Region()));
  auto p = region_interior_point(both, Region({Ineq::gt(LinForm::x()), Ineq::gt(LinForm::y()), Ineq::gt(LinForm::z())}));
  REQUIRE(p);
  CHECK(p->x == p->y);
  CHECK(both.sat(*p));
}

TEST_CASE("region_implies") {
  CHECK(region_implies(V, Ineq::gt(LinForm::z())));
  CHECK(region_implies(V, Ineq::gt(LinForm(0, 0, 1) - LinForm(1, 0, 0))));
  CHECK(region_implies(V, Ineq::ge(LinForm(1, -2, 0).operator-())));  // 2y >= x
  CHECK_FALSE(region_implies(V, Ineq::ge(LinForm(2, -1, 0))));
}

TEST_CASE("feasibility agrees with the sign-pattern oracle") {
  std::mt19937_64 rng(2024);
  const Region pos({Ineq::gt(LinForm::x()), Ineq::gt(LinForm::y()), Ineq::gt(LinForm::z())});
  for (const Region& amb : {pos, V}) {
    for (int trial = 0; trial < 40; ++trial) {
      int k = 1 + trial % 4;
      std::vector<LinForm> forms;
      for (int i = 0; i < k; ++i) forms.push_back(oracle::random_form(rng, 4));
      auto truth = oracle::brute_sign_patterns(forms, amb);
      int patterns = 1;
      for (int i = 0; i < k; ++i) patterns *= 3;
      for (int code = 0; code < patterns; ++code) {
        std::vector<Ineq> cs;
        std::vector<std::int8_t> signs;
        for (int i = 0, c = code; i < k; ++i, c /= 3) {
          int s = c % 3 - 1;
          signs.push_back(static_cast<std::int8_t>(s));
          if (s > 0) cs.push_back(Ineq::gt(forms[i]));
          else if (s < 0) cs.push_back(Ineq::lt(forms[i]));
          else {
            cs.push_back(Ineq::ge(forms[i]));
            cs.push_back(Ineq::le(forms[i]));
          }
        }
        Region r(cs);
        bool expect = truth.count(signs) > 0;
        CHECK(region_feasible(r, amb) == expect);
        auto p = region_interior_point(r, amb);
        CHECK(p.has_value() == expect);
        if (p) {
          CHECK(r.sat(*p));
          CHECK(amb.sat(*p));
          for (const Rat& k2 : {rat(2, 1), rat(1, 3), rat(7, 5)}) CHECK(r.sat(p->scaled(k2)));
        }
      }
    }
  }
}

TEST_CASE("planar system with extra half-planes") {
  PlanarSystem sys = to_system(V);
  CHECK(sys.feasible());
  HalfPlane bad = to_chart(Ineq::gt(LinForm(1, -1, 0)));
  HalfPlane ok = to_chart(Ineq::ge(LinForm(-3, 1, 0)));
  CHECK_FALSE(sys.feasible_with(std::span<const HalfPlane>(&bad, 1)));
  CHECK(sys.feasible_with(std::span<const HalfPlane>(&ok, 1)));
}

TEST_CASE("parser") {
  CHECK(parse_form("2x - 3y + z") == LinForm(2, -3, 1));
  CHECK(parse_form(" -x+y ") == LinForm(-1, 1, 0));
  CHECK(parse_substitution("(y, x, z)") == Substitution::swap12());
  CHECK(parse_substitution("x,y,z") == Substitution::identity());
  CHECK(parse_region("0 < x < y < z") == V);
  CHECK(parse_region("x > 0; y - x > 0, z - y > 0") == V);
  CHECK(parse_region("x + 1 <= y + 1") == Region({Ineq::le(LinForm(1, -1, 0))}));
  CHECK(parse_region(format_region(V)) == V);
  try {
    parse_region("x < y + 1");
    FAIL("inhomogeneous constraint accepted");
  } catch (const ParseError& e) {
    CHECK(e.position() == 8);
  }
  CHECK_THROWS_AS(parse_form("2w"), ParseError);
  CHECK_THROWS_AS(parse_substitution("(x, y)"), ParseError);
}
