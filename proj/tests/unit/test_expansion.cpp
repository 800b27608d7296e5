#include "doctest.h"
#include "oracles.hpp"

#include "allin/feasibility.hpp"
#include "allin/simulator.hpp"

#include <random>
#include <set>

using namespace allin;
using oracle::rat;

namespace {

const Region V = Region::ordered_positive();
const Substitution kYZX{LinForm::y(), LinForm::z(), LinForm::x()};
const Substitution kZYX{LinForm::z(), LinForm::y(), LinForm::x()};

Point pt(long x, long y, long z) { return {Rat(x), Rat(y), Rat(z)}; }

// The h_1 comparisons of a term are its weak constraints; positivity is strict.
std::set<Ineq> weak_constraints(const std::vector<IndicatorTerm>& terms) {
  std::set<Ineq> out;
  for (const auto& t : terms)
    for (const auto& c : t.region.constraints())
      if (!c.strict()) out.insert(c);
  return out;
}

int ind(bool b) { return b ? 1 : 0; }

// Closed forms of h_2 on V, written out by hand.
Rat h2_xyz(const Rat& x, const Rat& y, const Rat& z) {
  int s = ind(x <= 2 * y) + ind(x <= z - y) + ind(2 * x <= y - x) + ind(2 * x <= z) + ind(2 * x <= y) +
          ind(2 * x <= z - x);
  return rat(s, 36);
}

Rat h2_yxz(const Rat& x, const Rat& y, const Rat& z) {
  int s = ind(2 * y <= x) + ind(2 * y <= z - y) + ind(y - x <= 2 * x) + ind(y - x <= z) + ind(y <= 2 * x) +
          ind(y <= z - x);
  return rat(s, 36);
}

}  // namespace

TEST_CASE("expand_h level 1") {
  auto terms = expand_h(1, Substitution::identity(), V);
  REQUIRE(terms.size() == 2);
  std::set<Region> regions{terms[0].region, terms[1].region};
  CHECK(regions == std::set<Region>{Region({Ineq::le(LinForm(1, -1, 0))}), Region({Ineq::le(LinForm(1, 0, -1))})});
  for (const auto& t : terms) {
    CHECK(t.level == 1);
    CHECK(t.sign == 1);
    CHECK(t.coefficient() == rat(1, 6));
  }
  CHECK_THROWS_AS(expand_h(0, Substitution::identity(), V), std::invalid_argument);
}

TEST_CASE("expand_h level 2 matches the hand expansion") {
  auto ge = [](long a, long b, long c) { return Ineq::ge(LinForm(a, b, c)); };
  auto terms = expand_h(2, Substitution::identity(), V);
  // x<=2y, x<=z-y, 3x<=y, 2x<=z, 2x<=y, 3x<=z
  std::set<Ineq> expect{ge(-1, 2, 0), ge(-1, -1, 1), ge(-3, 1, 0), ge(-2, 0, 1), ge(-2, 1, 0), ge(-3, 0, 1)};
  CHECK(terms.size() == 6);
  CHECK(weak_constraints(terms) == expect);
  for (const auto& t : terms) CHECK(t.coefficient() == rat(1, 36));

  auto swapped = expand_h(2, Substitution::swap12(), V);
  // 2y<=x is empty under x<y; the rest: 3y<=z, y<=3x, y-x<=z, y<=2x, y<=z-x
  std::set<Ineq> expect_swapped{ge(0, -3, 1), ge(3, -1, 0), ge(1, -1, 1), ge(2, -1, 0), ge(-1, -1, 1)};
  CHECK(swapped.size() == 5);
  CHECK(weak_constraints(swapped) == expect_swapped);
  for (const auto& t : swapped) CHECK(region_feasible(t.region, V));
}

TEST_CASE("h_2 closed forms") {
  std::mt19937_64 rng(11);
  PiecewiseSum a{V, expand_h(2, Substitution::identity(), V)};
  PiecewiseSum b{V, expand_h(2, Substitution::swap12(), V)};
  for (int i = 0; i < 300; ++i) {
    Point p = oracle::random_v_point(rng);
    CHECK(evaluate(a, p) == h2_xyz(p.x, p.y, p.z));
    CHECK(evaluate(b, p) == h2_yxz(p.x, p.y, p.z));
  }
  CHECK(h2_xyz(4, 5, 6) == rat(1, 36));
  CHECK(h2_yxz(4, 5, 6) == rat(3, 36));
  CHECK(evaluate(a, pt(4, 5, 6)) == rat(1, 36));
  CHECK(evaluate(b, pt(4, 5, 6)) == rat(3, 36));
}

TEST_CASE("build_delta examples") {
  PiecewiseSum d1 = build_delta(1, Substitution::identity(), Substitution::swap12(), V);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) CHECK(evaluate(d1, oracle::random_v_point(rng)) == rat(1, 6));
  PiecewiseSum d2 = build_delta(2, Substitution::identity(), Substitution::swap12(), V);
  Rat by_hand = rat(1, 6) + h2_xyz(4, 5, 6) - h2_yxz(4, 5, 6);
  CHECK(by_hand == rat(1, 9));
  CHECK(evaluate(d2, pt(4, 5, 6)) == by_hand);
  CHECK(evaluate(d2, pt(8, 10, 12)) == rat(1, 9));
  PiecewiseSum zero = build_delta(2, Substitution::identity(), Substitution::identity(), V);
  for (int i = 0; i < 20; ++i) CHECK(evaluate(zero, oracle::random_v_point(rng)) == 0);
  CHECK(evaluate(PiecewiseSum{V, {}}, pt(1, 2, 3)) == 0);
  CHECK(evaluate(PiecewiseSum{V, {}, rat(-1, 20)}, pt(1, 2, 3)) == rat(-1, 20));
  CHECK_THROWS_AS(evaluate(d2, pt(5, 4, 6)), std::domain_error);
  CHECK_THROWS_AS(build_delta(0, Substitution::identity(), Substitution::swap12(), V), std::invalid_argument);
}

TEST_CASE("alpha") {
  CHECK(alpha(1) == rat(2, 5));
  CHECK(alpha(3) == rat(1, 10));
  CHECK(alpha(4) == rat(1, 20));
  CHECK(level_weight(3) == rat(1, 216));
}

TEST_CASE("scale invariance and agreement with the direct recursion") {
  std::mt19937_64 rng(99);
  for (auto [s, t] : {std::pair{Substitution::identity(), Substitution::swap12()}, std::pair{kYZX, kZYX}}) {
    for (int n = 1; n <= 4; ++n) {
      PiecewiseSum d = build_delta(n, s, t, V);
      for (int i = 0; i < 30; ++i) {
        Point p = oracle::random_v_point(rng);
        Point sp = s.apply(p), tp = t.apply(p);
        Rat direct = oracle::partial(n, sp) - oracle::partial(n, tp);
        Rat v = evaluate(d, p);
        CHECK(v == direct);
        CHECK(v == exact_partial_sum(n, sp.x, sp.y, sp.z) - exact_partial_sum(n, tp.x, tp.y, tp.z));
        for (const Rat& k : {rat(2, 1), rat(1, 3), rat(7, 5)}) CHECK(evaluate(d, p.scaled(k)) == v);
      }
    }
  }
}

TEST_CASE("level difference") {
  std::mt19937_64 rng(5);
  PiecewiseSum lv = build_level_difference(3, Substitution::identity(), Substitution::swap12(), V);
  for (int i = 0; i < 50; ++i) {
    Point p = oracle::random_v_point(rng);
    CHECK(evaluate(lv, p) == oracle::h(3, p.x, p.y, p.z) - oracle::h(3, p.y, p.x, p.z));
  }
}

TEST_CASE("pruning is sound") {
  std::mt19937_64 rng(17);
  ExpandOptions raw{false};
  for (int n = 1; n <= 3; ++n) {
    auto pruned = expand_h(n, Substitution::swap12(), V);
    auto full = expand_h(n, Substitution::swap12(), V, raw);
    CHECK(pruned.size() <= full.size());
    PiecewiseSum a{V, pruned}, b{V, full};
    for (int i = 0; i < 40; ++i) {
      Point p = oracle::random_v_point(rng);
      CHECK(evaluate(a, p) == evaluate(b, p));
    }
    for (const auto& t : pruned) CHECK(region_feasible(t.region, V));
  }
  // Unpruned paths that vanish are exactly the infeasible ones.
  auto full = expand_h(2, Substitution::swap12(), V, raw);
  std::size_t feasible = 0;
  for (const auto& t : full) feasible += region_feasible(t.region, V);
  CHECK(feasible == expand_h(2, Substitution::swap12(), V).size());
}

TEST_CASE("term count bounds") {
  for (int n = 1; n <= 4; ++n) {
    long six = 1;
    for (int i = 0; i < n; ++i) six *= 6;
    CHECK(expand_h(n, Substitution::identity(), Region(), {false}).size() <= static_cast<std::size_t>(2 * six / 6));
    CHECK(expand_h(n, Substitution::identity(), V).size() <= static_cast<std::size_t>(six));
    for (auto [s, t] : {std::pair{Substitution::identity(), Substitution::swap12()}, std::pair{kYZX, kZYX}}) {
      auto d = build_delta(n, s, t, V);
      CHECK(d.terms.size() * 5 <= static_cast<std::size_t>(12 * (six - 1)));
    }
  }
}

TEST_CASE("symmetry in the last two stacks") {
  std::mt19937_64 rng(23);
  Substitution swap23{LinForm::x(), LinForm::z(), LinForm::y()};
  for (int n = 1; n <= 3; ++n) {
    PiecewiseSum a{V, expand_h(n, Substitution::identity(), V)};
    PiecewiseSum b{V, expand_h(n, swap23, V)};
    for (int i = 0; i < 30; ++i) {
      Point p = oracle::random_v_point(rng);
      CHECK(evaluate(a, p) == evaluate(b, p));
      CHECK(exact_h(n, p.x, p.y, p.z) == exact_h(n, p.x, p.z, p.y));
    }
  }
}
