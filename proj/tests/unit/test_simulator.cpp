#include "doctest.h"
#include "oracles.hpp"

#include "allin/simulator.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace allin;
using oracle::rat;

namespace {

bool within(double observed, double expected, double sigma) { return std::abs(observed - expected) <= 3 * sigma + 1e-12; }

SimConfig config(std::uint64_t trials, std::uint64_t seed = 12345, int threads = 0) {
  SimConfig c;
  c.trials = trials;
  c.seed = seed;
  c.threads = threads;
  return c;
}

}  // namespace

TEST_CASE("Philox known answers") {
  using B = std::array<std::uint32_t, 4>;
  CHECK(PhiloxStream::block({0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(PhiloxStream::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(PhiloxStream::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  PhiloxStream a(9, 3), b(9, 3), c(9, 4);
  bool differs = false;
  for (int i = 0; i < 16; ++i) {
    std::uint32_t u = a.next_u32();
    CHECK(u == b.next_u32());
    differs = differs || u != c.next_u32();
  }
  CHECK(differs);
  for (int i = 0; i < 1000; ++i) CHECK(a.uniform(6) < 6);
}

TEST_CASE("transitions") {
  GameState s = make_state(1, 2, 3);
  std::multiset<std::array<std::int64_t, 3>> got;
  for (unsigned d = 0; d < 6; ++d) got.insert(step(s, d).stacks);
  std::multiset<std::array<std::int64_t, 3>> expect{{0, 3, 3}, {2, 1, 3}, {0, 2, 4}, {2, 2, 2}, {1, 0, 5}, {1, 4, 1}};
  CHECK(got == expect);
  for (unsigned d = 0; d < 6; ++d) {
    CHECK(step(make_state(1, 1, 1), d).terminal());
    CHECK(step(make_state(4, 5, 6), d).total() == 15);
  }
  CHECK_THROWS_AS(step(GameState{{0, 3, 3}}, 0), std::logic_error);
  CHECK_THROWS_AS(make_state(0, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_state(std::int64_t{1} << 62, std::int64_t{1} << 62, 1), std::invalid_argument);
}

TEST_CASE("episodes") {
  PhiloxStream rng(1, 0);
  for (int i = 0; i < 200; ++i) {
    EpisodeResult r = run_episode(make_state(1, 1, 1), rng, 64);
    CHECK(r.rounds == 1);
    CHECK(r.loser != kCensored);
  }
  // Conservation along trajectories.
  std::mt19937_64 pick(3);
  PhiloxStream draws(2, 0);
  for (int i = 0; i < 200; ++i) {
    GameState s = make_state(1 + pick() % 50, 1 + pick() % 50, 1 + pick() % 50);
    std::int64_t total = s.total();
    while (!s.terminal()) {
      s = step(s, draws.uniform(6));
      CHECK(s.total() == total);
      for (auto v : s.stacks) CHECK(v >= 0);
    }
  }
  for (int i = 0; i < 200; ++i) CHECK(run_episode(make_state(3, 7, 11), rng, 5).rounds <= 5);
}

TEST_CASE("simulate bookkeeping and determinism") {
  SimStats a = simulate(make_state(4, 5, 6), config(50000, 7, 1));
  SimStats b = simulate(make_state(4, 5, 6), config(50000, 7, 4));
  CHECK(a.loser_freq == b.loser_freq);
  CHECK(a.winner_freq == b.winner_freq);
  CHECK(a.p1_elimination_round == b.p1_elimination_round);
  CHECK(a.loser_freq[0] + a.loser_freq[1] + a.loser_freq[2] + a.censored == a.trials);
  CHECK(a.winner_freq[0] + a.winner_freq[1] + a.winner_freq[2] + a.winner_unresolved == a.trials);
  std::uint64_t by_round = 0;
  for (auto v : a.p1_elimination_round) by_round += v;
  CHECK(by_round == a.loser_freq[0]);
  SimConfig zero = config(0);
  CHECK_THROWS_AS(simulate(make_state(1, 2, 3), zero), std::invalid_argument);
}

TEST_CASE("statistics match exact values") {
  Estimate f = estimate_f(1, 1, 1, config(100000));
  CHECK(within(f.value, 1.0 / 3, f.std_error));
  SimStats sym = simulate(make_state(1, 1, 1), config(100000));
  for (int p = 0; p < 3; ++p) {
    Estimate e = binomial_estimate(sym.loser_freq[p], sym.trials);
    CHECK(within(e.value, 1.0 / 3, e.std_error));
  }
  for (auto [x, y, z] : {std::array<std::int64_t, 3>{1, 1, 1}, {4, 5, 6}, {1, 2, 7}, {3, 3, 10}, {2, 9, 4}}) {
    SimStats st = simulate(make_state(x, y, z), config(100000));
    Estimate w = binomial_estimate(st.winner_freq[0], st.trials);
    CHECK(within(w.value, static_cast<double>(x) / static_cast<double>(x + y + z), w.std_error));
  }
  SimStats st = simulate(make_state(4, 5, 6), config(200000));
  for (int n = 1; n <= 4; ++n) {
    Estimate e = binomial_estimate(st.p1_elimination_round[n - 1], st.trials);
    CHECK(within(e.value, to_double(exact_h(n, 4, 5, 6)), e.std_error));
  }
  for (auto [x, z] : {std::pair<std::int64_t, std::int64_t>{1, 2}, {2, 7}, {5, 6}}) {
    Estimate g = estimate_f(x, z, z, config(50000));
    CHECK(g.value <= 2.0 / 3 + 3 * g.std_error);
  }
  SimConfig tail = config(100000);
  tail.max_rounds = 20;
  SimStats t = simulate(make_state(4, 5, 6), tail);
  double p = std::pow(0.5, 20);
  CHECK(static_cast<double>(t.censored) / t.trials <= p + 3 * std::sqrt(p * (1 - p) / t.trials));
}

TEST_CASE("exact partial sums") {
  CHECK(exact_partial_sum(1, 4, 5, 6) == rat(1, 3));
  CHECK(exact_partial_sum(2, 4, 5, 6) == rat(13, 36));
  CHECK(exact_partial_sum(2, 5, 4, 6) == exact_partial_sum(2, 5, 6, 4));
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> d(1, 60);
  for (int i = 0; i < 200; ++i) {
    std::int64_t a = d(rng), b = d(rng), c = d(rng);
    int n = 1 + i % 4;
    Rat direct = oracle::partial(n, oracle::Point{a, b, c});
    CHECK(exact_partial_sum(n, a, b, c) == direct);
    CHECK(exact_partial_sum(n, a, b, c) == exact_partial_sum(n, a, c, b));
    CHECK(Rat(scaled_partial_sum(n, a, b, c)) == direct * pow(Rat(6), n));
  }
  for (int i = 0; i < 100; ++i) {
    oracle::Point p = oracle::random_v_point(rng);
    CHECK(exact_h(3, p.x, p.y, p.z) == oracle::h(3, p.x, p.y, p.z));
  }
}
