#pragma once

// Monte Carlo simulation of the three-player maximal-bet game, plus an exact
// pointwise evaluation of the partial elimination probabilities used to
// cross-check the symbolic expansion.

#include "allin/philox.hpp"
#include "allin/rational.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace allin {

struct GameState {
  std::array<std::int64_t, 3> stacks{};

  std::int64_t total() const { return stacks[0] + stacks[1] + stacks[2]; }
  bool terminal() const { return stacks[0] == 0 || stacks[1] == 0 || stacks[2] == 0; }
  friend bool operator==(const GameState&, const GameState&) = default;
};

/// Throws std::invalid_argument unless all stacks are positive and the total fits.
GameState make_state(std::int64_t x, std::int64_t y, std::int64_t z);

/// One round. draw in [0, 6) selects the pair (draw / 2: {1,2}, {1,3}, {2,3}) and
/// the coin (draw % 2: 0 = lower-numbered player wins). The bet is the poorer
/// player's whole stack. Throws std::logic_error on a terminal state.
GameState step(const GameState& state, unsigned draw);

struct SimConfig {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  int max_rounds = 64;
  int threads = 0;
};

inline constexpr int kCensored = -1;

struct EpisodeResult {
  int loser = kCensored;   // 0, 1, 2 or kCensored
  int rounds = 0;          // rounds until the first elimination
  int winner = kCensored;  // holder of all chips, kCensored if unresolved
};

EpisodeResult run_episode(const GameState& start, PhiloxStream& rng, int max_rounds);

struct SimStats {
  std::uint64_t trials = 0;
  std::array<std::uint64_t, 3> loser_freq{};
  std::array<std::uint64_t, 3> winner_freq{};
  std::uint64_t censored = 0;
  std::uint64_t winner_unresolved = 0;
  /// Index r - 1 counts episodes where player 1 was eliminated in round r.
  std::vector<std::uint64_t> p1_elimination_round;

  SimStats& operator+=(const SimStats& other);
};

/// Episode i draws from PhiloxStream(cfg.seed, i), so the merged statistics do
/// not depend on cfg.threads.
SimStats simulate(const GameState& start, const SimConfig& cfg);

struct Estimate {
  double value = 0;
  double std_error = 0;
};

/// Binomial estimate of count / trials.
Estimate binomial_estimate(std::uint64_t count, std::uint64_t trials);

/// Probability that player 1 loses, estimated from simulate().
Estimate estimate_f(std::int64_t x, std::int64_t y, std::int64_t z, const SimConfig& cfg);

/// Exact h_n(a, b, c) by direct recursion on the concrete arguments.
Rat exact_h(int n, const Rat& a, const Rat& b, const Rat& c);

/// Exact sum_{j<=n} h_j(a, b, c).
Rat exact_partial_sum(int n, const Rat& a, const Rat& b, const Rat& c);

/// 6^n * sum_{j<=n} h_j(a, b, c) for integer stacks, in machine integers. Used
/// where millions of lattice points are evaluated.
std::int64_t scaled_partial_sum(int n, std::int64_t a, std::int64_t b, std::int64_t c);

}  // namespace allin
