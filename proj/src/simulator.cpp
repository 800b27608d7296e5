#include "allin/simulator.hpp"

#include "allin/parallel.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace allin {

GameState make_state(std::int64_t x, std::int64_t y, std::int64_t z) {
  if (x <= 0 || y <= 0 || z <= 0) throw std::invalid_argument("make_state: stacks must be positive");
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  if (x > kMax - y || x + y > kMax - z) throw std::invalid_argument("make_state: total overflows 64 bits");
  return {{x, y, z}};
}

namespace {

constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

}  // namespace

GameState step(const GameState& state, unsigned draw) {
  if (state.terminal()) throw std::logic_error("step: called on a terminal state");
  if (draw >= 6) throw std::invalid_argument("step: draw must be in [0, 6)");
  auto [i, j] = kPairs[draw / 2];
  int winner = draw % 2 == 0 ? i : j;
  int loser = winner == i ? j : i;
  GameState next = state;
  std::int64_t bet = std::min(state.stacks[i], state.stacks[j]);
  next.stacks[winner] += bet;
  next.stacks[loser] -= bet;
  return next;
}

EpisodeResult run_episode(const GameState& start, PhiloxStream& rng, int max_rounds) {
  EpisodeResult out;
  GameState s = start;
  for (int round = 1; round <= max_rounds; ++round) {
    s = step(s, rng.uniform(6));
    if (s.terminal()) {
      out.rounds = round;
      for (int p = 0; p < 3; ++p)
        if (s.stacks[p] == 0) out.loser = p;
      break;
    }
  }
  if (out.loser == kCensored) {
    out.rounds = max_rounds;
    return out;
  }
  // Heads-up continuation between the two survivors.
  int a = out.loser == 0 ? 1 : 0;
  int b = 3 - out.loser - a;
  for (int flip = 0; flip < max_rounds; ++flip) {
    std::int64_t bet = std::min(s.stacks[a], s.stacks[b]);
    bool a_wins = rng.uniform(2) == 0;
    s.stacks[a_wins ? a : b] += bet;
    s.stacks[a_wins ? b : a] -= bet;
    if (s.stacks[a] == 0) { out.winner = b; break; }
    if (s.stacks[b] == 0) { out.winner = a; break; }
  }
  return out;
}

SimStats& SimStats::operator+=(const SimStats& other) {
  trials += other.trials;
  for (int p = 0; p < 3; ++p) {
    loser_freq[p] += other.loser_freq[p];
    winner_freq[p] += other.winner_freq[p];
  }
  censored += other.censored;
  winner_unresolved += other.winner_unresolved;
  if (p1_elimination_round.size() < other.p1_elimination_round.size())
    p1_elimination_round.resize(other.p1_elimination_round.size(), 0);
  for (std::size_t r = 0; r < other.p1_elimination_round.size(); ++r)
    p1_elimination_round[r] += other.p1_elimination_round[r];
  return *this;
}

SimStats simulate(const GameState& start, const SimConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
  if (cfg.max_rounds < 1) throw std::invalid_argument("simulate: max_rounds must be >= 1");
  if (start.terminal()) throw std::invalid_argument("simulate: start state must have positive stacks");
  constexpr std::uint64_t kChunk = 1 << 14;
  const std::uint64_t chunks = (cfg.trials + kChunk - 1) / kChunk;
  std::vector<SimStats> partial(chunks);
  parallel_for(chunks, cfg.threads, [&](std::size_t c) {
    SimStats& st = partial[c];
    st.p1_elimination_round.assign(cfg.max_rounds, 0);
    const std::uint64_t begin = c * kChunk, end = std::min(cfg.trials, begin + kChunk);
    for (std::uint64_t e = begin; e < end; ++e) {
      PhiloxStream rng(cfg.seed, e);
      EpisodeResult r = run_episode(start, rng, cfg.max_rounds);
      ++st.trials;
      if (r.loser == kCensored) {
        ++st.censored;
      } else {
        ++st.loser_freq[r.loser];
        if (r.loser == 0) ++st.p1_elimination_round[r.rounds - 1];
      }
      if (r.winner == kCensored) ++st.winner_unresolved;
      else ++st.winner_freq[r.winner];
    }
  });
  SimStats total;
  total.p1_elimination_round.assign(cfg.max_rounds, 0);
  for (const SimStats& st : partial) total += st;
  return total;
}

Estimate binomial_estimate(std::uint64_t count, std::uint64_t trials) {
  double p = static_cast<double>(count) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1 - p) / static_cast<double>(trials))};
}

Estimate estimate_f(std::int64_t x, std::int64_t y, std::int64_t z, const SimConfig& cfg) {
  SimStats st = simulate(make_state(x, y, z), cfg);
  return binomial_estimate(st.loser_freq[0], st.trials);
}

namespace {

class PointwiseRecursion {
 public:
  Rat h(int n, const Rat& a, const Rat& b, const Rat& c) {
    if (sgn(a) <= 0 || sgn(b) <= 0 || sgn(c) <= 0) return 0;
    if (n == 1) return make_rat((a <= b) + (a <= c), 6);
    auto key = std::make_tuple(n, a, b, c);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rat sum = h(n - 1, 2 * a, b - a, c) + h(n - 1, 2 * a, b, c - a) + h(n - 1, a - b, 2 * b, c) +
              h(n - 1, a, 2 * b, c - b) + h(n - 1, a - c, b, 2 * c) + h(n - 1, a, b - c, 2 * c);
    Rat v = sum / 6;
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  std::map<std::tuple<int, Rat, Rat, Rat>, Rat> memo_;
};

// 6^n h_n(a, b, c) for integer arguments.
std::int64_t scaled_h(int n, std::int64_t a, std::int64_t b, std::int64_t c) {
  if (a <= 0 || b <= 0 || c <= 0) return 0;
  if (n == 1) return (a <= b) + (a <= c);
  return scaled_h(n - 1, 2 * a, b - a, c) + scaled_h(n - 1, 2 * a, b, c - a) +
         scaled_h(n - 1, a - b, 2 * b, c) + scaled_h(n - 1, a, 2 * b, c - b) +
         scaled_h(n - 1, a - c, b, 2 * c) + scaled_h(n - 1, a, b - c, 2 * c);
}

}  // namespace

Rat exact_h(int n, const Rat& a, const Rat& b, const Rat& c) {
  if (n < 1) throw std::invalid_argument("exact_h: n must be >= 1");
  return PointwiseRecursion().h(n, a, b, c);
}

Rat exact_partial_sum(int n, const Rat& a, const Rat& b, const Rat& c) {
  if (n < 1) throw std::invalid_argument("exact_partial_sum: n must be >= 1");
  PointwiseRecursion rec;
  Rat total = 0;
  for (int j = 1; j <= n; ++j) total += rec.h(j, a, b, c);
  return total;
}

std::int64_t scaled_partial_sum(int n, std::int64_t a, std::int64_t b, std::int64_t c) {
  if (n < 1 || n > 20) throw std::invalid_argument("scaled_partial_sum: n must be in [1, 20]");
  constexpr std::int64_t kLimit = std::int64_t{1} << 40;
  if (std::abs(a) > kLimit || std::abs(b) > kLimit || std::abs(c) > kLimit)
    throw std::invalid_argument("scaled_partial_sum: stacks too large for machine arithmetic");
  std::int64_t total = 0, weight = 1;
  for (int j = n; j >= 1; --j) {
    total += weight * scaled_h(j, a, b, c);
    weight *= 6;
  }
  return total;
}

}  // namespace allin
