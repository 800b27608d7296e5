#include "allin/feasibility.hpp"
#include "allin/milp.hpp"
#include "allin/parallel.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace allin {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::BoundOnly: return "bound-only";
  }
  return "unknown";
}

namespace {

constexpr std::int8_t kUnknown = -1;

struct Node {
  std::uint64_t id = 0;
  Rat bound;
  std::vector<LiteralUse> decisions;
  std::vector<std::int8_t> lit;
};

struct NodeAfter {
  bool operator()(const Node& a, const Node& b) const {
    int c = ::cmp(a.bound, b.bound);
    return c != 0 ? c > 0 : a.id > b.id;
  }
};

struct Outcome {
  enum Kind { Pruned, Leaf, Branch } kind = Pruned;
  Rat bound;
  Point witness;
  Assignment assignment;
  std::size_t branch_literal = 0;
  std::vector<std::int8_t> lit;
};

// Node relaxation: binaries fixed by the branching decisions turn into
// homogeneous constraints on (x, y, z). The epsilon rows are relaxed to strict
// inequalities; a point of the relaxation scales to a point meeting every
// epsilon row, so both systems are feasible together.
class Search {
 public:
  explicit Search(const MilpModel& m) : m_(m) {
    for (const Ineq& c : m.ambient.constraints()) ambient_.push_back(to_chart(c));
    for (std::size_t i = 0; i < m.literals.size(); ++i) {
      if (i == 0 || m.literals[i].hyperplane != m.literals[i - 1].hyperplane) {
        const LinForm& h = m.literals[i].hyperplane;
        groups_.push_back({});
        pos_.push_back(to_chart(Ineq::gt(h)));
        neg_.push_back(to_chart(Ineq::lt(h)));
        zero_.push_back({to_chart(Ineq::ge(h)), to_chart(Ineq::le(h))});
      }
      groups_.back().push_back(i);
    }
  }

  Rat root_bound() const {
    Rat b = m_.offset;
    for (const RegionLink& r : m_.regions)
      if (r.coefficient < 0) b += r.coefficient;
    return b;
  }

  Outcome process(const Node& node, const std::optional<Rat>& incumbent) const {
    Outcome out;
    std::vector<HalfPlane> hp = ambient_;
    for (const LiteralUse& d : node.decisions)
      hp.push_back(to_chart(literal_constraint(m_.literals[d.literal], d.value)));
    PlanarSystem sys(std::move(hp));
    if (!sys.feasible()) return out;

    std::vector<std::int8_t> lit = node.lit;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (std::none_of(groups_[g].begin(), groups_[g].end(), [&](std::size_t i) { return lit[i] == kUnknown; }))
        continue;
      bool pos = sys.feasible_with(std::span(&pos_[g], 1));
      bool neg = sys.feasible_with(std::span(&neg_[g], 1));
      // A convex set meeting both open sides meets the hyperplane.
      bool zero = (pos && neg) || sys.feasible_with(zero_[g]);
      for (std::size_t i : groups_[g]) {
        if (lit[i] != kUnknown) continue;
        bool weak = m_.literals[i].kind == LiteralKind::Weak;
        bool can1 = weak ? pos || zero : pos;
        bool can0 = weak ? neg : zero || neg;
        if (!can1 && !can0) return out;
        if (can1 != can0) lit[i] = can1 ? 1 : 0;
      }
    }

    Rat bound = m_.offset;
    bool open = false;
    std::vector<std::size_t> score(m_.literals.size(), 0);
    std::optional<std::size_t> first_open;
    for (std::size_t k = 0; k < m_.regions.size(); ++k) {
      const RegionLink& r = m_.regions[k];
      if (r.literals.empty()) {
        if (r.coefficient < 0) bound += r.coefficient;
        continue;
      }
      int status = 1;
      for (const LiteralUse& u : r.literals) {
        if (lit[u.literal] == kUnknown) status = kUnknown;
        else if (lit[u.literal] != static_cast<std::int8_t>(u.value)) {
          status = 0;
          break;
        }
      }
      if (status == kUnknown && r.coefficient < 0) {
        std::vector<HalfPlane> extra;
        for (const LiteralUse& u : r.literals)
          if (lit[u.literal] == kUnknown)
            extra.push_back(to_chart(literal_constraint(m_.literals[u.literal], u.value)));
        if (!sys.feasible_with(extra)) status = 0;
      }
      if (status == 1) bound += r.coefficient;
      if (status != kUnknown) continue;
      open = true;
      if (!first_open) first_open = k;
      if (r.coefficient < 0) {
        bound += r.coefficient;
        for (const LiteralUse& u : r.literals)
          if (lit[u.literal] == kUnknown) ++score[u.literal];
      }
    }
    if (m_.cap && bound > 0) return out;
    if (incumbent && bound >= *incumbent) return out;
    out.bound = bound;

    if (open) {
      std::size_t best = m_.literals.size();
      for (std::size_t i = 0; i < m_.literals.size(); ++i)
        if (score[i] > 0 && (best == m_.literals.size() || score[i] > score[best])) best = i;
      if (best == m_.literals.size()) {
        for (const LiteralUse& u : m_.regions[*first_open].literals)
          if (lit[u.literal] == kUnknown) {
            best = u.literal;
            break;
          }
      }
      out.kind = Outcome::Branch;
      out.branch_literal = best;
      out.lit = std::move(lit);
      return out;
    }

    out.kind = Outcome::Leaf;
    Point p = sys.interior_point()->primitive();
    Rat smallest = 0;
    auto note = [&](const Rat& v) {
      if (v != 0 && (smallest == 0 || abs(v) < smallest)) smallest = abs(v);
    };
    for (const Literal& l : m_.literals) note(l.hyperplane.eval(p));
    for (const Ineq& c : m_.ambient.constraints()) note(c.form().eval(p));
    if (smallest != 0 && smallest < m_.epsilon) p = p.scaled(m_.epsilon / smallest);

    Assignment a(m_.num_vars() - 3, 0);
    for (std::size_t i = 0; i < m_.literals.size(); ++i) {
      int s = sgn(m_.literals[i].hyperplane.eval(p));
      a[i] = m_.literals[i].kind == LiteralKind::Weak ? s >= 0 : s > 0;
    }
    for (std::size_t k = 0; k < m_.regions.size(); ++k) {
      const RegionLink& r = m_.regions[k];
      bool on = r.literals.empty()
                    ? r.coefficient < 0
                    : std::all_of(r.literals.begin(), r.literals.end(),
                                  [&](const LiteralUse& u) { return a[u.literal] == static_cast<std::int8_t>(u.value); });
      a[m_.region_var(k) - 3] = on;
    }
    if (objective_value(m_, a) != bound)
      throw std::logic_error("solve: leaf value disagrees with its bound");
    if (auto bad = first_violation(m_, p, a)) throw std::logic_error("solve: leaf witness violates row " + *bad);
    out.witness = std::move(p);
    out.assignment = std::move(a);
    return out;
  }

 private:
  const MilpModel& m_;
  std::vector<HalfPlane> ambient_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<HalfPlane> pos_, neg_;
  std::vector<std::array<HalfPlane, 2>> zero_;
};

}  // namespace

BnBResult solve(const MilpModel& m, const SolveOptions& opts) {
  if (opts.batch == 0) throw std::invalid_argument("solve: batch must be positive");
  Search search(m);
  BnBResult res;
  std::optional<Rat> incumbent;

  std::vector<Node> heap;
  std::uint64_t next_id = 0;
  heap.push_back({next_id++, search.root_bound(), {}, std::vector<std::int8_t>(m.literals.size(), kUnknown)});

  auto dominated = [&](const Node& n) {
    return (m.cap && n.bound > 0) || (incumbent && n.bound >= *incumbent);
  };

  while (!heap.empty()) {
    if (opts.node_budget && res.node_count >= *opts.node_budget) break;
    std::size_t room = opts.batch;
    if (opts.node_budget) room = std::min<std::uint64_t>(room, *opts.node_budget - res.node_count);
    std::vector<Node> batch;
    while (!heap.empty() && batch.size() < room) {
      std::pop_heap(heap.begin(), heap.end(), NodeAfter{});
      Node n = std::move(heap.back());
      heap.pop_back();
      if (!dominated(n)) batch.push_back(std::move(n));
    }
    if (batch.empty()) continue;

    std::vector<Outcome> outcomes(batch.size());
    parallel_for(batch.size(), opts.threads, [&](std::size_t i) { outcomes[i] = search.process(batch[i], incumbent); });
    res.node_count += batch.size();

    for (std::size_t i = 0; i < batch.size(); ++i) {
      Outcome& o = outcomes[i];
      if (o.kind == Outcome::Leaf) {
        if (!incumbent || o.bound < *incumbent) {
          incumbent = o.bound;
          res.witness = std::move(o.witness);
          res.assignment = std::move(o.assignment);
        }
      } else if (o.kind == Outcome::Branch) {
        for (bool value : {false, true}) {
          Node child{next_id++, o.bound, batch[i].decisions, o.lit};
          child.decisions.push_back({o.branch_literal, value});
          child.lit[o.branch_literal] = value;
          heap.push_back(std::move(child));
          std::push_heap(heap.begin(), heap.end(), NodeAfter{});
        }
      }
    }
  }

  std::optional<Rat> open_bound;
  for (const Node& n : heap) {
    if (dominated(n)) continue;
    ++res.open_nodes;
    if (!open_bound || n.bound < *open_bound) open_bound = n.bound;
  }
  if (open_bound) {
    res.status = SolveStatus::BoundOnly;
    res.value = incumbent && *incumbent < *open_bound ? *incumbent : *open_bound;
  } else if (incumbent) {
    res.status = SolveStatus::Optimal;
    res.value = *incumbent;
  } else {
    res.status = SolveStatus::Infeasible;
    res.value = 0;
  }
  return res;
}

Decomposition certify_decomposed(int n, const Substitution& s, const Substitution& t,
                                 const Region& ambient, const SolveOptions& opts) {
  if (n < 2) throw std::invalid_argument("certify_decomposed: n must be >= 2");
  Decomposition d;
  d.previous = solve(build_milp_full(n - 1, s, t, ambient, false), opts);
  d.level = solve(build_milp_h_diff(n, s, t, ambient), opts);
  if (d.previous.status == SolveStatus::Infeasible || d.level.status == SolveStatus::Infeasible)
    throw std::logic_error("certify_decomposed: an uncapped part reported infeasible");
  d.margin = d.previous.value + d.level.value + alpha(n);
  d.delta_bound = d.margin + alpha(n);
  return d;
}

}  // namespace allin
