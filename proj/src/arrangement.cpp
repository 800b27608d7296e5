#include "allin/arrangement.hpp"

#include "allin/feasibility.hpp"
#include "allin/parallel.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace allin {

std::vector<Hyperplane> collect_hyperplanes(const PiecewiseSum& ps) {
  std::vector<Hyperplane> hs;
  for (const Ineq& c : ps.ambient.constraints()) hs.push_back({c.hyperplane()});
  for (const IndicatorTerm& term : ps.terms)
    for (const Ineq& c : term.region.constraints()) hs.push_back({c.hyperplane()});
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  return hs;
}

std::vector<std::int8_t> sign_vector(const std::vector<Hyperplane>& hs, const Point& p) {
  std::vector<std::int8_t> out(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) out[i] = static_cast<std::int8_t>(sgn(hs[i].form.eval(p)));
  return out;
}

namespace {

struct Vec3 {
  Int x, y, z;
};

Vec3 as_vec(const LinForm& f) { return {f.a(), f.b(), f.c()}; }
Int dot(const Vec3& u, const Vec3& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }
Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}
Vec3 combine(const Int& s, const Vec3& u, const Int& t, const Vec3& v) {
  return {s * u.x + t * v.x, s * u.y + t * v.y, s * u.z + t * v.z};
}
bool is_zero(const Vec3& v) { return v.x == 0 && v.y == 0 && v.z == 0; }

struct Constraint {
  Vec3 f;
  bool strict;
};

class Arrangement {
 public:
  Arrangement(const std::vector<Hyperplane>& hs, const Region& ambient) {
    for (const Ineq& c : ambient.constraints()) ambient_.push_back({as_vec(c.form()), c.strict()});
    std::vector<Hyperplane> all = hs;
    for (const Ineq& c : ambient.constraints()) all.push_back({c.hyperplane()});
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    // Forms proportional to x + y + z have constant sign on the chart and cut nothing.
    for (const Hyperplane& h : all) {
      Vec3 f = as_vec(h.form);
      if (!is_zero(cross(f, {1, 1, 1}))) lines_.push_back(std::move(f));
    }
    for (const Hyperplane& h : hs) forms_.push_back(as_vec(h.form));
  }

  std::size_t line_count() const { return lines_.size(); }

  bool in_ambient(const Vec3& p) const {
    for (const Constraint& c : ambient_) {
      int s = sgn(dot(c.f, p));
      if (s < 0 || (s == 0 && c.strict)) return false;
    }
    return true;
  }

  std::string key(const Vec3& p) const {
    std::string k(forms_.size(), '0');
    for (std::size_t i = 0; i < forms_.size(); ++i) {
      int s = sgn(dot(forms_[i], p));
      k[i] = s < 0 ? '-' : (s > 0 ? '+' : '0');
    }
    return k;
  }

  // Candidate points for every face meeting line i: its vertices, a point on
  // each edge, and a point just off each edge on both sides.
  std::vector<Vec3> candidates(std::size_t i) const {
    const Vec3& f = lines_[i];
    Vec3 e2 = cross(f, {1, 1, 1});
    Vec3 e1 = cross(e2, f);
    // Points of the line with positive coordinate sum are positive multiples of e1 + t e2.
    UBound lo, hi;
    std::vector<Rat> ts;
    for (const Constraint& c : ambient_) {
      Int a = dot(c.f, e1), b = dot(c.f, e2);
      if (b == 0) {
        int s = sgn(a);
        if (s < 0 || (s == 0 && c.strict)) return {};
        continue;
      }
      Rat v = make_rat(-a, b);
      UBound& side = b > 0 ? lo : hi;
      if (!side.finite || (b > 0 ? v > side.value : v < side.value)) side = {true, v, c.strict};
    }
    if (lo.finite && hi.finite && lo.value > hi.value) return {};
    for (std::size_t j = 0; j < lines_.size(); ++j) {
      if (j == i) continue;
      Int a = dot(lines_[j], e1), b = dot(lines_[j], e2);
      if (b == 0) continue;
      Rat v = make_rat(-a, b);
      if ((lo.finite && v < lo.value) || (hi.finite && v > hi.value)) continue;
      ts.push_back(std::move(v));
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    auto at = [&](const Rat& t) {
      return combine(t.get_den(), e1, t.get_num(), e2);
    };
    std::vector<Vec3> out;
    std::vector<Rat> edges;
    if (ts.empty()) {
      edges.push_back(0);
    } else {
      edges.push_back(ts.front() - 1);
      for (std::size_t k = 0; k + 1 < ts.size(); ++k) edges.push_back((ts[k] + ts[k + 1]) / 2);
      edges.push_back(ts.back() + 1);
    }
    for (const Rat& t : ts) out.push_back(at(t));

    Int sf = f.x + f.y + f.z;
    Vec3 normal{3 * f.x - sf, 3 * f.y - sf, 3 * f.z - sf};  // f . normal > 0, coordinate sum 0
    for (const Rat& t : edges) {
      Vec3 m = at(t);
      out.push_back(m);
      Rat delta = 1;
      bool bounded = false;
      for (std::size_t j = 0; j < lines_.size(); ++j) {
        if (j == i) continue;
        Int dn = dot(lines_[j], normal);
        if (dn == 0) continue;
        Rat r(abs(dot(lines_[j], m)), abs(dn));
        r.canonicalize();
        if (!bounded || r < delta) delta = r, bounded = true;
      }
      if (bounded) delta /= 2;
      const Int& p = delta.get_num();
      const Int& q = delta.get_den();
      out.push_back(combine(q, m, p, normal));
      out.push_back(combine(q, m, -p, normal));
    }
    return out;
  }

 private:
  std::vector<Constraint> ambient_;
  std::vector<Vec3> lines_;
  std::vector<Vec3> forms_;
};

Point primitive_point(const Vec3& v) { return Point(Rat(v.x), Rat(v.y), Rat(v.z)).primitive(); }

}  // namespace

std::vector<Cell> enumerate_cells(const std::vector<Hyperplane>& hs, const Region& ambient,
                                  int threads) {
  Arrangement arr(hs, ambient);
  std::vector<Cell> cells;
  std::unordered_map<std::string, std::size_t> seen;

  auto admit = [&](std::string k, const Vec3& p) {
    if (seen.contains(k)) return;
    Cell c;
    c.signs.resize(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) c.signs[i] = k[i] == '-' ? -1 : (k[i] == '+' ? 1 : 0);
    c.rep = primitive_point(p);
    seen.emplace(std::move(k), cells.size());
    cells.push_back(std::move(c));
  };

  if (auto p = region_interior_point(Region{}, ambient)) {
    Vec3 v{p->x.get_num(), p->y.get_num(), p->z.get_num()};
    admit(arr.key(v), v);
  }

  // Lines are processed in blocks; each block's candidates are computed in
  // parallel and merged in line order, which keeps representatives stable.
  const std::size_t lines = arr.line_count();
  const std::size_t block = 64;
  for (std::size_t start = 0; start < lines; start += block) {
    std::size_t count = std::min(block, lines - start);
    std::vector<std::vector<std::pair<std::string, Vec3>>> found(count);
    parallel_for(count, threads, [&](std::size_t k) {
      std::unordered_map<std::string, bool> local;
      for (Vec3& p : arr.candidates(start + k)) {
        if (!arr.in_ambient(p)) continue;
        std::string key = arr.key(p);
        if (local.emplace(key, true).second) found[k].emplace_back(std::move(key), std::move(p));
      }
    });
    for (auto& list : found)
      for (auto& [key, p] : list) admit(std::move(key), p);
  }
  return cells;
}

namespace {

struct MaskedTerm {
  std::vector<std::pair<std::size_t, std::uint8_t>> checks;
  std::int64_t weight;  // coefficient times 6^top
};

}  // namespace

std::vector<Rat> face_values(const PiecewiseSum& ps, const std::vector<Hyperplane>& hs,
                             const std::vector<Cell>& cells, int threads) {
  int top = 0;
  for (const IndicatorTerm& term : ps.terms) top = std::max(top, term.level);
  if (top > 22) throw std::invalid_argument("face_values: level too deep for 64-bit accumulation");
  std::map<LinForm, std::size_t> index;
  for (std::size_t i = 0; i < hs.size(); ++i) index.emplace(hs[i].form, i);

  std::vector<MaskedTerm> masked;
  for (const IndicatorTerm& term : ps.terms) {
    MaskedTerm m;
    m.weight = term.sign;
    for (int l = term.level; l < top; ++l) m.weight *= 6;
    for (const Ineq& c : term.region.constraints()) {
      auto it = index.find(c.hyperplane());
      if (it == index.end()) throw std::invalid_argument("face_values: term hyperplane missing from list");
      m.checks.emplace_back(it->second, c.sign_mask());
    }
    masked.push_back(std::move(m));
  }
  Rat scale = level_weight(top);
  std::vector<Rat> out(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t k) {
    const auto& signs = cells[k].signs;
    std::int64_t acc = 0;
    for (const MaskedTerm& m : masked) {
      bool inside = std::all_of(m.checks.begin(), m.checks.end(), [&](const auto& ch) {
        return (ch.second & sign_bit(signs[ch.first])) != 0;
      });
      if (inside) acc += m.weight;
    }
    out[k] = ps.constant + Rat(acc) * scale;
  });
  return out;
}

MinReport global_min(const PiecewiseSum& ps, int threads) {
  MinReport rep;
  rep.hyperplanes = collect_hyperplanes(ps);
  std::vector<Cell> cells = enumerate_cells(rep.hyperplanes, ps.ambient, threads);
  if (cells.empty()) throw std::invalid_argument("global_min: ambient region is empty");
  std::vector<Rat> values = face_values(ps, rep.hyperplanes, cells, threads);
  std::size_t best = 0;
  for (std::size_t k = 1; k < cells.size(); ++k) {
    int c = ::cmp(values[k], values[best]);
    if (c < 0 || (c == 0 && compare_projective(cells[k].rep, cells[best].rep) < 0)) best = k;
  }
  rep.min_value = values[best];
  rep.witness = cells[best].rep;
  rep.witness_signs = cells[best].signs;
  rep.cell_count = cells.size();
  rep.hyperplane_count = rep.hyperplanes.size();
  rep.minimizing_faces = static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](const Rat& v) { return v == rep.min_value; }));
  if (evaluate(ps, rep.witness) != rep.min_value)
    throw std::logic_error("global_min: witness value disagrees with direct evaluation");
  return rep;
}

MeshResult meshitup(const Substitution& s, const Substitution& t, const Region& ambient, int max_n,
                    bool weak, int threads, const std::function<void(const MeshStep&)>& on_step) {
  if (max_n < 2) throw std::invalid_argument("meshitup: max_n must be >= 2");
  MeshResult out;
  for (int n = 2; n <= max_n; ++n) {
    PiecewiseSum ps = build_delta(n, s, t, ambient);
    MinReport rep = global_min(ps, threads);
    MeshStep st;
    st.n = n;
    st.delta_min = rep.min_value;
    st.alpha = alpha(n);
    st.witness = rep.witness;
    st.cell_count = rep.cell_count;
    st.hyperplane_count = rep.hyperplane_count;
    st.passed = weak ? st.delta_min >= st.alpha : st.delta_min > st.alpha;
    out.steps.push_back(st);
    if (on_step) on_step(st);
    if (st.passed) {
      out.n = n;
      out.bound = st.delta_min;
      break;
    }
  }
  return out;
}

}  // namespace allin
