#include "allin/milp.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace allin {

AffineIneq to_affine(const Ineq& c) { return {c.form(), 0, c.rel()}; }

std::string to_string(const AffineIneq& c) {
  std::string out = to_string(c.form);
  if (c.constant > 0) out += " + " + to_string(c.constant);
  if (c.constant < 0) out += " - " + to_string(Rat(-c.constant));
  return out + (c.rel == Rel::Gt ? " > 0" : " >= 0");
}

std::vector<AffineIneq> eps_reduce(const std::vector<AffineIneq>& cs, const Rat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("eps_reduce: epsilon must be positive");
  std::vector<AffineIneq> out;
  out.reserve(cs.size());
  for (const AffineIneq& c : cs) {
    if (c.constant != 0)
      throw std::invalid_argument("eps_reduce: constraint " + to_string(c) + " is not homogeneous");
    if (c.rel == Rel::Gt) out.push_back({c.form, -epsilon, Rel::Ge});
    else out.push_back(c);
  }
  return out;
}

std::string MilpModel::var_name(std::size_t v) const {
  if (v < 3) return std::string(1, "xyz"[v]);
  if (v < 3 + literals.size()) return "l" + std::to_string(v - 3);
  return "r" + std::to_string(v - 3 - literals.size());
}

Ineq literal_constraint(const Literal& lit, bool value) {
  if (lit.kind == LiteralKind::Weak) return value ? Ineq::ge(lit.hyperplane) : Ineq::lt(lit.hyperplane);
  return value ? Ineq::gt(lit.hyperplane) : Ineq::le(lit.hyperplane);
}

namespace {

std::pair<Literal, bool> literal_of(const Ineq& c) {
  bool own_boundary = c.rel() == Rel::Ge;
  if (c.side() > 0)
    return {{c.hyperplane(), own_boundary ? LiteralKind::Weak : LiteralKind::Strict}, true};
  // A constraint on -h holds exactly when the opposite literal of h fails.
  return {{c.hyperplane(), own_boundary ? LiteralKind::Strict : LiteralKind::Weak}, false};
}

bool literal_less(const Literal& a, const Literal& b) {
  if (auto c = a.hyperplane <=> b.hyperplane; c != 0) return c < 0;
  return a.kind < b.kind;
}

bool literal_equal(const Literal& a, const Literal& b) {
  return a.hyperplane == b.hyperplane && a.kind == b.kind;
}

Row homogeneous_row(std::string name, const AffineIneq& c) {
  Row r;
  r.name = std::move(name);
  if (c.form.a() != 0) r.terms.emplace_back(0, Rat(c.form.a()));
  if (c.form.b() != 0) r.terms.emplace_back(1, Rat(c.form.b()));
  if (c.form.c() != 0) r.terms.emplace_back(2, Rat(c.form.c()));
  r.rhs = -c.constant;
  return r;
}

}  // namespace

LiteralUse literal_for(const Ineq& c, std::vector<Literal>& literals) {
  auto [lit, value] = literal_of(c);
  auto it = std::lower_bound(literals.begin(), literals.end(), lit, literal_less);
  if (it == literals.end() || !literal_equal(*it, lit)) it = literals.insert(it, lit);
  return {static_cast<std::size_t>(it - literals.begin()), value};
}

MilpModel build_milp(const PiecewiseSum& ps, bool include_cap, const Rat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("build_milp: epsilon must be positive");
  MilpModel m;
  m.ambient = ps.ambient;
  m.cap = include_cap;
  m.epsilon = epsilon;
  m.offset = ps.constant;

  for (const IndicatorTerm& term : ps.terms)
    for (const Ineq& c : term.region.constraints()) literal_for(c, m.literals);

  // Terms over the same literal set share one region binary.
  std::map<std::vector<LiteralUse>, Rat> merged;
  for (const IndicatorTerm& term : ps.terms) {
    std::vector<LiteralUse> uses;
    for (const Ineq& c : term.region.constraints()) uses.push_back(literal_for(c, m.literals));
    std::sort(uses.begin(), uses.end());
    uses.erase(std::unique(uses.begin(), uses.end()), uses.end());
    if (uses.empty()) m.offset += term.coefficient();
    else merged[uses] += term.coefficient();
  }
  for (auto& [uses, coef] : merged)
    if (coef != 0) m.regions.push_back({uses, coef});

  std::vector<AffineIneq> amb;
  for (const Ineq& c : ps.ambient.constraints()) amb.push_back(to_affine(c));
  amb = eps_reduce(amb, epsilon);
  for (std::size_t i = 0; i < amb.size(); ++i)
    m.rows.push_back(homogeneous_row("ambient" + std::to_string(i), amb[i]));

  for (std::size_t i = 0; i < m.literals.size(); ++i) {
    for (bool value : {true, false}) {
      AffineIneq c = eps_reduce({to_affine(literal_constraint(m.literals[i], value))}, epsilon)[0];
      Row r = homogeneous_row(m.var_name(m.literal_var(i)) + (value ? ".on" : ".off"), c);
      r.when = std::pair{m.literal_var(i), value ? 1 : 0};
      m.rows.push_back(std::move(r));
    }
    if (i + 1 < m.literals.size() && m.literals[i].hyperplane == m.literals[i + 1].hyperplane) {
      // [h > 0] <= [h >= 0]
      Row r;
      r.name = m.var_name(m.literal_var(i)) + ".order";
      r.terms = {{m.literal_var(i), 1}, {m.literal_var(i + 1), -1}};
      r.rhs = 0;
      m.rows.push_back(std::move(r));
    }
  }

  for (std::size_t k = 0; k < m.regions.size(); ++k) {
    const RegionLink& reg = m.regions[k];
    if (reg.literals.empty()) continue;
    std::size_t rv = m.region_var(k);
    std::string base = m.var_name(rv);
    Row all;
    all.name = base + ".all";
    all.terms.emplace_back(rv, 1);
    Rat negated = 0;
    for (const LiteralUse& u : reg.literals) {
      std::size_t lv = m.literal_var(u.literal);
      Row each;
      each.name = base + ".needs." + m.var_name(lv);
      if (u.value) {
        each.terms = {{lv, 1}, {rv, -1}};
        each.rhs = 0;
        all.terms.emplace_back(lv, -1);
      } else {
        each.terms = {{lv, -1}, {rv, -1}};
        each.rhs = -1;
        all.terms.emplace_back(lv, 1);
        negated += 1;
      }
      m.rows.push_back(std::move(each));
    }
    all.rhs = negated - Rat(static_cast<long>(reg.literals.size()) - 1);
    m.rows.push_back(std::move(all));
  }

  if (include_cap) {
    Row cap;
    cap.name = "cap";
    for (std::size_t k = 0; k < m.regions.size(); ++k)
      cap.terms.emplace_back(m.region_var(k), -m.regions[k].coefficient);
    cap.rhs = m.offset;
    m.rows.push_back(std::move(cap));
  }
  return m;
}

MilpModel build_milp_full(int n, const Substitution& s, const Substitution& t, const Region& ambient,
                          bool include_cap, const ExpandOptions& opts) {
  PiecewiseSum ps = build_delta(n, s, t, ambient, opts);
  ps.constant = -alpha(n);
  return build_milp(ps, include_cap);
}

MilpModel build_milp_h_diff(int n, const Substitution& s, const Substitution& t,
                            const Region& ambient, const ExpandOptions& opts) {
  return build_milp(build_level_difference(n, s, t, ambient, opts), false);
}

Rat objective_value(const MilpModel& m, const Assignment& a) {
  Rat v = m.offset;
  for (std::size_t k = 0; k < m.regions.size(); ++k)
    if (a.at(m.region_var(k) - 3) == 1) v += m.regions[k].coefficient;
  return v;
}

namespace {

Rat value_of(std::size_t var, const Point& p, const Assignment& a) {
  if (var == 0) return p.x;
  if (var == 1) return p.y;
  if (var == 2) return p.z;
  return a[var - 3];
}

}  // namespace

std::optional<std::string> first_violation(const MilpModel& m, const Point& p, const Assignment& a) {
  if (a.size() != m.num_vars() - 3) return "assignment size";
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && a[i] != 1) return "binary " + m.var_name(i + 3);
  for (const Row& r : m.rows) {
    if (r.when && value_of(r.when->first, p, a) != r.when->second) continue;
    Rat lhs = 0;
    for (const auto& [v, c] : r.terms) lhs += c * value_of(v, p, a);
    if (lhs < r.rhs) return r.name;
  }
  if (m.cap && objective_value(m, a) > 0) return "cap";
  return std::nullopt;
}

std::vector<Row> big_m_rows(const MilpModel& m, const Rat& box) {
  if (box <= 0) throw std::invalid_argument("big_m_rows: box must be positive");
  std::vector<Row> out;
  for (const Row& r : m.rows) {
    if (!r.when) {
      out.push_back(r);
      continue;
    }
    Rat lowest = 0;
    for (const auto& [v, c] : r.terms) lowest += v < 3 ? Rat(-abs(c) * box) : Rat(std::min(Rat(0), c));
    Rat big = std::max(Rat(0), Rat(r.rhs - lowest));
    Row b = r;
    b.when.reset();
    auto [var, val] = *r.when;
    if (val == 1) {
      b.terms.emplace_back(var, -big);
      b.rhs = r.rhs - big;
    } else {
      b.terms.emplace_back(var, big);
    }
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

Int denominator_lcm(const std::vector<Rat>& vs) {
  Int l = 1;
  for (const Rat& v : vs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

void write_linear(std::ostream& os, const MilpModel& m, const std::vector<std::pair<std::size_t, Rat>>& terms,
                  const Int& scale) {
  bool first = true;
  for (const auto& [v, c] : terms) {
    Int k = Rat(c * scale).get_num();
    if (k == 0) continue;
    os << (k < 0 ? " - " : (first ? " " : " + ")) << Int(abs(k)).get_str() << ' ' << m.var_name(v);
    first = false;
  }
  if (first) os << " 0 x";
}

}  // namespace

std::string export_lp(const MilpModel& m, const Rat& box) {
  if (box.get_den() != 1) throw std::invalid_argument("export_lp: box must be an integer");
  std::vector<Row> rows = big_m_rows(m, box);
  std::ostringstream os;
  os << "\\ objective offset " << to_string(m.offset) << "\n";
  os << "Minimize\n obj:";
  std::vector<std::pair<std::size_t, Rat>> obj;
  std::vector<Rat> coefs;
  for (std::size_t k = 0; k < m.regions.size(); ++k) {
    obj.emplace_back(m.region_var(k), m.regions[k].coefficient);
    coefs.push_back(m.regions[k].coefficient);
  }
  write_linear(os, m, obj, denominator_lcm(coefs));
  os << "\n\\ objective scaled by " << to_string(denominator_lcm(coefs)) << "\nSubject To\n";
  for (const Row& r : rows) {
    std::vector<Rat> vs{r.rhs};
    for (const auto& t : r.terms) vs.push_back(t.second);
    Int scale = denominator_lcm(vs);
    os << ' ' << r.name << ':';
    write_linear(os, m, r.terms, scale);
    os << " >= " << Rat(r.rhs * scale).get_num().get_str() << "\n";
  }
  os << "Bounds\n";
  for (const char* v : {"x", "y", "z"}) os << ' ' << to_string(Rat(-box)) << " <= " << v << " <= " << to_string(box) << "\n";
  os << "Binaries\n";
  for (std::size_t v = 3; v < m.num_vars(); ++v) os << ' ' << m.var_name(v) << "\n";
  os << "End\n";
  return os.str();
}

}  // namespace allin
