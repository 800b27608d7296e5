#include "allin/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace allin {

namespace {

struct Affine {
  LinForm form;
  Int constant = 0;
  std::size_t pos = 0;
  std::size_t constant_pos = 0;
};

enum class Cmp { Lt, Le, Gt, Ge, Eq };

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  std::size_t pos() const { return i_; }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) {
    skip();
    throw ParseError(what, i_);
  }

  Affine expression() {
    Affine e;
    e.pos = (skip(), i_);
    bool first = true;
    for (;;) {
      int sign = 1;
      if (accept('+')) {
      } else if (accept('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      term(e, sign);
      first = false;
    }
    return e;
  }

  std::optional<Cmp> comparison() {
    skip();
    if (i_ >= s_.size()) return std::nullopt;
    char c = s_[i_];
    bool eq_next = i_ + 1 < s_.size() && s_[i_ + 1] == '=';
    if (c == '<') return i_ += eq_next ? 2 : 1, eq_next ? Cmp::Le : Cmp::Lt;
    if (c == '>') return i_ += eq_next ? 2 : 1, eq_next ? Cmp::Ge : Cmp::Gt;
    if (c == '=') return i_ += eq_next ? 2 : 1, Cmp::Eq;
    return std::nullopt;
  }

 private:
  void term(Affine& e, int sign) {
    skip();
    std::size_t start = i_;
    Int coef = 1;
    bool digits = false;
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      coef = Int(std::string(s_.substr(i_, j - i_)));
      i_ = j;
      digits = true;
      accept('*');
    }
    skip();
    if (i_ < s_.size() && (s_[i_] == 'x' || s_[i_] == 'y' || s_[i_] == 'z')) {
      char v = s_[i_++];
      Int k = sign * coef;
      LinForm add = v == 'x' ? LinForm(k, 0, 0) : v == 'y' ? LinForm(0, k, 0) : LinForm(0, 0, k);
      e.form = e.form + add;
      return;
    }
    if (!digits) {
      i_ = start;
      fail(i_ < s_.size() ? std::string("unexpected '") + s_[i_] + "'" : "unexpected end of input");
    }
    if (e.constant == 0) e.constant_pos = start;
    e.constant += sign * coef;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

LinForm homogeneous(const Affine& e, const char* what) {
  if (e.constant != 0) throw ParseError(std::string(what) + " has a constant term", e.constant_pos);
  return e.form;
}

void add_comparison(std::vector<Ineq>& out, const Affine& lhs, Cmp op, const Affine& rhs) {
  Affine d{lhs.form - rhs.form, lhs.constant - rhs.constant, lhs.pos,
           lhs.constant != 0 ? lhs.constant_pos : rhs.constant_pos};
  LinForm f = homogeneous(d, "constraint is not homogeneous; it");
  if (f.is_zero()) throw ParseError("constraint compares identical sides", lhs.pos);
  switch (op) {
    case Cmp::Lt: out.push_back(Ineq::lt(f)); break;
    case Cmp::Le: out.push_back(Ineq::le(f)); break;
    case Cmp::Gt: out.push_back(Ineq::gt(f)); break;
    case Cmp::Ge: out.push_back(Ineq::ge(f)); break;
    case Cmp::Eq:
      out.push_back(Ineq::ge(f));
      out.push_back(Ineq::le(f));
      break;
  }
}

}  // namespace

LinForm parse_form(std::string_view text) {
  Parser p(text);
  Affine e = p.expression();
  if (!p.done()) p.fail("trailing input");
  return homogeneous(e, "linear form");
}

Substitution parse_substitution(std::string_view text) {
  Parser p(text);
  bool paren = p.accept('(');
  LinForm f[3];
  for (int k = 0; k < 3; ++k) {
    if (k > 0) p.expect(',');
    f[k] = homogeneous(p.expression(), "substitution entry");
  }
  if (paren) p.expect(')');
  if (!p.done()) p.fail("trailing input");
  return {f[0], f[1], f[2]};
}

Region parse_region(std::string_view text) {
  Parser p(text);
  std::vector<Ineq> out;
  if (p.done()) return Region{};
  for (;;) {
    Affine lhs = p.expression();
    auto op = p.comparison();
    if (!op) p.fail("expected a comparison");
    while (op) {
      Affine rhs = p.expression();
      add_comparison(out, lhs, *op, rhs);
      lhs = rhs;
      op = p.comparison();
    }
    if (p.done()) break;
    if (!p.accept(',') && !p.accept(';')) p.fail("expected ',' or a comparison");
  }
  return Region(std::move(out));
}

std::string format_region(const Region& r) {
  std::string out;
  for (const Ineq& c : r.constraints()) {
    if (!out.empty()) out += ", ";
    out += to_string(c.form()) + (c.strict() ? " > 0" : " >= 0");
  }
  return out;
}

}  // namespace allin
