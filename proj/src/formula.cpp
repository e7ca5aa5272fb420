#include "recant/formula.hpp"

#include <algorithm>
#include <cctype>

#include "recant/error.hpp"

namespace recant {

// ---------------------------------------------------------------- construction

namespace {

std::shared_ptr<Node> make(Op op) {
  auto n = std::make_shared<Node>();
  n->op = op;
  return n;
}

}  // namespace

Expr scalar(Rational q) {
  auto n = make(Op::Scalar);
  n->scalar = std::move(q);
  return n;
}

Expr sum(std::vector<VertexId> indices, Expr body) {
  if (indices.empty()) return body;
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  auto n = make(Op::Sum);
  n->indices = std::move(indices);
  n->kids = {std::move(body)};
  return n;
}

Expr product(std::vector<Expr> factors) {
  auto n = make(Op::Product);
  n->kids = std::move(factors);
  return n;
}

Expr do_term(std::vector<ValueRef> targets, std::vector<ValueRef> regime) {
  auto n = make(Op::Do);
  n->targets = std::move(targets);
  n->given = std::move(regime);
  return n;
}

Expr obs_term(std::vector<ValueRef> targets, std::vector<ValueRef> given) {
  auto n = make(Op::Obs);
  n->targets = std::move(targets);
  n->given = std::move(given);
  return n;
}

Expr cond_mean(ValueRef target, std::vector<ValueRef> given) {
  auto n = make(Op::Obs);
  n->targets = {std::move(target)};
  n->given = std::move(given);
  n->mean = true;
  return n;
}

Expr expectation(VertexId outcome, Expr dist) {
  auto n = make(Op::Expect);
  n->outcome = outcome;
  n->kids = {std::move(dist)};
  return n;
}

Expr difference(Expr lhs, Expr rhs) {
  auto n = make(Op::Diff);
  n->kids = {std::move(lhs), std::move(rhs)};
  return n;
}

Expr quotient(Expr num, Expr den) {
  auto n = make(Op::Quot);
  n->kids = {std::move(num), std::move(den)};
  return n;
}

// ---------------------------------------------------------------- comparison

int compare(const ValueRef& a, const ValueRef& b) {
  if (a.vertex != b.vertex) return a.vertex < b.vertex ? -1 : 1;
  if (a.is_index() != b.is_index()) return a.is_index() ? -1 : 1;
  return a.label.compare(b.label) < 0 ? -1 : (a.label == b.label ? 0 : 1);
}

namespace {

template <typename T, typename Cmp>
int compare_seq(const std::vector<T>& a, const std::vector<T>& b, Cmp cmp) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (int c = cmp(a[i], b[i])) return c;
  return 0;
}

int cmp_value(const ValueRef& a, const ValueRef& b) { return compare(a, b); }
int cmp_expr(const Expr& a, const Expr& b) { return compare(a, b); }

}  // namespace

int compare(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  switch (a->op) {
    case Op::Scalar:
      return cmp(a->scalar, b->scalar) < 0 ? -1 : (a->scalar == b->scalar ? 0 : 1);
    case Op::Sum:
      if (a->indices != b->indices) return a->indices < b->indices ? -1 : 1;
      break;
    case Op::Do:
    case Op::Obs:
      if (a->mean != b->mean) return a->mean ? 1 : -1;
      if (int c = compare_seq(a->targets, b->targets, cmp_value)) return c;
      return compare_seq(a->given, b->given, cmp_value);
    case Op::Expect:
      if (a->outcome != b->outcome) return a->outcome < b->outcome ? -1 : 1;
      break;
    default:
      break;
  }
  return compare_seq(a->kids, b->kids, cmp_expr);
}

bool equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

VertexSet free_vertices(const Expr& e) {
  switch (e->op) {
    case Op::Scalar:
      return {};
    case Op::Sum:
      return free_vertices(e->kids[0]) - VertexSet(e->indices);
    case Op::Expect:
      return free_vertices(e->kids[0]) - VertexSet{e->outcome};
    case Op::Do:
    case Op::Obs: {
      std::vector<VertexId> ids;
      if (!e->mean)
        for (const auto& v : e->targets)
          if (v.is_index()) ids.push_back(v.vertex);
      for (const auto& v : e->given)
        if (v.is_index()) ids.push_back(v.vertex);
      return VertexSet(std::move(ids));
    }
    default: {
      VertexSet out;
      for (const auto& k : e->kids) out = out | free_vertices(k);
      return out;
    }
  }
}

Expr map_values(const Expr& e, const std::function<ValueRef(const ValueRef&)>& f) {
  auto n = std::make_shared<Node>(*e);
  for (auto& v : n->targets) v = f(v);
  for (auto& v : n->given) v = f(v);
  for (auto& k : n->kids) k = map_values(k, f);
  return n;
}

// ---------------------------------------------------------------- canonical form

namespace {

bool is_zero(const Expr& e) { return e->op == Op::Scalar && e->scalar == 0; }
bool is_one(const Expr& e) { return e->op == Op::Scalar && e->scalar == 1; }

void sort_exprs(std::vector<Expr>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
}

Expr canon(const Expr& e);

void signed_terms(const Expr& e, bool positive, std::vector<Expr>& pos, std::vector<Expr>& neg) {
  if (e->op == Op::Diff) {
    signed_terms(e->kids[0], positive, pos, neg);
    signed_terms(e->kids[1], !positive, pos, neg);
    return;
  }
  if (is_zero(e)) return;
  (positive ? pos : neg).push_back(e);
}

Expr canon_diff(const Expr& e) {
  std::vector<Expr> pos, neg;
  signed_terms(canon(e->kids[0]), true, pos, neg);
  signed_terms(canon(e->kids[1]), false, pos, neg);
  for (std::size_t i = 0; i < pos.size();) {
    auto it = std::find_if(neg.begin(), neg.end(), [&](const Expr& n) { return equal(n, pos[i]); });
    if (it != neg.end()) {
      neg.erase(it);
      pos.erase(pos.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  sort_exprs(pos);
  sort_exprs(neg);
  if (pos.empty() && neg.empty()) return scalar(0);
  // Alternate p0 - n0 + p1 - n1 ... as right-nested differences.
  std::vector<Expr> items;
  for (std::size_t i = 0; i < std::max(pos.size(), neg.size()); ++i) {
    items.push_back(i < pos.size() ? pos[i] : scalar(0));
    items.push_back(i < neg.size() ? neg[i] : scalar(0));
  }
  if (is_zero(items.back())) items.pop_back();
  Expr acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) acc = difference(items[i], acc);
  return acc;
}

Expr canon_product(const Expr& e) {
  std::vector<Expr> factors;
  Rational coeff = 1;
  auto absorb = [&](auto&& self, const Expr& f) -> void {
    if (f->op == Op::Product) {
      for (const auto& k : f->kids) self(self, k);
    } else if (f->op == Op::Scalar) {
      coeff *= f->scalar;
    } else {
      factors.push_back(f);
    }
  };
  for (const auto& k : e->kids) absorb(absorb, canon(k));
  if (coeff == 0) return scalar(0);

  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i]->op != Op::Diff) continue;
    auto with = [&](const Expr& replacement) {
      std::vector<Expr> fs = factors;
      fs[i] = replacement;
      if (coeff != 1) fs.push_back(scalar(coeff));
      return product(std::move(fs));
    };
    return canon(difference(with(factors[i]->kids[0]), with(factors[i]->kids[1])));
  }

  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i]->op != Op::Sum) continue;
    VertexSet others;
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i) others = others | free_vertices(factors[j]);
    if (VertexSet(factors[i]->indices).intersects(others)) continue;
    std::vector<Expr> fs = factors;
    fs[i] = factors[i]->kids[0];
    if (coeff != 1) fs.push_back(scalar(coeff));
    return canon(sum(factors[i]->indices, product(std::move(fs))));
  }

  sort_exprs(factors);
  if (coeff != 1) factors.insert(factors.begin(), scalar(coeff));
  if (factors.empty()) return scalar(coeff);
  if (factors.size() == 1) return factors[0];
  return product(std::move(factors));
}

Expr canon_sum(const Expr& e) {
  Expr body = canon(e->kids[0]);
  if (is_zero(body)) return body;
  if (body->op == Op::Diff)
    return canon(difference(sum(e->indices, body->kids[0]), sum(e->indices, body->kids[1])));
  std::vector<VertexId> idx = e->indices;
  if (body->op == Op::Sum && !VertexSet(idx).intersects(VertexSet(body->indices))) {
    idx.insert(idx.end(), body->indices.begin(), body->indices.end());
    body = body->kids[0];
  }
  return sum(std::move(idx), body);
}

bool single_target(const Expr& f, VertexId y) {
  return f->op == Op::Obs && !f->mean && f->targets.size() == 1 && f->targets[0].is_index() &&
         f->targets[0].vertex == y;
}

Expr canon_expect(const Expr& e) {
  const VertexId y = e->outcome;
  Expr d = canon(e->kids[0]);
  if (is_zero(d)) return d;
  if (d->op == Op::Diff)
    return canon(difference(expectation(y, d->kids[0]), expectation(y, d->kids[1])));
  if (d->op == Op::Sum && !VertexSet(d->indices).contains(y))
    return canon(sum(d->indices, expectation(y, d->kids[0])));
  if (single_target(d, y)) return cond_mean(d->targets[0], d->given);
  if (d->op == Op::Product) {
    std::size_t hits = 0, at = 0;
    for (std::size_t i = 0; i < d->kids.size(); ++i)
      if (free_vertices(d->kids[i]).contains(y)) {
        ++hits;
        at = i;
      }
    if (hits == 1 && single_target(d->kids[at], y)) {
      std::vector<Expr> fs = d->kids;
      fs[at] = cond_mean(d->kids[at]->targets[0], d->kids[at]->given);
      return canon(product(std::move(fs)));
    }
  }
  return expectation(y, d);
}

Expr canon(const Expr& e) {
  switch (e->op) {
    case Op::Scalar:
      return e;
    case Op::Do:
    case Op::Obs: {
      auto n = std::make_shared<Node>(*e);
      auto by_vertex = [](const ValueRef& a, const ValueRef& b) { return compare(a, b) < 0; };
      std::stable_sort(n->targets.begin(), n->targets.end(), by_vertex);
      std::stable_sort(n->given.begin(), n->given.end(), by_vertex);
      return n;
    }
    case Op::Quot: {
      Expr num = canon(e->kids[0]);
      Expr den = canon(e->kids[1]);
      if (is_one(den)) return num;
      return quotient(num, den);
    }
    case Op::Diff:
      return canon_diff(e);
    case Op::Product:
      return canon_product(e);
    case Op::Sum:
      return canon_sum(e);
    case Op::Expect:
      return canon_expect(e);
  }
  return e;
}

}  // namespace

Expr canonicalize(const Expr& e) {
  Expr current = canon(e);
  for (int i = 0; i < 64; ++i) {
    Expr next = canon(current);
    if (equal(next, current)) return next;
    current = next;
  }
  return current;
}

// ---------------------------------------------------------------- rendering

namespace {

enum class Ctx { Top, Factor, SumBody, DiffRight };

class Renderer {
 public:
  Renderer(const Admg& g, Style s) : g_(g), latex_(s == Style::Latex) {}

  std::string expr(const Expr& e, Ctx ctx) const {
    switch (e->op) {
      case Op::Scalar:
        return to_string(e->scalar);
      case Op::Sum: {
        std::string s = sum_prefix(e->indices) + " " + expr(e->kids[0], Ctx::SumBody);
        return ctx == Ctx::Factor ? wrap(s) : s;
      }
      case Op::Product: {
        std::string s;
        for (std::size_t i = 0; i < e->kids.size(); ++i) {
          if (i) s += " ";
          s += expr(e->kids[i], Ctx::Factor);
        }
        return ctx == Ctx::Factor ? wrap(s) : s;
      }
      case Op::Diff: {
        std::string s = expr(e->kids[0], Ctx::Top) + " - " + expr(e->kids[1], Ctx::DiffRight);
        return ctx == Ctx::Top ? s : wrap(s);
      }
      case Op::Do:
        return "p(" + values(e->targets) + bar() + (latex_ ? "\\mathrm{do}(" : "do(") +
               values(e->given) + "))";
      case Op::Obs: {
        std::string head = e->mean ? (latex_ ? "\\mathbb{E}[" : "E[") : "p(";
        std::string s = head + values(e->targets);
        if (!e->given.empty()) s += bar() + values(e->given);
        return s + (e->mean ? "]" : ")");
      }
      case Op::Expect:
        if (latex_)
          return "\\mathbb{E}_{" + g_.name(e->outcome) + "}\\left[" + expr(e->kids[0], Ctx::Top) +
                 "\\right]";
        return "E_" + g_.name(e->outcome) + "[" + expr(e->kids[0], Ctx::Top) + "]";
      case Op::Quot:
        return std::string(latex_ ? "\\frac{" : "frac{") + expr(e->kids[0], Ctx::Top) + "}{" +
               expr(e->kids[1], Ctx::Top) + "}";
    }
    return {};
  }

 private:
  std::string wrap(const std::string& s) const {
    return latex_ ? "\\left(" + s + "\\right)" : "(" + s + ")";
  }
  std::string bar() const { return latex_ ? " \\mid " : " | "; }

  std::string sum_prefix(const std::vector<VertexId>& idx) const {
    std::string names;
    for (std::size_t i = 0; i < idx.size(); ++i) names += (i ? "," : "") + g_.name(idx[i]);
    if (latex_) return "\\sum_{" + names + "}";
    return idx.size() == 1 ? "Σ_" + names : "Σ_{" + names + "}";
  }

  std::string values(const std::vector<ValueRef>& vs) const {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i) s += ", ";
      s += g_.name(vs[i].vertex);
      if (!vs[i].is_index()) s += "=" + vs[i].label;
    }
    return s;
  }

  const Admg& g_;
  bool latex_;
};

}  // namespace

std::string render(const Admg& g, const Expr& e, Style style) {
  return Renderer(g, style).expr(e, Ctx::Top);
}

// ---------------------------------------------------------------- parsing

namespace {

class FormulaParser {
 public:
  FormulaParser(const Admg& g, std::string_view text) : g_(g), s_(text) {}

  Expr run() {
    Expr e = parse_expr();
    ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const char* code = "F001") const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(s_[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw ParseError(code, line, col, msg);
  }

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at(char c) {
    ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool at_sigma() {
    ws();
    return s_.substr(pos_, 2) == "\xCE\xA3";
  }
  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string ident() {
    ws();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected a name");
    std::size_t b = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  VertexId vertex(const std::string& name) {
    auto v = g_.find(name);
    if (!v) {
      pos_ -= name.size();
      fail("unknown vertex '" + name + "'", "F002");
    }
    return *v;
  }

  Expr parse_expr() {
    Expr lhs = parse_prod();
    while (at('-')) {
      ++pos_;
      lhs = difference(lhs, parse_prod());
    }
    return lhs;
  }

  Expr parse_prod() {
    std::vector<Expr> fs;
    for (;;) {
      ws();
      if (pos_ >= s_.size()) break;
      const char c = s_[pos_];
      if (c == ')' || c == ']' || c == '}' || c == '-') break;
      fs.push_back(parse_factor());
    }
    if (fs.empty()) fail("expected a factor");
    return fs.size() == 1 ? fs[0] : product(std::move(fs));
  }

  Expr parse_sum_after_underscore() {
    std::vector<VertexId> idx;
    if (at('{')) {
      ++pos_;
      idx.push_back(vertex(ident()));
      while (at(',')) {
        ++pos_;
        idx.push_back(vertex(ident()));
      }
      expect('}');
    } else {
      idx.push_back(vertex(ident()));
    }
    return sum(std::move(idx), parse_prod());
  }

  Expr parse_factor() {
    ws();
    if (at('(')) {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (at_sigma()) {
      pos_ += 2;
      if (s_.substr(pos_, 1) != "_") fail("expected '_' after summation sign");
      ++pos_;
      return parse_sum_after_underscore();
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t b = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
        ++pos_;
      try {
        return scalar(parse_rational(s_.substr(b, pos_ - b)));
      } catch (const std::invalid_argument& ex) {
        fail(ex.what());
      }
    }
    const std::size_t start = pos_;
    const std::string word = ident();
    if (word == "p" && at('(')) return parse_term();
    if (word == "E" && at('[')) {
      ++pos_;
      ValueRef target = value();
      std::vector<ValueRef> given;
      if (at('|')) {
        ++pos_;
        given = value_list(']');
      }
      expect(']');
      return cond_mean(std::move(target), std::move(given));
    }
    if (word.rfind("E_", 0) == 0 && word.size() > 2) {
      const VertexId y = vertex(word.substr(2));
      expect('[');
      Expr body = parse_expr();
      expect(']');
      return expectation(y, body);
    }
    if (word == "frac" && at('{')) {
      ++pos_;
      Expr num = parse_expr();
      expect('}');
      expect('{');
      Expr den = parse_expr();
      expect('}');
      return quotient(num, den);
    }
    if (word == "sum_" ) return parse_sum_after_underscore();
    if (word.rfind("sum_", 0) == 0) {
      pos_ = start + 4;
      return parse_sum_after_underscore();
    }
    pos_ = start;
    fail("unexpected '" + word + "'");
  }

  Expr parse_term() {
    expect('(');
    std::vector<ValueRef> targets = value_list(')');
    if (targets.empty()) fail("a term needs at least one target");
    std::vector<ValueRef> given;
    bool is_do = false;
    if (at('|')) {
      ++pos_;
      ws();
      const std::size_t save = pos_;
      if (s_.substr(pos_, 2) == "do") {
        pos_ += 2;
        if (at('(')) {
          ++pos_;
          is_do = true;
          given = value_list(')');
          expect(')');
        } else {
          pos_ = save;
        }
      }
      if (!is_do) given = value_list(')');
    }
    expect(')');
    return is_do ? do_term(std::move(targets), std::move(given))
                 : obs_term(std::move(targets), std::move(given));
  }

  std::vector<ValueRef> value_list(char close) {
    std::vector<ValueRef> out;
    if (at(close) || at('|')) return out;
    out.push_back(value());
    while (at(',')) {
      ++pos_;
      out.push_back(value());
    }
    return out;
  }

  ValueRef value() {
    const VertexId v = vertex(ident());
    if (!at('=')) return ValueRef::index(v);
    ++pos_;
    ws();
    std::size_t b = pos_;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '.' ||
          c == '\'' || c == '+' || (c == '-' && pos_ == b))
        ++pos_;
      else
        break;
    }
    if (b == pos_) fail("expected a value label");
    return ValueRef::literal(v, std::string(s_.substr(b, pos_ - b)));
  }

  const Admg& g_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_formula(const Admg& g, std::string_view text) { return FormulaParser(g, text).run(); }

}  // namespace recant
