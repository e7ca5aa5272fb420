#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "recant/admg.hpp"
#include "recant/rational.hpp"

namespace recant {

enum class ValueKind { Index, Active, Baseline, Literal };

// A vertex occurrence inside a term. Index values are bound by an enclosing Sum
// or left free; the other kinds carry a value label. Labels of the form "#k"
// denote the k-th domain value. Equality ignores which kind of constant it is:
// an active "1" and a literal "1" denote the same event.
struct ValueRef {
  VertexId vertex = 0;
  ValueKind kind = ValueKind::Index;
  std::string label;

  bool is_index() const { return kind == ValueKind::Index; }
  static ValueRef index(VertexId v) { return {v, ValueKind::Index, {}}; }
  static ValueRef active(VertexId v, std::string l) { return {v, ValueKind::Active, std::move(l)}; }
  static ValueRef baseline(VertexId v, std::string l) { return {v, ValueKind::Baseline, std::move(l)}; }
  static ValueRef literal(VertexId v, std::string l) { return {v, ValueKind::Literal, std::move(l)}; }
};

int compare(const ValueRef& a, const ValueRef& b);
inline bool operator==(const ValueRef& a, const ValueRef& b) { return compare(a, b) == 0; }

enum class Op { Scalar, Sum, Product, Do, Obs, Expect, Diff, Quot };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::Scalar;
  Rational scalar;                 // Scalar
  std::vector<VertexId> indices;   // Sum, sorted
  std::vector<Expr> kids;          // Sum: body; Product: factors; Expect: dist; Diff/Quot: two
  std::vector<ValueRef> targets;   // Do, Obs
  std::vector<ValueRef> given;     // Do: regime; Obs: conditioning set
  bool mean = false;               // Obs: E[target | given] instead of p(target | given)
  VertexId outcome = 0;            // Expect
};

Expr scalar(Rational q);
Expr sum(std::vector<VertexId> indices, Expr body);  // no-op wrapper when indices is empty
Expr product(std::vector<Expr> factors);
Expr do_term(std::vector<ValueRef> targets, std::vector<ValueRef> regime);
Expr obs_term(std::vector<ValueRef> targets, std::vector<ValueRef> given);
Expr cond_mean(ValueRef target, std::vector<ValueRef> given);
Expr expectation(VertexId outcome, Expr dist);
Expr difference(Expr lhs, Expr rhs);
Expr quotient(Expr num, Expr den);

// Total structural order; 0 means structurally equal.
int compare(const Expr& a, const Expr& b);
bool equal(const Expr& a, const Expr& b);

// Index vertices occurring unbound.
VertexSet free_vertices(const Expr& e);

// Rewrites every ValueRef with f.
Expr map_values(const Expr& e, const std::function<ValueRef(const ValueRef&)>& f);

// Normal form used for formula comparison: flattened and sorted products,
// sums merged and pulled outward when no index clashes, products and sums
// distributed over differences, expectations pushed onto the single factor
// mentioning the outcome, equal terms of opposite sign cancelled. Idempotent.
Expr canonicalize(const Expr& e);

enum class Style { Text, Latex };
std::string render(const Admg& g, const Expr& e, Style style = Style::Text);

// Inverse of render(Text). Throws ParseError.
Expr parse_formula(const Admg& g, std::string_view text);

}  // namespace recant
