#include "recant/identify.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace recant {

std::string describe(const Admg& g, const Hedge& h) {
  return "Q[" + format_set(g, h.target) + "] is not identifiable from Q[" + format_set(g, h.district) +
         "] under do" + format_set(g, h.regime);
}

namespace {

// One factor of a district kernel. `head` is a vertex over which the factor
// sums to one for every value of its other arguments.
struct Factor {
  Expr expr;
  VertexId head;
  VertexSet vars;
};

// Sum over `sums` of the product of `factors`.
struct Kernel {
  VertexSet sums;
  std::vector<Factor> factors;
};

Expr to_expr(const Kernel& k) {
  std::vector<Expr> fs;
  for (const auto& f : k.factors) fs.push_back(f.expr);
  Expr body = fs.empty() ? scalar(1) : fs.size() == 1 ? fs[0] : product(std::move(fs));
  return sum(k.sums.ids(), body);
}

// Free occurrences of mapped vertices are replaced; bound ones are left alone.
Expr substitute_free(const Expr& e, const std::map<VertexId, ValueRef>& subst) {
  if (subst.empty()) return e;
  auto n = std::make_shared<Node>(*e);
  auto fix = [&](ValueRef& v) {
    if (!v.is_index()) return;
    if (auto it = subst.find(v.vertex); it != subst.end()) v = it->second;
  };
  switch (e->op) {
    case Op::Sum:
    case Op::Expect: {
      std::map<VertexId, ValueRef> inner = subst;
      if (e->op == Op::Sum)
        for (VertexId v : e->indices) inner.erase(v);
      else
        inner.erase(e->outcome);
      n->kids[0] = substitute_free(e->kids[0], inner);
      return n;
    }
    case Op::Do:
    case Op::Obs:
      for (auto& v : n->targets) fix(v);
      for (auto& v : n->given) fix(v);
      return n;
    default:
      for (auto& k : n->kids) k = substitute_free(k, subst);
      return n;
  }
}

class Tian {
 public:
  Tian(const Admg& g, VertexSet ctx, VertexSet intervened)
      : g_(g), ctx_(std::move(ctx)), x_(std::move(intervened)), pos_(g.size(), 0) {
    const auto order = topological_order(g);
    for (std::size_t i = 0; i < order.size(); ++i) pos_[order[i]] = i;
  }

  // Q[D] for a district D of the graph restricted to D' (a subset of ctx).
  std::variant<Kernel, Hedge> block(const VertexSet& d) const {
    const VertexSet s = district_of(g_, d.front(), ctx_);
    return identify(d, s, district_kernel(s));
  }

 private:
  VertexSet prefix(const VertexSet& within, VertexId v, bool inclusive) const {
    std::vector<VertexId> out;
    for (VertexId u : within)
      if (pos_[u] < pos_[v] || (inclusive && u == v)) out.push_back(u);
    return VertexSet(std::move(out));
  }

  // Product over v in S of p(v | Markov blanket of v in its topological prefix,
  // plus every intervened vertex preceding v).
  Kernel district_kernel(const VertexSet& s) const {
    Kernel k;
    for (VertexId v : s) {
      const VertexSet pre = prefix(ctx_, v, true);
      const VertexSet t = district_of(g_, v, pre);
      VertexSet cond = ((t | parents(g_, t)) | (x_ & pre)) - VertexSet{v};
      std::vector<ValueRef> given;
      for (VertexId c : cond) given.push_back(ValueRef::index(c));
      Expr e = obs_term({ValueRef::index(v)}, std::move(given));
      k.factors.push_back({e, v, cond | VertexSet{v}});
    }
    return k;
  }

  std::vector<VertexId> reverse_topological(const VertexSet& s) const {
    std::vector<VertexId> out(s.begin(), s.end());
    std::sort(out.begin(), out.end(), [&](VertexId a, VertexId b) { return pos_[a] > pos_[b]; });
    return out;
  }

  // Adds `w` to the pending sums and drops every summed vertex whose only
  // occurrence is as the head of its own factor.
  Kernel marginalize(Kernel k, const VertexSet& w) const {
    k.sums = k.sums | w;
    for (bool changed = true; changed;) {
      changed = false;
      for (VertexId v : reverse_topological(k.sums)) {
        std::size_t hits = 0, at = 0;
        for (std::size_t i = 0; i < k.factors.size(); ++i)
          if (k.factors[i].vars.contains(v)) {
            ++hits;
            at = i;
          }
        if (hits == 1 && k.factors[at].head == v) {
          k.factors.erase(k.factors.begin() + static_cast<std::ptrdiff_t>(at));
          k.sums.erase(v);
          changed = true;
        }
      }
    }
    return k;
  }

  std::variant<Kernel, Hedge> identify(const VertexSet& c, const VertexSet& t, const Kernel& q) const {
    const VertexSet a = ancestors(g_, c, t);
    if (a == c) return marginalize(q, t - c);
    if (a == t) return Hedge{c, t, x_};

    const Kernel qa = marginalize(q, t - a);
    const VertexSet t2 = district_of(g_, c.front(), a);
    Kernel next;
    for (VertexId v : t2) {
      const VertexSet upto = prefix(a, v, true);
      const Kernel num = marginalize(qa, a - upto);
      const Kernel den = marginalize(qa, a - (upto - VertexSet{v}));
      if (auto leftover = cancel(num, den)) {
        for (auto& f : *leftover) next.factors.push_back(std::move(f));
      } else {
        Expr e = quotient(to_expr(num), to_expr(den));
        next.factors.push_back({e, v, free_vertices(e)});
      }
    }
    return identify(c, t2, next);
  }

  // num / den as plain factors when den's factors all occur in num.
  static std::optional<std::vector<Factor>> cancel(const Kernel& num, const Kernel& den) {
    if (!num.sums.empty() || !den.sums.empty()) return std::nullopt;
    std::vector<Factor> rest = num.factors;
    for (const auto& f : den.factors) {
      auto it = std::find_if(rest.begin(), rest.end(), [&](const Factor& r) { return equal(r.expr, f.expr); });
      if (it == rest.end()) return std::nullopt;
      rest.erase(it);
    }
    return rest;
  }

  const Admg& g_;
  VertexSet ctx_;
  VertexSet x_;
  std::vector<std::size_t> pos_;
};

struct Plan {
  VertexSet ctx;                   // An(targets)
  VertexSet intervened;            // regime vertices inside ctx
  VertexSet pruned;                // D' = An(targets) once the regime is removed
  std::vector<VertexSet> blocks;   // districts of G restricted to D'
};

Plan make_plan(const Admg& g, const VertexSet& targets, const VertexSet& regime) {
  Plan p;
  p.ctx = ancestors(g, targets);
  p.intervened = regime & p.ctx;
  p.pruned = ancestors(g, targets, p.ctx - p.intervened);
  p.blocks = districts(g, p.pruned);
  return p;
}

// Block expressions with every vertex still an unbound index.
std::variant<std::vector<Expr>, Hedge> identify_blocks(const Admg& g, const Plan& plan) {
  Tian tian(g, plan.ctx, plan.intervened);
  std::vector<Expr> out;
  for (const auto& d : plan.blocks) {
    auto r = tian.block(d);
    if (auto* h = std::get_if<Hedge>(&r)) return *h;
    out.push_back(to_expr(std::get<Kernel>(r)));
  }
  return out;
}

// Binds intervened vertices per `bind`; free vertices that are neither bound nor
// allowed become the first domain value (they cannot influence the result).
Expr bind_block(const Expr& block, const std::map<VertexId, ValueRef>& bind, const VertexSet& allowed) {
  std::map<VertexId, ValueRef> subst = bind;
  for (VertexId v : free_vertices(block))
    if (!bind.count(v) && !allowed.contains(v)) subst.emplace(v, ValueRef::literal(v, "#0"));
  return substitute_free(block, subst);
}

std::vector<VertexId> sorted_ids(const VertexSet& s) { return s.ids(); }

}  // namespace

Identification identify_interventional(const Admg& g, const Expr& term) {
  if (term->op != Op::Do) throw std::invalid_argument("identify_interventional expects an interventional term");
  std::vector<VertexId> t_ids, r_ids;
  std::map<VertexId, ValueRef> bind;
  for (const auto& v : term->targets) t_ids.push_back(v.vertex);
  for (const auto& v : term->given) {
    r_ids.push_back(v.vertex);
    bind[v.vertex] = v;
  }
  const VertexSet targets(t_ids), regime(r_ids);
  if (targets.intersects(regime)) throw std::invalid_argument("target and regime overlap");

  const Plan plan = make_plan(g, targets, regime);
  auto blocks = identify_blocks(g, plan);
  if (auto* h = std::get_if<Hedge>(&blocks)) return *h;

  std::vector<Expr> factors;
  for (const auto& b : std::get<std::vector<Expr>>(blocks))
    factors.push_back(bind_block(b, bind, plan.pruned));
  Expr body = factors.size() == 1 ? factors[0] : product(std::move(factors));
  Expr out = sum(sorted_ids(plan.pruned - targets), body);
  std::map<VertexId, ValueRef> fixed_targets;
  for (const auto& v : term->targets)
    if (!v.is_index()) fixed_targets[v.vertex] = v;
  return canonicalize(substitute_free(out, fixed_targets));
}

Expr total_effect_term(const Admg& g, const VertexSet& A, const VertexSet& Y,
                       const std::map<VertexId, std::string>& values) {
  std::vector<ValueRef> targets, regime;
  for (VertexId y : Y) targets.push_back(ValueRef::index(y));
  for (VertexId a : A) {
    auto it = values.find(a);
    if (it == values.end()) throw std::invalid_argument("no value for treatment '" + g.name(a) + "'");
    regime.push_back(ValueRef::literal(a, it->second));
  }
  return do_term(std::move(targets), std::move(regime));
}

namespace {

void require_no_recanting(const Admg& g, const PathBundle& bundle) {
  auto reports = find_recanting_districts(g, bundle);
  if (!reports.empty()) throw RecantingDistrictError(std::move(reports));
}

enum class Binding { Active, Baseline };

// Value used for treatment `a` inside the factors of district `d`.
struct DistrictBinder {
  const Admg& g;
  const PathBundle& bundle;
  const TreatmentValues& values;

  std::optional<Binding> edge_binding(VertexId a, const VertexSet& d) const {
    bool green = false, blue = false;
    for (VertexId z : g.children(a)) {
      if (!d.contains(z)) continue;
      (bundle.is_green(a, z) ? green : blue) = true;
    }
    if (green && blue) throw std::logic_error("mixed treatment colors into a district");
    if (!green && !blue) return std::nullopt;
    return green ? Binding::Active : Binding::Baseline;
  }

  Binding binding(VertexId a, const VertexSet& d) const {
    if (auto b = edge_binding(a, d)) return *b;
    bool any = false, all_baseline = true;
    for (VertexId t : bundle.treatments()) {
      auto b = edge_binding(t, d);
      if (!b) continue;
      any = true;
      if (*b == Binding::Active) all_baseline = false;
    }
    if (any) return all_baseline ? Binding::Baseline : Binding::Active;
    return bundle.paths().empty() ? Binding::Baseline : Binding::Active;
  }

  ValueRef ref(VertexId a, const VertexSet& d) const {
    return binding(a, d) == Binding::Active ? ValueRef::active(a, values.active.at(a))
                                            : ValueRef::baseline(a, values.baseline.at(a));
  }
};

void require_values(const Admg& g, const PathBundle& bundle, const TreatmentValues& values) {
  for (VertexId a : bundle.treatments())
    if (!values.active.count(a) || !values.baseline.count(a))
      throw std::invalid_argument("missing active or baseline value for '" + g.name(a) + "'");
}

}  // namespace

Expr interventional_functional(const Admg& g, const PathBundle& bundle, const TreatmentValues& values) {
  require_values(g, bundle, values);
  require_no_recanting(g, bundle);
  const VertexSet& A = bundle.treatments();
  const VertexSet vstar = relevant_nodes(g, A, bundle.outcomes());
  DistrictBinder binder{g, bundle, values};
  std::vector<Expr> factors;
  for (const VertexSet& d : districts(g, vstar)) {
    std::vector<ValueRef> targets, regime;
    for (VertexId v : d) targets.push_back(ValueRef::index(v));
    for (VertexId p : parents(g, d) - d)
      regime.push_back(A.contains(p) ? binder.ref(p, d) : ValueRef::index(p));
    factors.push_back(do_term(std::move(targets), std::move(regime)));
  }
  Expr body = factors.size() == 1 ? factors[0] : product(std::move(factors));
  return sum(sorted_ids(vstar - bundle.outcomes()), body);
}

Identification identify_pse(const Admg& g, const PathBundle& bundle, const TreatmentValues& values) {
  require_values(g, bundle, values);
  require_no_recanting(g, bundle);
  const VertexSet& A = bundle.treatments();
  const VertexSet& Y = bundle.outcomes();
  DistrictBinder binder{g, bundle, values};

  // Substitution route: identify p(Y | do(A = active)) block by block, then
  // relabel each block's treatment values.
  const Plan plan = make_plan(g, Y, A);
  auto blocks = identify_blocks(g, plan);
  if (auto* h = std::get_if<Hedge>(&blocks)) return *h;
  const auto& raw = std::get<std::vector<Expr>>(blocks);
  std::vector<Expr> substituted;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::map<VertexId, ValueRef> bind;
    for (VertexId a : plan.intervened) bind[a] = ValueRef::active(a, values.active.at(a));
    Expr total_block = bind_block(raw[i], bind, plan.pruned);
    const VertexSet& d = plan.blocks[i];
    substituted.push_back(map_values(total_block, [&](const ValueRef& v) {
      return v.kind == ValueKind::Active ? binder.ref(v.vertex, d) : v;
    }));
  }
  Expr body = substituted.size() == 1 ? substituted[0] : product(substituted);
  Expr via_substitution = sum(sorted_ids(plan.pruned - Y), body);

  // Per-term route: identify each district term of the interventional
  // functional using that term's own regime values.
  const Expr functional = interventional_functional(g, bundle, values);
  const Expr fbody = functional->op == Op::Sum ? functional->kids[0] : functional;
  std::vector<Expr> terms = fbody->op == Op::Product ? fbody->kids : std::vector<Expr>{fbody};
  Tian tian(g, plan.ctx, plan.intervened);
  std::vector<Expr> identified;
  for (const auto& term : terms) {
    std::vector<VertexId> ids;
    for (const auto& t : term->targets) ids.push_back(t.vertex);
    const VertexSet d(ids);
    auto r = tian.block(d);
    if (auto* h = std::get_if<Hedge>(&r)) return *h;
    std::map<VertexId, ValueRef> bind;
    for (const auto& v : term->given)
      if (A.contains(v.vertex)) bind[v.vertex] = v;
    for (VertexId a : plan.intervened)
      if (!bind.count(a)) bind[a] = binder.ref(a, d);
    identified.push_back(bind_block(to_expr(std::get<Kernel>(r)), bind, plan.pruned));
  }
  Expr ibody = identified.size() == 1 ? identified[0] : product(identified);
  Expr via_terms = sum(sorted_ids(plan.pruned - Y), ibody);

  Expr canonical = canonicalize(via_terms);
  if (!equal(canonicalize(via_substitution), canonical)) throw std::logic_error("identification routes disagree");
  return canonical;
}

MediationEffects mediation_effects(const Admg& g, const PathBundle& bundle, const TreatmentValues& values) {
  if (bundle.outcomes().size() != 1) throw std::invalid_argument("mediation effects need a single outcome");
  const VertexId y = bundle.outcomes().front();
  const VertexSet& A = bundle.treatments();
  auto need = [&](Identification r) -> Expr {
    if (auto* h = std::get_if<Hedge>(&r)) throw NotIdentifiableError(*h, describe(g, *h));
    return std::get<Expr>(r);
  };
  const Expr f_pi = need(identify_pse(g, bundle, values));
  const Expr f_active = need(identify_interventional(g, total_effect_term(g, A, bundle.outcomes(), values.active)));
  const Expr f_baseline =
      need(identify_interventional(g, total_effect_term(g, A, bundle.outcomes(), values.baseline)));
  return {canonicalize(difference(expectation(y, f_pi), expectation(y, f_baseline))),
          canonicalize(difference(expectation(y, f_active), expectation(y, f_pi)))};
}

}  // namespace recant
