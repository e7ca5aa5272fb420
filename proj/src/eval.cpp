#include "recant/eval.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "recant/counterfactual.hpp"
#include "recant/error.hpp"

namespace recant {

Environment::Environment(const Admg& g, const DistTable& observational)
    : g_(g), domains_(g.size()), observed_(std::make_shared<Joint>()),
      interventional_(std::make_shared<std::map<Regime, Joint>>()) {
  if (observational.variables.size() != g.size())
    throw ModelError("observed table must cover every vertex exactly once");
  VertexSet seen;
  for (std::size_t c = 0; c < observational.variables.size(); ++c) {
    auto v = g.find(observational.variables[c]);
    if (!v) throw ModelError("observed table has unknown variable '" + observational.variables[c] + "'");
    if (seen.contains(*v)) throw ModelError("observed table repeats '" + observational.variables[c] + "'");
    seen.insert(*v);
    domains_[*v] = observational.domains[c];
    observed_->columns.push_back(*v);
  }
  observed_->table = observational;
}

Environment Environment::from_model(const DiscreteScm& m) {
  Environment env(m.graph(), observational_dist(m));
  auto model = std::make_shared<DiscreteScm>(m);
  env.set_interventional([model](const Regime& r) { return interventional_dist(*model, r); });
  return env;
}

void Environment::set_interventional(Provider p) {
  provider_ = std::move(p);
  interventional_->clear();
}

std::size_t Environment::value_index(VertexId v, const std::string& label) const {
  const auto& d = domains_.at(v);
  auto it = std::find(d.begin(), d.end(), label);
  if (it != d.end()) return static_cast<std::size_t>(it - d.begin());
  if (label.size() > 1 && label[0] == '#' &&
      std::all_of(label.begin() + 1, label.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    std::size_t k = std::stoul(label.substr(1));
    if (k < d.size()) return k;
  }
  throw ModelError("value '" + label + "' is not in the domain of '" + g_.name(v) + "'");
}

const std::vector<Rational>& Environment::marginal_of(Joint& j, const std::vector<VertexId>& vars) const {
  if (auto it = j.cache.find(vars); it != j.cache.end()) return it->second;
  std::vector<std::size_t> cols;
  std::size_t cells = 1;
  for (VertexId v : vars) {
    auto it = std::find(j.columns.begin(), j.columns.end(), v);
    if (it == j.columns.end()) throw ModelError("vertex '" + g_.name(v) + "' is not in the joint");
    cols.push_back(static_cast<std::size_t>(it - j.columns.begin()));
    cells *= domains_[v].size();
  }
  std::vector<Rational> out(cells, Rational(0));
  for (std::size_t i = 0; i < j.table.probs.size(); ++i) {
    if (j.table.probs[i] == 0) continue;
    auto a = j.table.assignment(i);
    std::size_t idx = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) idx = idx * domains_[vars[c]].size() + a[cols[c]];
    out[idx] += j.table.probs[i];
  }
  return j.cache.emplace(vars, std::move(out)).first->second;
}

const std::vector<Rational>& Environment::marginal(const std::vector<VertexId>& vars) const {
  return marginal_of(*observed_, vars);
}

const std::vector<Rational>& Environment::marginal(const Regime& regime, const std::vector<VertexId>& vars) const {
  if (regime.empty()) return marginal(vars);
  auto it = interventional_->find(regime);
  if (it == interventional_->end()) {
    if (!provider_) throw ModelError("formula contains a do-term but no interventional source is available");
    Joint j;
    j.table = provider_(regime);
    for (const auto& name : j.table.variables) j.columns.push_back(g_.id(name));
    for (std::size_t c = 0; c < j.columns.size(); ++c)
      if (j.table.domains[c] != domains_[j.columns[c]])
        throw ModelError("interventional table disagrees with the observed domains");
    it = interventional_->emplace(regime, std::move(j)).first;
  }
  return marginal_of(it->second, vars);
}

namespace {

// Undefined values come from conditioning on events of probability zero.
struct Val {
  Val(Rational v) : q(std::move(v)) {}
  Val(Rational v, bool u, std::string ev) : q(std::move(v)), undefined(u), event(std::move(ev)) {}
  Rational q;
  bool undefined = false;
  std::string event;
};

class Evaluator {
 public:
  explicit Evaluator(const Environment& env) : env_(env), bound_(env.graph().size()) {}

  void bind(VertexId v, std::size_t x) { bound_[v] = x; }
  void unbind(VertexId v) { bound_[v].reset(); }

  Val eval(const Expr& e) {
    switch (e->op) {
      case Op::Scalar:
        return {e->scalar};
      case Op::Sum:
        return eval_sum(e, 0);
      case Op::Product: {
        Val out{Rational(1)};
        std::optional<Val> bad;
        for (const auto& f : e->kids) {
          Val x = eval(f);
          if (x.undefined) {
            if (!bad) bad = x;
            continue;
          }
          if (x.q == 0) return {Rational(0)};
          out.q *= x.q;
        }
        return bad ? *bad : out;
      }
      case Op::Diff: {
        Val l = eval(e->kids[0]);
        if (l.undefined) return l;
        Val r = eval(e->kids[1]);
        if (r.undefined) return r;
        return {l.q - r.q};
      }
      case Op::Quot: {
        Val n = eval(e->kids[0]);
        Val d = eval(e->kids[1]);
        if (d.undefined) return d;
        if (d.q == 0) return {Rational(0), true, "a quotient denominator"};
        if (n.undefined) return n;
        return {n.q / d.q};
      }
      case Op::Obs:
        return eval_prob(e, Regime{});
      case Op::Do: {
        Regime r;
        for (const auto& ref : e->given) r[ref.vertex] = value_of(ref);
        return eval_prob(e, r);
      }
      case Op::Expect: {
        const VertexId y = e->outcome;
        auto saved = bound_[y];
        Val out{Rational(0)};
        for (std::size_t k = 0; k < env_.domain(y).size(); ++k) {
          bound_[y] = k;
          Val x = eval(e->kids[0]);
          if (x.undefined) {
            bound_[y] = saved;
            return x;
          }
          out.q += x.q * static_cast<long>(k);
        }
        bound_[y] = saved;
        return out;
      }
    }
    throw std::logic_error("unknown formula node");
  }

 private:
  std::size_t value_of(const ValueRef& r) const {
    if (r.is_index()) {
      if (!bound_[r.vertex]) throw std::logic_error("unbound vertex '" + env_.graph().name(r.vertex) + "'");
      return *bound_[r.vertex];
    }
    return env_.value_index(r.vertex, r.label);
  }

  Val eval_sum(const Expr& e, std::size_t i) {
    if (i == e->indices.size()) return eval(e->kids[0]);
    const VertexId v = e->indices[i];
    auto saved = bound_[v];
    Val out{Rational(0)};
    std::optional<Val> bad;
    for (std::size_t k = 0; k < env_.domain(v).size(); ++k) {
      bound_[v] = k;
      Val x = eval_sum(e, i + 1);
      if (x.undefined) {
        bad = x;
        break;
      }
      out.q += x.q;
    }
    bound_[v] = saved;
    return bad ? *bad : out;
  }

  // Collects an assignment; false when two refs disagree on a vertex.
  bool collect(const std::vector<ValueRef>& refs, std::map<VertexId, std::size_t>& into) const {
    for (const auto& r : refs) {
      std::size_t x = value_of(r);
      auto [it, fresh] = into.emplace(r.vertex, x);
      if (!fresh && it->second != x) return false;
    }
    return true;
  }

  Rational prob(const Regime& regime, const std::map<VertexId, std::size_t>& a) const {
    std::vector<VertexId> vars;
    std::size_t idx = 0;
    for (const auto& [v, x] : a) {
      if (auto it = regime.find(v); it != regime.end()) {
        if (it->second != x) return 0;
        continue;
      }
      vars.push_back(v);
    }
    for (VertexId v : vars) idx = idx * env_.domain(v).size() + a.at(v);
    if (vars.empty()) return 1;
    return env_.marginal(regime, vars)[idx];
  }

  Val eval_prob(const Expr& e, const Regime& regime) {
    std::map<VertexId, std::size_t> cond;
    if (e->op == Op::Obs && !collect(e->given, cond)) return {Rational(0), true, "contradictory conditioning"};
    const Rational pc = prob(regime, cond);
    if (pc == 0) return {Rational(0), true, describe(e)};
    if (e->mean) {
      const VertexId y = e->targets.at(0).vertex;
      Rational s = 0;
      for (std::size_t k = 0; k < env_.domain(y).size(); ++k) {
        auto joint = cond;
        auto [it, fresh] = joint.emplace(y, k);
        if (!fresh && it->second != k) continue;
        s += prob(regime, joint) * static_cast<long>(k);
      }
      return {s / pc};
    }
    auto joint = cond;
    if (!collect(e->targets, joint)) return {Rational(0)};
    return {prob(regime, joint) / pc};
  }

  std::string describe(const Expr& e) const {
    std::string s = "the event {";
    bool first = true;
    for (const auto& r : e->given) {
      if (!first) s += ", ";
      first = false;
      s += env_.graph().name(r.vertex) + "=" + env_.domain(r.vertex)[value_of(r)];
    }
    return s + "}";
  }

  const Environment& env_;
  std::vector<std::optional<std::size_t>> bound_;
};

}  // namespace

DistTable evaluate(const Expr& e, const Environment& env) {
  const VertexSet free = free_vertices(e);
  DistTable out;
  for (VertexId v : free) {
    out.variables.push_back(env.graph().name(v));
    out.domains.push_back(env.domain(v));
  }
  std::size_t cells = 1;
  for (const auto& d : out.domains) cells *= d.size();
  Evaluator ev(env);
  for (std::size_t i = 0; i < cells; ++i) {
    auto a = out.assignment(i);
    std::size_t c = 0;
    for (VertexId v : free) ev.bind(v, a[c++]);
    Val x = ev.eval(e);
    if (x.undefined) throw PositivityError("formula conditions on " + x.event + " of probability zero");
    out.probs.push_back(x.q);
  }
  return out;
}

Rational evaluate_scalar(const Expr& e, const Environment& env) {
  DistTable t = evaluate(e, env);
  if (!t.variables.empty()) throw std::invalid_argument("formula has free vertices");
  return t.probs.at(0);
}

Rational expected_value(const DistTable& t, const std::string& variable) {
  DistTable m = t.marginal({variable});
  Rational s = 0;
  for (std::size_t k = 0; k < m.probs.size(); ++k) s += m.probs[k] * static_cast<long>(k);
  return s;
}

DistTable g_formula(const Admg& g, const DistTable& observational, const Regime& regime) {
  if (!g.bidirected_edges().empty())
    throw std::invalid_argument("the truncated factorization needs a graph without bidirected edges");
  auto ref = [&](VertexId v) {
    if (auto it = regime.find(v); it != regime.end()) return ValueRef::literal(v, "#" + std::to_string(it->second));
    return ValueRef::index(v);
  };
  std::vector<Expr> factors;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (regime.count(v)) continue;
    std::vector<ValueRef> pa;
    for (VertexId p : g.parents(v)) pa.push_back(ref(p));
    factors.push_back(obs_term({ValueRef::index(v)}, std::move(pa)));
  }
  return evaluate(product(std::move(factors)), Environment(g, observational));
}

namespace {

Expr identified(const Admg& g, const Expr& term) {
  Identification r = identify_interventional(g, term);
  if (auto* h = std::get_if<Hedge>(&r)) throw NotIdentifiableError(*h, describe(g, *h));
  return std::get<Expr>(r);
}

}  // namespace

Rational total_effect(const Admg& g, const VertexSet& A, VertexId y, const TreatmentValues& values,
                      const Environment& env) {
  const Expr on = identified(g, total_effect_term(g, A, VertexSet{y}, values.active));
  const Expr off = identified(g, total_effect_term(g, A, VertexSet{y}, values.baseline));
  return evaluate_scalar(difference(expectation(y, on), expectation(y, off)), env);
}

Decomposition decompose(const Admg& g, const PathBundle& bundle, const TreatmentValues& values,
                        const Environment& env) {
  MediationEffects m = mediation_effects(g, bundle, values);
  Decomposition d;
  d.in_pi = evaluate_scalar(m.in_pi, env);
  d.not_in_pi = evaluate_scalar(m.not_in_pi, env);
  d.total = d.in_pi + d.not_in_pi;
  return d;
}

DistTable pse_oracle(const DiscreteScm& m, const PathBundle& bundle, const TreatmentValues& values) {
  return counterfactual_dist(m, unroll(m.graph(), bundle, values));
}

}  // namespace recant
