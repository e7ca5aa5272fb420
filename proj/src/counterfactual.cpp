#include "recant/counterfactual.hpp"

#include <functional>

#include "recant/error.hpp"

namespace recant {

std::size_t NestedCounterfactual::intern(CfNode node) {
  for (const auto& a : node.args)
    if (a.kind == ArgKind::Sub && a.sub >= nodes_.size())
      throw std::logic_error("subterm must be interned before its user");
  auto it = index_.find(node);
  if (it != index_.end()) return it->second;
  const std::size_t i = nodes_.size();
  index_.emplace(node, i);
  nodes_.push_back(std::move(node));
  return i;
}

NestedCounterfactual unroll(const Admg& g, const PathBundle& bundle, const TreatmentValues& values) {
  const VertexSet& A = bundle.treatments();
  for (VertexId a : A)
    if (!values.active.count(a) || !values.baseline.count(a))
      throw std::invalid_argument("missing active or baseline value for '" + g.name(a) + "'");
  const VertexSet vstar = relevant_nodes(g, A, bundle.outcomes());

  NestedCounterfactual cf;
  std::map<VertexId, std::size_t> base_memo, pse_memo;

  std::function<std::size_t(VertexId)> baseline_node = [&](VertexId v) {
    if (auto it = base_memo.find(v); it != base_memo.end()) return it->second;
    CfNode n{v, {}};
    for (VertexId t : g.parents(v)) {
      if (A.contains(t))
        n.args.push_back({t, ArgKind::Baseline, values.baseline.at(t), 0});
      else
        n.args.push_back({t, ArgKind::Sub, {}, baseline_node(t)});
    }
    return base_memo[v] = cf.intern(std::move(n));
  };

  std::function<std::size_t(VertexId)> pse_node = [&](VertexId v) {
    if (auto it = pse_memo.find(v); it != pse_memo.end()) return it->second;
    CfNode n{v, {}};
    for (VertexId t : g.parents(v)) {
      const bool green = bundle.is_green(t, v);
      if (A.contains(t))
        n.args.push_back(green ? CfArg{t, ArgKind::Active, values.active.at(t), 0}
                               : CfArg{t, ArgKind::Baseline, values.baseline.at(t), 0});
      else
        n.args.push_back({t, ArgKind::Sub, {}, green ? pse_node(t) : baseline_node(t)});
    }
    return pse_memo[v] = cf.intern(std::move(n));
  };

  for (VertexId y : bundle.outcomes()) {
    if (!vstar.contains(y)) continue;
    cf.add_root(pse_node(y));
  }
  return cf;
}

NestedCounterfactual intervention_term(const Admg& g, const std::map<VertexId, std::string>& regime,
                                       const VertexSet& targets) {
  NestedCounterfactual cf;
  std::map<VertexId, std::size_t> memo;
  std::function<std::size_t(VertexId)> node = [&](VertexId v) {
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    CfNode n{v, {}};
    for (VertexId t : g.parents(v)) {
      if (auto r = regime.find(t); r != regime.end())
        n.args.push_back({t, ArgKind::Fixed, r->second, 0});
      else
        n.args.push_back({t, ArgKind::Sub, {}, node(t)});
    }
    return memo[v] = cf.intern(std::move(n));
  };
  for (VertexId y : targets) {
    if (regime.count(y)) throw std::invalid_argument("target '" + g.name(y) + "' is intervened on");
    cf.add_root(node(y));
  }
  return cf;
}

std::string render(const Admg& g, const NestedCounterfactual& cf, std::size_t i) {
  const CfNode& n = cf.node(i);
  std::string out = g.name(n.target);
  if (n.args.empty()) return out;
  out += "(";
  for (std::size_t k = 0; k < n.args.size(); ++k) {
    if (k) out += ", ";
    const CfArg& a = n.args[k];
    out += a.kind == ArgKind::Sub ? render(g, cf, a.sub) : g.name(a.parent) + "=" + a.value;
  }
  return out + ")";
}

std::string render(const Admg& g, const NestedCounterfactual& cf) {
  std::string out;
  for (std::size_t r : cf.roots()) out += render(g, cf, r) + "\n";
  return out;
}

}  // namespace recant
