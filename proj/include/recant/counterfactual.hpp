#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "recant/admg.hpp"
#include "recant/paths.hpp"

namespace recant {

enum class ArgKind { Active, Baseline, Fixed, Sub };

struct CfArg {
  VertexId parent;
  ArgKind kind;
  std::string value;     // label for Active, Baseline and Fixed
  std::size_t sub = 0;   // node index for Sub
  friend auto operator<=>(const CfArg&, const CfArg&) = default;
};

struct CfNode {
  VertexId target;
  std::vector<CfArg> args;  // one per graph parent, in vertex order
  friend auto operator<=>(const CfNode&, const CfNode&) = default;
};

// A DAG of counterfactual terms with structural sharing. Subterms always sit at
// smaller indices than the nodes that use them, so index order is a valid
// bottom-up evaluation order.
class NestedCounterfactual {
 public:
  // Returns the index of an existing identical node when there is one.
  std::size_t intern(CfNode node);
  void add_root(std::size_t node) { roots_.push_back(node); }

  const std::vector<CfNode>& nodes() const { return nodes_; }
  const std::vector<std::size_t>& roots() const { return roots_; }
  const CfNode& node(std::size_t i) const { return nodes_.at(i); }

 private:
  std::vector<CfNode> nodes_;
  std::map<CfNode, std::size_t> index_;
  std::vector<std::size_t> roots_;
};

// Nested counterfactual for the effect of A on Y along the bundle: one root per
// outcome, sharing subterms.
NestedCounterfactual unroll(const Admg& g, const PathBundle& bundle, const TreatmentValues& values);

// Conflict-free term: targets under do(regime), every other ancestor left free.
NestedCounterfactual intervention_term(const Admg& g, const std::map<VertexId, std::string>& regime,
                                       const VertexSet& targets);

// "y(a=1, m(a=0))"
std::string render(const Admg& g, const NestedCounterfactual& cf, std::size_t node);
std::string render(const Admg& g, const NestedCounterfactual& cf);  // one root per line

}  // namespace recant
