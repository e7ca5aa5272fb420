#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "recant/admg.hpp"

namespace recant {

// v0 -> v1 -> ... -> vk along directed edges.
using CausalPath = std::vector<VertexId>;

// All directed paths from A to Y meeting A only at their first vertex.
// Paths may run through other outcomes. Sorted lexicographically by vertex order.
std::vector<CausalPath> proper_causal_paths(const Admg& g, const VertexSet& A, const VertexSet& Y);

bool is_proper(const Admg& g, const VertexSet& A, const VertexSet& Y, const CausalPath& p);

class PathBundle {
 public:
  PathBundle() = default;

  const VertexSet& treatments() const { return treatments_; }
  const VertexSet& outcomes() const { return outcomes_; }
  const std::vector<CausalPath>& paths() const { return paths_; }
  const std::set<DirectedEdge>& green_edges() const { return green_; }
  bool is_green(VertexId tail, VertexId head) const { return green_.count({tail, head}) > 0; }
  bool contains(const CausalPath& p) const;

 private:
  friend PathBundle make_bundle(const Admg&, const VertexSet&, const VertexSet&,
                                std::vector<CausalPath>);
  VertexSet treatments_;
  VertexSet outcomes_;
  std::vector<CausalPath> paths_;
  std::set<DirectedEdge> green_;
};

// Throws BundleError when a path is improper, repeated, or when some proper
// path that uses only green edges is missing from the list.
PathBundle make_bundle(const Admg& g, const VertexSet& A, const VertexSet& Y,
                       std::vector<CausalPath> paths);
PathBundle total_bundle(const Admg& g, const VertexSet& A, const VertexSet& Y);
PathBundle empty_bundle(const Admg& g, const VertexSet& A, const VertexSet& Y);

// V* = An(Y) in the graph with A removed.
VertexSet relevant_nodes(const Admg& g, const VertexSet& A, const VertexSet& Y);

struct RecantingReport {
  VertexSet district;
  VertexId treatment;
  CausalPath path_in_pi;
  CausalPath path_not_in_pi;
};

std::vector<RecantingReport> find_recanting_districts(const Admg& g, const PathBundle& bundle);

// Active and baseline value labels for every treatment.
struct TreatmentValues {
  std::map<VertexId, std::string> active;
  std::map<VertexId, std::string> baseline;
};

// "1" for active and "0" for baseline unless given.
TreatmentValues default_values(const VertexSet& A);

std::string format_path(const Admg& g, const CausalPath& p);  // "a -> m -> y"

}  // namespace recant
