#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace recant {

// Vertices are identified by their declaration index; that index is also the
// canonical order used for every deterministic tie-break.
using VertexId = std::size_t;

// Small sorted set of vertex ids. Iteration follows declaration order.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids);
  explicit VertexSet(std::vector<VertexId> ids);

  bool contains(VertexId v) const;
  void insert(VertexId v);
  void erase(VertexId v);
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  bool subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;
  VertexId front() const { return ids_.front(); }

  const std::vector<VertexId>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  friend VertexSet operator|(const VertexSet& a, const VertexSet& b);
  friend VertexSet operator&(const VertexSet& a, const VertexSet& b);
  friend VertexSet operator-(const VertexSet& a, const VertexSet& b);
  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<VertexId> ids_;
};

struct DirectedEdge {
  VertexId tail;
  VertexId head;
  friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

// Stored with first < second.
struct BidirectedEdge {
  VertexId first;
  VertexId second;
  friend auto operator<=>(const BidirectedEdge&, const BidirectedEdge&) = default;
};

class Admg {
 public:
  Admg() = default;
  // Validates names, endpoints, self-loops, duplicates and acyclicity; throws GraphError.
  Admg(std::vector<std::string> names, std::vector<DirectedEdge> directed,
       std::vector<BidirectedEdge> bidirected);

  static Admg from_names(std::vector<std::string> names,
                         const std::vector<std::pair<std::string, std::string>>& directed,
                         const std::vector<std::pair<std::string, std::string>>& bidirected);

  std::size_t size() const { return names_.size(); }
  const std::string& name(VertexId v) const;
  const std::vector<std::string>& names() const { return names_; }
  VertexId id(const std::string& name) const;  // throws GraphError
  std::optional<VertexId> find(const std::string& name) const;
  VertexSet set_of(const std::vector<std::string>& names) const;
  VertexSet all() const;

  const std::vector<DirectedEdge>& directed_edges() const { return directed_; }
  const std::vector<BidirectedEdge>& bidirected_edges() const { return bidirected_; }
  bool has_edge(VertexId tail, VertexId head) const;
  bool has_bidirected(VertexId a, VertexId b) const;

  const std::vector<VertexId>& parents(VertexId v) const { return pa_.at(v); }
  const std::vector<VertexId>& children(VertexId v) const { return ch_.at(v); }
  const std::vector<VertexId>& siblings(VertexId v) const { return sib_.at(v); }
  // Bidirected edges incident to v, as indices into bidirected_edges().
  const std::vector<std::size_t>& incident_bidirected(VertexId v) const { return inc_.at(v); }

  friend bool operator==(const Admg& a, const Admg& b) {
    return a.names_ == b.names_ && a.directed_ == b.directed_ && a.bidirected_ == b.bidirected_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<DirectedEdge> directed_;
  std::vector<BidirectedEdge> bidirected_;
  std::vector<std::vector<VertexId>> pa_, ch_, sib_;
  std::vector<std::vector<std::size_t>> inc_;
};

// Genealogy. Parents/children are non-reflexive, ancestors/descendants reflexive.
// The `within` overloads work on the induced subgraph over `within` without renumbering.
VertexSet parents(const Admg& g, const VertexSet& w);
VertexSet children(const Admg& g, const VertexSet& w);
VertexSet ancestors(const Admg& g, const VertexSet& w);
VertexSet ancestors(const Admg& g, const VertexSet& w, const VertexSet& within);
VertexSet descendants(const Admg& g, const VertexSet& w);
VertexSet descendants(const Admg& g, const VertexSet& w, const VertexSet& within);

// Induced subgraph; vertices keep their names and relative order but are renumbered.
Admg subgraph(const Admg& g, const VertexSet& s);

// Connected components of the bidirected skeleton, ordered by least member.
std::vector<VertexSet> districts(const Admg& g);
std::vector<VertexSet> districts(const Admg& g, const VertexSet& within);
VertexSet district_of(const Admg& g, VertexId v, const VertexSet& within);

// Members of d with no directed child inside d.
VertexSet district_sinks(const Admg& g, const VertexSet& d);

// Kahn's algorithm, ties broken by declaration order.
std::vector<VertexId> topological_order(const Admg& g);

std::vector<std::string> names_of(const Admg& g, const VertexSet& s);
std::string format_set(const Admg& g, const VertexSet& s);  // "{a, b}"

}  // namespace recant
