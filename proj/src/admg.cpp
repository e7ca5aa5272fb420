#include "recant/admg.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "recant/error.hpp"

namespace recant {

VertexSet::VertexSet(std::initializer_list<VertexId> ids) : VertexSet(std::vector<VertexId>(ids)) {}

VertexSet::VertexSet(std::vector<VertexId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool VertexSet::contains(VertexId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

void VertexSet::insert(VertexId v) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) ids_.insert(it, v);
}

void VertexSet::erase(VertexId v) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it != ids_.end() && *it == v) ids_.erase(it);
}

bool VertexSet::subset_of(const VertexSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

bool VertexSet::intersects(const VertexSet& other) const { return !(*this & other).empty(); }

VertexSet operator|(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_union(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(), std::back_inserter(r.ids_));
  return r;
}

VertexSet operator&(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_intersection(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                        std::back_inserter(r.ids_));
  return r;
}

VertexSet operator-(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_difference(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                      std::back_inserter(r.ids_));
  return r;
}

Admg::Admg(std::vector<std::string> names, std::vector<DirectedEdge> directed,
           std::vector<BidirectedEdge> bidirected)
    : names_(std::move(names)), directed_(std::move(directed)), bidirected_(std::move(bidirected)) {
  const std::size_t n = names_.size();
  for (VertexId v = 0; v < n; ++v) {
    if (names_[v].empty()) throw GraphError("empty vertex name");
    if (!index_.emplace(names_[v], v).second) throw GraphError("duplicate vertex '" + names_[v] + "'");
  }
  auto check_endpoint = [&](VertexId v) {
    if (v >= n) throw GraphError("edge endpoint out of range");
  };
  for (const auto& e : directed_) {
    check_endpoint(e.tail);
    check_endpoint(e.head);
    if (e.tail == e.head) throw GraphError("self-loop on '" + names_[e.tail] + "'");
  }
  for (auto& e : bidirected_) {
    check_endpoint(e.first);
    check_endpoint(e.second);
    if (e.first == e.second) throw GraphError("bidirected self-loop on '" + names_[e.first] + "'");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  auto dup_check = [&](auto& edges, const char* what) {
    std::sort(edges.begin(), edges.end());
    auto it = std::adjacent_find(edges.begin(), edges.end());
    if (it != edges.end()) throw GraphError(std::string("duplicate ") + what + " edge");
  };
  dup_check(directed_, "directed");
  dup_check(bidirected_, "bidirected");

  pa_.assign(n, {});
  ch_.assign(n, {});
  sib_.assign(n, {});
  inc_.assign(n, {});
  for (const auto& e : directed_) {
    pa_[e.head].push_back(e.tail);
    ch_[e.tail].push_back(e.head);
  }
  for (std::size_t i = 0; i < bidirected_.size(); ++i) {
    const auto& e = bidirected_[i];
    sib_[e.first].push_back(e.second);
    sib_[e.second].push_back(e.first);
    inc_[e.first].push_back(i);
    inc_[e.second].push_back(i);
  }
  for (VertexId v = 0; v < n; ++v) {
    std::sort(pa_[v].begin(), pa_[v].end());
    std::sort(ch_[v].begin(), ch_[v].end());
    std::sort(sib_[v].begin(), sib_[v].end());
  }
  // Acyclicity: Kahn must consume every vertex.
  (void)topological_order(*this);
}

Admg Admg::from_names(std::vector<std::string> names,
                      const std::vector<std::pair<std::string, std::string>>& directed,
                      const std::vector<std::pair<std::string, std::string>>& bidirected) {
  std::unordered_map<std::string, VertexId> idx;
  for (VertexId v = 0; v < names.size(); ++v) idx.emplace(names[v], v);
  auto lookup = [&](const std::string& s) {
    auto it = idx.find(s);
    if (it == idx.end()) throw GraphError("unknown vertex '" + s + "'");
    return it->second;
  };
  std::vector<DirectedEdge> d;
  for (const auto& [t, h] : directed) d.push_back({lookup(t), lookup(h)});
  std::vector<BidirectedEdge> b;
  for (const auto& [x, y] : bidirected) b.push_back({lookup(x), lookup(y)});
  return Admg(std::move(names), std::move(d), std::move(b));
}

const std::string& Admg::name(VertexId v) const {
  if (v >= names_.size()) throw GraphError("vertex id out of range");
  return names_[v];
}

VertexId Admg::id(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw GraphError("unknown vertex '" + name + "'");
  return it->second;
}

std::optional<VertexId> Admg::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexSet Admg::set_of(const std::vector<std::string>& names) const {
  std::vector<VertexId> ids;
  for (const auto& s : names) ids.push_back(id(s));
  return VertexSet(std::move(ids));
}

VertexSet Admg::all() const {
  std::vector<VertexId> ids(size());
  for (VertexId v = 0; v < size(); ++v) ids[v] = v;
  return VertexSet(std::move(ids));
}

bool Admg::has_edge(VertexId tail, VertexId head) const {
  return std::binary_search(directed_.begin(), directed_.end(), DirectedEdge{tail, head});
}

bool Admg::has_bidirected(VertexId a, VertexId b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(bidirected_.begin(), bidirected_.end(), BidirectedEdge{a, b});
}

namespace {

void check_members(const Admg& g, const VertexSet& w) {
  for (VertexId v : w)
    if (v >= g.size()) throw GraphError("vertex id out of range");
}

template <typename Next>
VertexSet closure(const Admg& g, const VertexSet& w, const VertexSet* within, Next next) {
  check_members(g, w);
  std::vector<char> seen(g.size(), 0);
  std::vector<VertexId> stack;
  for (VertexId v : w) {
    if (within && !within->contains(v)) continue;
    seen[v] = 1;
    stack.push_back(v);
  }
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId u : next(v)) {
      if (seen[u] || (within && !within->contains(u))) continue;
      seen[u] = 1;
      stack.push_back(u);
    }
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.size(); ++v)
    if (seen[v]) out.push_back(v);
  return VertexSet(std::move(out));
}

}  // namespace

VertexSet parents(const Admg& g, const VertexSet& w) {
  check_members(g, w);
  std::vector<VertexId> out;
  for (VertexId v : w) out.insert(out.end(), g.parents(v).begin(), g.parents(v).end());
  return VertexSet(std::move(out));
}

VertexSet children(const Admg& g, const VertexSet& w) {
  check_members(g, w);
  std::vector<VertexId> out;
  for (VertexId v : w) out.insert(out.end(), g.children(v).begin(), g.children(v).end());
  return VertexSet(std::move(out));
}

VertexSet ancestors(const Admg& g, const VertexSet& w) {
  return closure(g, w, nullptr, [&](VertexId v) -> const auto& { return g.parents(v); });
}

VertexSet ancestors(const Admg& g, const VertexSet& w, const VertexSet& within) {
  return closure(g, w, &within, [&](VertexId v) -> const auto& { return g.parents(v); });
}

VertexSet descendants(const Admg& g, const VertexSet& w) {
  return closure(g, w, nullptr, [&](VertexId v) -> const auto& { return g.children(v); });
}

VertexSet descendants(const Admg& g, const VertexSet& w, const VertexSet& within) {
  return closure(g, w, &within, [&](VertexId v) -> const auto& { return g.children(v); });
}

Admg subgraph(const Admg& g, const VertexSet& s) {
  check_members(g, s);
  std::vector<VertexId> remap(g.size(), g.size());
  std::vector<std::string> names;
  for (VertexId v : s) {
    remap[v] = names.size();
    names.push_back(g.name(v));
  }
  std::vector<DirectedEdge> d;
  for (const auto& e : g.directed_edges())
    if (s.contains(e.tail) && s.contains(e.head)) d.push_back({remap[e.tail], remap[e.head]});
  std::vector<BidirectedEdge> b;
  for (const auto& e : g.bidirected_edges())
    if (s.contains(e.first) && s.contains(e.second)) b.push_back({remap[e.first], remap[e.second]});
  return Admg(std::move(names), std::move(d), std::move(b));
}

VertexSet district_of(const Admg& g, VertexId v, const VertexSet& within) {
  return closure(g, VertexSet{v}, &within, [&](VertexId u) -> const auto& { return g.siblings(u); });
}

std::vector<VertexSet> districts(const Admg& g, const VertexSet& within) {
  check_members(g, within);
  std::vector<VertexSet> out;
  VertexSet covered;
  for (VertexId v : within) {
    if (covered.contains(v)) continue;
    VertexSet d = district_of(g, v, within);
    covered = covered | d;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<VertexSet> districts(const Admg& g) { return districts(g, g.all()); }

VertexSet district_sinks(const Admg& g, const VertexSet& d) {
  check_members(g, d);
  if (d.empty()) throw GraphError("empty district");
  std::vector<VertexId> out;
  for (VertexId v : d) {
    bool has_child = std::any_of(g.children(v).begin(), g.children(v).end(),
                                 [&](VertexId c) { return d.contains(c); });
    if (!has_child) out.push_back(v);
  }
  return VertexSet(std::move(out));
}

std::vector<VertexId> topological_order(const Admg& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> indegree(n, 0);
  for (VertexId v = 0; v < n; ++v) indegree[v] = g.parents(v).size();
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (VertexId v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<VertexId> order;
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (VertexId c : g.children(v))
      if (--indegree[c] == 0) ready.push(c);
  }
  if (order.size() != n) {
    for (VertexId v = 0; v < n; ++v)
      if (indegree[v] > 0) throw GraphError("directed cycle upstream of '" + g.name(v) + "'");
  }
  return order;
}

std::vector<std::string> names_of(const Admg& g, const VertexSet& s) {
  std::vector<std::string> out;
  for (VertexId v : s) out.push_back(g.name(v));
  return out;
}

std::string format_set(const Admg& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (VertexId v : s) {
    if (!first) out += ", ";
    first = false;
    out += g.name(v);
  }
  return out + "}";
}

}  // namespace recant
