#include "recant/paths.hpp"

#include <algorithm>
#include <deque>

#include "recant/error.hpp"

namespace recant {

namespace {

void require_disjoint(const Admg& g, const VertexSet& A, const VertexSet& Y) {
  const VertexSet both = A & Y;
  if (!both.empty())
    throw BundleError(BundleError::Kind::Overlap,
                      "treatments and outcomes overlap in " + format_set(g, both));
}

// Depth-first enumeration of proper paths, optionally restricted to an edge filter.
template <typename EdgeOk>
std::vector<CausalPath> enumerate(const Admg& g, const VertexSet& A, const VertexSet& Y, EdgeOk ok) {
  std::vector<CausalPath> out;
  CausalPath current;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    for (VertexId c : g.children(v)) {
      if (A.contains(c) || !ok(v, c)) continue;
      current.push_back(c);
      if (Y.contains(c)) out.push_back(current);
      self(self, c);
      current.pop_back();
    }
  };
  for (VertexId a : A) {
    current = {a};
    dfs(dfs, a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<CausalPath> proper_causal_paths(const Admg& g, const VertexSet& A, const VertexSet& Y) {
  require_disjoint(g, A, Y);
  return enumerate(g, A, Y, [](VertexId, VertexId) { return true; });
}

bool is_proper(const Admg& g, const VertexSet& A, const VertexSet& Y, const CausalPath& p) {
  if (p.size() < 2) return false;
  if (!A.contains(p.front()) || !Y.contains(p.back())) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= g.size()) return false;
    if (i > 0 && A.contains(p[i])) return false;
    if (i + 1 < p.size() && !g.has_edge(p[i], p[i + 1])) return false;
  }
  return true;  // acyclicity rules out repeated vertices
}

bool PathBundle::contains(const CausalPath& p) const {
  return std::binary_search(paths_.begin(), paths_.end(), p);
}

PathBundle make_bundle(const Admg& g, const VertexSet& A, const VertexSet& Y,
                       std::vector<CausalPath> paths) {
  require_disjoint(g, A, Y);
  for (const auto& p : paths)
    if (!is_proper(g, A, Y, p))
      throw BundleError(BundleError::Kind::NotProper,
                        "not a proper causal path: " + format_path(g, p));
  std::sort(paths.begin(), paths.end());
  if (auto it = std::adjacent_find(paths.begin(), paths.end()); it != paths.end())
    throw BundleError(BundleError::Kind::Duplicate, "path listed twice: " + format_path(g, *it));

  PathBundle b;
  b.treatments_ = A;
  b.outcomes_ = Y;
  b.paths_ = std::move(paths);
  for (const auto& p : b.paths_)
    for (std::size_t i = 0; i + 1 < p.size(); ++i) b.green_.insert({p[i], p[i + 1]});

  const auto all_green = enumerate(g, A, Y, [&](VertexId t, VertexId h) { return b.is_green(t, h); });
  for (const auto& p : all_green)
    if (!b.contains(p))
      throw BundleError(BundleError::Kind::EdgeInconsistent,
                        "every edge of " + format_path(g, p) + " is green but the path is not listed");
  return b;
}

PathBundle total_bundle(const Admg& g, const VertexSet& A, const VertexSet& Y) {
  return make_bundle(g, A, Y, proper_causal_paths(g, A, Y));
}

PathBundle empty_bundle(const Admg& g, const VertexSet& A, const VertexSet& Y) {
  return make_bundle(g, A, Y, {});
}

VertexSet relevant_nodes(const Admg& g, const VertexSet& A, const VertexSet& Y) {
  return ancestors(g, Y - A, g.all() - A);
}

namespace {

// Shortest walk from `start` to an outcome inside `vstar`; when `need_blue`
// is set the walk must use at least one edge outside the bundle's coloring.
CausalPath shortest_tail(const Admg& g, const PathBundle& b, const VertexSet& vstar, VertexId start,
                         bool need_blue) {
  const std::size_t n = g.size();
  // State index: 2 * v + (blue seen).
  std::vector<std::size_t> prev(2 * n, SIZE_MAX);
  std::vector<char> seen(2 * n, 0);
  std::deque<std::size_t> queue;
  const std::size_t s0 = 2 * start + (need_blue ? 0 : 1);
  seen[s0] = 1;
  queue.push_back(s0);
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    const VertexId v = s / 2;
    const bool blue = s % 2;
    if (blue && b.outcomes().contains(v)) {
      CausalPath path;
      for (std::size_t t = s; t != SIZE_MAX; t = prev[t]) path.push_back(t / 2);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (VertexId c : g.children(v)) {
      if (!vstar.contains(c)) continue;
      const std::size_t t = 2 * c + (blue || !b.is_green(v, c) ? 1 : 0);
      if (seen[t]) continue;
      seen[t] = 1;
      prev[t] = s;
      queue.push_back(t);
    }
  }
  return {};
}

}  // namespace

std::vector<RecantingReport> find_recanting_districts(const Admg& g, const PathBundle& bundle) {
  const VertexSet& A = bundle.treatments();
  const VertexSet vstar = relevant_nodes(g, A, bundle.outcomes());

  // blue_reach[v]: some directed path from v to an outcome inside V* uses a blue edge.
  std::vector<char> blue_reach(g.size(), 0);
  const auto order = topological_order(g);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (!vstar.contains(v)) continue;
    for (VertexId c : g.children(v)) {
      if (!vstar.contains(c)) continue;
      if (!bundle.is_green(v, c) || blue_reach[c]) blue_reach[v] = 1;
    }
  }

  std::vector<RecantingReport> reports;
  for (const VertexSet& d : districts(g, vstar)) {
    for (VertexId a : A) {
      std::vector<VertexId> green_targets, blue_targets;
      for (VertexId z : g.children(a)) {
        if (!d.contains(z)) continue;
        if (bundle.is_green(a, z)) green_targets.push_back(z);
        if (!bundle.is_green(a, z) || blue_reach[z]) blue_targets.push_back(z);
      }
      if (green_targets.empty() || blue_targets.empty()) continue;

      const VertexId zi = green_targets.front();
      const VertexId zj = blue_targets.front();
      RecantingReport r{d, a, {}, {}};
      for (const auto& p : bundle.paths()) {
        if (p[0] != a || p[1] != zi) continue;
        if (r.path_in_pi.empty() || p.size() < r.path_in_pi.size()) r.path_in_pi = p;
      }
      r.path_not_in_pi = {a};
      const CausalPath tail = shortest_tail(g, bundle, vstar, zj, bundle.is_green(a, zj));
      r.path_not_in_pi.insert(r.path_not_in_pi.end(), tail.begin(), tail.end());
      reports.push_back(std::move(r));
      break;
    }
  }
  return reports;
}

TreatmentValues default_values(const VertexSet& A) {
  TreatmentValues tv;
  for (VertexId a : A) {
    tv.active[a] = "1";
    tv.baseline[a] = "0";
  }
  return tv;
}

std::string format_path(const Admg& g, const CausalPath& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += " -> ";
    out += p[i] < g.size() ? g.name(p[i]) : "?";
  }
  return out;
}

}  // namespace recant
