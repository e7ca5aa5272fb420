#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "recant/admg.hpp"
#include "recant/paths.hpp"

namespace recant::testing {

using EdgeList = std::vector<std::pair<std::string, std::string>>;

inline EdgeList time_med_directed() {
  return {{"a0", "l1"}, {"l1", "m1"}, {"a0", "m1"}, {"m1", "a1"}, {"a1", "l2"},
          {"l2", "m2"}, {"a1", "m2"}, {"m2", "y"},  {"m1", "y"},  {"a1", "y"},
          {"a0", "y"},  {"l1", "y"},  {"l2", "y"},  {"l1", "l2"}, {"m1", "m2"}};
}

inline Admg mixed_time_med() {
  return Admg::from_names({"a0", "a1", "l1", "l2", "m1", "m2", "y"}, time_med_directed(),
                          {{"l1", "l2"}, {"l1", "y"}, {"l2", "y"}});
}

inline Admg mixed_time_med_fail_a() {
  return Admg::from_names({"a0", "a1", "l1", "l2", "m1", "m2", "y"}, time_med_directed(),
                          {{"l1", "l2"}, {"l1", "y"}, {"l2", "y"}, {"l2", "m2"}});
}

inline Admg mixed_time_med_fail_b() {
  EdgeList d = time_med_directed();
  d.emplace_back("m1", "l2");
  return Admg::from_names({"a0", "a1", "l1", "l2", "m1", "m2", "y"}, d, {{"l1", "l2"}, {"l1", "y"}, {"l2", "y"}});
}

// The confounder u written as an explicit vertex.
inline Admg time_med_latent() {
  EdgeList d = time_med_directed();
  for (const char* c : {"l1", "l2", "y"}) d.emplace_back("u", c);
  d.emplace_back("a0", "u");
  return Admg::from_names({"a0", "a1", "u", "l1", "l2", "m1", "m2", "y"}, d, {});
}

inline Admg triangle_a() { return Admg::from_names({"a", "m", "y"}, {{"a", "m"}, {"m", "y"}, {"a", "y"}}, {}); }

inline Admg triangle_b() {
  return Admg::from_names({"c", "a", "m", "y"},
                          {{"c", "a"}, {"c", "m"}, {"c", "y"}, {"a", "m"}, {"m", "y"}, {"a", "y"}}, {});
}

inline Admg verma() {
  return Admg::from_names({"a", "l", "m", "y"}, {{"a", "l"}, {"l", "m"}, {"a", "m"}, {"m", "y"}}, {{"l", "y"}});
}

inline CausalPath path(const Admg& g, const std::vector<std::string>& names) {
  CausalPath p;
  for (const auto& n : names) p.push_back(g.id(n));
  return p;
}

// Green paths of the longitudinal example.
inline PathBundle time_med_bundle(const Admg& g) {
  return make_bundle(g, g.set_of({"a0", "a1"}), g.set_of({"y"}),
                     {path(g, {"a0", "m1", "y"}), path(g, {"a0", "m1", "m2", "y"}), path(g, {"a1", "m2", "y"})});
}

inline std::string data_file(const std::string& name) { return std::string(RECANT_DATA_DIR) + "/" + name; }

// Random ADMG on vertices v0..v{n-1}; edges only go forward in index order.
inline Admg random_admg(std::mt19937_64& rng, std::size_t n, double p_directed, double p_bidirected) {
  std::bernoulli_distribution dir(p_directed), bi(p_bidirected);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<DirectedEdge> de;
  std::vector<BidirectedEdge> be;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) {
      if (dir(rng)) de.push_back({i, j});
      if (bi(rng)) be.push_back({i, j});
    }
  return Admg(names, de, be);
}

}  // namespace recant::testing
