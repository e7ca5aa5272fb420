#pragma once

#include <optional>
#include <random>
#include <set>
#include <variant>

#include "fixtures.hpp"
#include "recant/identify.hpp"
#include "recant/paths.hpp"
#include "recant/scm.hpp"

namespace recant::testing {

// An identifiable path-specific problem on a small random ADMG.
struct RandomProblem {
  Admg graph;
  VertexSet treatments;
  VertexSet outcomes;
  PathBundle bundle;
  Expr functional;  // observed-data formula for the bundle
};

// Colours a random subset of edges on proper paths green and takes every
// proper path that is entirely green, which is edge-consistent by construction.
inline PathBundle random_bundle(const Admg& g, const VertexSet& A, const VertexSet& Y, std::mt19937_64& rng) {
  auto all = proper_causal_paths(g, A, Y);
  std::set<DirectedEdge> green;
  std::bernoulli_distribution coin(0.5);
  for (const auto& p : all)
    if (coin(rng))
      for (std::size_t i = 0; i + 1 < p.size(); ++i) green.insert({p[i], p[i + 1]});
  std::vector<CausalPath> chosen;
  for (const auto& p : all) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < p.size() && ok; ++i) ok = green.count({p[i], p[i + 1]}) > 0;
    if (ok) chosen.push_back(p);
  }
  return make_bundle(g, A, Y, chosen);
}

// Draws until the instance has a proper path, no recanting district and an
// identifiable functional. `max_outcomes` of 1 gives single-outcome problems.
inline RandomProblem random_problem(std::mt19937_64& rng, std::size_t max_nodes = 7, std::size_t max_outcomes = 2) {
  for (;;) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(3, max_nodes)(rng);
    Admg g = random_admg(rng, n, 0.45, 0.2);
    if (g.bidirected_edges().size() > 4) continue;
    VertexSet A, Y;
    A.insert(std::uniform_int_distribution<VertexId>(0, n / 2)(rng));
    if (std::bernoulli_distribution(0.3)(rng)) A.insert(std::uniform_int_distribution<VertexId>(0, n - 2)(rng));
    Y.insert(n - 1);
    if (max_outcomes > 1 && std::bernoulli_distribution(0.25)(rng)) {
      VertexId extra = std::uniform_int_distribution<VertexId>(1, n - 2)(rng);
      if (!A.contains(extra)) Y.insert(extra);
    }
    if (A.contains(n - 1)) continue;
    if (proper_causal_paths(g, A, Y).empty()) continue;
    PathBundle b = random_bundle(g, A, Y, rng);
    if (!find_recanting_districts(g, b).empty()) continue;
    Identification id = identify_pse(g, b, default_values(A));
    if (!std::holds_alternative<Expr>(id)) continue;
    return {g, A, Y, b, std::get<Expr>(id)};
  }
}

}  // namespace recant::testing
