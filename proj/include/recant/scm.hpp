#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "recant/admg.hpp"
#include "recant/counterfactual.hpp"
#include "recant/paths.hpp"
#include "recant/rational.hpp"

namespace recant {

// Exact joint distribution. Entries are laid out in mixed radix with the first
// variable most significant, so index order is lexicographic order.
struct DistTable {
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> domains;
  std::vector<Rational> probs;

  std::size_t index_of(const std::vector<std::size_t>& assignment) const;
  std::vector<std::size_t> assignment(std::size_t index) const;
  Rational total() const;
  DistTable marginal(const std::vector<std::string>& keep) const;
  friend bool operator==(const DistTable&, const DistTable&) = default;
};

// Half the L1 distance. Both tables must share variables and domains.
Rational total_variation(const DistTable& p, const DistTable& q);

struct NoiseSource {
  std::string name;             // "u(v)" or "u(a,b)"
  std::vector<Rational> probs;  // value k has probability probs[k]
};

// Regimes and counterfactual constants use value indices into a vertex domain.
using Regime = std::map<VertexId, std::size_t>;

class DiscreteScm {
 public:
  // Mechanism inputs of v, most significant first: parents in vertex order,
  // the own noise u(v), then noises of incident bidirected edges in edge order.
  using Mechanism = std::function<std::size_t(VertexId v, const std::vector<std::size_t>& inputs)>;

  DiscreteScm() = default;
  // Validates sizes, probabilities and table ranges; throws ModelError.
  DiscreteScm(Admg g, std::vector<std::vector<std::string>> domains, std::vector<NoiseSource> own,
              std::vector<NoiseSource> shared, std::vector<std::vector<std::uint16_t>> tables);

  // Tabulates `mech` over every input combination.
  static DiscreteScm tabulate(Admg g, std::vector<std::vector<std::string>> domains,
                              std::vector<NoiseSource> own, std::vector<NoiseSource> shared,
                              const Mechanism& mech);

  const Admg& graph() const { return g_; }
  const std::vector<std::string>& domain(VertexId v) const { return domains_.at(v); }
  const std::vector<std::vector<std::string>>& domains() const { return domains_; }
  const NoiseSource& own_noise(VertexId v) const { return own_.at(v); }
  const std::vector<NoiseSource>& shared_noises() const { return shared_; }
  const std::vector<std::uint16_t>& table(VertexId v) const { return tables_.at(v); }
  // Sizes of the mechanism inputs of v, in table order.
  std::vector<std::size_t> input_sizes(VertexId v) const;
  std::size_t value_index(VertexId v, const std::string& label) const;  // accepts "#k"

  // Number of complete exogenous assignments, saturating at SIZE_MAX.
  std::size_t exogenous_configurations() const;

  // Value of v from parent values (vertex order) and the complete noise draw
  // (own noises by vertex, then shared noises by edge).
  std::size_t evaluate(VertexId v, const std::size_t* parent_values, const std::vector<std::size_t>& noise) const;

 private:
  Admg g_;
  std::vector<std::vector<std::string>> domains_;
  std::vector<NoiseSource> own_;
  std::vector<NoiseSource> shared_;
  std::vector<std::vector<std::uint16_t>> tables_;
};

// Enumeration is refused beyond this many exogenous configurations.
inline constexpr std::size_t kEnumerationGuard = std::size_t{1} << 24;

DistTable observational_dist(const DiscreteScm& m);
// Joint of the non-intervened vertices in the mutilated model.
DistTable interventional_dist(const DiscreteScm& m, const Regime& regime);
// Joint of the roots of `term`, evaluated with shared noise across all nested worlds.
DistTable counterfactual_dist(const DiscreteScm& m, const NestedCounterfactual& term);

// Compares the two models under every regime over the observed vertices,
// the empty one included. Both models must share graph and domains.
struct AgreementReport {
  std::size_t regimes = 0;
  bool agree = true;
  Regime first_difference;
};
AgreementReport compare_interventional(const DiscreteScm& m1, const DiscreteScm& m2);

bool strictly_positive(const DistTable& t);

Regime regime_from_labels(const DiscreteScm& m, const std::map<VertexId, std::string>& labels);

// Random models for property tests. Every own-noise value has positive
// probability and the first |domain| own-noise values hit every output, so
// observational joints are strictly positive.
struct RandomScmOptions {
  std::size_t domain_size = 2;
  std::size_t min_noise = 2;
  std::size_t max_noise = 3;
  unsigned max_denominator = 8;
};
DiscreteScm random_scm(const Admg& g, std::mt19937_64& rng, const RandomScmOptions& opt = {});

// The bit-parity pair on a district D plus treatment a: every vertex binary,
// every bidirected edge inside D a fair shared bit, each vertex of D the parity
// of its inputs along a one-child-per-vertex forest. In the second model the two
// named children ignore a. The treatment is an independent fair bit.
std::pair<DiscreteScm, DiscreteScm> parity_models(const Admg& d_graph, VertexId a, VertexId green_child,
                                                  VertexId blue_child);

// Two models on all of g that agree on every interventional distribution, have
// strictly positive observational joints, and differ on the path-specific
// distribution named by `bundle` (active "1", baseline "0").
std::pair<DiscreteScm, DiscreteScm> counterexample_models(const Admg& g, const PathBundle& bundle,
                                                          const RecantingReport& report,
                                                          const Rational& epsilon);

}  // namespace recant
