#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "recant/admg.hpp"
#include "recant/formula.hpp"
#include "recant/identify.hpp"
#include "recant/paths.hpp"
#include "recant/rational.hpp"
#include "recant/scm.hpp"

namespace recant {

// What a formula is evaluated against: the observed joint, and optionally a
// source of interventional joints for formulas that still contain do-terms.
class Environment {
 public:
  using Provider = std::function<DistTable(const Regime&)>;

  // `observational` must range over exactly the graph vertices, in any column order.
  Environment(const Admg& g, const DistTable& observational);
  static Environment from_model(const DiscreteScm& m);

  void set_interventional(Provider p);

  const Admg& graph() const { return g_; }
  const std::vector<std::string>& domain(VertexId v) const { return domains_.at(v); }
  std::size_t value_index(VertexId v, const std::string& label) const;

  // Joint of the vertices in `vars` (sorted), from the observed table or the
  // interventional table for `regime`. Cached.
  const std::vector<Rational>& marginal(const std::vector<VertexId>& vars) const;
  const std::vector<Rational>& marginal(const Regime& regime, const std::vector<VertexId>& vars) const;

 private:
  struct Joint {
    std::vector<VertexId> columns;
    DistTable table;
    std::map<std::vector<VertexId>, std::vector<Rational>> cache;
  };
  const std::vector<Rational>& marginal_of(Joint& j, const std::vector<VertexId>& vars) const;

  Admg g_;
  std::vector<std::vector<std::string>> domains_;
  std::shared_ptr<Joint> observed_;
  Provider provider_;
  std::shared_ptr<std::map<Regime, Joint>> interventional_;
};

// Value of `e` at every assignment of its free vertices, as a table over those
// vertices in vertex order. A closed formula gives a table with no variables
// and one cell. Throws PositivityError when a conditioning event of
// probability zero is not absorbed by a zero factor.
DistTable evaluate(const Expr& e, const Environment& env);
Rational evaluate_scalar(const Expr& e, const Environment& env);

// Expectations score outcome values by their position in the domain.
Rational expected_value(const DistTable& t, const std::string& variable);

// Truncated factorization for graphs without bidirected edges: joint of the
// non-intervened vertices under do(regime).
DistTable g_formula(const Admg& g, const DistTable& observational, const Regime& regime);

// E[y | do(A = active)] minus E[y | do(A = baseline)] from the observed joint.
Rational total_effect(const Admg& g, const VertexSet& A, VertexId y, const TreatmentValues& values,
                      const Environment& env);

struct Decomposition {
  Rational total;
  Rational in_pi;
  Rational not_in_pi;
};

// Splits the total effect on a single outcome along the bundle.
Decomposition decompose(const Admg& g, const PathBundle& bundle, const TreatmentValues& values,
                        const Environment& env);

// Ground truth for the bundle effect: the nested counterfactual evaluated in the model.
DistTable pse_oracle(const DiscreteScm& m, const PathBundle& bundle, const TreatmentValues& values);

}  // namespace recant
