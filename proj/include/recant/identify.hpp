#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "recant/admg.hpp"
#include "recant/formula.hpp"
#include "recant/paths.hpp"

namespace recant {

// Failure witness of the district identification recursion: inside `district`
// (a district of the pruned graph), every vertex is an ancestor of `target`,
// so Q[target] cannot be obtained from Q[district].
struct Hedge {
  VertexSet target;
  VertexSet district;
  VertexSet regime;
};

std::string describe(const Admg& g, const Hedge& h);

using Identification = std::variant<Expr, Hedge>;

class RecantingDistrictError : public std::runtime_error {
 public:
  explicit RecantingDistrictError(std::vector<RecantingReport> reports)
      : std::runtime_error("recanting district present"), reports_(std::move(reports)) {}
  const std::vector<RecantingReport>& reports() const { return reports_; }

 private:
  std::vector<RecantingReport> reports_;
};

class NotIdentifiableError : public std::runtime_error {
 public:
  NotIdentifiableError(Hedge h, const std::string& what) : std::runtime_error(what), hedge_(std::move(h)) {}
  const Hedge& hedge() const { return hedge_; }

 private:
  Hedge hedge_;
};

// Sum over V* \ Y of one interventional term per district of G restricted to V*.
Expr interventional_functional(const Admg& g, const PathBundle& bundle, const TreatmentValues& values);

// `term` must be a Do node. Result mentions only observational terms.
Identification identify_interventional(const Admg& g, const Expr& term);

// p(Y | do(A = active or baseline)) as a Do node.
Expr total_effect_term(const Admg& g, const VertexSet& A, const VertexSet& Y,
                       const std::map<VertexId, std::string>& values);

// Observed-data functional for the path-specific distribution of Y. Computed
// by identifying each district term and, independently, by relabelling the
// identified total effect; the two must agree.
Identification identify_pse(const Admg& g, const PathBundle& bundle, const TreatmentValues& values);

struct MediationEffects {
  Expr in_pi;      // E[Y] under f_pi minus E[Y] under do(baseline)
  Expr not_in_pi;  // E[Y] under do(active) minus E[Y] under f_pi
};

// Single outcome only. Throws RecantingDistrictError or NotIdentifiableError.
MediationEffects mediation_effects(const Admg& g, const PathBundle& bundle, const TreatmentValues& values);

}  // namespace recant
