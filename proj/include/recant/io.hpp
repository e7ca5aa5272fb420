#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recant/admg.hpp"
#include "recant/paths.hpp"
#include "recant/scm.hpp"

namespace recant {

// Problem files, one declaration per line, '#' starts a comment:
//   node <name>
//   <a> -> <b>
//   <a> <-> <b>
//   treatment <name>
//   outcome <name>
//   value <name> active=<v> baseline=<v>
//   path <v0> -> <v1> -> ... -> <vk>
//   paths all | paths none
//
// Diagnostic codes: S001 syntax, S002 unknown vertex, S003 improper path,
// S004 edge-inconsistent bundle, S005 invalid graph, S006 duplicate or
// conflicting declaration, S007 missing or overlapping treatments/outcomes.
struct ProblemSpec {
  enum class BundleMode { Explicit, All, None };

  Admg graph;
  VertexSet treatments;
  VertexSet outcomes;
  BundleMode mode = BundleMode::Explicit;
  std::vector<CausalPath> paths;  // Explicit mode only
  TreatmentValues values;         // every treatment has both labels

  PathBundle bundle() const;
};

ProblemSpec parse_problem(std::string_view text);
std::string render_problem(const ProblemSpec& spec);

// Model files for a given graph:
//   domain <v> <value> <value> ...
//   noise u(<v>) 0=<p> 1=<p> ...
//   noise u(<a>,<b>) 0=<p> ...
//   mech <v> <input>=<value> ... -> <value>
// Mechanism rows list the inputs in table order (parents, own noise, shared
// noises) and must appear in lexicographic order. Noise values are indices.
//
// Diagnostic codes: M001 syntax, M002 unknown vertex or noise, M003 missing
// or out-of-order rows, M004 invalid value or probability.
DiscreteScm parse_model(const Admg& g, std::string_view text);
std::string render_model(const DiscreteScm& m);

// Tables: a header of variable names followed by `p`, then one row per
// assignment in lexicographic order with rational probabilities. Domain
// order is the order of first appearance in each column.
//
// Diagnostic codes: T001 syntax, T003 missing or out-of-order rows,
// T004 invalid probabilities.
DistTable parse_table(std::string_view text);
std::string render_table(const DistTable& t);

}  // namespace recant
