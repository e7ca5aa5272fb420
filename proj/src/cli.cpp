#include "recant/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "recant/counterfactual.hpp"
#include "recant/error.hpp"
#include "recant/eval.hpp"
#include "recant/identify.hpp"
#include "recant/io.hpp"
#include "recant/scm.hpp"

namespace recant {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised after a machine-readable report has already been written.
struct DomainFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json names_json(const Admg& g, const VertexSet& s) { return Json(names_of(g, s)); }

Json path_json(const Admg& g, const CausalPath& p) {
  Json out = Json::array();
  for (VertexId v : p) out.push_back(g.name(v));
  return out;
}

Json check_json(const ProblemSpec& spec, const PathBundle& bundle, const std::vector<RecantingReport>& reports) {
  const Admg& g = spec.graph;
  const VertexSet vstar = relevant_nodes(g, bundle.treatments(), bundle.outcomes());
  Json j;
  j["identifiable"] = reports.empty();
  j["relevant"] = names_json(g, vstar);
  j["districts"] = Json::array();
  for (const auto& d : districts(g, vstar)) j["districts"].push_back(names_json(g, d));
  j["green_edges"] = Json::array();
  for (const auto& e : bundle.green_edges()) j["green_edges"].push_back(g.name(e.tail) + " -> " + g.name(e.head));
  j["recanting"] = Json::array();
  for (const auto& r : reports) {
    Json x;
    x["district"] = names_json(g, r.district);
    x["treatment"] = g.name(r.treatment);
    x["path_in_pi"] = path_json(g, r.path_in_pi);
    x["path_not_in_pi"] = path_json(g, r.path_not_in_pi);
    j["recanting"].push_back(x);
  }
  return j;
}

Json hedge_json(const Admg& g, const Hedge& h) {
  Json j;
  j["identifiable"] = false;
  j["hedge"]["target"] = names_json(g, h.target);
  j["hedge"]["district"] = names_json(g, h.district);
  j["hedge"]["regime"] = names_json(g, h.regime);
  j["hedge"]["message"] = describe(g, h);
  return j;
}

class Session {
 public:
  explicit Session(std::ostream& out) : out_(out) {}

  ProblemSpec load(const std::string& path) { return parse_problem(read_file(path)); }

  // Throws DomainFailure after printing the report when the bundle recants.
  PathBundle identifiable_bundle(const ProblemSpec& spec) {
    PathBundle b = spec.bundle();
    auto reports = find_recanting_districts(spec.graph, b);
    if (!reports.empty()) {
      out_ << check_json(spec, b, reports).dump(2) << "\n";
      throw DomainFailure("recanting district present; the effect along the bundle is not identifiable");
    }
    return b;
  }

  Expr need(const ProblemSpec& spec, const Identification& r) {
    if (auto* h = std::get_if<Hedge>(&r)) {
      out_ << hedge_json(spec.graph, *h).dump(2) << "\n";
      throw DomainFailure(describe(spec.graph, *h));
    }
    return std::get<Expr>(r);
  }

  int check(const std::string& path) {
    ProblemSpec spec = load(path);
    PathBundle b = spec.bundle();
    auto reports = find_recanting_districts(spec.graph, b);
    out_ << check_json(spec, b, reports).dump(2) << "\n";
    return reports.empty() ? kExitOk : kExitDomain;
  }

  int unroll_cmd(const std::string& path) {
    ProblemSpec spec = load(path);
    out_ << render(spec.graph, unroll(spec.graph, spec.bundle(), spec.values));
    return kExitOk;
  }

  int identify(const std::string& path, bool interventional, bool latex) {
    ProblemSpec spec = load(path);
    PathBundle b = identifiable_bundle(spec);
    const Style style = latex ? Style::Latex : Style::Text;
    Expr e = interventional ? interventional_functional(spec.graph, b, spec.values)
                            : need(spec, identify_pse(spec.graph, b, spec.values));
    out_ << render(spec.graph, e, style) << "\n";
    return kExitOk;
  }

  int evaluate_cmd(const std::string& path, const std::string& table) {
    ProblemSpec spec = load(path);
    PathBundle b = identifiable_bundle(spec);
    Expr e = need(spec, identify_pse(spec.graph, b, spec.values));
    Environment env(spec.graph, parse_table(read_file(table)));
    out_ << render_table(evaluate(e, env));
    return kExitOk;
  }

  int decompose_cmd(const std::string& path, const std::string& table) {
    ProblemSpec spec = load(path);
    PathBundle b = identifiable_bundle(spec);
    if (b.outcomes().size() != 1) throw UsageError("decompose needs a single outcome");
    Environment env(spec.graph, parse_table(read_file(table)));
    Decomposition d;
    try {
      d = decompose(spec.graph, b, spec.values, env);
    } catch (const NotIdentifiableError& e) {
      out_ << hedge_json(spec.graph, e.hedge()).dump(2) << "\n";
      throw DomainFailure(e.what());
    }
    Json j;
    j["total"] = to_string(d.total);
    j["in_pi"] = to_string(d.in_pi);
    j["not_in_pi"] = to_string(d.not_in_pi);
    out_ << j.dump(2) << "\n";
    return kExitOk;
  }

  int oracle(const std::string& path, const std::string& model_path, const std::string& what) {
    ProblemSpec spec = load(path);
    const Admg& g = spec.graph;
    DiscreteScm m = parse_model(g, read_file(model_path));
    if (what == "obs") {
      out_ << render_table(observational_dist(m));
    } else if (what.rfind("do:", 0) == 0) {
      out_ << render_table(interventional_dist(m, parse_regime(g, m, what.substr(3))));
    } else if (what == "pse") {
      out_ << render_table(pse_oracle(m, spec.bundle(), spec.values));
    } else if (what == "total") {
      if (spec.outcomes.size() != 1) throw UsageError("--what total needs a single outcome");
      const std::string y = g.name(spec.outcomes.front());
      const Rational on = expected_value(interventional_dist(m, regime_from_labels(m, spec.values.active)), y);
      const Rational off = expected_value(interventional_dist(m, regime_from_labels(m, spec.values.baseline)), y);
      Json j;
      j["total"] = to_string(on - off);
      out_ << j.dump(2) << "\n";
    } else {
      throw UsageError("unknown --what '" + what + "'; expected obs, do:<regime>, pse or total");
    }
    return kExitOk;
  }

  int counterexample(const std::string& path, const std::string& eps_text, const std::string& dir) {
    ProblemSpec spec = load(path);
    const Admg& g = spec.graph;
    Rational eps;
    try {
      eps = parse_rational(eps_text);
    } catch (const std::invalid_argument&) {
      throw UsageError("invalid epsilon '" + eps_text + "'");
    }
    if (eps <= 0 || eps >= Rational(1, 2)) throw UsageError("epsilon must lie strictly between 0 and 1/2");
    PathBundle b = spec.bundle();
    auto reports = find_recanting_districts(g, b);
    if (reports.empty()) {
      out_ << check_json(spec, b, reports).dump(2) << "\n";
      throw DomainFailure("no recanting district: the effect is identifiable, so no counterexample exists");
    }
    auto [m1, m2] = counterexample_models(g, b, reports.front(), eps);
    std::filesystem::create_directories(dir);
    const auto p1 = std::filesystem::path(dir) / "model1.txt";
    const auto p2 = std::filesystem::path(dir) / "model2.txt";
    std::ofstream(p1, std::ios::binary) << render_model(m1);
    std::ofstream(p2, std::ios::binary) << render_model(m2);

    const AgreementReport agree = compare_interventional(m1, m2);
    const DistTable o1 = observational_dist(m1), o2 = observational_dist(m2);
    const Rational tvd = total_variation(pse_oracle(m1, b, spec.values), pse_oracle(m2, b, spec.values));
    Json j;
    j["district"] = names_json(g, reports.front().district);
    j["treatment"] = g.name(reports.front().treatment);
    j["epsilon"] = to_string(eps);
    j["models"] = {p1.string(), p2.string()};
    j["regimes_checked"] = agree.regimes;
    j["interventional_agreement"] = agree.agree;
    j["observational_positive"] = strictly_positive(o1) && strictly_positive(o2);
    j["pse_tvd"] = to_string(tvd);
    j["pse_tvd_decimal"] = std::round(tvd.get_d() * 1e6) / 1e6;  // display only
    out_ << j.dump(2) << "\n";
    return agree.agree && tvd > 0 ? kExitOk : kExitDomain;
  }

 private:
  static Regime parse_regime(const Admg& g, const DiscreteScm& m, const std::string& text) {
    Regime r;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("regime items look like name=value");
      auto v = g.find(item.substr(0, eq));
      if (!v) throw UsageError("unknown vertex '" + item.substr(0, eq) + "' in regime");
      r[*v] = m.value_index(*v, item.substr(eq + 1));
    }
    return r;
  }

  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Identification of path-specific effects in mixed graphs", "recant"};
  app.require_subcommand(1);
  std::string spec, table, model, what = "pse", epsilon = "1/1000", dir;
  bool interventional = false, observational = false, latex = false;

  auto* check = app.add_subcommand("check", "Report recanting districts for the bundle");
  check->add_option("spec", spec, "Problem file")->required();
  auto* unroll_cmd = app.add_subcommand("unroll", "Print the nested counterfactual of the bundle");
  unroll_cmd->add_option("spec", spec, "Problem file")->required();
  auto* identify = app.add_subcommand("identify", "Print the identifying functional");
  identify->add_option("spec", spec, "Problem file")->required();
  auto* iv = identify->add_flag("--interventional", interventional, "Functional of interventional terms");
  auto* ob = identify->add_flag("--observational", observational, "Functional of the observed joint (default)");
  iv->excludes(ob);
  identify->add_flag("--latex", latex, "Render as LaTeX");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate the functional against an observed table");
  evaluate_cmd->add_option("spec", spec, "Problem file")->required();
  evaluate_cmd->add_option("--table", table, "Observed joint table")->required();
  auto* oracle = app.add_subcommand("oracle", "Exact distributions of a discrete model");
  oracle->add_option("spec", spec, "Problem file")->required();
  oracle->add_option("--model", model, "Model file")->required();
  oracle->add_option("--what", what, "obs, do:<v=x,...>, pse or total");
  auto* counter = app.add_subcommand("counterexample", "Write two models that agree on interventions but not on the effect");
  counter->add_option("spec", spec, "Problem file")->required();
  counter->add_option("--epsilon", epsilon, "Positivity noise level");
  counter->add_option("--out", dir, "Output directory")->required();
  auto* decompose_cmd = app.add_subcommand("decompose", "Split the total effect along the bundle");
  decompose_cmd->add_option("spec", spec, "Problem file")->required();
  decompose_cmd->add_option("--table", table, "Observed joint table")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Session s(out);
  try {
    if (*check) return s.check(spec);
    if (*unroll_cmd) return s.unroll_cmd(spec);
    if (*identify) return s.identify(spec, interventional, latex);
    if (*evaluate_cmd) return s.evaluate_cmd(spec, table);
    if (*oracle) return s.oracle(spec, model, what);
    if (*counter) return s.counterexample(spec, epsilon, dir);
    if (*decompose_cmd) return s.decompose_cmd(spec, table);
  } catch (const DomainFailure& e) {
    err << "recant: " << e.what() << "\n";
    return kExitDomain;
  } catch (const RecantingDistrictError& e) {
    err << "recant: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NotIdentifiableError& e) {
    err << "recant: " << e.what() << "\n";
    return kExitDomain;
  } catch (const PositivityError& e) {
    err << "recant: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ParseError& e) {
    err << "recant: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "recant: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace recant
