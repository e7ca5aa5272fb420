// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// when any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>

#include "fixtures.hpp"
#include "instances.hpp"
#include "recant/cli.hpp"
#include "recant/eval.hpp"
#include "recant/formula.hpp"
#include "recant/identify.hpp"
#include "recant/io.hpp"
#include "recant/scm.hpp"

using namespace recant;
using namespace recant::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProblemSpec load(const std::string& name) { return parse_problem(slurp(data_file(name + ".recant"))); }

bool canon_equal(const Expr& a, const Expr& b) { return equal(canonicalize(a), canonicalize(b)); }

// ---------------------------------------------------------------------------

Verdict criterion1() {
  Verdict v;
  struct Case {
    const char* file;
    std::vector<std::string> district;
  };
  for (const Case& c : {Case{"mixed_time_med", {}}, Case{"mixed_time_med_fail_a", {"l1", "l2", "m2", "y"}},
                        Case{"mixed_time_med_fail_b", {"m1"}}}) {
    ProblemSpec s = load(c.file);
    PathBundle b = s.bundle();
    auto t0 = Clock::now();
    auto reports = find_recanting_districts(s.graph, b);
    double dt = seconds_since(t0);
    std::vector<std::vector<std::string>> got;
    for (const auto& r : reports) got.push_back(names_of(s.graph, r.district));
    std::vector<std::vector<std::string>> want;
    if (!c.district.empty()) want.push_back(c.district);
    v.require(got == want, std::string(c.file) + " verdict mismatch");
    v.require(dt < 0.1, std::string(c.file) + " took " + fmt(dt));
    v.detail += std::string(v.detail.empty() ? "" : ", ") + c.file + " " + fmt(dt);
  }
  return v;
}

Verdict criterion2() {
  Verdict v;
  ProblemSpec s = load("mixed_time_med");
  VertexSet vstar = relevant_nodes(s.graph, s.treatments, s.outcomes);
  std::set<std::set<std::string>> got;
  for (const auto& d : districts(s.graph, vstar)) {
    auto n = names_of(s.graph, d);
    got.insert({n.begin(), n.end()});
  }
  std::set<std::set<std::string>> want{{"m1"}, {"m2"}, {"l1", "l2", "y"}};
  v.require(got == want, "districts differ");
  v.detail = "V* = " + format_set(s.graph, vstar);
  return v;
}

Verdict criterion3() {
  Verdict v;
  ProblemSpec s = load("mixed_time_med");
  const Admg& g = s.graph;
  PathBundle b = s.bundle();
  Expr observational_g = parse_formula(
      g,
      "Σ_{l1,l2,m1,m2} p(y | a0=0, a1=0, l1, l2, m1, m2) p(m2 | l2, a1=1, m1, a0=1) "
      "p(l2 | a0=0, a1=0, l1) p(m1 | l1, a0=1) p(l1 | a0=0)");
  Expr do_example = parse_formula(
      g,
      "Σ_{l1,l2,m1,m2} p(y, l1, l2 | do(a0=0, a1=0, m1, m2)) p(m1 | do(a0=1, l1)) p(m2 | do(a1=1, l2, m1))");
  Expr observational_g_ = parse_formula(
      g,
      "Σ_{l1,l2,m1,m2} p(y | a0=1, a1=1, l1, l2, m1, m2) p(m2 | l2, a1=1, m1, a0=1) "
      "p(l2 | a0=1, a1=1, l1) p(m1 | l1, a0=1) p(l1 | a0=1)");

  auto cli_formula = [&](std::vector<std::string> args) -> Expr {
    std::ostringstream out, err;
    if (run(args, out, err) != kExitOk) throw std::runtime_error(err.str());
    std::string text = out.str();
    return parse_formula(g, text.substr(0, text.find('\n')));
  };
  const std::string file = data_file("mixed_time_med.recant");
  v.require(canon_equal(cli_formula({"identify", file, "--observational"}), observational_g),
            "observational form differs");
  v.require(canon_equal(cli_formula({"identify", file, "--interventional"}), do_example),
            "interventional form differs");
  auto total = identify_pse(g, total_bundle(g, s.treatments, s.outcomes), s.values);
  v.require(std::holds_alternative<Expr>(total) && canon_equal(std::get<Expr>(total), observational_g_),
            "total-effect form differs");
  v.detail = "observational, interventional and total-effect forms compared after canonicalization";
  return v;
}

Verdict criterion4() {
  Verdict v;
  // Triangle (a), effect along a -> y only.
  ProblemSpec t = load("triangle_a");
  const Admg& g = t.graph;
  PathBundle direct = make_bundle(g, t.treatments, t.outcomes, {path(g, {"a", "y"})});
  MediationEffects tri = mediation_effects(g, direct, t.values);
  Expr mediation = parse_formula(g, "Σ_m (E[y | a=1, m] - E[y | a=0, m]) p(m | a=0)");
  bool tri_ok = canon_equal(tri.in_pi, mediation);
  v.require(tri_ok, "triangle direct effect differs: " + render(g, tri.in_pi));

  // Verma graph: the direct effect is the effect not through m.
  ProblemSpec s = load("verma");
  const Admg& vg = s.graph;
  Expr v_dir_eff = parse_formula(vg, "Σ_{l,m} E[y | a=1, l, m] p(l | a=1) p(m | a=0) - E[y | a=0]");
  std::vector<CausalPath> not_through_m;
  for (const auto& p : proper_causal_paths(vg, s.treatments, s.outcomes))
    if (std::find(p.begin(), p.end(), vg.id("m")) == p.end()) not_through_m.push_back(p);
  PathBundle dir = make_bundle(vg, s.treatments, s.outcomes, not_through_m);
  MediationEffects ver = mediation_effects(vg, dir, s.values);
  bool verma_ok = canon_equal(ver.in_pi, v_dir_eff);

  // Numerical comparison on random models of the same graph.
  std::mt19937_64 rng(404);
  int numeric_agree = 0;
  for (int k = 0; k < 20; ++k) {
    Environment env = Environment::from_model(random_scm(vg, rng));
    if (evaluate_scalar(ver.in_pi, env) == evaluate_scalar(v_dir_eff, env)) ++numeric_agree;
  }
  // With an a -> y edge the same question has a recanting district.
  Admg with_direct = Admg::from_names({"a", "l", "m", "y"},
                                      {{"a", "l"}, {"l", "m"}, {"a", "m"}, {"m", "y"}, {"a", "y"}}, {{"l", "y"}});
  PathBundle wd = make_bundle(with_direct, with_direct.set_of({"a"}), with_direct.set_of({"y"}),
                              {path(with_direct, {"a", "y"})});
  auto recanting = find_recanting_districts(with_direct, wd);

  v.require(verma_ok, "verma direct effect differs structurally from the expected form (engine: " + render(vg, ver.in_pi) +
                          "; numerically equal on " + std::to_string(numeric_agree) +
                          "/20 random models; with an a -> y edge district " +
                          (recanting.empty() ? std::string("none") : format_set(with_direct, recanting[0].district)) +
                          " is recanting)");
  if (tri_ok) v.detail = "triangle (a) matches" + std::string(v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

struct SweepStats {
  int instances = 0;
  int single_outcome = 0;
  int additive = 0;
  int with_bidirected = 0;
  double seconds = 0;
  bool sound = true;
  std::string first_failure;
};

SweepStats sweep() {
  SweepStats st;
  std::mt19937_64 rng(20240601);
  auto t0 = Clock::now();
  while (st.instances < 200) {
    RandomProblem p = random_problem(rng, 7, 2);
    DiscreteScm m = random_scm(p.graph, rng);
    if (m.exogenous_configurations() > (std::size_t{1} << 20)) continue;
    ++st.instances;
    if (!p.graph.bidirected_edges().empty()) ++st.with_bidirected;
    Environment env = Environment::from_model(m);
    DistTable got = evaluate(p.functional, env);
    DistTable want = pse_oracle(m, p.bundle, default_values(p.treatments));
    if (got != want.marginal(got.variables)) {
      if (st.sound) st.first_failure = render(p.graph, p.functional);
      st.sound = false;
    }
    if (p.outcomes.size() == 1) {
      ++st.single_outcome;
      Decomposition d = decompose(p.graph, p.bundle, default_values(p.treatments), env);
      if (d.total == d.in_pi + d.not_in_pi) ++st.additive;
    }
  }
  st.seconds = seconds_since(t0);
  return st;
}

Verdict criterion5(const SweepStats& st) {
  Verdict v;
  v.require(st.sound, "mismatch on " + st.first_failure);
  v.require(st.seconds < 60, "sweep took " + fmt(st.seconds));
  v.detail += std::string(v.detail.empty() ? "" : "; ") + std::to_string(st.instances) + " instances (" +
              std::to_string(st.with_bidirected) + " with bidirected edges) in " + fmt(st.seconds);
  return v;
}

Verdict criterion6(const SweepStats& st) {
  Verdict v;
  v.require(st.single_outcome > 0, "no single-outcome instance");
  v.require(st.additive == st.single_outcome, "additivity failed");
  v.detail = std::to_string(st.additive) + "/" + std::to_string(st.single_outcome) + " single-outcome instances additive";
  return v;
}

Verdict criterion7() {
  Verdict v;
  for (const char* file : {"mixed_time_med_fail_a", "mixed_time_med_fail_b"}) {
    ProblemSpec s = load(file);
    PathBundle b = s.bundle();
    auto t0 = Clock::now();
    auto reports = find_recanting_districts(s.graph, b);
    if (reports.empty()) {
      v.require(false, std::string(file) + " has no recanting district");
      continue;
    }
    auto [m1, m2] = counterexample_models(s.graph, b, reports[0], Rational(1, 1000));
    AgreementReport agree = compare_interventional(m1, m2);
    bool positive = strictly_positive(observational_dist(m1)) && strictly_positive(observational_dist(m2));
    Rational tvd = total_variation(pse_oracle(m1, b, s.values), pse_oracle(m2, b, s.values));
    double dt = seconds_since(t0);
    v.require(agree.agree, std::string(file) + " interventional disagreement");
    v.require(positive, std::string(file) + " observational joint not positive");
    v.require(tvd >= Rational(9, 10), std::string(file) + " tvd " + to_string(tvd));
    v.require(dt < 30, std::string(file) + " took " + fmt(dt));
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s: %zu regimes, tvd %.6f, %s", v.detail.empty() ? "" : "; ", file,
                  agree.regimes, tvd.get_d(), fmt(dt).c_str());
    v.detail += buf;
  }
  return v;
}

Verdict criterion8() {
  Verdict v;
  std::mt19937_64 rng(8080);
  int checks = 0, equal_count = 0;
  for (int k = 0; k < 100; ++k) {
    Admg g = random_admg(rng, std::uniform_int_distribution<std::size_t>(2, 7)(rng), 0.4, 0.0);
    DiscreteScm m = random_scm(g, rng);
    DistTable obs = observational_dist(m);
    for (int r = 0; r < 5; ++r) {
      Regime regime;
      for (VertexId x = 0; x < g.size(); ++x)
        if (std::bernoulli_distribution(0.4)(rng)) regime[x] = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
      ++checks;
      if (g_formula(g, obs, regime) == interventional_dist(m, regime)) ++equal_count;
    }
  }
  v.require(equal_count == checks, "mismatches found");
  v.detail = std::to_string(equal_count) + "/" + std::to_string(checks) + " regimes equal";
  return v;
}

Verdict criterion9() {
  Verdict v;
  std::mt19937_64 rng(909);
  int figures = 0;
  for (const char* file : {"triangle_a", "triangle_b", "verma", "time_med", "mixed_time_med", "mixed_time_med_fail_a",
                           "mixed_time_med_fail_b"}) {
    ProblemSpec s = load(file);
    const Admg& g = s.graph;
    PathBundle all = total_bundle(g, s.treatments, s.outcomes);
    PathBundle none = empty_bundle(g, s.treatments, s.outcomes);
    auto f_all = identify_pse(g, all, s.values);
    auto total = identify_interventional(g, total_effect_term(g, s.treatments, s.outcomes, s.values.active));
    v.require(std::holds_alternative<Expr>(f_all) && std::holds_alternative<Expr>(total) &&
                  canon_equal(std::get<Expr>(f_all), std::get<Expr>(total)),
              std::string(file) + " all-paths functional differs from the total effect");
    Environment env = Environment::from_model(random_scm(g, rng));
    MediationEffects e_all = mediation_effects(g, all, s.values);
    MediationEffects e_none = mediation_effects(g, none, s.values);
    v.require(evaluate_scalar(e_all.not_in_pi, env) == 0, std::string(file) + " not_in_pi nonzero for all paths");
    v.require(evaluate_scalar(e_none.in_pi, env) == 0, std::string(file) + " in_pi nonzero for no paths");
    ++figures;
  }
  v.detail += std::string(v.detail.empty() ? "" : "; ") + std::to_string(figures) + " figure files";
  return v;
}

Verdict criterion10() {
  Verdict v;
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(RECANT_DATA_DIR)) {
    if (entry.path().extension() != ".recant") continue;
    ++files;
    const std::string path = entry.path().string();
    const std::string name = entry.path().filename().string();
    ProblemSpec s = parse_problem(slurp(path));
    std::string once = render_problem(s);
    v.require(render_problem(parse_problem(once)) == once, name + " render is not a fixpoint");
    for (const char* cmd : {"check", "unroll", "identify"}) {
      std::ostringstream o1, e1, o2, e2;
      int c1 = run({cmd, path}, o1, e1);
      int c2 = run({cmd, path}, o2, e2);
      v.require(c1 == c2 && o1.str() == o2.str() && e1.str() == e2.str(), name + " " + cmd + " not deterministic");
      if (std::string(cmd) == "identify" && c1 == kExitOk) {
        std::string text = o1.str();
        text = text.substr(0, text.find('\n'));
        v.require(render(s.graph, parse_formula(s.graph, text)) == text, name + " formula render is not a fixpoint");
      }
    }
  }
  v.require(files >= 5, "corpus has only " + std::to_string(files) + " files");
  v.detail += std::string(v.detail.empty() ? "" : "; ") + std::to_string(files) + " corpus files";
  return v;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const std::function<Verdict()>& f) {
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failures;
    std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << " - " << v.detail << std::endl;
  };
  report(1, criterion1);
  report(2, criterion2);
  report(3, criterion3);
  report(4, criterion4);
  SweepStats st;
  report(5, [&] {
    st = sweep();
    return criterion5(st);
  });
  report(6, [&] { return criterion6(st); });
  report(7, criterion7);
  report(8, criterion8);
  report(9, criterion9);
  report(10, criterion10);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
