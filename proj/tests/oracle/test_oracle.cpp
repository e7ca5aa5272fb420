#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "instances.hpp"
#include "recant/eval.hpp"
#include "recant/formula.hpp"
#include "recant/identify.hpp"
#include "recant/scm.hpp"

using namespace recant;
using namespace recant::testing;

namespace {

DistTable oracle_pse(const DiscreteScm& m, const PathBundle& b) {
  return pse_oracle(m, b, default_values(b.treatments()));
}

Rational oracle_mean(const DiscreteScm& m, const std::map<VertexId, std::string>& regime, VertexId y) {
  DistTable t = interventional_dist(m, regime_from_labels(m, regime));
  return expected_value(t.marginal({m.graph().name(y)}), m.graph().name(y));
}

}  // namespace

// Sound identification: the observed-data functional reproduces the nested
// counterfactual computed by enumeration in the generating model.
class SoundIdentification : public ::testing::TestWithParam<int> {};

TEST_P(SoundIdentification, RandomProblems) {
  std::mt19937_64 rng(9000 + GetParam());
  for (int k = 0; k < 5; ++k) {
    RandomProblem p = random_problem(rng);
    DiscreteScm m = random_scm(p.graph, rng);
    Environment env = Environment::from_model(m);
    DistTable got = evaluate(p.functional, env);
    DistTable want = oracle_pse(m, p.bundle);
    ASSERT_EQ(got, want.marginal(got.variables)) << render(p.graph, p.functional);
    // The interventional functional agrees as well.
    Expr iv = interventional_functional(p.graph, p.bundle, default_values(p.treatments));
    EXPECT_EQ(evaluate(iv, env), got);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SoundIdentification, ::testing::Range(0, 20));

TEST(Oracle, MediationFormulaOnTriangleModels) {
  Admg g = triangle_a();
  PathBundle b = make_bundle(g, g.set_of({"a"}), g.set_of({"y"}), {path(g, {"a", "y"})});
  Expr mediation = parse_formula(g, "Σ_m p(m | a=0) E[y | a=1, m]");
  Expr baseline = parse_formula(g, "E[y | a=0]");
  std::mt19937_64 rng(50);
  for (int rep = 0; rep < 50; ++rep) {
    RandomScmOptions opt;
    opt.domain_size = 2 + rep % 2;
    DiscreteScm m = random_scm(g, rng, opt);
    Environment env = Environment::from_model(m);
    DistTable cf = oracle_pse(m, b);
    Rational direct = expected_value(cf, "y") - oracle_mean(m, {{g.id("a"), "0"}}, g.id("y"));
    EXPECT_EQ(evaluate_scalar(mediation, env) - evaluate_scalar(baseline, env), direct);
    EXPECT_EQ(decompose(g, b, default_values(b.treatments()), env).in_pi, direct);
  }
}

TEST(Oracle, TimeMedPathSpecificDistribution) {
  Admg g = mixed_time_med();
  PathBundle b = time_med_bundle(g);
  Expr expected = parse_formula(g,
                             "Σ_{l1,l2,m1,m2} p(y | a0=0, a1=0, l1, l2, m1, m2) p(m2 | l2, a1=1, m1, a0=1) "
                             "p(l2 | a0=0, a1=0, l1) p(m1 | l1, a0=1) p(l1 | a0=0)");
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    DiscreteScm m = random_scm(g, rng);
    EXPECT_EQ(evaluate(expected, Environment::from_model(m)), oracle_pse(m, b));
  }
  Admg lat = time_med_latent();
  PathBundle lb = time_med_bundle(lat);
  for (int rep = 0; rep < 5; ++rep) {
    DiscreteScm m = random_scm(lat, rng);
    Expr f = std::get<Expr>(identify_pse(lat, lb, default_values(lb.treatments())));
    EXPECT_EQ(evaluate(f, Environment::from_model(m)), oracle_pse(m, lb));
  }
}

TEST(Oracle, TimeMedTotalEffect) {
  Admg g = mixed_time_med();
  VertexSet A = g.set_of({"a0", "a1"});
  std::mt19937_64 rng(62);
  for (int rep = 0; rep < 10; ++rep) {
    DiscreteScm m = random_scm(g, rng);
    Rational want = oracle_mean(m, {{g.id("a0"), "1"}, {g.id("a1"), "1"}}, g.id("y")) -
                    oracle_mean(m, {{g.id("a0"), "0"}, {g.id("a1"), "0"}}, g.id("y"));
    EXPECT_EQ(total_effect(g, A, g.id("y"), default_values(A), Environment::from_model(m)), want);
  }
}

// Short textbook forms kept as independent numerical oracles.
TEST(Oracle, BackDoorFormulaOnConfoundedTriangle) {
  Admg g = triangle_b();
  Expr backdoor = parse_formula(g, "Σ_c p(c) E[y | a=1, c]");
  std::mt19937_64 rng(63);
  for (int rep = 0; rep < 20; ++rep) {
    DiscreteScm m = random_scm(g, rng);
    EXPECT_EQ(evaluate_scalar(backdoor, Environment::from_model(m)), oracle_mean(m, {{g.id("a"), "1"}}, g.id("y")));
  }
}

TEST(Oracle, ShortTotalEffectFormOnTimeMed) {
  // Adjustment for {l1, m1} alone recovers E[y(a0, a1)] in this graph.
  Admg g = mixed_time_med();
  Expr short_form = parse_formula(g, "Σ_{l1,m1} E[y | a0=1, a1=1, l1, m1] p(l1, m1 | a0=1)");
  std::mt19937_64 rng(64);
  int equal_count = 0;
  for (int rep = 0; rep < 10; ++rep) {
    DiscreteScm m = random_scm(g, rng);
    Rational want = oracle_mean(m, {{g.id("a0"), "1"}, {g.id("a1"), "1"}}, g.id("y"));
    if (evaluate_scalar(short_form, Environment::from_model(m)) == want) ++equal_count;
  }
  EXPECT_EQ(equal_count, 10);
}

TEST(Oracle, GFormulaConsistency) {
  std::mt19937_64 rng(65);
  for (int rep = 0; rep < 30; ++rep) {
    Admg g = random_admg(rng, 6, 0.4, 0.0);
    DiscreteScm m = random_scm(g, rng);
    DistTable obs = observational_dist(m);
    Regime r;
    for (VertexId v = 0; v < g.size(); ++v)
      if (std::bernoulli_distribution(0.35)(rng)) r[v] = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
    EXPECT_EQ(g_formula(g, obs, r), interventional_dist(m, r));
  }
}

TEST(Oracle, DecompositionAdditivity) {
  std::mt19937_64 rng(66);
  for (int rep = 0; rep < 20; ++rep) {
    RandomProblem p = random_problem(rng, 6, 1);
    DiscreteScm m = random_scm(p.graph, rng);
    Environment env = Environment::from_model(m);
    Decomposition d = decompose(p.graph, p.bundle, default_values(p.treatments), env);
    EXPECT_EQ(d.total, d.in_pi + d.not_in_pi);
    DistTable cf = oracle_pse(m, p.bundle);
    VertexId y = p.outcomes.front();
    std::map<VertexId, std::string> off, on;
    for (VertexId a : p.treatments) {
      off[a] = "0";
      on[a] = "1";
    }
    Rational pse_mean = expected_value(cf.marginal({p.graph.name(y)}), p.graph.name(y));
    EXPECT_EQ(d.in_pi, pse_mean - oracle_mean(m, off, y));
    EXPECT_EQ(d.not_in_pi, oracle_mean(m, on, y) - pse_mean);
  }
}
