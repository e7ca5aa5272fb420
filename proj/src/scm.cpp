#include "recant/scm.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "recant/error.hpp"

namespace recant {

std::size_t DistTable::index_of(const std::vector<std::size_t>& assignment) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < domains.size(); ++i) idx = idx * domains[i].size() + assignment.at(i);
  return idx;
}

std::vector<std::size_t> DistTable::assignment(std::size_t index) const {
  std::vector<std::size_t> out(domains.size());
  for (std::size_t i = domains.size(); i-- > 0;) {
    out[i] = index % domains[i].size();
    index /= domains[i].size();
  }
  return out;
}

Rational DistTable::total() const {
  Rational t = 0;
  for (const auto& p : probs) t += p;
  return t;
}

DistTable DistTable::marginal(const std::vector<std::string>& keep) const {
  DistTable out;
  std::vector<std::size_t> cols;
  for (const auto& k : keep) {
    auto it = std::find(variables.begin(), variables.end(), k);
    if (it == variables.end()) throw ModelError("marginal: unknown variable '" + k + "'");
    cols.push_back(static_cast<std::size_t>(it - variables.begin()));
    out.variables.push_back(k);
    out.domains.push_back(domains[cols.back()]);
  }
  std::size_t n = 1;
  for (const auto& d : out.domains) n *= d.size();
  out.probs.assign(n, Rational(0));
  std::vector<std::size_t> sub(cols.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] == 0) continue;
    auto a = assignment(i);
    for (std::size_t c = 0; c < cols.size(); ++c) sub[c] = a[cols[c]];
    out.probs[out.index_of(sub)] += probs[i];
  }
  return out;
}

Rational total_variation(const DistTable& p, const DistTable& q) {
  if (p.variables != q.variables || p.domains != q.domains)
    throw ModelError("total variation needs tables over the same variables and domains");
  Rational s = 0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) s += abs(Rational(p.probs[i] - q.probs[i]));
  return s / 2;
}

namespace {

void check_noise(const NoiseSource& n) {
  if (n.probs.empty()) throw ModelError("noise " + n.name + " has no values");
  Rational t = 0;
  for (const auto& p : n.probs) {
    if (p < 0) throw ModelError("noise " + n.name + " has a negative probability");
    t += p;
  }
  if (t != 1) throw ModelError("noise " + n.name + " sums to " + t.get_str() + ", not 1");
}

}  // namespace

DiscreteScm::DiscreteScm(Admg g, std::vector<std::vector<std::string>> domains, std::vector<NoiseSource> own,
                         std::vector<NoiseSource> shared, std::vector<std::vector<std::uint16_t>> tables)
    : g_(std::move(g)),
      domains_(std::move(domains)),
      own_(std::move(own)),
      shared_(std::move(shared)),
      tables_(std::move(tables)) {
  const std::size_t n = g_.size();
  if (domains_.size() != n || own_.size() != n || tables_.size() != n)
    throw ModelError("model needs a domain, an own noise and a mechanism for every vertex");
  if (shared_.size() != g_.bidirected_edges().size())
    throw ModelError("model needs one shared noise per bidirected edge");
  for (VertexId v = 0; v < n; ++v) {
    if (domains_[v].empty() || domains_[v].size() > std::numeric_limits<std::uint16_t>::max())
      throw ModelError("domain of '" + g_.name(v) + "' has an invalid size");
    std::vector<std::string> sorted = domains_[v];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ModelError("domain of '" + g_.name(v) + "' repeats a value");
  }
  for (const auto& s : own_) check_noise(s);
  for (const auto& s : shared_) check_noise(s);
  for (VertexId v = 0; v < n; ++v) {
    std::size_t want = 1;
    for (auto s : input_sizes(v)) want *= s;
    if (tables_[v].size() != want)
      throw ModelError("mechanism of '" + g_.name(v) + "' has " + std::to_string(tables_[v].size()) +
                       " rows, expected " + std::to_string(want));
    for (auto x : tables_[v])
      if (x >= domains_[v].size()) throw ModelError("mechanism of '" + g_.name(v) + "' leaves its domain");
  }
}

DiscreteScm DiscreteScm::tabulate(Admg g, std::vector<std::vector<std::string>> domains,
                                  std::vector<NoiseSource> own, std::vector<NoiseSource> shared,
                                  const Mechanism& mech) {
  std::vector<std::vector<std::uint16_t>> tables(g.size());
  for (VertexId v = 0; v < g.size(); ++v) {
    std::vector<std::size_t> sizes;
    for (auto p : g.parents(v)) sizes.push_back(domains.at(p).size());
    sizes.push_back(own.at(v).probs.size());
    for (auto e : g.incident_bidirected(v)) sizes.push_back(shared.at(e).probs.size());
    std::size_t total = 1;
    for (auto s : sizes) total *= s;
    std::vector<std::size_t> in(sizes.size(), 0);
    tables[v].reserve(total);
    for (std::size_t r = 0; r < total; ++r) {
      tables[v].push_back(static_cast<std::uint16_t>(mech(v, in)));
      for (std::size_t i = sizes.size(); i-- > 0;) {
        if (++in[i] < sizes[i]) break;
        in[i] = 0;
      }
    }
  }
  return DiscreteScm(std::move(g), std::move(domains), std::move(own), std::move(shared), std::move(tables));
}

std::vector<std::size_t> DiscreteScm::input_sizes(VertexId v) const {
  std::vector<std::size_t> sizes;
  for (auto p : g_.parents(v)) sizes.push_back(domains_[p].size());
  sizes.push_back(own_[v].probs.size());
  for (auto e : g_.incident_bidirected(v)) sizes.push_back(shared_[e].probs.size());
  return sizes;
}

std::size_t DiscreteScm::value_index(VertexId v, const std::string& label) const {
  const auto& d = domains_.at(v);
  auto it = std::find(d.begin(), d.end(), label);
  if (it != d.end()) return static_cast<std::size_t>(it - d.begin());
  if (label.size() > 1 && label[0] == '#') {
    std::size_t k = 0;
    bool ok = true;
    for (std::size_t i = 1; i < label.size(); ++i) {
      if (label[i] < '0' || label[i] > '9') ok = false;
      else k = k * 10 + static_cast<std::size_t>(label[i] - '0');
    }
    if (ok && k < d.size()) return k;
  }
  throw ModelError("value '" + label + "' is not in the domain of '" + g_.name(v) + "'");
}

std::size_t DiscreteScm::exogenous_configurations() const {
  std::size_t total = 1;
  auto mul = [&](std::size_t k) {
    if (total > std::numeric_limits<std::size_t>::max() / k) total = std::numeric_limits<std::size_t>::max();
    else total *= k;
  };
  for (const auto& s : own_) mul(s.probs.size());
  for (const auto& s : shared_) mul(s.probs.size());
  return total;
}

std::size_t DiscreteScm::evaluate(VertexId v, const std::size_t* parent_values,
                                  const std::vector<std::size_t>& noise) const {
  std::size_t idx = 0;
  const auto& pa = g_.parents(v);
  for (std::size_t i = 0; i < pa.size(); ++i) idx = idx * domains_[pa[i]].size() + parent_values[i];
  idx = idx * own_[v].probs.size() + noise[v];
  const std::size_t n = g_.size();
  for (auto e : g_.incident_bidirected(v)) idx = idx * shared_[e].probs.size() + noise[n + e];
  return tables_[v][idx];
}

namespace {

// Exogenous sources scaled to integers over a common denominator so that
// enumeration multiplies machine-friendly integers.
struct NoiseSpace {
  std::vector<std::vector<mpz_class>> weights;
  mpz_class denominator = 1;
};

NoiseSpace make_space(const DiscreteScm& m) {
  if (const std::size_t n = m.exogenous_configurations(); n > kEnumerationGuard) {
    const std::string count = n == SIZE_MAX ? "more than " + std::to_string(SIZE_MAX) : std::to_string(n);
    throw ModelError("exogenous space has " + count +
                     " configurations, above the enumeration limit of 2^24; refusing to enumerate");
  }
  NoiseSpace s;
  auto add = [&](const NoiseSource& src) {
    mpz_class l = 1;
    for (const auto& p : src.probs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.get_den_mpz_t());
    std::vector<mpz_class> w;
    for (const auto& p : src.probs) w.push_back(mpz_class(p.get_num() * (l / p.get_den())));
    s.weights.push_back(std::move(w));
    s.denominator *= l;
  };
  for (VertexId v = 0; v < m.graph().size(); ++v) add(m.own_noise(v));
  for (const auto& src : m.shared_noises()) add(src);
  return s;
}

template <class F>
void enumerate(const NoiseSpace& s, F&& leaf) {
  std::vector<std::size_t> noise(s.weights.size(), 0);
  std::vector<mpz_class> acc(s.weights.size() + 1);
  acc[0] = 1;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == s.weights.size()) {
      leaf(noise, acc[i]);
      return;
    }
    for (std::size_t k = 0; k < s.weights[i].size(); ++k) {
      if (s.weights[i][k] == 0) continue;
      noise[i] = k;
      acc[i + 1] = acc[i] * s.weights[i][k];
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

DistTable finish(std::vector<std::string> vars, std::vector<std::vector<std::string>> doms,
                 const std::vector<mpz_class>& counts, const mpz_class& denominator) {
  DistTable t{std::move(vars), std::move(doms), {}};
  t.probs.reserve(counts.size());
  for (const auto& c : counts) {
    Rational q(c, denominator);
    q.canonicalize();
    t.probs.push_back(q);
  }
  return t;
}

}  // namespace

DistTable observational_dist(const DiscreteScm& m) { return interventional_dist(m, {}); }

DistTable interventional_dist(const DiscreteScm& m, const Regime& regime) {
  const Admg& g = m.graph();
  for (const auto& [v, x] : regime)
    if (v >= g.size() || x >= m.domain(v).size()) throw ModelError("regime value outside the model");
  const auto order = topological_order(g);
  std::vector<VertexId> out_vars;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> doms;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (regime.count(v)) continue;
    out_vars.push_back(v);
    names.push_back(g.name(v));
    doms.push_back(m.domain(v));
  }
  std::size_t cells = 1;
  for (const auto& d : doms) cells *= d.size();
  const NoiseSpace space = make_space(m);
  std::vector<mpz_class> counts(cells);
  std::vector<std::size_t> val(g.size());
  std::vector<std::size_t> buf;
  enumerate(space, [&](const std::vector<std::size_t>& noise, const mpz_class& w) {
    for (VertexId v : order) {
      if (auto it = regime.find(v); it != regime.end()) {
        val[v] = it->second;
        continue;
      }
      buf.clear();
      for (auto p : g.parents(v)) buf.push_back(val[p]);
      val[v] = m.evaluate(v, buf.data(), noise);
    }
    std::size_t idx = 0;
    for (VertexId v : out_vars) idx = idx * m.domain(v).size() + val[v];
    counts[idx] += w;
  });
  return finish(std::move(names), std::move(doms), counts, space.denominator);
}

DistTable counterfactual_dist(const DiscreteScm& m, const NestedCounterfactual& term) {
  const Admg& g = m.graph();
  const auto& nodes = term.nodes();
  // Constant arguments resolved once.
  std::vector<std::vector<std::optional<std::size_t>>> consts(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (g.parents(nodes[i].target).size() != nodes[i].args.size())
      throw ModelError("counterfactual term does not match the model graph");
    for (const auto& a : nodes[i].args) {
      if (a.kind == ArgKind::Sub) consts[i].push_back(std::nullopt);
      else consts[i].push_back(m.value_index(a.parent, a.value));
    }
  }
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> doms;
  for (auto r : term.roots()) {
    names.push_back(g.name(nodes[r].target));
    doms.push_back(m.domain(nodes[r].target));
  }
  std::size_t cells = 1;
  for (const auto& d : doms) cells *= d.size();
  const NoiseSpace space = make_space(m);
  std::vector<mpz_class> counts(cells);
  std::vector<std::size_t> val(nodes.size());
  std::vector<std::size_t> buf;
  enumerate(space, [&](const std::vector<std::size_t>& noise, const mpz_class& w) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      buf.clear();
      for (std::size_t k = 0; k < nodes[i].args.size(); ++k)
        buf.push_back(consts[i][k] ? *consts[i][k] : val[nodes[i].args[k].sub]);
      val[i] = m.evaluate(nodes[i].target, buf.data(), noise);
    }
    std::size_t idx = 0;
    for (std::size_t r = 0; r < term.roots().size(); ++r) idx = idx * doms[r].size() + val[term.roots()[r]];
    counts[idx] += w;
  });
  return finish(std::move(names), std::move(doms), counts, space.denominator);
}

AgreementReport compare_interventional(const DiscreteScm& m1, const DiscreteScm& m2) {
  const Admg& g = m1.graph();
  if (!(g == m2.graph()) || m1.domains() != m2.domains())
    throw ModelError("models differ in graph or domains");
  AgreementReport r;
  // Each vertex is either left alone (digit 0) or fixed to value digit - 1.
  std::vector<std::size_t> digit(g.size(), 0);
  while (true) {
    Regime regime;
    for (VertexId v = 0; v < g.size(); ++v)
      if (digit[v] > 0) regime[v] = digit[v] - 1;
    ++r.regimes;
    if (r.agree && interventional_dist(m1, regime) != interventional_dist(m2, regime)) {
      r.agree = false;
      r.first_difference = regime;
    }
    std::size_t v = g.size();
    while (v-- > 0) {
      if (++digit[v] <= m1.domain(v).size()) break;
      digit[v] = 0;
    }
    if (v == static_cast<std::size_t>(-1)) break;
  }
  return r;
}

bool strictly_positive(const DistTable& t) {
  return std::all_of(t.probs.begin(), t.probs.end(), [](const Rational& p) { return p > 0; });
}

Regime regime_from_labels(const DiscreteScm& m, const std::map<VertexId, std::string>& labels) {
  Regime r;
  for (const auto& [v, l] : labels) r[v] = m.value_index(v, l);
  return r;
}

namespace {

std::vector<Rational> random_probs(std::size_t k, std::mt19937_64& rng, unsigned max_w) {
  std::uniform_int_distribution<unsigned> d(1, std::max(1u, max_w));
  std::vector<unsigned> w(k);
  unsigned total = 0;
  for (auto& x : w) total += (x = d(rng));
  std::vector<Rational> p;
  for (auto x : w) {
    Rational q(x, total);
    q.canonicalize();
    p.push_back(q);
  }
  return p;
}

std::string own_name(const Admg& g, VertexId v) { return "u(" + g.name(v) + ")"; }

std::string shared_name(const Admg& g, const BidirectedEdge& e) {
  return "u(" + g.name(e.first) + "," + g.name(e.second) + ")";
}

std::vector<std::vector<std::string>> labels(const Admg& g, std::size_t k) {
  std::vector<std::string> d;
  for (std::size_t i = 0; i < k; ++i) d.push_back(std::to_string(i));
  return std::vector<std::vector<std::string>>(g.size(), d);
}

}  // namespace

DiscreteScm random_scm(const Admg& g, std::mt19937_64& rng, const RandomScmOptions& opt) {
  const std::size_t d = std::max<std::size_t>(1, opt.domain_size);
  std::vector<NoiseSource> own, shared;
  for (VertexId v = 0; v < g.size(); ++v) {
    std::uniform_int_distribution<std::size_t> k(d, std::max(d, d + opt.max_noise - std::min(opt.max_noise, opt.min_noise)));
    own.push_back({own_name(g, v), random_probs(k(rng), rng, opt.max_denominator)});
  }
  for (const auto& e : g.bidirected_edges()) {
    std::uniform_int_distribution<std::size_t> k(std::max<std::size_t>(1, opt.min_noise),
                                                 std::max(opt.min_noise, opt.max_noise));
    shared.push_back({shared_name(g, e), random_probs(k(rng), rng, opt.max_denominator)});
  }
  // The first d own-noise values cycle through the domain from a random offset
  // chosen per combination of the other inputs; the rest are arbitrary.
  std::vector<std::vector<std::uint16_t>> tables(g.size());
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  for (VertexId v = 0; v < g.size(); ++v) {
    std::size_t before = 1, after = 1;
    for (std::size_t i = 0; i < g.parents(v).size(); ++i) before *= d;
    for (auto e : g.incident_bidirected(v)) after *= shared[e].probs.size();
    const std::size_t own_k = own[v].probs.size();
    tables[v].resize(before * own_k * after);
    for (std::size_t b = 0; b < before; ++b)
      for (std::size_t c = 0; c < after; ++c) {
        const std::size_t offset = pick(rng);
        for (std::size_t u = 0; u < own_k; ++u) {
          const std::size_t out = u < d ? (offset + u) % d : pick(rng);
          tables[v][(b * own_k + u) * after + c] = static_cast<std::uint16_t>(out);
        }
      }
  }
  return DiscreteScm(g, labels(g, d), std::move(own), std::move(shared), std::move(tables));
}

namespace {

// Binary model in which every vertex is the XOR of selected parents, selected
// incident shared noises and its own noise. Every shared noise is a fair bit.
struct XorSpec {
  std::vector<VertexSet> parents;
  std::vector<std::vector<std::size_t>> shared;
  std::vector<std::vector<Rational>> own;
};

DiscreteScm xor_model(const Admg& g, const XorSpec& spec) {
  const Rational half(1, 2);
  std::vector<NoiseSource> own, shared;
  for (VertexId v = 0; v < g.size(); ++v) own.push_back({own_name(g, v), spec.own[v]});
  for (const auto& e : g.bidirected_edges()) shared.push_back({shared_name(g, e), {half, half}});
  auto mech = [&](VertexId v, const std::vector<std::size_t>& in) -> std::size_t {
    const auto& pa = g.parents(v);
    std::size_t x = 0;
    for (std::size_t i = 0; i < pa.size(); ++i)
      if (spec.parents[v].contains(pa[i])) x ^= in[i];
    x ^= in[pa.size()] & 1;
    const auto& inc = g.incident_bidirected(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      if (std::find(spec.shared[v].begin(), spec.shared[v].end(), inc[i]) != spec.shared[v].end())
        x ^= in[pa.size() + 1 + i];
    return x;
  };
  return DiscreteScm::tabulate(g, labels(g, 2), std::move(own), std::move(shared), mech);
}

XorSpec empty_spec(const Admg& g) {
  XorSpec s;
  s.parents.assign(g.size(), {});
  s.shared.assign(g.size(), {});
  s.own.assign(g.size(), {Rational(1, 2), Rational(1, 2)});
  return s;
}

// Shared noises of bidirected edges with both endpoints in d, added to both endpoints.
void tie_district(const Admg& g, const VertexSet& d, XorSpec& s) {
  const auto& be = g.bidirected_edges();
  for (std::size_t e = 0; e < be.size(); ++e)
    if (d.contains(be[e].first) && d.contains(be[e].second)) {
      s.shared[be[e].first].push_back(e);
      s.shared[be[e].second].push_back(e);
    }
}

}  // namespace

std::pair<DiscreteScm, DiscreteScm> parity_models(const Admg& d_graph, VertexId a, VertexId green_child,
                                                  VertexId blue_child) {
  const Admg& g = d_graph;
  VertexSet d = g.all();
  d.erase(a);
  if (d.empty() || districts(g, d).size() != 1)
    throw std::invalid_argument("parity models need the non-treatment vertices to form one district");
  if (green_child == blue_child || !g.has_edge(a, green_child) || !g.has_edge(a, blue_child))
    throw std::invalid_argument("parity models need two distinct children of the treatment");
  XorSpec s = empty_spec(g);
  for (VertexId v : d) s.own[v] = {Rational(1)};
  for (VertexId u : d)
    for (VertexId c : g.children(u))
      if (d.contains(c)) {
        s.parents[c].insert(u);
        break;
      }
  tie_district(g, d, s);
  XorSpec s2 = s;
  s.parents[green_child].insert(a);
  s.parents[blue_child].insert(a);
  return {xor_model(g, s), xor_model(g, s2)};
}

namespace {

std::optional<std::size_t> position(const CausalPath& p, VertexId v) {
  auto it = std::find(p.begin(), p.end(), v);
  if (it == p.end()) return std::nullopt;
  return static_cast<std::size_t>(it - p.begin());
}

}  // namespace

std::pair<DiscreteScm, DiscreteScm> counterexample_models(const Admg& g, const PathBundle& bundle,
                                                          const RecantingReport& report,
                                                          const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= Rational(1, 2))
    throw std::invalid_argument("epsilon must lie strictly between 0 and 1/2");
  const VertexId a = report.treatment;
  CausalPath pg = report.path_in_pi;
  const CausalPath& pb = report.path_not_in_pi;
  if (pg.size() < 2 || pb.size() < 2 || pg[0] != a || pb[0] != a)
    throw std::invalid_argument("recanting report paths must start at the treatment");
  const VertexSet A = bundle.treatments();
  const VertexSet Y = bundle.outcomes();
  const std::vector<Rational> eps_bit{1 - epsilon, epsilon};

  XorSpec s = empty_spec(g);
  VertexSet reads_a;  // vertices that read the treatment in the first model only

  const VertexId zb = pb[1];
  if (bundle.is_green(a, zb)) {
    // One child z reached by both a pi path and a path leaving pi. It carries
    // a fair bit, so reading a does not change any interventional law.
    const VertexId z = zb;
    if (pg[1] != z) {
      const CausalPath* best = nullptr;
      for (const auto& p : bundle.paths())
        if (p[0] == a && p[1] == z && (!best || p.size() < best->size())) best = &p;
      if (!best) throw std::invalid_argument("no pi path through the shared child");
      pg = *best;
    }
    std::size_t t = 0;  // tail index of the first edge of pb outside pi
    while (t + 1 < pb.size() && bundle.is_green(pb[t], pb[t + 1])) ++t;
    if (t + 1 >= pb.size()) throw std::invalid_argument("path outside pi uses only green edges");
    std::size_t jb = 1;
    for (std::size_t k = 1; k <= t; ++k)
      if (position(pg, pb[k])) jb = k;
    std::size_t end_b = pb.size() - 1;
    for (std::size_t k = jb + 1; k < pb.size(); ++k)
      if (position(pg, pb[k])) {
        end_b = k;
        break;
      }
    for (std::size_t k = 2; k < pg.size(); ++k) s.parents[pg[k]].insert(pg[k - 1]);
    for (std::size_t k = jb + 1; k <= end_b; ++k) s.parents[pb[k]].insert(pb[k - 1]);
    for (std::size_t k = 2; k < pg.size(); ++k) s.own[pg[k]] = eps_bit;
    for (std::size_t k = jb + 1; k <= end_b; ++k) s.own[pb[k]] = eps_bit;
    reads_a.insert(z);
  } else {
    // Distinct children: the green one opens a chain along the pi path, the
    // blue one reads the baseline whatever its copy. Bidirected noises inside
    // the district mask the joint shift so interventional laws agree.
    const VertexSet vstar = relevant_nodes(g, A, Y);
    const VertexSet& d = report.district;
    std::map<VertexId, VertexId> succ;
    VertexSet terminal;
    for (std::size_t k = 1; k < pg.size(); ++k) {
      if (Y.contains(pg[k])) {
        terminal.insert(pg[k]);
        break;
      }
      succ[pg[k]] = pg[k + 1];
    }
    // Distance to the outcomes inside V*.
    std::map<VertexId, std::size_t> dist;
    std::deque<VertexId> q;
    for (VertexId y : Y) {
      dist[y] = 0;
      q.push_back(y);
    }
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (VertexId p : g.parents(v))
        if (vstar.contains(p) && !dist.count(p)) {
          dist[p] = dist[v] + 1;
          q.push_back(p);
        }
    }
    VertexSet chain;
    std::vector<VertexId> todo(d.begin(), d.end());
    for (std::size_t k = 1; k < pg.size(); ++k) {
      todo.push_back(pg[k]);
      if (Y.contains(pg[k])) break;
    }
    while (!todo.empty()) {
      VertexId v = todo.back();
      todo.pop_back();
      if (chain.contains(v)) continue;
      chain.insert(v);
      if (Y.contains(v)) continue;
      if (!succ.count(v)) {
        if (!dist.count(v)) throw std::invalid_argument("district vertex has no route to the outcomes");
        for (VertexId c : g.children(v))
          if (vstar.contains(c) && dist.count(c) && dist[c] + 1 == dist[v]) {
            succ[v] = c;
            break;
          }
      }
      todo.push_back(succ.at(v));
    }
    for (VertexId v : chain) {
      s.own[v] = eps_bit;
      if (!Y.contains(v)) s.parents[succ.at(v)].insert(v);
    }
    tie_district(g, d, s);
    reads_a.insert(pg[1]);
    reads_a.insert(zb);
  }
  XorSpec s2 = s;
  for (VertexId v : reads_a) s.parents[v].insert(a);
  return {xor_model(g, s), xor_model(g, s2)};
}

}  // namespace recant
