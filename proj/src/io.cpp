#include "recant/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "recant/error.hpp"

namespace recant {

namespace {

enum class Tok { Word, Arrow, BiArrow, Eq };

struct Token {
  Tok kind;
  std::string text;
  std::size_t col;
};

struct Line {
  std::size_t number;
  std::vector<Token> toks;
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '/' || c == '(' ||
         c == ')' || c == ',' || c == '\'';
}

std::vector<Line> lex(std::string_view text, const std::string& syntax_code) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      char c = raw[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (raw.substr(i, 3) == "<->") {
        line.toks.push_back({Tok::BiArrow, "<->", i + 1});
        i += 3;
      } else if (raw.substr(i, 2) == "->") {
        line.toks.push_back({Tok::Arrow, "->", i + 1});
        i += 2;
      } else if (c == '=') {
        line.toks.push_back({Tok::Eq, "=", i + 1});
        ++i;
      } else if (word_char(c) || (c == '-' && i + 1 < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i + 1])))) {
        std::size_t j = i + 1;
        while (j < raw.size() && word_char(raw[j])) ++j;
        line.toks.push_back({Tok::Word, std::string(raw.substr(i, j - i)), i + 1});
        i = j;
      } else {
        throw ParseError(syntax_code, number, i + 1, std::string("unexpected character '") + c + "'");
      }
    }
    if (!line.toks.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

bool is_label(const std::string& s) {
  return !s.empty() && s.find_first_of("(),") == std::string::npos;
}

// --- problem files --------------------------------------------------------

struct ProblemParser {
  std::vector<Line> lines;
  std::vector<std::string> names;
  std::map<std::string, std::size_t> declared_at;

  [[noreturn]] void fail(const std::string& code, const Line& l, std::size_t col, const std::string& msg) {
    throw ParseError(code, l.number, col, msg);
  }

  const Token& word(const Line& l, std::size_t i, const char* what) {
    if (i >= l.toks.size() || l.toks[i].kind != Tok::Word)
      fail("S001", l, i < l.toks.size() ? l.toks[i].col : 1, std::string("expected ") + what);
    return l.toks[i];
  }

  void end(const Line& l, std::size_t i) {
    if (i < l.toks.size()) fail("S001", l, l.toks[i].col, "unexpected '" + l.toks[i].text + "'");
  }

  VertexId vertex(const Admg& g, const Line& l, const Token& t) {
    auto v = g.find(t.text);
    if (!v) fail("S002", l, t.col, "unknown vertex '" + t.text + "'");
    return *v;
  }

  ProblemSpec run(std::string_view text) {
    lines = lex(text, "S001");
    // Vertices first, so edges and paths may mention them in any order.
    for (const auto& l : lines) {
      if (l.toks[0].kind != Tok::Word || l.toks[0].text != "node") continue;
      const Token& n = word(l, 1, "a vertex name");
      end(l, 2);
      if (!is_identifier(n.text)) fail("S001", l, n.col, "invalid vertex name '" + n.text + "'");
      if (declared_at.count(n.text)) fail("S006", l, n.col, "vertex '" + n.text + "' declared twice");
      declared_at[n.text] = l.number;
      names.push_back(n.text);
    }
    std::vector<std::pair<std::string, std::string>> directed, bidirected;
    std::vector<std::pair<const Line*, std::vector<Token>>> path_lines;
    std::vector<std::pair<const Line*, Token>> treatment_lines, outcome_lines;
    std::vector<const Line*> value_lines;
    std::optional<ProblemSpec::BundleMode> keyword;
    const Line* keyword_line = nullptr;
    for (const auto& l : lines) {
      const Token& head = l.toks[0];
      if (head.kind != Tok::Word) fail("S001", l, head.col, "expected a declaration");
      if (head.text == "node") continue;
      if (l.toks.size() >= 2 && (l.toks[1].kind == Tok::Arrow || l.toks[1].kind == Tok::BiArrow)) {
        const Token& b = word(l, 2, "an edge head");
        end(l, 3);
        for (const Token* t : {&head, &b})
          if (!declared_at.count(t->text)) fail("S002", l, t->col, "unknown vertex '" + t->text + "'");
        (l.toks[1].kind == Tok::Arrow ? directed : bidirected).emplace_back(head.text, b.text);
      } else if (head.text == "treatment" || head.text == "outcome") {
        const Token& n = word(l, 1, "a vertex name");
        end(l, 2);
        (head.text == "treatment" ? treatment_lines : outcome_lines).emplace_back(&l, n);
      } else if (head.text == "value") {
        value_lines.push_back(&l);
      } else if (head.text == "path") {
        std::vector<Token> verts{word(l, 1, "a path vertex")};
        std::size_t i = 2;
        while (i < l.toks.size()) {
          if (l.toks[i].kind != Tok::Arrow) fail("S001", l, l.toks[i].col, "expected '->'");
          verts.push_back(word(l, i + 1, "a path vertex"));
          i += 2;
        }
        path_lines.emplace_back(&l, std::move(verts));
      } else if (head.text == "paths") {
        const Token& k = word(l, 1, "'all' or 'none'");
        end(l, 2);
        if (k.text != "all" && k.text != "none") fail("S001", l, k.col, "expected 'all' or 'none'");
        if (keyword) fail("S006", l, head.col, "bundle keyword given twice");
        keyword = k.text == "all" ? ProblemSpec::BundleMode::All : ProblemSpec::BundleMode::None;
        keyword_line = &l;
      } else {
        fail("S001", l, head.col, "unknown declaration '" + head.text + "'");
      }
    }

    ProblemSpec spec;
    try {
      spec.graph = Admg::from_names(names, directed, bidirected);
    } catch (const GraphError& e) {
      throw ParseError("S005", 1, 1, e.what());
    }
    const Admg& g = spec.graph;
    for (auto& [l, t] : treatment_lines) {
      VertexId v = vertex(g, *l, t);
      if (spec.treatments.contains(v)) fail("S006", *l, t.col, "treatment '" + t.text + "' repeated");
      spec.treatments.insert(v);
    }
    for (auto& [l, t] : outcome_lines) {
      VertexId v = vertex(g, *l, t);
      if (spec.outcomes.contains(v)) fail("S006", *l, t.col, "outcome '" + t.text + "' repeated");
      if (spec.treatments.contains(v)) fail("S007", *l, t.col, "'" + t.text + "' is both treatment and outcome");
      spec.outcomes.insert(v);
    }
    if (spec.treatments.empty()) throw ParseError("S007", 1, 1, "no treatment declared");
    if (spec.outcomes.empty()) throw ParseError("S007", 1, 1, "no outcome declared");

    spec.values = default_values(spec.treatments);
    std::set<VertexId> valued;
    for (const Line* l : value_lines) {
      VertexId v = vertex(g, *l, word(*l, 1, "a treatment name"));
      if (!spec.treatments.contains(v)) fail("S007", *l, l->toks[1].col, "'" + g.name(v) + "' is not a treatment");
      if (!valued.insert(v).second) fail("S006", *l, l->toks[1].col, "values for '" + g.name(v) + "' given twice");
      std::optional<std::string> on, off;
      std::size_t i = 2;
      while (i < l->toks.size()) {
        const Token& key = word(*l, i, "'active' or 'baseline'");
        if (i + 1 >= l->toks.size() || l->toks[i + 1].kind != Tok::Eq) fail("S001", *l, key.col, "expected key=value");
        const Token& val = word(*l, i + 2, "a value label");
        if (!is_label(val.text)) fail("S001", *l, val.col, "invalid value label '" + val.text + "'");
        if (key.text == "active" && !on) on = val.text;
        else if (key.text == "baseline" && !off) off = val.text;
        else fail("S001", *l, key.col, "unexpected key '" + key.text + "'");
        i += 3;
      }
      if (!on || !off) fail("S001", *l, l->toks[0].col, "value needs both active= and baseline=");
      spec.values.active[v] = *on;
      spec.values.baseline[v] = *off;
    }

    if (keyword && !path_lines.empty())
      fail("S006", *keyword_line, keyword_line->toks[0].col, "'paths' keyword conflicts with explicit paths");
    spec.mode = keyword ? *keyword : ProblemSpec::BundleMode::Explicit;
    for (auto& [l, verts] : path_lines) {
      CausalPath p;
      for (const Token& t : verts) p.push_back(vertex(g, *l, t));
      for (std::size_t k = 0; k + 1 < p.size(); ++k)
        if (!g.has_edge(p[k], p[k + 1]))
          fail("S003", *l, verts[k + 1].col, "no edge " + g.name(p[k]) + " -> " + g.name(p[k + 1]));
      if (!is_proper(g, spec.treatments, spec.outcomes, p))
        fail("S003", *l, verts[0].col, "not a proper causal path: " + format_path(g, p));
      if (std::find(spec.paths.begin(), spec.paths.end(), p) != spec.paths.end())
        fail("S006", *l, verts[0].col, "path listed twice: " + format_path(g, p));
      spec.paths.push_back(std::move(p));
    }
    try {
      (void)spec.bundle();
    } catch (const BundleError& e) {
      const std::size_t line = path_lines.empty() ? 1 : path_lines.back().first->number;
      const char* code = e.kind() == BundleError::Kind::EdgeInconsistent ? "S004"
                         : e.kind() == BundleError::Kind::NotProper  ? "S003"
                         : e.kind() == BundleError::Kind::Duplicate  ? "S006"
                                                                     : "S007";
      throw ParseError(code, line, 1, e.what());
    }
    return spec;
  }
};

}  // namespace

PathBundle ProblemSpec::bundle() const {
  switch (mode) {
    case BundleMode::All:
      return total_bundle(graph, treatments, outcomes);
    case BundleMode::None:
      return empty_bundle(graph, treatments, outcomes);
    case BundleMode::Explicit:
      break;
  }
  return make_bundle(graph, treatments, outcomes, paths);
}

ProblemSpec parse_problem(std::string_view text) { return ProblemParser{}.run(text); }

std::string render_problem(const ProblemSpec& spec) {
  const Admg& g = spec.graph;
  std::ostringstream os;
  for (VertexId v = 0; v < g.size(); ++v) os << "node " << g.name(v) << "\n";
  std::vector<DirectedEdge> de = g.directed_edges();
  std::sort(de.begin(), de.end());
  for (const auto& e : de) os << g.name(e.tail) << " -> " << g.name(e.head) << "\n";
  std::vector<BidirectedEdge> be = g.bidirected_edges();
  std::sort(be.begin(), be.end());
  for (const auto& e : be) os << g.name(e.first) << " <-> " << g.name(e.second) << "\n";
  for (VertexId a : spec.treatments) os << "treatment " << g.name(a) << "\n";
  for (VertexId y : spec.outcomes) os << "outcome " << g.name(y) << "\n";
  for (VertexId a : spec.treatments)
    os << "value " << g.name(a) << " active=" << spec.values.active.at(a)
       << " baseline=" << spec.values.baseline.at(a) << "\n";
  switch (spec.mode) {
    case ProblemSpec::BundleMode::All:
      os << "paths all\n";
      break;
    case ProblemSpec::BundleMode::None:
      os << "paths none\n";
      break;
    case ProblemSpec::BundleMode::Explicit: {
      std::vector<CausalPath> ps = spec.paths;
      std::sort(ps.begin(), ps.end());
      for (const auto& p : ps) os << "path " << format_path(g, p) << "\n";
      if (ps.empty()) os << "paths none\n";
      break;
    }
  }
  return os.str();
}

// --- model files ------------------------------------------------------------

namespace {

std::string own_noise_name(const Admg& g, VertexId v) { return "u(" + g.name(v) + ")"; }

std::string shared_noise_name(const Admg& g, const BidirectedEdge& e) {
  return "u(" + g.name(e.first) + "," + g.name(e.second) + ")";
}

struct ModelParser {
  const Admg& g;

  [[noreturn]] void fail(const std::string& code, const Line& l, std::size_t col, const std::string& msg) {
    throw ParseError(code, l.number, col, msg);
  }

  const Token& word(const Line& l, std::size_t i, const char* what) {
    if (i >= l.toks.size() || l.toks[i].kind != Tok::Word)
      fail("M001", l, i < l.toks.size() ? l.toks[i].col : 1, std::string("expected ") + what);
    return l.toks[i];
  }

  // index=probability pairs starting at token i.
  std::vector<Rational> noise_table(const Line& l, std::size_t i) {
    std::vector<Rational> probs;
    while (i < l.toks.size()) {
      const Token& k = word(l, i, "a noise value");
      if (i + 1 >= l.toks.size() || l.toks[i + 1].kind != Tok::Eq) fail("M001", l, k.col, "expected value=probability");
      const Token& p = word(l, i + 2, "a probability");
      if (k.text != std::to_string(probs.size()))
        fail("M004", l, k.col, "noise values must be 0, 1, ... in order");
      try {
        probs.push_back(parse_rational(p.text));
      } catch (const std::invalid_argument&) {
        fail("M004", l, p.col, "invalid probability '" + p.text + "'");
      }
      if (probs.back() < 0) fail("M004", l, p.col, "negative probability");
      i += 3;
    }
    if (probs.empty()) fail("M001", l, l.toks[0].col, "noise needs at least one value");
    Rational total = 0;
    for (const auto& p : probs) total += p;
    if (total != 1) fail("M004", l, l.toks[0].col, "noise probabilities sum to " + to_string(total));
    return probs;
  }

  DiscreteScm run(std::string_view text) {
    const auto lines = lex(text, "M001");
    const std::size_t n = g.size();
    std::vector<std::optional<std::vector<std::string>>> domains(n);
    std::map<std::string, std::size_t> noise_slot;  // own noises 0..n-1, then shared
    for (VertexId v = 0; v < n; ++v) noise_slot[own_noise_name(g, v)] = v;
    for (std::size_t e = 0; e < g.bidirected_edges().size(); ++e)
      noise_slot[shared_noise_name(g, g.bidirected_edges()[e])] = n + e;
    std::vector<std::optional<std::vector<Rational>>> noises(n + g.bidirected_edges().size());
    std::vector<std::vector<const Line*>> mech_lines(n);

    auto vertex = [&](const Line& l, const Token& t) {
      auto v = g.find(t.text);
      if (!v) fail("M002", l, t.col, "unknown vertex '" + t.text + "'");
      return *v;
    };

    for (const auto& l : lines) {
      const Token& head = word(l, 0, "a declaration");
      if (head.text == "domain") {
        VertexId v = vertex(l, word(l, 1, "a vertex"));
        if (domains[v]) fail("M004", l, l.toks[1].col, "domain of '" + g.name(v) + "' given twice");
        std::vector<std::string> d;
        for (std::size_t i = 2; i < l.toks.size(); ++i) {
          const Token& t = word(l, i, "a value");
          if (!is_label(t.text)) fail("M001", l, t.col, "invalid value '" + t.text + "'");
          if (std::find(d.begin(), d.end(), t.text) != d.end()) fail("M004", l, t.col, "value repeated");
          d.push_back(t.text);
        }
        if (d.empty()) fail("M004", l, head.col, "empty domain");
        domains[v] = std::move(d);
      } else if (head.text == "noise") {
        const Token& name = word(l, 1, "a noise name");
        auto it = noise_slot.find(name.text);
        if (it == noise_slot.end()) fail("M002", l, name.col, "unknown noise '" + name.text + "'");
        if (noises[it->second]) fail("M004", l, name.col, "noise '" + name.text + "' given twice");
        noises[it->second] = noise_table(l, 2);
      } else if (head.text == "mech") {
        VertexId v = vertex(l, word(l, 1, "a vertex"));
        mech_lines[v].push_back(&l);
      } else {
        fail("M001", l, head.col, "unknown declaration '" + head.text + "'");
      }
    }

    std::vector<std::vector<std::string>> doms(n);
    for (VertexId v = 0; v < n; ++v) {
      if (!domains[v]) throw ParseError("M003", 1, 1, "missing domain for '" + g.name(v) + "'");
      doms[v] = *domains[v];
    }
    std::vector<NoiseSource> own, shared;
    for (VertexId v = 0; v < n; ++v) {
      if (!noises[v]) throw ParseError("M003", 1, 1, "missing noise " + own_noise_name(g, v));
      own.push_back({own_noise_name(g, v), *noises[v]});
    }
    for (std::size_t e = 0; e < g.bidirected_edges().size(); ++e) {
      const std::string name = shared_noise_name(g, g.bidirected_edges()[e]);
      if (!noises[n + e]) throw ParseError("M003", 1, 1, "missing noise " + name);
      shared.push_back({name, *noises[n + e]});
    }

    std::vector<std::vector<std::uint16_t>> tables(n);
    for (VertexId v = 0; v < n; ++v) {
      // Input names and domains in table order.
      std::vector<std::string> in_names;
      std::vector<std::vector<std::string>> in_doms;
      for (VertexId p : g.parents(v)) {
        in_names.push_back(g.name(p));
        in_doms.push_back(doms[p]);
      }
      auto index_labels = [](std::size_t k) {
        std::vector<std::string> d;
        for (std::size_t i = 0; i < k; ++i) d.push_back(std::to_string(i));
        return d;
      };
      in_names.push_back(own[v].name);
      in_doms.push_back(index_labels(own[v].probs.size()));
      for (auto e : g.incident_bidirected(v)) {
        in_names.push_back(shared[e].name);
        in_doms.push_back(index_labels(shared[e].probs.size()));
      }
      std::size_t rows = 1;
      for (const auto& d : in_doms) rows *= d.size();
      const auto& ml = mech_lines[v];
      if (ml.size() != rows) {
        const std::size_t line = ml.empty() ? 1 : ml.back()->number;
        throw ParseError("M003", line, 1,
                         "mechanism of '" + g.name(v) + "' has " + std::to_string(ml.size()) + " rows, expected " +
                             std::to_string(rows));
      }
      std::vector<std::size_t> expect(in_names.size(), 0);
      for (std::size_t r = 0; r < rows; ++r) {
        const Line& l = *ml[r];
        std::size_t i = 2;
        for (std::size_t k = 0; k < in_names.size(); ++k, i += 3) {
          const Token& key = word(l, i, "an input name");
          if (key.text != in_names[k])
            fail(noise_slot.count(key.text) || g.find(key.text) ? "M003" : "M002", l, key.col,
                 "expected input '" + in_names[k] + "'");
          if (i + 1 >= l.toks.size() || l.toks[i + 1].kind != Tok::Eq) fail("M001", l, key.col, "expected '='");
          const Token& val = word(l, i + 2, "an input value");
          if (val.text != in_doms[k][expect[k]]) {
            if (std::find(in_doms[k].begin(), in_doms[k].end(), val.text) == in_doms[k].end())
              fail("M004", l, val.col, "value '" + val.text + "' outside the domain of " + in_names[k]);
            fail("M003", l, val.col, "mechanism rows are not in lexicographic order");
          }
        }
        if (i >= l.toks.size() || l.toks[i].kind != Tok::Arrow) fail("M001", l, i < l.toks.size() ? l.toks[i].col : 1, "expected '->'");
        const Token& out = word(l, i + 1, "an output value");
        if (i + 2 < l.toks.size()) fail("M001", l, l.toks[i + 2].col, "unexpected token");
        auto it = std::find(doms[v].begin(), doms[v].end(), out.text);
        if (it == doms[v].end()) fail("M004", l, out.col, "output '" + out.text + "' outside the domain");
        tables[v].push_back(static_cast<std::uint16_t>(it - doms[v].begin()));
        for (std::size_t k = expect.size(); k-- > 0;) {
          if (++expect[k] < in_doms[k].size()) break;
          expect[k] = 0;
        }
      }
    }
    return DiscreteScm(g, std::move(doms), std::move(own), std::move(shared), std::move(tables));
  }
};

}  // namespace

DiscreteScm parse_model(const Admg& g, std::string_view text) { return ModelParser{g}.run(text); }

std::string render_model(const DiscreteScm& m) {
  const Admg& g = m.graph();
  std::ostringstream os;
  for (VertexId v = 0; v < g.size(); ++v) {
    os << "domain " << g.name(v);
    for (const auto& x : m.domain(v)) os << " " << x;
    os << "\n";
  }
  auto noise_line = [&](const NoiseSource& s) {
    os << "noise " << s.name;
    for (std::size_t k = 0; k < s.probs.size(); ++k) os << " " << k << "=" << to_string(s.probs[k]);
    os << "\n";
  };
  for (VertexId v = 0; v < g.size(); ++v) noise_line(m.own_noise(v));
  for (const auto& s : m.shared_noises()) noise_line(s);
  for (VertexId v = 0; v < g.size(); ++v) {
    const auto sizes = m.input_sizes(v);
    std::vector<std::string> names;
    for (VertexId p : g.parents(v)) names.push_back(g.name(p));
    names.push_back(m.own_noise(v).name);
    for (auto e : g.incident_bidirected(v)) names.push_back(m.shared_noises()[e].name);
    const std::size_t np = g.parents(v).size();
    std::vector<std::size_t> in(sizes.size(), 0);
    for (std::size_t r = 0; r < m.table(v).size(); ++r) {
      os << "mech " << g.name(v);
      for (std::size_t k = 0; k < in.size(); ++k) {
        os << " " << names[k] << "=";
        if (k < np) os << m.domain(g.parents(v)[k])[in[k]];
        else os << in[k];
      }
      os << " -> " << m.domain(v)[m.table(v)[r]] << "\n";
      for (std::size_t k = in.size(); k-- > 0;) {
        if (++in[k] < sizes[k]) break;
        in[k] = 0;
      }
    }
  }
  return os.str();
}

// --- tables -------------------------------------------------------------------

DistTable parse_table(std::string_view text) {
  const auto lines = lex(text, "T001");
  if (lines.empty()) throw ParseError("T001", 1, 1, "empty table");
  const Line& header = lines[0];
  DistTable t;
  for (const auto& tok : header.toks) {
    if (tok.kind != Tok::Word) throw ParseError("T001", header.number, tok.col, "expected a column name");
    t.variables.push_back(tok.text);
  }
  if (t.variables.empty() || t.variables.back() != "p")
    throw ParseError("T001", header.number, 1, "header must end with the column 'p'");
  t.variables.pop_back();
  {
    auto sorted = t.variables;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError("T001", header.number, 1, "repeated column");
  }
  const std::size_t k = t.variables.size();
  t.domains.assign(k, {});
  std::vector<std::vector<std::string>> rows;
  std::vector<Rational> probs;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const Line& l = lines[r];
    if (l.toks.size() != k + 1)
      throw ParseError("T001", l.number, 1, "row has " + std::to_string(l.toks.size()) + " cells, expected " +
                                              std::to_string(k + 1));
    std::vector<std::string> row;
    for (std::size_t c = 0; c < k; ++c) {
      if (l.toks[c].kind != Tok::Word || !is_label(l.toks[c].text))
        throw ParseError("T001", l.number, l.toks[c].col, "invalid value");
      row.push_back(l.toks[c].text);
      auto& d = t.domains[c];
      if (std::find(d.begin(), d.end(), row.back()) == d.end()) d.push_back(row.back());
    }
    try {
      probs.push_back(parse_rational(l.toks[k].text));
    } catch (const std::invalid_argument&) {
      throw ParseError("T004", l.number, l.toks[k].col, "invalid probability '" + l.toks[k].text + "'");
    }
    if (probs.back() < 0) throw ParseError("T004", l.number, l.toks[k].col, "negative probability");
    rows.push_back(std::move(row));
  }
  std::size_t cells = 1;
  for (const auto& d : t.domains) cells *= d.size();
  if (rows.size() != cells)
    throw ParseError("T003", lines.back().number, 1,
                     "table has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(cells));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto a = t.assignment(r);
    for (std::size_t c = 0; c < k; ++c)
      if (t.domains[c][a[c]] != rows[r][c])
        throw ParseError("T003", lines[r + 1].number, lines[r + 1].toks[c].col,
                         "rows are not in lexicographic order");
  }
  Rational total = 0;
  for (const auto& p : probs) total += p;
  if (total != 1) throw ParseError("T004", lines.back().number, 1, "probabilities sum to " + to_string(total));
  t.probs = std::move(probs);
  return t;
}

std::string render_table(const DistTable& t) {
  std::ostringstream os;
  for (const auto& v : t.variables) os << v << " ";
  os << "p\n";
  for (std::size_t i = 0; i < t.probs.size(); ++i) {
    auto a = t.assignment(i);
    for (std::size_t c = 0; c < a.size(); ++c) os << t.domains[c][a[c]] << " ";
    os << to_string(t.probs[i]) << "\n";
  }
  return os.str();
}

}  // namespace recant
