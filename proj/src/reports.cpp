#include "reports.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "currents.hpp"
#include "ffs.hpp"
#include "lamination.hpp"
#include "specfile.hpp"
#include "trees.hpp"
#include "whitehead.hpp"

namespace relttk {

namespace {

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string rational_text(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  std::string out = num.str();
  if (den != 1) out += "/" + den.str();
  return out;
}

template <typename F>
CommandResult guarded(F&& f) {
  try {
    return f();
  } catch (const input_error& e) {
    return {2, "", e.what()};
  } catch (const verify_error& e) {
    return {1, "", e.what()};
  }
}

void check_format(const std::string& format,
                  const std::vector<std::string>& allowed) {
  for (const std::string& a : allowed)
    if (format == a) return;
  std::string list;
  for (size_t i = 0; i < allowed.size(); ++i)
    list += (i ? " or " : "") + allowed[i];
  throw input_error("unknown format '" + format + "', expected " + list);
}

// non-rose representatives keep their collapse data; rose inputs with a
// declared system are collapsed here before experiments run
GraphMap collapsed_rep(const GraphMap& rep) {
  if (rep.collapse_info()) return rep;
  return rep.collapse_to_a_traintrack();
}

std::string label_list(const WhiteheadGraph& g, const std::vector<int>& nodes) {
  std::string out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (size_t j = 0; j < g.nodes.size(); ++j)
      if (g.nodes[j] == nodes[i]) {
        if (i) out += ',';
        out += g.labels[j];
        break;
      }
  }
  return out;
}

std::string components_json(const WhiteheadGraph& g,
                            const ConnectivityReport& report,
                            const std::string& indent) {
  std::ostringstream out;
  out << "[";
  for (size_t c = 0; c < report.components.size(); ++c) {
    out << (c ? "," : "") << "\n" << indent << "  [";
    const std::vector<int>& comp = report.components[c];
    for (size_t i = 0; i < comp.size(); ++i) {
      for (size_t j = 0; j < g.nodes.size(); ++j)
        if (g.nodes[j] == comp[i])
          out << (i ? ", " : "") << jstr(g.labels[j]);
    }
    out << "]";
  }
  out << "\n" << indent << "]";
  return out.str();
}

std::string certificate_json(const IrreducibilityCertificate& cert) {
  std::ostringstream out;
  out << "{\n"
      << "    \"realized_lower_equals_declared\": "
      << (cert.realized_lower_equals_A ? "true" : "false") << ",\n"
      << "    \"top_matrix_primitive\": "
      << (cert.top_matrix_primitive ? "true" : "false") << ",\n"
      << "    \"relative_whitehead_connected\": "
      << (cert.relative_wh_connected_everywhere ? "true" : "false") << ",\n"
      << "    \"verdict\": " << jstr(to_string(cert.verdict)) << ",\n"
      << "    \"witness\": " << jstr(cert.witness) << "\n  }";
  return out.str();
}

struct ReproduceSuite {
  std::ostringstream out;
  int failed = 0;
  int total = 0;

  template <typename T>
  void check(const std::string& name, const T& expected, const T& got) {
    ++total;
    if (expected == got) {
      out << "PASS " << name << "\n";
    } else {
      ++failed;
      std::ostringstream e, g;
      e << expected;
      g << got;
      out << "FAIL " << name << " expected=" << e.str() << " got=" << g.str()
          << "\n";
    }
  }
};

GraphMap reproduce_example_map() {
  Basis b4({"a", "b", "c", "d"}, {{1, 2}});
  Aut phi(b4, {{1, 2}, {2}, {3, 1, 4}, {4, 3, 1, 4}});
  return GraphMap::from_automorphism(phi, {{1, 2}},
                                     make_system(b4, {{{1}, {2}}}));
}

GrushkoTreePoint reproduce_counterexample_tree(int k) {
  Basis b2({"a", "b"}, {{1}});
  std::vector<GEdge> edges = {{1, 1, "s"}, {0, 0, "l"}, {0, 1, "t"}};
  EdgePath a_loop = {3, 1, -3};
  EdgePath b_loop;
  for (int i = 0; i < k; ++i) b_loop.insert(b_loop.end(), {3, -1, -3});
  b_loop.push_back(2);
  MarkedGraph g(b2, 2, edges, {reduce(a_loop), reduce(b_loop)});
  return GrushkoTreePoint(std::move(g), {1}, {{2, 1}, {3, 1}});
}

GrushkoTreePoint reproduce_splitting_tree(int k) {
  Basis b2({"a", "b"}, {{1}});
  std::vector<GEdge> edges = {{0, 0, "u"}, {1, 1, "s"}, {0, 1, "t"}};
  EdgePath a_loop = {3, 2, -3};
  EdgePath b_loop;
  for (int i = 0; i < k; ++i) b_loop.insert(b_loop.end(), {3, -2, -3});
  b_loop.push_back(1);
  MarkedGraph g(b2, 2, edges, {reduce(a_loop), reduce(b_loop)});
  return GrushkoTreePoint(std::move(g), {1, 2}, {{3, 1}});
}

}  // namespace

Rational parse_tolerance(const std::string& text) {
  input_error bad("bad tolerance '" + text + "'");
  if (text.empty()) throw bad;
  if (text.find('/') != std::string::npos) {
    size_t slash = text.find('/');
    try {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw bad;
      return Rational(num) / Rational(den);
    } catch (const std::runtime_error&) {
      throw bad;
    }
  }
  std::string mantissa = text;
  long long exponent = 0;
  size_t epos = text.find_first_of("eE");
  if (epos != std::string::npos) {
    mantissa = text.substr(0, epos);
    try {
      exponent = std::stoll(text.substr(epos + 1));
    } catch (const std::exception&) {
      throw bad;
    }
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_dot = false, negative = false;
  for (size_t i = 0; i < mantissa.size(); ++i) {
    char c = mantissa[i];
    if (c == '-' && i == 0) {
      negative = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit((unsigned char)c)) {
      digits += c;
      if (seen_dot) ++frac_digits;
    } else {
      throw bad;
    }
  }
  if (digits.empty()) throw bad;
  Rational value{BigInt(digits)};
  if (negative) value = -value;
  long long shift = exponent - frac_digits;
  Rational ten(10);
  for (long long i = 0; i < (shift < 0 ? -shift : shift); ++i) {
    if (shift < 0)
      value /= ten;
    else
      value *= ten;
  }
  return value;
}

CommandResult cmd_analyze(const std::string& spec_text,
                          const std::string& format) {
  return guarded([&]() -> CommandResult {
    check_format(format, {"json", "dot"});
    GraphMap rep = parse_map_spec(spec_text);
    const MarkedGraph& graph = rep.graph();
    const Basis& basis = graph.basis();

    if (format == "dot") return {0, graph.to_dot("marked_graph"), ""};

    std::ostringstream out;
    out << "{\n";
    out << "  \"rank\": " << basis.rank() << ",\n";
    out << "  \"peripheral_blocks\": " << basis.block_count() << ",\n";
    out << "  \"vertices\": " << graph.vertex_count() << ",\n";
    out << "  \"strata\": [";
    for (int r = 0; r < rep.stratum_count(); ++r) {
      StratumData data = rep.stratum_data(r);
      out << (r ? "," : "") << "\n    {\"index\": " << r << ", \"edges\": [";
      for (size_t i = 0; i < data.edges.size(); ++i)
        out << (i ? ", " : "") << jstr(graph.edge_name(data.edges[i]));
      out << "], \"class\": " << jstr(to_string(data.cls))
          << ", \"eg\": " << (data.eg ? "true" : "false");
      out << ", \"matrix\": [";
      for (size_t i = 0; i < data.matrix.size(); ++i) {
        out << (i ? ", " : "") << "[";
        for (size_t j = 0; j < data.matrix[i].size(); ++j)
          out << (j ? ", " : "") << data.matrix[i][j].str();
        out << "]";
      }
      out << "]";
      if (data.pf) {
        out << ", \"lambda\": " << decimal_string(data.pf->lambda.mid(), 6);
        out << ", \"lambda_interval\": ["
            << decimal_string(data.pf->lambda.lo, 12) << ", "
            << decimal_string(data.pf->lambda.hi, 12) << "]";
      } else {
        out << ", \"lambda\": null";
      }
      out << "}";
    }
    out << "\n  ],\n";

    RttReport rtt = rep.verify_rtt();
    out << "  \"rtt\": {\"ok\": " << (rtt.ok ? "true" : "false")
        << ", \"lower_path_bound\": " << rtt.lower_path_bound
        << ", \"strata\": [";
    for (size_t i = 0; i < rtt.strata.size(); ++i) {
      const StratumCheck& c = rtt.strata[i];
      out << (i ? "," : "") << "\n    {\"index\": " << c.index
          << ", \"eg\": " << (c.eg ? "true" : "false")
          << ", \"boundary_ok\": " << (c.boundary_ok ? "true" : "false")
          << ", \"lower_paths_ok\": " << (c.lower_paths_ok ? "true" : "false")
          << ", \"legality_ok\": " << (c.legality_ok ? "true" : "false")
          << ", \"witness\": " << jstr(c.witness) << "}";
    }
    out << "\n  ]},\n";

    out << "  \"whitehead\": [";
    for (int v = 0; v < graph.vertex_count(); ++v) {
      WhiteheadGraph wh = whitehead_graph(rep, v);
      ConnectivityReport conn = connectivity_report(wh);
      out << (v ? "," : "") << "\n    {\"vertex\": " << v << ", \"connected\": "
          << (conn.connected ? "true" : "false")
          << ", \"components\": " << components_json(wh, conn, "    ") << "}";
    }
    out << "\n  ],\n";

    std::string problem;
    if (!rtt.ok) problem = "representative failed the train track checks";

    if (rep.declared_system()) {
      try {
        GraphMap collapsed = collapsed_rep(rep);
        const CollapseInfo& info = *collapsed.collapse_info();
        out << "  \"collapse\": {\"edges\": [";
        for (size_t i = 0; i < info.collapsed_edges.size(); ++i)
          out << (i ? ", " : "")
              << jstr(graph.edge_name(info.collapsed_edges[i]));
        out << "], \"components\": " << info.components.size() << "},\n";

        out << "  \"relative_whitehead\": [";
        for (int v = 0; v < graph.vertex_count(); ++v) {
          WhiteheadGraph rel = relative_whitehead_graph(collapsed, rep, v);
          ConnectivityReport conn = connectivity_report(rel);
          out << (v ? "," : "") << "\n    {\"vertex\": " << v
              << ", \"connected\": " << (conn.connected ? "true" : "false")
              << ", \"components\": " << components_json(rel, conn, "    ")
              << "}";
        }
        out << "\n  ],\n";

        IrreducibilityCertificate cert = irreducibility_certificate(
            collapsed, rep, *rep.declared_system());
        out << "  \"certificate\": " << certificate_json(cert) << "\n";
        if (problem.empty() &&
            cert.verdict != CertificateVerdict::certified_necessary_conditions)
          problem = "irreducibility certificate failed: " + cert.witness;
      } catch (const verify_error& e) {
        out << "  \"collapse\": {\"error\": " << jstr(e.what()) << "},\n";
        out << "  \"certificate\": null\n";
        if (problem.empty()) problem = e.what();
      }
    } else {
      out << "  \"collapse\": null,\n";
      out << "  \"certificate\": null\n";
    }
    out << "}\n";
    return {problem.empty() ? 0 : 1, out.str(), problem};
  });
}

CommandResult cmd_whitehead(const std::string& spec_text,
                            const std::string& format) {
  return guarded([&]() -> CommandResult {
    check_format(format, {"json", "dot"});
    GraphMap rep = parse_map_spec(spec_text);
    const MarkedGraph& graph = rep.graph();

    std::optional<GraphMap> collapsed;
    std::string collapse_error;
    if (rep.declared_system()) {
      try {
        collapsed = collapsed_rep(rep);
      } catch (const verify_error& e) {
        collapse_error = e.what();
      }
    }

    if (format == "dot") {
      std::string out;
      for (int v = 0; v < graph.vertex_count(); ++v) {
        out += whitehead_graph(rep, v).to_dot();
        if (collapsed)
          out += relative_whitehead_graph(*collapsed, rep, v).to_dot();
      }
      return {collapse_error.empty() ? 0 : 1, out, collapse_error};
    }

    std::ostringstream out;
    out << "{\n  \"taken_turns\": [";
    std::set<Turn> turns = taken_turns(rep);
    bool first = true;
    for (const Turn& t : turns) {
      out << (first ? "" : ", ") << "[" << jstr(graph.edge_name(t.d1)) << ", "
          << jstr(graph.edge_name(t.d2)) << "]";
      first = false;
    }
    out << "],\n  \"vertices\": [";
    for (int v = 0; v < graph.vertex_count(); ++v) {
      WhiteheadGraph wh = whitehead_graph(rep, v);
      ConnectivityReport conn = connectivity_report(wh);
      out << (v ? "," : "") << "\n    {\"vertex\": " << v << ", \"connected\": "
          << (conn.connected ? "true" : "false")
          << ", \"components\": " << components_json(wh, conn, "    ") << "}";
    }
    out << "\n  ],\n  \"relative\": ";
    if (collapsed) {
      out << "[";
      for (int v = 0; v < graph.vertex_count(); ++v) {
        WhiteheadGraph rel = relative_whitehead_graph(*collapsed, rep, v);
        ConnectivityReport conn = connectivity_report(rel);
        out << (v ? "," : "") << "\n    {\"vertex\": " << v
            << ", \"connected\": " << (conn.connected ? "true" : "false")
            << ", \"components\": " << components_json(rel, conn, "    ")
            << "}";
      }
      out << "\n  ]";
    } else if (!collapse_error.empty()) {
      out << "{\"error\": " << jstr(collapse_error) << "}";
    } else {
      out << "null";
    }
    if (collapsed) {
      IrreducibilityCertificate cert = irreducibility_certificate(
          *collapsed, rep, *rep.declared_system());
      out << ",\n  \"certificate\": " << certificate_json(cert);
    }
    out << "\n}\n";
    return {collapse_error.empty() ? 0 : 1, out.str(), collapse_error};
  });
}

CommandResult cmd_lamination(const std::string& spec_text, int depth,
                             const std::string& format) {
  return guarded([&]() -> CommandResult {
    check_format(format, {"json", "csv"});
    GraphMap rep = parse_map_spec(spec_text);
    LeafLanguage lang = attracting_language(rep, depth);
    std::string listing = lang.to_text(rep.graph().basis());

    if (format == "csv") return {0, "word\n" + listing, ""};

    std::ostringstream out;
    out << "{\n  \"depth\": " << lang.depth << ",\n  \"generator\": "
        << jstr(lang.generator) << ",\n  \"count\": " << lang.words.size()
        << ",\n  \"words\": [";
    std::istringstream lines(listing);
    std::string word;
    bool first = true;
    while (std::getline(lines, word)) {
      out << (first ? "" : ", ") << jstr(word);
      first = false;
    }
    out << "]\n}\n";
    return {0, out.str(), ""};
  });
}

CommandResult cmd_currents(const std::string& spec_text,
                           const std::string& class_word, int power_max,
                           int depth, const std::string& format) {
  return guarded([&]() -> CommandResult {
    check_format(format, {"json", "csv"});
    GraphMap rep = collapsed_rep(parse_map_spec(spec_text));
    const Basis& basis = rep.graph().basis();
    CyclicWord alpha(parse_word(class_word, basis));
    NsCurrentReport report = ns_experiment(rep, alpha, power_max, depth);

    std::string output;
    if (format == "json") {
      output = report.to_json();
    } else {
      output = frequency_current(rep, depth).to_csv();
    }
    bool converged = power_max == 0 || report.ratio_converged;
    return {converged ? 0 : 1, output,
            converged ? "" : "growth ratios have not converged at the final "
                             "power"};
  });
}

CommandResult cmd_trees(const std::string& spec_text,
                        const std::string& tree_text,
                        const std::string& sample, int power_max,
                        const std::string& tol) {
  return guarded([&]() -> CommandResult {
    GraphMap rep = collapsed_rep(parse_map_spec(spec_text));
    GrushkoTreePoint tree = parse_tree_spec(tree_text);
    const Basis& basis = rep.graph().basis();

    std::vector<CyclicWord> classes;
    std::string entry;
    std::istringstream in(sample);
    while (std::getline(in, entry, ','))
      classes.push_back(CyclicWord(parse_word(entry, basis)));

    TreeNsReport report = tree_ns_experiment(rep, tree, classes, power_max,
                                             parse_tolerance(tol));
    bool ok = power_max == 0 ||
              (report.cauchy && report.limits_match && report.warning.empty());
    std::string message;
    if (!ok)
      message = report.warning.empty()
                    ? "normalized spectra have not converged at the final power"
                    : report.warning;
    return {ok ? 0 : 1, report.to_csv(basis), message};
  });
}

CommandResult cmd_pairing(const std::string& tree_text,
                          const std::string& class_word, int depth) {
  return guarded([&]() -> CommandResult {
    GrushkoTreePoint tree = parse_tree_spec(tree_text);
    const Basis& basis = tree.graph().basis();
    CyclicWord alpha(parse_word(class_word, basis));

    Rational length = translation_length(tree, alpha);
    bool dual = rational_dual(tree, alpha);

    std::ostringstream out;
    out << "{\n  \"class\": " << jstr(format_word(alpha.letters(), basis))
        << ",\n  \"translation_length\": " << jstr(rational_text(length))
        << ",\n  \"translation_length_decimal\": " << decimal_string(length, 9)
        << ",\n  \"rational_dual\": " << (dual ? "true" : "false")
        << ",\n  \"depth\": " << depth << ",\n  \"dual_at_depth\": ";
    if (depth > 0 && !alpha.trivial() &&
        is_nonperipheral(alpha.letters(), basis) &&
        alpha.least_period() == alpha.size()) {
      RelativeCurrent eta = rational_current(alpha, depth, basis);
      out << (is_dual_at_depth(tree, eta, depth) ? "true" : "false");
    } else {
      out << "null";
    }
    out << "\n}\n";
    return {0, out.str(), ""};
  });
}

CommandResult cmd_reproduce() {
  return guarded([&]() -> CommandResult {
    ReproduceSuite suite;
    Basis b2({"a", "b"}, {{1}});

    RelativeCurrent eta = rational_current(CyclicWord(Word{1, 2, 1, 1, 2}), 4,
                                           b2);
    suite.check("occurrence count of b in the class a b a a b", Rational(2),
                eta.weight({2}));
    suite.check("occurrence count of b a in the class a b a a b", Rational(2),
                eta.weight({2, 1}));
    suite.check("occurrence count of a b a b in the class a b a a b",
                Rational(1), eta.weight({1, 2, 1, 2}));

    GraphMap rep = reproduce_example_map();
    WhiteheadGraph wh = whitehead_graph(rep, 0);
    ConnectivityReport conn = connectivity_report(wh);
    suite.check("whitehead graph splits into two gates", (size_t)2,
                conn.components.size());
    if (conn.components.size() == 2) {
      suite.check("first gate", std::string("d',c',a,c"),
                  label_list(wh, conn.components[0]));
      suite.check("second gate", std::string("b',a',b,d"),
                  label_list(wh, conn.components[1]));
    }
    GraphMap collapsed = rep.collapse_to_a_traintrack();
    WhiteheadGraph rel = relative_whitehead_graph(collapsed, rep, 0);
    suite.check("relative whitehead graph is connected", true,
                connectivity_report(rel).connected);

    for (int k = 1; k <= 5; ++k) {
      GrushkoTreePoint tk = reproduce_counterexample_tree(k);
      Word akb(k, 1);
      akb.push_back(2);
      Word ak1b(k + 1, 1);
      ak1b.push_back(2);
      suite.check("short loop length on the pairing tree k=" +
                      std::to_string(k),
                  Rational(1), translation_length(tk, CyclicWord(akb)));
      suite.check("long loop length on the pairing tree k=" +
                      std::to_string(k),
                  Rational(3), translation_length(tk, CyclicWord(ak1b)));
    }

    for (int k = 1; k <= 5; ++k) {
      GrushkoTreePoint tk = reproduce_splitting_tree(k);
      Word akb(k, 1);
      akb.push_back(2);
      suite.check("vertex class is elliptic in the splitting k=" +
                      std::to_string(k),
                  true, rational_dual(tk, CyclicWord(akb)));
    }

    std::map<Word, Rational> inf_table;
    for (int n = 0; n + 1 <= 6; ++n)
      for (int m = 0; n + 1 + m <= 6; ++m) {
        Word u(n, 1);
        u.push_back(2);
        u.insert(u.end(), m, 1);
        inf_table[u] = 1;
        inf_table[inverse(u)] = 1;
      }
    RelativeCurrent limit_current(b2, 6, inf_table);
    GrushkoTreePoint hnn(MarkedGraph::rose(b2), {1}, {{2, 1}});
    suite.check("limit current is not dual to the loop tree", false,
                is_dual_at_depth(hnn, limit_current, 6));

    auto cls = [](int rank, const std::vector<std::vector<Letter>>& blocks) {
      std::vector<std::string> names;
      for (int i = 0; i < rank; ++i) names.push_back(std::string(1, 'a' + i));
      Basis basis(names, blocks);
      return to_string(classify_ffs(aligned_system(basis)));
    };
    suite.check("two factors and nothing else", std::string("empty_complex"),
                cls(2, {{1}, {2}}));
    suite.check("two big factors and nothing else",
                std::string("empty_complex"), cls(4, {{1, 2}, {3, 4}}));
    suite.check("one factor and one free letter",
                std::string("zero_dimensional_hnn"), cls(2, {{1}}));
    suite.check("one big factor and one free letter",
                std::string("zero_dimensional_hnn"), cls(3, {{1, 2}}));
    suite.check("three factors and nothing else",
                std::string("zero_dimensional_triple"), cls(3, {{1}, {2}, {3}}));
    suite.check("three factors with a big one",
                std::string("zero_dimensional_triple"),
                cls(4, {{1, 2}, {3}, {4}}));
    suite.check("one factor and two free letters",
                std::string("non_exceptional"), cls(3, {{1}}));
    suite.check("two factors and one free letter",
                std::string("non_exceptional"), cls(3, {{1}, {2}}));
    suite.check("three factors and one free letter",
                std::string("non_exceptional"), cls(4, {{1}, {2}, {3}}));
    suite.check("four factors and nothing else",
                std::string("non_exceptional"), cls(4, {{1}, {2}, {3}, {4}}));

    std::ostringstream tail;
    if (suite.failed == 0) {
      tail << "all " << suite.total << " checks passed\n";
      return {0, suite.out.str() + tail.str(), ""};
    }
    tail << suite.failed << " of " << suite.total << " checks failed\n";
    return {1, suite.out.str() + tail.str(),
            std::to_string(suite.failed) + " reproduction checks failed"};
  });
}

}  // namespace relttk
