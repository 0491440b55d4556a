#include "specfile.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace relttk {

namespace {

input_error at_line(int no, const std::string& msg) {
  return input_error("line " + std::to_string(no) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> fields(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// one key=value assignment like rank=4 or vertices=v
std::pair<std::string, std::string> assignment(const std::string& tok,
                                               int no) {
  size_t eq = tok.find('=');
  if (eq == std::string::npos)
    throw at_line(no, "expected key=value, got '" + tok + "'");
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

struct RawSpec {
  int group_line = 0;
  int rank = 0;
  std::vector<std::string> names;
  std::vector<std::vector<Letter>> blocks;

  int graph_line = 0;
  std::vector<std::string> vert_names;
  std::vector<GEdge> edges;

  int marking_line = 0;
  std::vector<std::string> marking_entries;

  int map_line = 0;
  std::vector<std::string> map_entries;

  std::vector<std::pair<int, std::string>> filtration_entries;

  int collapse_line = 0;
  std::string collapse_text;
  int lengths_line = 0;
  std::string lengths_text;
};

Letter name_to_letter(const RawSpec& raw, const std::string& name, int no) {
  for (size_t i = 0; i < raw.names.size(); ++i)
    if (raw.names[i] == name) return (Letter)(i + 1);
  throw at_line(no, "unknown basis letter '" + name + "'");
}

void parse_group(RawSpec& raw, const std::string& rest, int no) {
  if (raw.group_line) throw at_line(no, "duplicate group line");
  raw.group_line = no;
  bool have_rank = false;
  for (const std::string& tok : fields(rest)) {
    auto [key, value] = assignment(tok, no);
    if (key == "rank") {
      try {
        raw.rank = std::stoi(value);
      } catch (const std::exception&) {
        throw at_line(no, "bad rank '" + value + "'");
      }
      have_rank = true;
    } else if (key == "basis") {
      for (const std::string& name : split(value, ',')) {
        if (name.empty()) throw at_line(no, "empty basis letter name");
        raw.names.push_back(name);
      }
    } else {
      throw at_line(no, "unknown group field '" + key + "'");
    }
  }
  if (!have_rank || raw.names.empty())
    throw at_line(no, "group line needs rank= and basis=");
  if (raw.rank != (int)raw.names.size())
    throw at_line(no, "rank does not match the basis");
}

void parse_factor(RawSpec& raw, const std::string& rest, int no) {
  if (!raw.group_line) throw at_line(no, "factor line before group line");
  auto [label, value] = assignment(trim(rest), no);
  std::string want = "A" + std::to_string(raw.blocks.size() + 1);
  if (label != want)
    throw at_line(no, "expected factor label " + want + ", got '" + label +
                          "'");
  std::vector<Letter> block;
  for (const std::string& name : split(value, ','))
    block.push_back(name_to_letter(raw, name, no));
  if (block.empty()) throw at_line(no, "empty factor");
  raw.blocks.push_back(block);
}

void parse_graph(RawSpec& raw, const std::string& rest, int no) {
  if (raw.graph_line) throw at_line(no, "duplicate graph line");
  raw.graph_line = no;
  std::string edge_text;
  for (const std::string& tok : fields(rest)) {
    auto [key, value] = assignment(tok, no);
    if (key == "vertices") {
      for (const std::string& name : split(value, ',')) {
        if (name.empty()) throw at_line(no, "empty vertex name");
        raw.vert_names.push_back(name);
      }
    } else if (key == "edges") {
      edge_text = value;
    } else {
      throw at_line(no, "unknown graph field '" + key + "'");
    }
  }
  if (raw.vert_names.empty()) throw at_line(no, "graph line needs vertices=");
  if (edge_text.empty()) throw at_line(no, "graph line needs edges=");

  auto vertex_index = [&](const std::string& name) {
    for (size_t i = 0; i < raw.vert_names.size(); ++i)
      if (raw.vert_names[i] == name) return (int)i;
    throw at_line(no, "unknown vertex '" + name + "'");
  };

  // entries look like a(v,w) and are separated by commas
  size_t pos = 0;
  while (pos < edge_text.size()) {
    size_t open = edge_text.find('(', pos);
    size_t close = edge_text.find(')', pos);
    if (open == std::string::npos || close == std::string::npos ||
        close < open)
      throw at_line(no, "malformed edge list");
    std::string name = edge_text.substr(pos, open - pos);
    if (name.empty()) throw at_line(no, "empty edge name");
    std::vector<std::string> ends =
        split(edge_text.substr(open + 1, close - open - 1), ',');
    if (ends.size() != 2)
      throw at_line(no, "edge '" + name + "' needs two endpoints");
    raw.edges.push_back({vertex_index(ends[0]), vertex_index(ends[1]), name});
    pos = close + 1;
    if (pos < edge_text.size()) {
      if (edge_text[pos] != ',')
        throw at_line(no, "expected ',' between edges");
      ++pos;
    }
  }
  if (raw.edges.empty()) throw at_line(no, "empty edge list");
}

// signed edge id by display name, using the parsed edge list
int edge_id(const RawSpec& raw, const std::string& name, int no) {
  bool rev = !name.empty() && name.back() == '\'';
  std::string base = rev ? name.substr(0, name.size() - 1) : name;
  for (size_t i = 0; i < raw.edges.size(); ++i)
    if (raw.edges[i].name == base) return rev ? -(int)(i + 1) : (int)(i + 1);
  throw at_line(no, "unknown edge '" + name + "'");
}

Rational parse_length(const std::string& text, int no) {
  std::vector<std::string> parts = split(text, '/');
  if (parts.size() > 2 || parts[0].empty())
    throw at_line(no, "bad length '" + text + "'");
  try {
    BigInt num(parts[0]);
    BigInt den = parts.size() == 2 ? BigInt(parts[1]) : BigInt(1);
    if (den == 0) throw std::runtime_error("");
    return Rational(num) / Rational(den);
  } catch (const std::exception&) {
    throw at_line(no, "bad length '" + text + "'");
  }
}

RawSpec scan(const std::string& text) {
  RawSpec raw;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;

    size_t klen = 0;
    while (klen < body.size() && (std::isalpha((unsigned char)body[klen]) ||
                                  body[klen] == '-'))
      ++klen;
    std::string key = body.substr(0, klen);
    std::string rest =
        klen < body.size() && body[klen] == '=' ? body.substr(klen + 1)
                                                : trim(body.substr(klen));

    if (key == "group") {
      parse_group(raw, rest, no);
      continue;
    }
    if (!raw.group_line) throw at_line(no, "group line must come first");

    if (key == "factor") {
      parse_factor(raw, rest, no);
    } else if (key == "graph") {
      parse_graph(raw, rest, no);
    } else if (key == "marking") {
      if (raw.marking_line) throw at_line(no, "duplicate marking line");
      raw.marking_line = no;
      raw.marking_entries = fields(rest);
    } else if (key == "map") {
      if (raw.map_line) throw at_line(no, "duplicate map line");
      raw.map_line = no;
      for (const std::string& entry : split(rest, ';'))
        raw.map_entries.push_back(trim(entry));
    } else if (key == "filtration") {
      auto [label, value] = assignment(trim(rest), no);
      std::string want =
          "G" + std::to_string(raw.filtration_entries.size() + 1);
      if (label != want)
        throw at_line(no, "expected filtration label " + want + ", got '" +
                              label + "'");
      raw.filtration_entries.push_back({no, value});
    } else if (key == "collapse") {
      if (raw.collapse_line) throw at_line(no, "duplicate collapse line");
      raw.collapse_line = no;
      raw.collapse_text = trim(rest);
    } else if (key == "lengths") {
      if (raw.lengths_line) throw at_line(no, "duplicate lengths line");
      raw.lengths_line = no;
      raw.lengths_text = trim(rest);
    } else {
      throw at_line(no, "unknown key '" + key + "'");
    }
  }
  if (!raw.group_line) throw input_error("line 1: missing group line");
  if (raw.graph_line && !raw.marking_line)
    throw at_line(raw.graph_line, "graph line without marking line");
  if (raw.marking_line && !raw.graph_line)
    throw at_line(raw.marking_line, "marking line without graph line");
  return raw;
}

// the rose on the basis when no graph line is given
void default_rose(RawSpec& raw) {
  if (raw.graph_line) return;
  raw.vert_names = {"v"};
  for (const std::string& name : raw.names) raw.edges.push_back({0, 0, name});
  for (const std::string& name : raw.names)
    raw.marking_entries.push_back(name + "=" + name);
}

MarkedGraph build_graph(const RawSpec& raw) {
  Basis basis(raw.names, raw.blocks);
  int no = raw.marking_line ? raw.marking_line : raw.group_line;
  if ((int)raw.marking_entries.size() != basis.rank())
    throw at_line(no, "marking needs one entry per basis letter");
  std::vector<EdgePath> marking(basis.rank());
  std::vector<char> seen(basis.rank(), 0);
  for (const std::string& entry : raw.marking_entries) {
    auto [name, value] = assignment(entry, no);
    Letter x = 0;
    for (size_t i = 0; i < raw.names.size(); ++i)
      if (raw.names[i] == name) x = (Letter)(i + 1);
    if (x == 0) throw at_line(no, "unknown basis letter '" + name + "'");
    if (seen[x - 1]) throw at_line(no, "duplicate marking for '" + name + "'");
    seen[x - 1] = 1;
    if (value.empty())
      throw at_line(no, "empty marking path for '" + name + "'");
    EdgePath path;
    for (const std::string& part : split(value, ','))
      path.push_back(edge_id(raw, part, no));
    marking[x - 1] = path;
  }
  try {
    return MarkedGraph(basis, (int)raw.vert_names.size(), raw.edges, marking);
  } catch (const input_error& e) {
    throw at_line(no, e.what());
  } catch (const verify_error& e) {
    throw at_line(no, e.what());
  }
}

std::optional<FactorSystem> declared_system(const MarkedGraph& graph) {
  const Basis& basis = graph.basis();
  if (basis.block_count() == 0) return std::nullopt;
  std::vector<std::vector<Word>> gens;
  for (int b = 0; b < basis.block_count(); ++b) {
    std::vector<Word> ws;
    for (Letter x : basis.block(b)) ws.push_back(Word{x});
    gens.push_back(ws);
  }
  return make_system(basis, gens);
}

std::vector<std::string> vertex_labels(int n) {
  if (n == 1) return {"v"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

std::string comma_path(const MarkedGraph& g, const EdgePath& p) {
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += g.edge_name(p[i]);
  }
  return out;
}

std::string rational_text(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  std::string out = num.str();
  if (den != 1) out += "/" + den.str();
  return out;
}

std::string write_common(const MarkedGraph& graph) {
  const Basis& basis = graph.basis();
  std::ostringstream out;
  out << "group  rank=" << basis.rank() << " basis=";
  for (Letter x = 1; x <= basis.rank(); ++x) {
    if (x > 1) out << ',';
    out << basis.name(x);
  }
  out << '\n';
  for (int b = 0; b < basis.block_count(); ++b) {
    out << "factor A" << b + 1 << '=';
    const std::vector<Letter>& block = basis.block(b);
    for (size_t i = 0; i < block.size(); ++i) {
      if (i) out << ',';
      out << basis.name(block[i]);
    }
    out << '\n';
  }
  std::vector<std::string> vnames = vertex_labels(graph.vertex_count());
  out << "graph  vertices=";
  for (size_t i = 0; i < vnames.size(); ++i) {
    if (i) out << ',';
    out << vnames[i];
  }
  out << "  edges=";
  for (int e = 1; e <= graph.edge_count(); ++e) {
    if (e > 1) out << ',';
    out << graph.edge_name(e) << '(' << vnames[graph.edge_from(e)] << ','
        << vnames[graph.edge_to(e)] << ')';
  }
  out << '\n';
  out << "marking";
  for (Letter x = 1; x <= basis.rank(); ++x)
    out << ' ' << basis.name(x) << '=' << comma_path(graph, graph.marking(x));
  out << '\n';
  return out.str();
}

}  // namespace

GraphMap parse_map_spec(const std::string& text) {
  RawSpec raw = scan(text);
  if (!raw.map_line)
    throw at_line(raw.group_line, "missing map line");
  if (raw.collapse_line || raw.lengths_line)
    throw at_line(raw.collapse_line ? raw.collapse_line : raw.lengths_line,
                  "collapse and lengths lines belong in tree files");
  default_rose(raw);
  MarkedGraph graph = build_graph(raw);

  int no = raw.map_line;
  std::vector<EdgePath> images(graph.edge_count());
  std::vector<char> seen(graph.edge_count(), 0);
  for (const std::string& entry : raw.map_entries) {
    size_t arrow = entry.find("->");
    if (arrow == std::string::npos)
      throw at_line(no, "map entry '" + entry + "' needs ->");
    std::string name = trim(entry.substr(0, arrow));
    int e = edge_id(raw, name, no);
    if (e < 0) throw at_line(no, "map entries use positive edges");
    if (seen[e - 1]) throw at_line(no, "duplicate image for '" + name + "'");
    seen[e - 1] = 1;
    EdgePath img;
    for (const std::string& part : fields(entry.substr(arrow + 2)))
      img.push_back(edge_id(raw, part, no));
    images[e - 1] = img;
  }
  for (int e = 1; e <= graph.edge_count(); ++e)
    if (!seen[e - 1])
      throw at_line(no, "no image for edge '" + graph.edge_name(e) + "'");

  // vertex images are read off the endpoints of the edge images
  std::vector<int> vimg(graph.vertex_count(), -1);
  for (int e = 1; e <= graph.edge_count(); ++e) {
    if (images[e - 1].empty()) continue;
    int u = graph.edge_from(e), w = graph.edge_to(e);
    if (vimg[u] < 0) vimg[u] = graph.path_from(images[e - 1]);
    if (vimg[w] < 0) vimg[w] = graph.path_to(images[e - 1]);
  }
  for (int v = 0; v < graph.vertex_count(); ++v)
    if (vimg[v] < 0)
      throw at_line(no, "cannot infer the vertex image at '" +
                            vertex_labels(graph.vertex_count())[v] + "'");

  std::vector<std::vector<int>> filtration;
  for (const auto& [line_no, value] : raw.filtration_entries) {
    std::vector<int> level;
    for (const std::string& part : split(value, ',')) {
      int e = edge_id(raw, part, line_no);
      if (e < 0)
        throw at_line(line_no, "filtration levels use positive edges");
      level.push_back(e);
    }
    filtration.push_back(level);
  }

  try {
    return GraphMap(graph, vimg, images, filtration, declared_system(graph));
  } catch (const input_error& e) {
    throw at_line(no, e.what());
  } catch (const verify_error& e) {
    throw at_line(no, e.what());
  }
}

GrushkoTreePoint parse_tree_spec(const std::string& text) {
  RawSpec raw = scan(text);
  if (raw.map_line)
    throw at_line(raw.map_line, "map lines belong in map files");
  if (!raw.collapse_line)
    throw at_line(raw.group_line, "missing collapse line");
  if (!raw.lengths_line)
    throw at_line(raw.group_line, "missing lengths line");
  default_rose(raw);
  MarkedGraph graph = build_graph(raw);

  std::vector<int> collapsed;
  if (!raw.collapse_text.empty())
    for (const std::string& part : split(raw.collapse_text, ',')) {
      int e = edge_id(raw, part, raw.collapse_line);
      if (e < 0)
        throw at_line(raw.collapse_line, "collapse lists positive edges");
      collapsed.push_back(e);
    }

  std::map<int, Rational> lengths;
  if (!raw.lengths_text.empty())
    for (const std::string& part : split(raw.lengths_text, ',')) {
      std::vector<std::string> halves = split(part, ':');
      if (halves.size() != 2)
        throw at_line(raw.lengths_line, "length entries look like edge:value");
      int e = edge_id(raw, halves[0], raw.lengths_line);
      if (e < 0)
        throw at_line(raw.lengths_line, "lengths list positive edges");
      if (lengths.count(e))
        throw at_line(raw.lengths_line,
                      "duplicate length for '" + halves[0] + "'");
      lengths[e] = parse_length(halves[1], raw.lengths_line);
    }

  try {
    return GrushkoTreePoint(graph, collapsed, lengths);
  } catch (const input_error& e) {
    throw at_line(raw.lengths_line, e.what());
  } catch (const verify_error& e) {
    throw at_line(raw.lengths_line, e.what());
  }
}

std::string write_map_spec(const GraphMap& rep) {
  const MarkedGraph& graph = rep.graph();
  std::ostringstream out;
  out << write_common(graph);
  out << "map   ";
  for (int e = 1; e <= graph.edge_count(); ++e) {
    out << (e > 1 ? " ; " : " ") << graph.edge_name(e) << "->";
    EdgePath img = rep.edge_image(e);
    for (size_t i = 0; i < img.size(); ++i) {
      if (i) out << ' ';
      out << graph.edge_name(img[i]);
    }
  }
  out << '\n';
  for (int r = 0; r + 1 < rep.stratum_count(); ++r) {
    out << "filtration G" << r + 1 << '=';
    const std::vector<int>& level = rep.filtration_element(r);
    for (size_t i = 0; i < level.size(); ++i) {
      if (i) out << ',';
      out << graph.edge_name(level[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string write_tree_spec(const GrushkoTreePoint& t) {
  const MarkedGraph& graph = t.graph();
  std::ostringstream out;
  out << write_common(graph);
  out << "collapse=";
  const std::vector<int>& collapsed = t.collapsed();
  for (size_t i = 0; i < collapsed.size(); ++i) {
    if (i) out << ',';
    out << graph.edge_name(collapsed[i]);
  }
  out << '\n';
  out << "lengths=";
  bool first = true;
  for (const auto& [e, len] : t.lengths()) {
    if (!first) out << ',';
    first = false;
    out << graph.edge_name(e) << ':' << rational_text(len);
  }
  out << '\n';
  return out.str();
}

}  // namespace relttk
