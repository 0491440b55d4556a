#include "whitehead.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace relttk {

namespace {

bool same_underlying_rep(const GraphMap& x, const GraphMap& y) {
  const MarkedGraph& g = x.graph();
  const MarkedGraph& h = y.graph();
  if (g.vertex_count() != h.vertex_count()) return false;
  if (g.edge_count() != h.edge_count()) return false;
  if (g.base_vertex() != h.base_vertex()) return false;
  if (!g.basis().same_alphabet(h.basis())) return false;
  for (int e = 1; e <= g.edge_count(); ++e) {
    if (g.edge_from(e) != h.edge_from(e)) return false;
    if (g.edge_to(e) != h.edge_to(e)) return false;
    if (g.edge_name(e) != h.edge_name(e)) return false;
    if (x.edge_image(e) != y.edge_image(e)) return false;
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (x.vertex_image(v) != y.vertex_image(v)) return false;
  return true;
}

void check_pair(const GraphMap& collapsed, const GraphMap& original) {
  if (!collapsed.collapse_info())
    throw input_error("first representative is not collapsed");
  if (!same_underlying_rep(collapsed, original) ||
      collapsed.collapse_info()->collapsed_edges !=
          original.maximal_invariant_subgraph())
    throw input_error(
        "collapsed representative does not come from the original one");
}

}  // namespace

std::string to_string(CertificateVerdict v) {
  return v == CertificateVerdict::certified_necessary_conditions
             ? "certified_necessary_conditions"
             : "failed";
}

std::string WhiteheadGraph::to_dot() const {
  std::map<int, std::string> label;
  for (size_t i = 0; i < nodes.size(); ++i) label[nodes[i]] = labels[i];
  std::string out = "graph whitehead {\n";
  for (size_t i = 0; i < nodes.size(); ++i) {
    out += "  \"" + labels[i] + "\"";
    if (nodes[i] == 0) out += " [peripheries=2]";
    out += ";\n";
  }
  for (const Turn& t : edges)
    out += "  \"" + label.at(t.d1) + "\" -- \"" + label.at(t.d2) + "\";\n";
  out += "}\n";
  return out;
}

std::set<Turn> taken_turns(const GraphMap& rep) {
  std::set<Turn> out;
  std::vector<Turn> frontier;
  for (int e = 1; e <= rep.graph().edge_count(); ++e)
    for (const Turn& t : rep.turns_in_path(rep.edge_image(e)))
      if (out.insert(t).second) frontier.push_back(t);
  while (!frontier.empty()) {
    Turn t = frontier.back();
    frontier.pop_back();
    Turn u = rep.image_turn(t);
    if (u.d1 == u.d2) continue;  // folded away, crosses no tightened path
    if (out.insert(u).second) frontier.push_back(u);
  }
  return out;
}

WhiteheadGraph whitehead_graph(const GraphMap& rep, int vertex) {
  const MarkedGraph& g = rep.graph();
  if (vertex < 0 || vertex >= g.vertex_count())
    throw input_error("vertex out of range");
  WhiteheadGraph out;
  out.vertex = vertex;
  out.nodes = g.directions(vertex);
  std::sort(out.nodes.begin(), out.nodes.end());
  for (int d : out.nodes) out.labels.push_back(g.edge_name(d));
  std::set<Turn> edges;
  for (const Turn& t : taken_turns(rep))
    if (g.edge_from(t.d1) == vertex) edges.insert(t);
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

WhiteheadGraph relative_whitehead_graph(const GraphMap& collapsed,
                                        const GraphMap& original, int vertex) {
  check_pair(collapsed, original);
  const MarkedGraph& g = collapsed.graph();
  if (vertex < 0 || vertex >= g.vertex_count())
    throw input_error("vertex out of range");
  const CollapseInfo& info = *collapsed.collapse_info();
  int comp = info.vertex_component[vertex];
  if (comp < 0) return whitehead_graph(collapsed, vertex);

  const std::vector<int>& verts = info.component_vertices[comp];
  auto lower = [&](int d) {
    return std::binary_search(info.collapsed_edges.begin(),
                              info.collapsed_edges.end(), std::abs(d));
  };
  auto inside = [&](int v) {
    return std::find(verts.begin(), verts.end(), v) != verts.end();
  };

  WhiteheadGraph out;
  out.vertex = vertex;
  out.has_peripheral_node = true;
  std::set<int> nodes{0};
  for (int v : verts)
    for (int d : g.directions(v))
      if (!lower(d)) nodes.insert(d);
  out.nodes.assign(nodes.begin(), nodes.end());
  for (int d : out.nodes)
    out.labels.push_back(d == 0 ? "v_A" : g.edge_name(d));

  std::set<Turn> edges;
  for (const Turn& t : taken_turns(collapsed)) {
    if (!inside(g.edge_from(t.d1))) continue;
    int x = lower(t.d1) ? 0 : t.d1;
    int y = lower(t.d2) ? 0 : t.d2;
    if (x == y) continue;
    edges.insert(Turn::make(x, y));
  }
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

ConnectivityReport connectivity_report(const WhiteheadGraph& g) {
  std::map<int, int> index;
  for (size_t i = 0; i < g.nodes.size(); ++i) index[g.nodes[i]] = (int)i;
  std::vector<int> root(g.nodes.size());
  for (size_t i = 0; i < root.size(); ++i) root[i] = (int)i;
  std::function<int(int)> find = [&](int i) {
    while (root[i] != i) i = root[i] = root[root[i]];
    return i;
  };
  for (const Turn& t : g.edges) {
    auto a = index.find(t.d1), b = index.find(t.d2);
    if (a == index.end() || b == index.end())
      throw input_error("edge joins nodes that are not listed");
    int ra = find(a->second), rb = find(b->second);
    if (ra != rb) root[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < g.nodes.size(); ++i)
    groups[find((int)i)].push_back(g.nodes[i]);
  ConnectivityReport report;
  for (auto& [r, members] : groups) report.components.push_back(members);
  report.connected = report.components.size() <= 1;
  return report;
}

IrreducibilityCertificate irreducibility_certificate(const GraphMap& collapsed,
                                                     const GraphMap& original,
                                                     const FactorSystem& a) {
  check_pair(collapsed, original);
  IrreducibilityCertificate cert;
  const CollapseInfo& info = *collapsed.collapse_info();

  FactorSystem realized = realized_ffs(collapsed.graph(), info.collapsed_edges);
  cert.realized_lower_equals_A = ffs_equal(realized, a);

  StratumData top = collapsed.stratum_data(collapsed.top_stratum());
  cert.top_matrix_primitive = top.cls == MatrixClass::primitive && top.eg;

  cert.relative_wh_connected_everywhere = true;
  std::string where;
  for (int v = 0; v < collapsed.graph().vertex_count(); ++v) {
    ConnectivityReport r =
        connectivity_report(relative_whitehead_graph(collapsed, original, v));
    if (!r.connected) {
      cert.relative_wh_connected_everywhere = false;
      where = std::to_string(v);
      break;
    }
  }

  if (!cert.realized_lower_equals_A)
    cert.witness =
        "collapsed subgraph realizes a different factor system than the"
        " declared one";
  else if (!cert.top_matrix_primitive)
    cert.witness = top.cls == MatrixClass::primitive
                       ? "top stratum does not grow"
                       : "top stratum matrix is not primitive";
  else if (!cert.relative_wh_connected_everywhere)
    cert.witness =
        "relative Whitehead graph at vertex " + where + " is disconnected";
  cert.verdict = cert.witness.empty()
                     ? CertificateVerdict::certified_necessary_conditions
                     : CertificateVerdict::failed;
  return cert;
}

EdgePath eigenray_prefix(const GraphMap& rep, int direction, int length) {
  const MarkedGraph& g = rep.graph();
  if (direction == 0 || std::abs(direction) > g.edge_count())
    throw input_error("no such direction");
  if (length < 1) throw input_error("prefix length must be positive");

  std::vector<int> orbit{direction};
  std::set<int> seen{direction};
  int k = 0;
  for (int d = rep.direction_map(direction);; d = rep.direction_map(d)) {
    if (d == direction) {
      k = (int)orbit.size();
      break;
    }
    if (!seen.insert(d).second) {
      std::string names = g.edge_name(orbit[0]);
      for (size_t i = 1; i < orbit.size(); ++i)
        names += " -> " + g.edge_name(orbit[i]);
      names += " -> " + g.edge_name(d);
      throw input_error("direction never returns to itself: " + names);
    }
    orbit.push_back(d);
  }

  EdgePath ray{direction};
  while ((int)ray.size() < length) {
    EdgePath next = rep.apply_pow(ray, k);
    if (next.size() < ray.size() ||
        !std::equal(ray.begin(), ray.end(), next.begin()))
      throw verify_error("iterate does not extend the ray");
    if (next.size() == ray.size())
      throw input_error("direction spans a finite ray");
    ray = std::move(next);
  }
  ray.resize(length);
  return ray;
}

std::vector<std::vector<int>> leaf_classes_at_vertex(const GraphMap& rep,
                                                     int vertex) {
  return connectivity_report(whitehead_graph(rep, vertex)).components;
}

}  // namespace relttk
