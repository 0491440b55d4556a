#include "graphmap.hpp"

#include <algorithm>
#include <map>

namespace relttk {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct SubgraphComponents {
  std::vector<std::vector<int>> edge_groups;
  std::vector<std::vector<int>> vertex_groups;
  std::vector<int> vertex_component;
};

SubgraphComponents subgraph_components(const MarkedGraph& g,
                                       const std::vector<int>& edges) {
  int n = g.vertex_count();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : edges) {
    int a = find(g.edge_from(e)), b = find(g.edge_to(e));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  SubgraphComponents out;
  out.vertex_component.assign(n, -1);
  std::map<int, int> index_of_root;
  for (int e : edges) {
    int r = find(g.edge_from(e));
    if (!index_of_root.count(r)) {
      index_of_root[r] = (int)out.edge_groups.size();
      out.edge_groups.push_back({});
      out.vertex_groups.push_back({});
    }
  }
  for (int e : edges) out.edge_groups[index_of_root[find(g.edge_from(e))]].push_back(e);
  for (int v = 0; v < n; ++v) {
    auto it = index_of_root.find(find(v));
    if (it == index_of_root.end()) continue;
    // only vertices actually touching a subgraph edge belong to it
    bool touched = false;
    for (int d : g.directions(v))
      touched = touched ||
                std::binary_search(edges.begin(), edges.end(), std::abs(d));
    if (!touched) continue;
    out.vertex_component[v] = it->second;
    out.vertex_groups[it->second].push_back(v);
  }
  for (auto& grp : out.edge_groups) grp = sorted_unique(grp);
  return out;
}

// spanning tree of one component, local letters on its complement
struct LocalSystem {
  int base = 0;
  std::vector<int> parent_edge;  // per graph vertex (only valid inside)
  std::vector<int> nontree;      // positive edge ids, ascending
  std::vector<Word> gen_words;   // global coordinates per local letter
};

LocalSystem local_system(const MarkedGraph& g, const std::vector<int>& edges,
                         const std::vector<int>& vertices) {
  LocalSystem ls;
  ls.base = vertices.front();
  ls.parent_edge.assign(g.vertex_count(), 0);
  std::vector<bool> reached(g.vertex_count(), false);
  std::vector<bool> tree(g.edge_count() + 1, false);
  reached[ls.base] = true;
  std::vector<int> queue{ls.base};
  for (size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    for (int d : g.directions(v)) {
      if (!std::binary_search(edges.begin(), edges.end(), std::abs(d)))
        continue;
      int w = g.edge_to(d);
      if (reached[w]) continue;
      reached[w] = true;
      ls.parent_edge[w] = d;
      tree[std::abs(d)] = true;
      queue.push_back(w);
    }
  }
  for (int e : edges)
    if (!tree[e]) ls.nontree.push_back(e);

  auto from_base = [&](int v) {
    EdgePath p;
    while (ls.parent_edge[v] != 0) {
      p.push_back(ls.parent_edge[v]);
      v = g.edge_from(ls.parent_edge[v]);
    }
    std::reverse(p.begin(), p.end());
    return p;
  };
  EdgePath to_graph_base = g.tree_path(g.base_vertex(), ls.base);
  for (int e : ls.nontree) {
    EdgePath loop = from_base(g.edge_from(e));
    loop.push_back(e);
    EdgePath back = from_base(g.edge_to(e));
    loop = reduce(concat(loop, inverse(back)));
    EdgePath at_base =
        reduce(concat(concat(to_graph_base, loop), inverse(to_graph_base)));
    ls.gen_words.push_back(g.loop_element(at_base));
  }
  return ls;
}

// rewrite a closed in-component path in the local letters
Word to_local_letters(const LocalSystem& ls, const EdgePath& p) {
  Word w;
  for (int d : p) {
    auto it = std::lower_bound(ls.nontree.begin(), ls.nontree.end(),
                               std::abs(d));
    if (it != ls.nontree.end() && *it == std::abs(d)) {
      int j = (int)(it - ls.nontree.begin()) + 1;
      w.push_back(d > 0 ? j : -j);
    }
  }
  return reduce(w);
}

bool is_permutation_like(const IMatrix& m) {
  int n = (int)m.size();
  for (int i = 0; i < n; ++i) {
    int row = 0, col = 0;
    for (int j = 0; j < n; ++j) {
      if (m[i][j] != 0) {
        if (m[i][j] != 1) return false;
        ++row;
      }
      if (m[j][i] != 0) ++col;
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

}  // namespace

std::string to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::zero: return "zero";
    case MatrixClass::reducible: return "reducible";
    case MatrixClass::irreducible_non_primitive:
      return "irreducible_non_primitive";
    case MatrixClass::primitive: return "primitive";
  }
  return "";
}

MatrixClass classify_matrix(const IMatrix& m) {
  bool zero = true;
  for (auto& row : m)
    for (auto& x : row) zero = zero && x == 0;
  if (zero) return MatrixClass::zero;
  if (!is_irreducible(m)) return MatrixClass::reducible;
  return is_primitive(m) ? MatrixClass::primitive
                         : MatrixClass::irreducible_non_primitive;
}

GraphMap::GraphMap(MarkedGraph graph, std::vector<int> vertex_image,
                   std::vector<EdgePath> edge_image,
                   std::vector<std::vector<int>> filtration,
                   std::optional<FactorSystem> declared)
    : graph_(std::move(graph)),
      vertex_image_(std::move(vertex_image)),
      edge_image_(std::move(edge_image)),
      nested_(std::move(filtration)),
      declared_(std::move(declared)) {
  validate();
}

GraphMap GraphMap::from_automorphism(const Aut& phi,
                                     std::vector<std::vector<int>> filtration,
                                     std::optional<FactorSystem> declared) {
  MarkedGraph g = MarkedGraph::rose(phi.basis());
  std::vector<EdgePath> images;
  for (int x = 1; x <= phi.basis().rank(); ++x) images.push_back(phi.image(x));
  return GraphMap(std::move(g), {0}, std::move(images), std::move(filtration),
                  std::move(declared));
}

void GraphMap::validate() {
  int E = graph_.edge_count();
  if ((int)vertex_image_.size() != graph_.vertex_count())
    throw input_error("need one image per vertex");
  for (int v : vertex_image_)
    if (v < 0 || v >= graph_.vertex_count())
      throw input_error("vertex image out of range");
  if ((int)edge_image_.size() != E)
    throw input_error("need one image path per edge");
  for (int e = 1; e <= E; ++e) {
    EdgePath img = graph_.tighten(edge_image_[e - 1]);
    if (img.empty())
      throw input_error("image of edge " + graph_.edge_name(e) +
                        " collapses to a point");
    if (graph_.edge_from(img.front()) != vertex_image_[graph_.edge_from(e)] ||
        graph_.edge_to(img.back()) != vertex_image_[graph_.edge_to(e)])
      throw input_error("image of edge " + graph_.edge_name(e) +
                        " does not match the vertex images");
    edge_image_[e - 1] = img;
  }

  // normalize the filtration: ascending unique edge sets, strictly
  // increasing, ending with the full edge set
  std::vector<int> all(E);
  for (int e = 1; e <= E; ++e) all[e - 1] = e;
  for (auto& set : nested_) {
    set = sorted_unique(set);
    for (int e : set)
      if (e < 1 || e > E) throw input_error("filtration names a missing edge");
    if (set.empty()) throw input_error("empty filtration element");
  }
  if (nested_.empty() || nested_.back() != all) nested_.push_back(all);
  for (size_t r = 0; r + 1 < nested_.size(); ++r) {
    if (!std::includes(nested_[r + 1].begin(), nested_[r + 1].end(),
                       nested_[r].begin(), nested_[r].end()) ||
        nested_[r].size() >= nested_[r + 1].size())
      throw input_error("filtration is not strictly increasing");
  }

  stratum_of_.assign(E + 1, -1);
  strata_.clear();
  std::vector<int> prev;
  for (auto& set : nested_) {
    std::vector<int> stratum;
    std::set_difference(set.begin(), set.end(), prev.begin(), prev.end(),
                        std::back_inserter(stratum));
    for (int e : stratum) stratum_of_[e] = (int)strata_.size();
    strata_.push_back(std::move(stratum));
    prev = set;
  }

  for (size_t r = 0; r < nested_.size(); ++r)
    for (int e : nested_[r])
      for (int d : edge_image_[e - 1])
        if (!std::binary_search(nested_[r].begin(), nested_[r].end(),
                                std::abs(d)))
          throw input_error("filtration element " + std::to_string(r + 1) +
                            " is not invariant: image of " +
                            graph_.edge_name(e) + " leaves it");

  induced_automorphism();  // throws when the map is not an equivalence
}

int GraphMap::vertex_image(int v) const {
  if (v < 0 || v >= graph_.vertex_count())
    throw input_error("vertex out of range");
  return vertex_image_[v];
}

EdgePath GraphMap::edge_image(int d) const {
  if (d == 0 || std::abs(d) > graph_.edge_count())
    throw input_error("edge out of range");
  return d > 0 ? edge_image_[d - 1] : inverse(edge_image_[-d - 1]);
}

const std::vector<int>& GraphMap::filtration_element(int r) const {
  if (r < 0 || r >= stratum_count()) throw input_error("no such stratum");
  return nested_[r];
}

const std::vector<int>& GraphMap::stratum_edges(int r) const {
  if (r < 0 || r >= stratum_count()) throw input_error("no such stratum");
  return strata_[r];
}

int GraphMap::stratum_of(int e) const {
  e = std::abs(e);
  if (e < 1 || e > graph_.edge_count())
    throw input_error("edge out of range");
  return stratum_of_[e];
}

EdgePath GraphMap::apply(const EdgePath& path) const {
  EdgePath out;
  for (int d : graph_.tighten(path)) {
    const EdgePath img = edge_image(d);
    out.insert(out.end(), img.begin(), img.end());
  }
  return reduce(out);
}

EdgePath GraphMap::apply_pow(const EdgePath& path, int p) const {
  if (p < 0) throw input_error("power must be non-negative");
  EdgePath cur = graph_.tighten(path);
  for (int i = 0; i < p; ++i) cur = apply(cur);
  return cur;
}

std::optional<EdgePath> GraphMap::apply_capped(const EdgePath& path, int p,
                                               size_t max_len) const {
  if (p < 0) throw input_error("power must be non-negative");
  EdgePath cur = graph_.tighten(path);
  if (cur.size() > max_len) return std::nullopt;
  for (int i = 0; i < p; ++i) {
    cur = apply(cur);
    if (cur.size() > max_len) return std::nullopt;
  }
  return cur;
}

Aut GraphMap::induced_automorphism() const {
  const Basis& b = graph_.basis();
  EdgePath correction =
      graph_.tree_path(graph_.base_vertex(), vertex_image_[graph_.base_vertex()]);
  std::vector<Word> images;
  for (int x = 1; x <= b.rank(); ++x) {
    EdgePath img = apply(graph_.realize(Word{x}));
    EdgePath loop =
        reduce(concat(concat(correction, img), inverse(correction)));
    images.push_back(graph_.loop_element(loop));
  }
  try {
    invert_basis_images(images, b.rank());
  } catch (const verify_error&) {
    throw input_error("graph map is not a homotopy equivalence");
  }
  return Aut(b, images);
}

int GraphMap::direction_map(int d) const { return edge_image(d).front(); }

Turn GraphMap::image_turn(const Turn& t) const {
  return Turn::make(direction_map(t.d1), direction_map(t.d2));
}

std::vector<Turn> GraphMap::turns_in_path(const EdgePath& p) const {
  std::vector<Turn> out;
  for (size_t i = 0; i + 1 < p.size(); ++i)
    out.push_back(Turn::make(-p[i], p[i + 1]));
  return out;
}

std::vector<Turn> GraphMap::turns_in_loop(const EdgePath& p) const {
  if (!graph_.is_closed_path(p)) throw input_error("need a closed path");
  std::vector<Turn> out = turns_in_path(p);
  out.push_back(Turn::make(-p.back(), p.front()));
  return out;
}

std::optional<int> GraphMap::degeneration_power(const Turn& t) const {
  std::set<Turn> seen;
  Turn cur = t;
  int power = 0;
  while (true) {
    if (cur.degenerate()) return power;
    if (!seen.insert(cur).second) return std::nullopt;
    cur = image_turn(cur);
    ++power;
  }
}

bool GraphMap::turn_legal(const Turn& t) const {
  return !degeneration_power(t).has_value();
}

StratumData GraphMap::stratum_data(int r, const Rational& tol) const {
  StratumData sd;
  sd.index = r;
  sd.edges = stratum_edges(r);
  int n = (int)sd.edges.size();
  sd.matrix.assign(n, std::vector<BigInt>(n, 0));
  for (int j = 0; j < n; ++j)
    for (int d : edge_image_[sd.edges[j] - 1]) {
      auto it = std::lower_bound(sd.edges.begin(), sd.edges.end(),
                                 std::abs(d));
      if (it != sd.edges.end() && *it == std::abs(d))
        sd.matrix[it - sd.edges.begin()][j] += 1;
    }

  sd.cls = classify_matrix(sd.matrix);
  if (sd.cls == MatrixClass::primitive ||
      sd.cls == MatrixClass::irreducible_non_primitive) {
    sd.eg = !is_permutation_like(sd.matrix);
    sd.pf = pf_data(sd.matrix, tol);
  }
  return sd;
}

int GraphMap::peripheral_index() const {
  if (!declared_)
    throw input_error("no peripheral factor system was declared");
  // the empty system is realized by the empty subgraph below the filtration
  if (declared_->factor_count() == 0) return -1;
  for (int r = 0; r < stratum_count(); ++r)
    if (ffs_equal(realized_ffs(graph_, nested_[r]), *declared_)) return r;
  throw verify_error("no filtration element realizes the declared system");
}

RttReport GraphMap::verify_rtt(int lower_path_bound) const {
  RttReport report;
  report.lower_path_bound = lower_path_bound;

  for (int r = 0; r < stratum_count(); ++r) {
    StratumCheck check;
    check.index = r;
    StratumData sd = stratum_data(r);
    check.eg = sd.eg;
    if (!sd.eg) {
      report.strata.push_back(check);
      continue;
    }
    const std::vector<int>& H = sd.edges;
    auto in_top = [&](int d) {
      return std::binary_search(H.begin(), H.end(), std::abs(d));
    };

    for (int e : H) {
      const EdgePath& img = edge_image_[e - 1];
      if (!in_top(img.front()) || !in_top(img.back())) {
        check.boundary_ok = false;
        check.witness = "image of " + graph_.edge_name(e) +
                        " starts or ends outside its stratum";
        break;
      }
    }

    if (check.boundary_ok && r > 0) {
      const std::vector<int>& lower = nested_[r - 1];
      std::vector<bool> in_h_vertex(graph_.vertex_count(), false);
      std::vector<bool> in_lower_vertex(graph_.vertex_count(), false);
      for (int e : H) {
        in_h_vertex[graph_.edge_from(e)] = true;
        in_h_vertex[graph_.edge_to(e)] = true;
      }
      for (int e : lower) {
        in_lower_vertex[graph_.edge_from(e)] = true;
        in_lower_vertex[graph_.edge_to(e)] = true;
      }

      // depth first search over reduced lower paths between common
      // vertices, tracking the tightened image as the path grows
      EdgePath path;
      auto search = [&](auto&& self, int v, const EdgePath& img) -> bool {
        if (!path.empty() && in_h_vertex[v] && in_lower_vertex[v] &&
            img.empty()) {
          check.lower_paths_ok = false;
          check.witness = "lower path " + graph_.format_path(path) +
                          " maps to a point";
          return false;
        }
        if ((int)path.size() >= lower_path_bound) return true;
        for (int d : graph_.directions(v)) {
          if (!std::binary_search(lower.begin(), lower.end(), std::abs(d)))
            continue;
          if (!path.empty() && d == -path.back()) continue;
          path.push_back(d);
          EdgePath next = reduce(concat(img, edge_image(d)));
          bool go = self(self, graph_.edge_to(d), next);
          path.pop_back();
          if (!go) return false;
        }
        return true;
      };
      for (int v = 0; v < graph_.vertex_count() && check.lower_paths_ok; ++v)
        if (in_h_vertex[v] && in_lower_vertex[v]) search(search, v, {});
    }

    if (check.boundary_ok && check.lower_paths_ok) {
      for (int e : H) {
        for (const Turn& t : turns_in_path(edge_image_[e - 1])) {
          if (!in_top(t.d1) || !in_top(t.d2)) continue;
          if (!turn_legal(t)) {
            check.legality_ok = false;
            check.witness = "image of " + graph_.edge_name(e) +
                            " crosses the illegal turn (" +
                            graph_.edge_name(t.d1) + "," +
                            graph_.edge_name(t.d2) + ")";
            break;
          }
        }
        if (!check.legality_ok) break;
      }
      // images of legal turns stay legal
      if (check.legality_ok) {
        std::map<int, std::vector<int>> dirs_by_vertex;
        for (int e : H) {
          dirs_by_vertex[graph_.edge_from(e)].push_back(e);
          dirs_by_vertex[graph_.edge_from(-e)].push_back(-e);
        }
        for (auto& [v, dirs] : dirs_by_vertex) {
          for (size_t i = 0; i < dirs.size() && check.legality_ok; ++i)
            for (size_t j = i + 1; j < dirs.size(); ++j) {
              Turn t = Turn::make(dirs[i], dirs[j]);
              if (turn_legal(t) && !turn_legal(image_turn(t))) {
                check.legality_ok = false;
                check.witness = "legal turn (" + graph_.edge_name(t.d1) +
                                "," + graph_.edge_name(t.d2) +
                                ") maps to an illegal turn";
                break;
              }
            }
        }
      }
    }
    report.strata.push_back(check);
  }

  report.ok = true;
  for (auto& c : report.strata) report.ok = report.ok && c.ok();
  return report;
}

std::vector<int> GraphMap::maximal_invariant_subgraph() const {
  const std::vector<int>& top = strata_[top_stratum()];
  std::set<int> keep;
  for (int e = 1; e <= graph_.edge_count(); ++e) {
    if (std::binary_search(top.begin(), top.end(), e)) continue;
    std::set<int> closure{e};
    std::vector<int> queue{e};
    bool hits_top = false;
    while (!queue.empty() && !hits_top) {
      int x = queue.back();
      queue.pop_back();
      for (int d : edge_image_[x - 1]) {
        int a = std::abs(d);
        if (std::binary_search(top.begin(), top.end(), a)) {
          hits_top = true;
          break;
        }
        if (closure.insert(a).second) queue.push_back(a);
      }
    }
    if (!hits_top) keep.insert(closure.begin(), closure.end());
  }
  return std::vector<int>(keep.begin(), keep.end());
}

GraphMap GraphMap::collapse_to_a_traintrack() const {
  if (info_) return *this;
  if (!declared_)
    throw input_error("collapse needs a declared peripheral factor system");

  std::vector<int> K = maximal_invariant_subgraph();
  FactorSystem realized = realized_ffs(graph_, K);
  if (!ffs_equal(realized, *declared_))
    throw verify_error(
        "invariant subgraph realizes a factor system with " +
        std::to_string(realized.factor_count()) + " factors of total rank " +
        std::to_string(realized.rank()) + ", but the declared system has " +
        std::to_string(declared_->factor_count()) + " factors of total rank " +
        std::to_string(declared_->rank()));

  std::vector<std::vector<int>> filt;
  if (!K.empty()) filt.push_back(K);
  GraphMap out(graph_, vertex_image_, edge_image_, filt, declared_);

  CollapseInfo info;
  info.collapsed_edges = K;
  SubgraphComponents comps = subgraph_components(graph_, K);
  info.components = comps.edge_groups;
  info.component_vertices = comps.vertex_groups;
  info.vertex_component = comps.vertex_component;

  for (size_t c = 0; c < info.components.size(); ++c) {
    LocalSystem ls =
        local_system(graph_, info.components[c], info.component_vertices[c]);
    info.vertex_group_basis.push_back(ls.gen_words);
    info.vertex_groups.push_back(
        CoreGraph::from_generators(graph_.basis(), ls.gen_words).cored());

    int u = ls.base;
    int v = vertex_image_[u];
    if (v < 0 || comps.vertex_component[v] != (int)c)
      throw verify_error("map permutes the collapsed components");
    auto from_base = [&](int x) {
      EdgePath p;
      while (ls.parent_edge[x] != 0) {
        p.push_back(ls.parent_edge[x]);
        x = graph_.edge_from(ls.parent_edge[x]);
      }
      std::reverse(p.begin(), p.end());
      return p;
    };
    EdgePath conn = from_base(v);

    std::vector<std::string> names;
    for (int e : ls.nontree) names.push_back(graph_.edge_name(e));
    Basis local(names, {});
    std::vector<Word> action;
    for (int e : ls.nontree) {
      EdgePath loop = from_base(graph_.edge_from(e));
      loop.push_back(e);
      loop = reduce(concat(loop, inverse(from_base(graph_.edge_to(e)))));
      EdgePath img = apply(loop);
      img = reduce(concat(concat(conn, img), inverse(conn)));
      action.push_back(to_local_letters(ls, img));
    }
    try {
      invert_basis_images(action, (int)ls.nontree.size());
    } catch (const verify_error&) {
      throw verify_error("vertex group action is not an automorphism");
    }
    info.vertex_group_actions.push_back(Aut(local, action));
  }

  StratumData top = out.stratum_data(out.top_stratum());
  if (top.cls != MatrixClass::primitive &&
      top.cls != MatrixClass::irreducible_non_primitive)
    throw verify_error("collapsed transition matrix is not irreducible");

  out.info_ = std::move(info);
  return out;
}

std::vector<BigInt> GraphMap::occurrence_vector(int edge,
                                                unsigned long p) const {
  int r = stratum_of(edge);
  if (r != top_stratum())
    throw input_error("occurrence vectors live on the top stratum");
  StratumData sd = stratum_data(r);
  IMatrix mp = mat_pow(sd.matrix, p);
  auto it = std::lower_bound(sd.edges.begin(), sd.edges.end(), std::abs(edge));
  int col = (int)(it - sd.edges.begin());
  std::vector<BigInt> out(sd.edges.size());
  for (size_t i = 0; i < sd.edges.size(); ++i) out[i] = mp[i][col];
  return out;
}

FactorSystem realized_ffs(const MarkedGraph& g, const std::vector<int>& edges) {
  std::vector<int> set = sorted_unique(edges);
  for (int e : set)
    if (e < 1 || e > g.edge_count()) throw input_error("unknown edge in subgraph");
  SubgraphComponents comps = subgraph_components(g, set);
  std::vector<std::vector<Word>> gens;
  for (size_t c = 0; c < comps.edge_groups.size(); ++c) {
    int rank = (int)comps.edge_groups[c].size() -
               (int)comps.vertex_groups[c].size() + 1;
    if (rank <= 0) continue;  // contractible component
    LocalSystem ls = local_system(g, comps.edge_groups[c],
                                  comps.vertex_groups[c]);
    gens.push_back(ls.gen_words);
  }
  return make_system(g.basis(), gens);
}

}  // namespace relttk
