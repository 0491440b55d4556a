#include "graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace relttk {

namespace {

struct FoldEdge {
  int u = 0;
  int v = 0;
  Letter lab = 0;  // positive target letter
  Word dec;        // composes along u -> v
  bool alive = true;
};

struct FoldUF {
  std::vector<int> p;
  explicit FoldUF(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  // keep `a` as the surviving root
  void unite_into(int a, int b) { p[find(b)] = find(a); }
};

}  // namespace

std::vector<Word> invert_basis_images(const std::vector<Word>& images,
                                      int target_rank) {
  int n = static_cast<int>(images.size());
  std::vector<FoldEdge> edges;
  int nvert = 1;  // vertex 0 is the base

  for (int i = 0; i < n; ++i) {
    Word w = reduce(images[i]);
    if (w.empty())
      throw verify_error("generator image is trivial, map is not injective");
    int cur = 0;
    for (size_t k = 0; k < w.size(); ++k) {
      int next = (k + 1 == w.size()) ? 0 : nvert++;
      Word piece = (k == 0) ? Word{i + 1} : Word{};
      FoldEdge e;
      if (w[k] > 0) {
        e.u = cur;
        e.v = next;
        e.lab = w[k];
        e.dec = piece;
      } else {
        e.u = next;
        e.v = cur;
        e.lab = -w[k];
        e.dec = inverse(piece);
      }
      edges.push_back(e);
      cur = next;
    }
  }

  FoldUF uf(nvert);
  int base_root = 0;

  auto gauge = [&](int vroot, const Word& h) {
    // multiply the coordinate chart at vroot; never applied at the base
    Word hinv = inverse(h);
    for (auto& g : edges) {
      if (!g.alive) continue;
      if (uf.find(g.v) == vroot) g.dec = reduce(concat(g.dec, h));
      if (uf.find(g.u) == vroot) g.dec = reduce(concat(hinv, g.dec));
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t a = 0; a < edges.size() && !changed; ++a) {
      if (!edges[a].alive) continue;
      for (size_t b = a + 1; b < edges.size() && !changed; ++b) {
        if (!edges[b].alive) continue;
        if (edges[a].lab != edges[b].lab) continue;
        int au = uf.find(edges[a].u), av = uf.find(edges[a].v);
        int bu = uf.find(edges[b].u), bv = uf.find(edges[b].v);
        if (au == bu) {
          // same source: equalize decorations, merge targets
          if (av == bv) {
            if (edges[a].dec != edges[b].dec)
              throw verify_error("marking is not a homotopy equivalence");
            edges[b].alive = false;
          } else if (bv != base_root) {
            gauge(bv, reduce(concat(inverse(edges[b].dec), edges[a].dec)));
            uf.unite_into(av, bv);
            edges[b].alive = false;
          } else {
            gauge(av, reduce(concat(inverse(edges[a].dec), edges[b].dec)));
            uf.unite_into(bv, av);
            edges[a].alive = false;
          }
          changed = true;
        } else if (av == bv) {
          // same target: merge sources
          if (bu != base_root) {
            gauge(bu, reduce(concat(edges[b].dec, inverse(edges[a].dec))));
            uf.unite_into(au, bu);
            edges[b].alive = false;
          } else {
            gauge(au, reduce(concat(edges[a].dec, inverse(edges[b].dec))));
            uf.unite_into(bu, au);
            edges[a].alive = false;
          }
          changed = true;
        }
      }
    }
  }

  std::vector<Word> inv(target_rank);
  std::vector<bool> seen(target_rank + 1, false);
  for (auto& e : edges) {
    if (!e.alive) continue;
    if (uf.find(e.u) != uf.find(0) || uf.find(e.v) != uf.find(0))
      throw verify_error("marking is not a homotopy equivalence");
    if (e.lab < 1 || e.lab > target_rank || seen[e.lab])
      throw verify_error("marking is not a homotopy equivalence");
    seen[e.lab] = true;
    inv[e.lab - 1] = e.dec;
  }
  for (int j = 1; j <= target_rank; ++j)
    if (!seen[j])
      throw verify_error("marking is not a homotopy equivalence");
  return inv;
}

MarkedGraph::MarkedGraph(Basis basis, int vertex_count,
                         std::vector<GEdge> edges,
                         std::vector<EdgePath> marking, int base_vertex)
    : basis_(std::move(basis)),
      nvert_(vertex_count),
      edges_(std::move(edges)),
      marking_(std::move(marking)),
      base_(base_vertex) {
  validate_and_index();
}

MarkedGraph MarkedGraph::rose(const Basis& basis) {
  std::vector<GEdge> edges;
  std::vector<EdgePath> marking;
  for (int i = 1; i <= basis.rank(); ++i) {
    edges.push_back({0, 0, basis.name(i)});
    marking.push_back({i});
  }
  return MarkedGraph(basis, 1, std::move(edges), std::move(marking), 0);
}

int MarkedGraph::edge_from(int e) const {
  return e > 0 ? edges_[e - 1].from : edges_[-e - 1].to;
}

int MarkedGraph::edge_to(int e) const {
  return e > 0 ? edges_[e - 1].to : edges_[-e - 1].from;
}

std::string MarkedGraph::edge_name(int e) const {
  return e > 0 ? edges_[e - 1].name : edges_[-e - 1].name + "'";
}

int MarkedGraph::edge_by_name(const std::string& name) const {
  bool rev = !name.empty() && name.back() == '\'';
  std::string stem = rev ? name.substr(0, name.size() - 1) : name;
  for (size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].name == stem) return rev ? -(int)(i + 1) : (int)(i + 1);
  return 0;
}

const EdgePath& MarkedGraph::marking(Letter x) const {
  if (x < 1 || x > basis_.rank())
    throw input_error("marking is indexed by positive basis letters");
  return marking_[x - 1];
}

const std::vector<int>& MarkedGraph::directions(int v) const {
  if (v < 0 || v >= nvert_) throw input_error("vertex out of range");
  return dirs_[v];
}

bool MarkedGraph::is_path(const EdgePath& p) const {
  for (auto e : p)
    if (e == 0 || std::abs(e) > edge_count()) return false;
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (edge_to(p[i]) != edge_from(p[i + 1])) return false;
  return !p.empty();
}

bool MarkedGraph::is_closed_path(const EdgePath& p) const {
  return is_path(p) && edge_from(p.front()) == edge_to(p.back());
}

EdgePath MarkedGraph::tighten(const EdgePath& p) const {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] == 0 || std::abs(p[i]) > edge_count())
      throw input_error("unknown edge at position " + std::to_string(i));
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (edge_to(p[i]) != edge_from(p[i + 1]))
      throw input_error("path not composable at position " +
                        std::to_string(i + 1));
  return reduce(p);
}

int MarkedGraph::path_from(const EdgePath& p) const {
  if (!is_path(p)) throw input_error("not an edge path");
  return edge_from(p.front());
}

int MarkedGraph::path_to(const EdgePath& p) const {
  if (!is_path(p)) throw input_error("not an edge path");
  return edge_to(p.back());
}

EdgePath MarkedGraph::parse_path(const std::string& text) const {
  EdgePath p;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int e = edge_by_name(tok);
    if (e == 0) throw input_error("unknown edge: " + tok);
    p.push_back(e);
  }
  return p;
}

std::string MarkedGraph::format_path(const EdgePath& p) const {
  std::string out;
  for (auto e : p) {
    if (!out.empty()) out += ' ';
    out += edge_name(e);
  }
  return out;
}

Word MarkedGraph::loop_element(const EdgePath& loop) const {
  if (!loop.empty() &&
      (!is_closed_path(loop) || edge_from(loop.front()) != base_))
    throw input_error("need a closed path at the base vertex");
  Word w;
  for (auto e : loop) {
    const Word& piece = edge_word_[std::abs(e) - 1];
    if (e > 0)
      w = concat(w, piece);
    else
      w = concat(w, inverse(piece));
  }
  return w;
}

CyclicWord MarkedGraph::loop_class(const EdgePath& loop) const {
  if (loop.empty()) return CyclicWord(Word{});
  if (!is_closed_path(loop)) throw input_error("need a closed path");
  Word w;
  for (auto e : loop) {
    const Word& piece = edge_word_[std::abs(e) - 1];
    if (e > 0)
      w = concat(w, piece);
    else
      w = concat(w, inverse(piece));
  }
  return CyclicWord(w);
}

EdgePath MarkedGraph::realize(const Word& w) const {
  EdgePath p;
  for (auto x : reduce(w)) {
    const EdgePath& m = marking_[std::abs(x) - 1];
    p = reduce(concat(p, x > 0 ? m : inverse(m)));
  }
  return p;
}

bool MarkedGraph::in_spanning_tree(int e) const {
  return tree_edge_[std::abs(e) - 1];
}

EdgePath MarkedGraph::tree_path(int u, int v) const {
  auto from_base = [&](int x) {
    EdgePath p;
    while (parent_edge_[x] != 0) {
      int e = parent_edge_[x];
      p.push_back(e);
      x = edge_from(e);
    }
    std::reverse(p.begin(), p.end());
    return p;
  };
  return reduce(concat(inverse(from_base(u)), from_base(v)));
}

std::string MarkedGraph::to_dot(const std::string& name) const {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (int v = 0; v < nvert_; ++v) {
    out << "  v" << v;
    if (v == base_) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (auto& e : edges_)
    out << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.name
        << "\"];\n";
  out << "}\n";
  return out.str();
}

bool MarkedGraph::operator==(const MarkedGraph& o) const {
  if (!(basis_.same_alphabet(o.basis_)) || nvert_ != o.nvert_ ||
      base_ != o.base_ || edges_.size() != o.edges_.size())
    return false;
  for (size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].from != o.edges_[i].from || edges_[i].to != o.edges_[i].to ||
        edges_[i].name != o.edges_[i].name)
      return false;
  return marking_ == o.marking_;
}

void MarkedGraph::validate_and_index() {
  if (nvert_ <= 0) throw input_error("graph needs at least one vertex");
  if (base_ < 0 || base_ >= nvert_) throw input_error("base vertex out of range");
  std::map<std::string, int> names;
  for (size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    if (e.from < 0 || e.from >= nvert_ || e.to < 0 || e.to >= nvert_)
      throw input_error("edge endpoint out of range");
    if (e.name.empty() || e.name.back() == '\'')
      throw input_error("bad edge name: " + e.name);
    if (!names.emplace(e.name, (int)i).second)
      throw input_error("duplicate edge name: " + e.name);
  }

  dirs_.assign(nvert_, {});
  for (int e = 1; e <= edge_count(); ++e) {
    dirs_[edge_from(e)].push_back(e);
    dirs_[edge_from(-e)].push_back(-e);
  }
  for (int v = 0; v < nvert_; ++v)
    if (dirs_[v].size() == 1)
      throw input_error("graph has a valence one vertex");

  // breadth first spanning tree from the base vertex
  parent_edge_.assign(nvert_, 0);
  tree_edge_.assign(edges_.size(), false);
  std::vector<bool> reached(nvert_, false);
  reached[base_] = true;
  std::deque<int> queue{base_};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int d : dirs_[v]) {
      int w = edge_to(d);
      if (reached[w]) continue;
      reached[w] = true;
      parent_edge_[w] = d;
      tree_edge_[std::abs(d) - 1] = true;
      queue.push_back(w);
    }
  }
  for (int v = 0; v < nvert_; ++v)
    if (!reached[v]) throw input_error("graph is not connected");

  if (rank() != basis_.rank())
    throw input_error("graph rank differs from basis rank");

  if ((int)marking_.size() != basis_.rank())
    throw input_error("marking needs one loop per basis letter");
  for (auto& m : marking_) {
    if (m.empty() || !is_closed_path(m) || edge_from(m.front()) != base_)
      throw input_error("marking loops must be closed at the base vertex");
    m = reduce(m);
  }

  // nontree edges are free generators of the fundamental group; write the
  // marking in those coordinates and invert to express each edge back in
  // the basis
  std::vector<int> nontree;  // positive edge indices
  std::vector<int> gen_of_edge(edges_.size() + 1, 0);
  for (int e = 1; e <= edge_count(); ++e)
    if (!tree_edge_[e - 1]) {
      nontree.push_back(e);
      gen_of_edge[e] = (int)nontree.size();
    }

  std::vector<Word> images;
  for (auto& m : marking_) {
    Word w;
    for (auto d : m) {
      int g = gen_of_edge[std::abs(d)];
      if (g != 0) w.push_back(d > 0 ? g : -g);
    }
    images.push_back(reduce(w));
  }
  std::vector<Word> inv;
  try {
    inv = invert_basis_images(images, (int)nontree.size());
  } catch (const verify_error&) {
    throw input_error("marking is not a homotopy equivalence");
  }

  edge_word_.assign(edges_.size(), Word{});
  for (size_t j = 0; j < nontree.size(); ++j)
    edge_word_[nontree[j] - 1] = inv[j];
}

}  // namespace relttk
