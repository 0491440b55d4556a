#include "coregraph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace relttk {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  // Merges b into a's class; keeps the smaller root to make vertex 0 stable.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return a;
  }
};

}  // namespace

// Mutable multigraph used only while folding.
class FoldingGraph {
 public:
  explicit FoldingGraph(int vertices) : uf_(vertices), out_(vertices) {}

  void add_edge(int u, int v, Letter x) {
    out_[u].emplace_back(x, v);
    out_[v].emplace_back(inv(x), u);
  }

  int add_vertex() {
    uf_.parent.push_back(static_cast<int>(uf_.parent.size()));
    out_.emplace_back();
    return static_cast<int>(out_.size()) - 1;
  }

  void fold() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t v = 0; v < out_.size(); ++v) {
        if (uf_.find(static_cast<int>(v)) != static_cast<int>(v)) continue;
        compact(static_cast<int>(v));
        auto& edges = out_[v];
        std::sort(edges.begin(), edges.end());
        for (size_t i = 0; i + 1 < edges.size(); ++i) {
          if (edges[i].first == edges[i + 1].first && edges[i].second != edges[i + 1].second) {
            uf_.unite(edges[i].second, edges[i + 1].second);
            changed = true;
          }
        }
        if (changed) break;
      }
      if (changed) merge_lists();
    }
  }

  CoreGraph finish(const Basis& basis, bool keep_base) {
    merge_lists();
    std::vector<int> roots;
    std::vector<int> index(out_.size(), -1);
    for (size_t v = 0; v < out_.size(); ++v)
      if (uf_.find(static_cast<int>(v)) == static_cast<int>(v)) {
        index[v] = static_cast<int>(roots.size());
        roots.push_back(static_cast<int>(v));
      }
    CoreGraph g;
    g.basis_ = basis;
    g.adj_.assign(roots.size(), {});
    for (size_t i = 0; i < roots.size(); ++i) {
      compact(roots[i]);
      std::set<std::pair<Letter, int>> seen;
      for (auto& [x, t] : out_[roots[i]]) {
        int ti = index[uf_.find(t)];
        if (!seen.insert({x, ti}).second) continue;
        auto it = g.adj_[i].find(x);
        if (it != g.adj_[i].end() && it->second != ti)
          throw verify_error("folding produced a non-deterministic graph");
        g.adj_[i][x] = ti;
      }
    }
    g.trim(keep_base);
    g.canonicalize();
    return g;
  }

 private:
  UnionFind uf_;
  std::vector<std::vector<std::pair<Letter, int>>> out_;

  void compact(int v) {
    for (auto& e : out_[v]) e.second = uf_.find(e.second);
    std::sort(out_[v].begin(), out_[v].end());
    out_[v].erase(std::unique(out_[v].begin(), out_[v].end()), out_[v].end());
  }

  void merge_lists() {
    for (size_t v = 0; v < out_.size(); ++v) {
      int r = uf_.find(static_cast<int>(v));
      if (r == static_cast<int>(v)) continue;
      auto& src = out_[v];
      out_[r].insert(out_[r].end(), src.begin(), src.end());
      src.clear();
      src.shrink_to_fit();
    }
  }
};

CoreGraph CoreGraph::from_generators(const Basis& basis, const std::vector<Word>& gens) {
  FoldingGraph fg(1);
  for (const Word& g : gens) {
    Word w = reduce(g);
    if (w.empty()) continue;
    int prev = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      int next = i + 1 == w.size() ? 0 : fg.add_vertex();
      Letter x = w[i];
      if (x > 0)
        fg.add_edge(prev, next, x);
      else
        fg.add_edge(next, prev, -x);
      prev = next;
    }
  }
  fg.fold();
  return fg.finish(basis, true);
}

CoreGraph CoreGraph::rose(const Basis& basis, const std::vector<Letter>& letters) {
  std::vector<Word> gens;
  for (Letter x : letters) gens.push_back({x});
  return from_generators(basis, gens);
}

int CoreGraph::edge_count() const {
  int half = 0;
  for (auto& m : adj_) half += static_cast<int>(m.size());
  return half / 2;
}

int CoreGraph::rank() const {
  if (adj_.empty()) return 0;
  return edge_count() - vertex_count() + 1;
}

int CoreGraph::step(int v, Letter x) const {
  if (v < 0 || v >= vertex_count()) return -1;
  auto it = adj_[v].find(x);
  return it == adj_[v].end() ? -1 : it->second;
}

int CoreGraph::trace(int v, const Word& w) const {
  for (Letter x : w) {
    v = step(v, x);
    if (v < 0) return -1;
  }
  return v;
}

bool CoreGraph::contains(const Word& w) const {
  Word r = reduce(w);
  if (r.empty()) return true;
  if (adj_.empty()) return false;
  return trace(0, r) == 0;
}

bool CoreGraph::contains_conjugate(const CyclicWord& c) const {
  if (c.trivial()) return true;
  if (adj_.empty()) return false;
  for (int v = 0; v < vertex_count(); ++v)
    if (trace(v, c.letters()) == v) return true;
  return false;
}

void CoreGraph::trim(bool keep_base) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < vertex_count(); ++v) {
      if (keep_base && v == 0) continue;
      if (adj_[v].size() != 1) continue;
      if (vertex_count() == 1) continue;
      auto [x, t] = *adj_[v].begin();
      adj_[t].erase(inv(x));
      adj_[v].clear();
      // remove the vertex by swapping with the last one
      int last = vertex_count() - 1;
      if (v != last) {
        adj_[v] = std::move(adj_[last]);
        for (auto& m : adj_)
          for (auto& [lab, tgt] : m)
            if (tgt == last) tgt = v;
        if (keep_base && last == 0) {
          // never happens: base is vertex 0 and last > 0 here
        }
      }
      adj_.pop_back();
      changed = true;
      break;
    }
  }
  // a lone isolated vertex stands for the trivial subgroup; the basepoint-free
  // core of the trivial subgroup is empty
  if (!keep_base && vertex_count() == 1 && adj_[0].empty()) adj_.clear();
}

void CoreGraph::canonicalize() {
  if (adj_.empty()) return;
  // BFS renumbering from vertex 0 with label-sorted neighbor order.
  std::vector<int> order(vertex_count(), -1);
  int next = 0;
  std::deque<int> queue{0};
  order[0] = next++;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (auto& [x, t] : adj_[v]) {
      (void)x;
      if (order[t] == -1) {
        order[t] = next++;
        queue.push_back(t);
      }
    }
  }
  if (next != vertex_count())
    throw verify_error("core graph is not connected");
  std::vector<std::map<Letter, int>> out(vertex_count());
  for (int v = 0; v < vertex_count(); ++v)
    for (auto& [x, t] : adj_[v]) out[order[v]][x] = order[t];
  adj_ = std::move(out);
}

CoreGraph CoreGraph::cored() const {
  CoreGraph g = *this;
  g.trim(false);
  g.canonicalize();
  return g;
}

bool CoreGraph::immerses_into(const CoreGraph& other) const {
  if (adj_.empty()) return true;
  if (other.adj_.empty()) return false;
  for (int start = 0; start < other.vertex_count(); ++start) {
    std::vector<int> img(vertex_count(), -1);
    img[0] = start;
    std::deque<int> queue{0};
    bool ok = true;
    while (ok && !queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto& [x, t] : adj_[v]) {
        int it = other.step(img[v], x);
        if (it < 0) {
          ok = false;
          break;
        }
        if (img[t] == -1) {
          img[t] = it;
          queue.push_back(t);
        } else if (img[t] != it) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return true;
  }
  return false;
}

std::vector<Word> CoreGraph::generators() const {
  std::vector<Word> gens;
  if (adj_.empty()) return gens;
  std::vector<Word> path_to(vertex_count());
  std::vector<bool> visited(vertex_count(), false);
  std::set<std::pair<int, Letter>> tree_dirs;
  std::deque<int> queue{0};
  visited[0] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (auto& [x, t] : adj_[v]) {
      if (!visited[t]) {
        visited[t] = true;
        path_to[t] = path_to[v];
        path_to[t].push_back(x);
        tree_dirs.insert({v, x});
        tree_dirs.insert({t, inv(x)});
        queue.push_back(t);
      }
    }
  }
  std::set<std::pair<int, Letter>> used;
  for (int v = 0; v < vertex_count(); ++v) {
    for (auto& [x, t] : adj_[v]) {
      if (tree_dirs.count({v, x})) continue;
      if (used.count({v, x})) continue;
      used.insert({v, x});
      used.insert({t, inv(x)});
      Word w = path_to[v];
      w.push_back(x);
      Word back = inverse(path_to[t]);
      w.insert(w.end(), back.begin(), back.end());
      gens.push_back(reduce(w));
    }
  }
  return gens;
}

std::string CoreGraph::to_dot(const std::string& graph_name) const {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  for (int v = 0; v < vertex_count(); ++v)
    out << "  v" << v << (v == 0 ? " [shape=doublecircle];\n" : " [shape=circle];\n");
  for (int v = 0; v < vertex_count(); ++v)
    for (auto& [x, t] : adj_[v])
      if (x > 0) out << "  v" << v << " -> v" << t << " [label=\"" << basis_.name(x) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace relttk
