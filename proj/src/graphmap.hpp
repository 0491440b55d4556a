#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ffs.hpp"
#include "graph.hpp"
#include "pf.hpp"

namespace relttk {

// Unordered pair of directions at a common vertex, stored sorted.
struct Turn {
  int d1 = 0;
  int d2 = 0;
  static Turn make(int a, int b) { return a <= b ? Turn{a, b} : Turn{b, a}; }
  bool degenerate() const { return d1 == d2; }
  bool operator==(const Turn& o) const { return d1 == o.d1 && d2 == o.d2; }
  bool operator<(const Turn& o) const {
    return d1 != o.d1 ? d1 < o.d1 : d2 < o.d2;
  }
};

enum class MatrixClass { zero, reducible, irreducible_non_primitive, primitive };

std::string to_string(MatrixClass c);
MatrixClass classify_matrix(const IMatrix& m);

struct StratumData {
  int index = 0;
  std::vector<int> edges;  // positive edge ids, ascending
  IMatrix matrix;
  MatrixClass cls = MatrixClass::zero;
  bool eg = false;  // irreducible with growth above one
  std::optional<PFTriple> pf;
};

struct StratumCheck {
  int index = 0;
  bool eg = false;
  bool boundary_ok = true;
  bool lower_paths_ok = true;
  bool legality_ok = true;
  std::string witness;
  bool ok() const { return boundary_ok && lower_paths_ok && legality_ok; }
};

struct RttReport {
  bool ok = false;
  int lower_path_bound = 0;
  std::vector<StratumCheck> strata;
};

// Data attached to a representative after collapsing the invariant
// subgraph: the component structure of the collapsed part, one free
// factor per component, and the restriction of the map to each factor.
struct CollapseInfo {
  std::vector<int> collapsed_edges;                // ascending
  std::vector<std::vector<int>> components;        // edge partition
  std::vector<std::vector<int>> component_vertices;
  std::vector<int> vertex_component;               // -1 when untouched
  std::vector<CoreGraph> vertex_groups;
  std::vector<std::vector<Word>> vertex_group_basis;  // local letter words
  std::vector<Aut> vertex_group_actions;           // on local letters
};

// A homotopy equivalence of a marked graph, given by vertex images and
// tightened edge image paths, filtered by an increasing invariant
// sequence of subgraphs. The final filtration element is always the
// whole graph.
class GraphMap {
 public:
  GraphMap(MarkedGraph graph, std::vector<int> vertex_image,
           std::vector<EdgePath> edge_image,
           std::vector<std::vector<int>> filtration,
           std::optional<FactorSystem> declared = std::nullopt);

  static GraphMap from_automorphism(const Aut& phi,
                                    std::vector<std::vector<int>> filtration,
                                    std::optional<FactorSystem> declared =
                                        std::nullopt);

  const MarkedGraph& graph() const { return graph_; }
  int vertex_image(int v) const;
  EdgePath edge_image(int d) const;  // signed directions allowed

  int stratum_count() const { return (int)nested_.size(); }
  const std::vector<int>& filtration_element(int r) const;  // edges of G_{r+1}
  const std::vector<int>& stratum_edges(int r) const;
  int stratum_of(int e) const;  // by positive edge id
  int top_stratum() const { return stratum_count() - 1; }
  const std::optional<FactorSystem>& declared_system() const {
    return declared_;
  }
  const std::optional<CollapseInfo>& collapse_info() const { return info_; }
  // index of the filtration element realizing the declared system
  int peripheral_index() const;

  // path and word actions
  EdgePath apply(const EdgePath& path) const;
  EdgePath apply_pow(const EdgePath& path, int p) const;
  std::optional<EdgePath> apply_capped(const EdgePath& path, int p,
                                       size_t max_len) const;
  Aut induced_automorphism() const;

  // turn calculus
  int direction_map(int d) const;  // first direction of the image
  Turn image_turn(const Turn& t) const;
  std::vector<Turn> turns_in_path(const EdgePath& p) const;
  std::vector<Turn> turns_in_loop(const EdgePath& p) const;
  bool turn_legal(const Turn& t) const;
  // power at which the turn degenerates, if any
  std::optional<int> degeneration_power(const Turn& t) const;

  StratumData stratum_data(int r, const Rational& tol = default_tol()) const;
  RttReport verify_rtt(int lower_path_bound = 12) const;

  std::vector<int> maximal_invariant_subgraph() const;
  GraphMap collapse_to_a_traintrack() const;

  std::vector<BigInt> occurrence_vector(int edge, unsigned long p) const;

  static Rational default_tol() {
    return Rational(1, BigInt("1000000000000"));
  }

 private:
  void validate();

  MarkedGraph graph_;
  std::vector<int> vertex_image_;
  std::vector<EdgePath> edge_image_;
  std::vector<std::vector<int>> nested_;  // increasing, last = all edges
  std::vector<std::vector<int>> strata_;
  std::vector<int> stratum_of_;  // per positive edge
  std::optional<FactorSystem> declared_;
  std::optional<CollapseInfo> info_;
};

// One free factor per non-contractible component of the subgraph spanned
// by the given edges, read through the marking.
FactorSystem realized_ffs(const MarkedGraph& g, const std::vector<int>& edges);

}  // namespace relttk
