#pragma once

#include <set>
#include <string>
#include <vector>

#include "graphmap.hpp"

namespace relttk {

// Graph on the directions at one vertex of a marked graph. Node 0 stands
// for the merged peripheral node of a relative graph; every other node is
// a signed direction. Nodes are ascending and labels run parallel.
struct WhiteheadGraph {
  int vertex = -1;
  bool has_peripheral_node = false;
  std::vector<int> nodes;
  std::vector<std::string> labels;
  std::vector<Turn> edges;  // sorted pairs of nodes, unique

  std::string to_dot() const;
};

struct ConnectivityReport {
  bool connected = false;
  std::vector<std::vector<int>> components;  // node partition, each ascending
};

enum class CertificateVerdict { certified_necessary_conditions, failed };

std::string to_string(CertificateVerdict v);

// The three checks are necessary conditions for the map to be fully
// irreducible relative to the declared peripheral system; the verdict
// never claims sufficiency.
struct IrreducibilityCertificate {
  bool realized_lower_equals_A = false;
  bool top_matrix_primitive = false;
  bool relative_wh_connected_everywhere = false;
  CertificateVerdict verdict = CertificateVerdict::failed;
  std::string witness;  // first failed check, empty when certified
};

// Least set containing every turn crossed by a tightened edge image,
// closed under the direction map.
std::set<Turn> taken_turns(const GraphMap& rep);

WhiteheadGraph whitehead_graph(const GraphMap& rep, int vertex);

// For a vertex swallowed by the collapsed invariant subgraph, the graphs
// at all of its preimage vertices with every lower direction identified
// to the single peripheral node; for untouched vertices, the plain graph.
WhiteheadGraph relative_whitehead_graph(const GraphMap& collapsed,
                                        const GraphMap& original, int vertex);

ConnectivityReport connectivity_report(const WhiteheadGraph& g);

IrreducibilityCertificate irreducibility_certificate(const GraphMap& collapsed,
                                                     const GraphMap& original,
                                                     const FactorSystem& a);

// First edges of the ray obtained by iterating the map on a direction
// fixed by some power of the direction map. Longer prefixes extend
// shorter ones.
EdgePath eigenray_prefix(const GraphMap& rep, int direction, int length);

// Connected components of the Whitehead graph at the vertex.
std::vector<std::vector<int>> leaf_classes_at_vertex(const GraphMap& rep,
                                                     int vertex);

}  // namespace relttk
