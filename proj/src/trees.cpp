#include "trees.hpp"

#include <algorithm>
#include <sstream>

#include "whitehead.hpp"

namespace relttk {

namespace {

// Strip matching ends of a reduced closed path; the result is the immersed
// cyclic representative of the free homotopy class.
EdgePath cyclic_core(const EdgePath& p) {
  size_t i = 0, j = p.size();
  while (j - i >= 2 && p[i] == -(p[j - 1])) {
    ++i;
    --j;
  }
  return EdgePath(p.begin() + i, p.begin() + j);
}

bool loop_legal(const GraphMap& rep, const EdgePath& loop) {
  for (const Turn& t : rep.turns_in_loop(loop))
    if (!rep.turn_legal(t)) return false;
  return true;
}

Rational rat_pow(const Rational& x, int p) {
  Rational r = 1;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

GrushkoTreePoint::GrushkoTreePoint(MarkedGraph graph, std::vector<int> collapsed,
                                   std::map<int, Rational> lengths)
    : graph_(std::move(graph)),
      collapsed_(std::move(collapsed)),
      lengths_(std::move(lengths)) {
  int ne = graph_.edge_count();
  in_k_.assign(ne + 1, 0);
  for (int e : collapsed_) {
    if (e <= 0 || e > ne)
      throw input_error("collapsed edge " + std::to_string(e) +
                        " is not an edge of the graph");
    in_k_[e] = 1;
  }
  std::sort(collapsed_.begin(), collapsed_.end());
  collapsed_.erase(std::unique(collapsed_.begin(), collapsed_.end()),
                   collapsed_.end());
  if ((int)collapsed_.size() == ne) throw input_error("every edge is collapsed");
  for (const auto& kv : lengths_) {
    if (kv.first <= 0 || kv.first > ne)
      throw input_error("length assigned to unknown edge " +
                        std::to_string(kv.first));
    if (in_k_[kv.first])
      throw input_error("edge " + graph_.edge_name(kv.first) +
                        " is collapsed but has a length");
    if (!(kv.second > 0))
      throw input_error("edge " + graph_.edge_name(kv.first) +
                        " needs a positive length");
  }
  for (int e = 1; e <= ne; ++e)
    if (!in_k_[e] && !lengths_.count(e))
      throw input_error("edge " + graph_.edge_name(e) +
                        " needs a positive length");
  if (!ffs_leq(aligned_system(graph_.basis()), realized_ffs(graph_, collapsed_)))
    throw input_error("collapsed subgraph does not carry the peripheral factors");
}

bool GrushkoTreePoint::is_collapsed(int e) const {
  int a = e < 0 ? -e : e;
  if (a <= 0 || a > graph_.edge_count())
    throw input_error("unknown edge " + std::to_string(e));
  return in_k_[a] != 0;
}

Rational GrushkoTreePoint::length(int e) const {
  int a = e < 0 ? -e : e;
  if (is_collapsed(a)) return 0;
  return lengths_.at(a);
}

Rational GrushkoTreePoint::volume() const {
  Rational v = 0;
  for (const auto& kv : lengths_) v += kv.second;
  return v;
}

FactorSystem GrushkoTreePoint::vertex_groups() const {
  return realized_ffs(graph_, collapsed_);
}

Rational translation_length(const GrushkoTreePoint& t, const CyclicWord& g) {
  if (g.trivial()) return 0;
  EdgePath loop = cyclic_core(t.graph().realize(g.letters()));
  Rational total = 0;
  for (int e : loop) total += t.length(e);
  return total;
}

GrushkoTreePoint act(const GrushkoTreePoint& t, const Aut& phi) {
  const MarkedGraph& g = t.graph();
  if (!phi.basis().same_alphabet(g.basis()))
    throw input_error("automorphism acts on a different basis");
  if (!phi.preserves_blocks())
    throw input_error("automorphism does not preserve the peripheral factors");
  std::vector<EdgePath> marking;
  for (Letter x = 1; x <= g.basis().rank(); ++x)
    marking.push_back(g.realize(phi.image(x)));
  std::vector<GEdge> edges;
  for (int e = 1; e <= g.edge_count(); ++e)
    edges.push_back(GEdge{g.edge_from(e), g.edge_to(e), g.edge_name(e)});
  MarkedGraph moved(g.basis(), g.vertex_count(), std::move(edges),
                    std::move(marking), g.base_vertex());
  return GrushkoTreePoint(std::move(moved), t.collapsed(), t.lengths());
}

GrushkoTreePoint scale(const GrushkoTreePoint& t, const Rational& factor) {
  if (!(factor > 0)) throw input_error("scale factor must be positive");
  std::map<int, Rational> lengths = t.lengths();
  for (auto& kv : lengths) kv.second *= factor;
  return GrushkoTreePoint(t.graph(), t.collapsed(), std::move(lengths));
}

bool rational_dual(const GrushkoTreePoint& t, const CyclicWord& g) {
  return translation_length(t, g) == 0;
}

namespace {

struct GrowthData {
  StratumData top;
  std::map<int, Interval> len;  // growth metric per top edge, zero elsewhere
  Rational cancel_bound;        // one-sided per-junction cancellation bound
};

GrowthData growth_metric(const GraphMap& rep, const Rational& tol) {
  if (!rep.collapse_info())
    throw input_error("stable length needs a collapsed representative");
  if (rep.stratum_count() != 2)
    throw input_error(
        "stable length needs exactly one stratum above the collapsed part");
  Rational pf_tol = tol / 1048576;
  if (pf_tol > GraphMap::default_tol()) pf_tol = GraphMap::default_tol();
  GrowthData d{rep.stratum_data(rep.top_stratum(), pf_tol), {}, 0};
  if (d.top.cls != MatrixClass::primitive)
    throw input_error("top stratum matrix is not primitive");
  if (!d.top.eg) throw input_error("top stratum does not grow");
  if (!d.top.pf) throw verify_error("growth data is missing");
  if (!(d.top.pf->lambda.lo > 1))
    throw verify_error("growth rate enclosure is not above one");
  Rational vol_hi = 0;
  for (size_t i = 0; i < d.top.edges.size(); ++i) {
    d.len[d.top.edges[i]] = d.top.pf->left[i];
    vol_hi += d.top.pf->left[i].hi;
  }
  // Bounded cancellation: one application is lambda-Lipschitz for the growth
  // metric, so each junction cancels at most Lip * volume from either side.
  d.cancel_bound = d.top.pf->lambda.hi * vol_hi;
  return d;
}

Interval metric_length(const GrowthData& d, const EdgePath& loop) {
  std::map<int, long long> counts;
  for (int e : loop) counts[e < 0 ? -e : e]++;
  Interval total{0, 0};
  for (const auto& kv : counts) {
    auto it = d.len.find(kv.first);
    if (it == d.len.end()) continue;
    total.lo += kv.second * it->second.lo;
    total.hi += kv.second * it->second.hi;
  }
  return total;
}

}  // namespace

LengthEnclosure stable_length(const GraphMap& rep, const CyclicWord& g,
                              const Rational& tol, int p_max, size_t cap) {
  GrowthData d = growth_metric(rep, tol);
  const Interval& lam = d.top.pf->lambda;
  EdgePath loop = cyclic_core(rep.graph().realize(g.letters()));
  bool peripheral = true;
  for (int e : loop)
    if (rep.stratum_of(e < 0 ? -e : e) != 0) peripheral = false;
  if (loop.empty() || peripheral) return LengthEnclosure{0, 0, 0, true, ""};

  LengthEnclosure best;
  for (int p = 0;; ++p) {
    Interval raw = metric_length(d, loop);
    Rational lam_lo_p = rat_pow(lam.lo, p);
    Interval upper{raw.lo / rat_pow(lam.hi, p), raw.hi / lam_lo_p};
    long long illegal = 0;
    for (const Turn& t : rep.turns_in_loop(loop))
      if (!rep.turn_legal(t)) ++illegal;
    if (illegal == 0) return LengthEnclosure{upper.lo, upper.hi, p, true, ""};
    Rational tail =
        2 * d.cancel_bound * illegal / (lam_lo_p * (lam.lo - 1));
    Rational lower = upper.lo - tail;
    if (lower < 0) lower = 0;
    best = LengthEnclosure{lower, upper.hi, p, false, ""};
    if (upper.hi - lower <= tol) return best;
    if (p >= p_max) {
      best.warning = "tolerance not reached by the power limit";
      return best;
    }
    EdgePath next = cyclic_core(rep.apply(loop));
    if (next.size() > cap) {
      best.warning = "tolerance not reached before the length cap";
      return best;
    }
    loop = std::move(next);
  }
}

TreeNsReport tree_ns_experiment(const GraphMap& rep, const GrushkoTreePoint& t,
                                const std::vector<CyclicWord>& sample,
                                int p_max, const Rational& tol, size_t cap) {
  const Basis& basis = rep.graph().basis();
  if (sample.empty()) throw input_error("sample is empty");
  for (const CyclicWord& g : sample)
    if (!is_nonperipheral(g.letters(), basis))
      throw input_error("sample element '" + format_word(g.letters(), basis) +
                        "' is peripheral");
  if (p_max < 0) throw input_error("power limit must be non-negative");
  GrowthData d = growth_metric(rep, tol);
  const Interval& lam = d.top.pf->lambda;

  std::vector<Rational> lam_lo(p_max + 1), lam_hi(p_max + 1);
  lam_lo[0] = lam_hi[0] = 1;
  for (int p = 1; p <= p_max; ++p) {
    lam_lo[p] = lam_lo[p - 1] * lam.lo;
    lam_hi[p] = lam_hi[p - 1] * lam.hi;
  }

  bool same_graph = t.graph() == rep.graph();
  bool taken_legal = true;
  if (same_graph)
    for (const Turn& turn : taken_turns(rep))
      if (!rep.turn_legal(turn)) taken_legal = false;
  const std::vector<int>& nk = d.top.edges;
  std::map<int, int> nk_index;
  for (size_t i = 0; i < nk.size(); ++i) nk_index[nk[i]] = (int)i;

  TreeNsReport out;
  out.sample = sample;
  for (const CyclicWord& g : sample)
    out.stable.push_back(stable_length(rep, g, tol));

  std::vector<std::vector<Interval>> columns;
  std::string warning;
  Aut aut;
  if (!same_graph) aut = rep.induced_automorphism();

  for (const CyclicWord& g : sample) {
    std::vector<Interval> col;
    if (same_graph) {
      EdgePath loop = cyclic_core(rep.graph().realize(g.letters()));
      bool vec_mode = false;
      std::vector<BigInt> counts;
      for (int p = 0; p <= p_max; ++p) {
        Rational l = 0;
        if (vec_mode) {
          for (size_t i = 0; i < nk.size(); ++i)
            l += Rational(counts[i]) * t.length(nk[i]);
        } else {
          for (int e : loop) l += t.length(e);
        }
        col.push_back(Interval{l / lam_hi[p], l / lam_lo[p]});
        if (p == p_max) break;
        if (vec_mode) {
          counts = mat_vec(d.top.matrix, counts);
          continue;
        }
        EdgePath next = cyclic_core(rep.apply(loop));
        if (next.size() <= cap) {
          loop = std::move(next);
          continue;
        }
        if (taken_legal && loop_legal(rep, loop)) {
          counts.assign(nk.size(), BigInt(0));
          for (int e : loop) {
            auto it = nk_index.find(e < 0 ? -e : e);
            if (it != nk_index.end()) counts[it->second] += 1;
          }
          counts = mat_vec(d.top.matrix, counts);
          vec_mode = true;
        } else {
          if (warning.empty())
            warning = "sample element '" + format_word(g.letters(), basis) +
                      "' exceeded the length cap before its loop became legal";
          break;
        }
      }
    } else {
      Word w = g.letters();
      for (int p = 0; p <= p_max; ++p) {
        EdgePath loop = cyclic_core(t.graph().realize(w));
        Rational l = 0;
        for (int e : loop) l += t.length(e);
        col.push_back(Interval{l / lam_hi[p], l / lam_lo[p]});
        if (p == p_max) break;
        w = aut.apply(w);
        if (w.size() > cap) {
          if (warning.empty())
            warning = "sample element '" + format_word(g.letters(), basis) +
                      "' exceeded the length cap";
          break;
        }
      }
    }
    columns.push_back(std::move(col));
  }

  size_t rows = columns.empty() ? 0 : columns[0].size();
  for (const auto& col : columns) rows = std::min(rows, col.size());
  out.spectra.assign(rows, std::vector<Interval>(sample.size()));
  for (size_t p = 0; p < rows; ++p)
    for (size_t i = 0; i < sample.size(); ++i)
      out.spectra[p][i] = columns[i][p];
  out.warning = warning;

  for (size_t p = 0; p + 1 < rows; ++p) {
    Rational sup = 0;
    for (size_t i = 0; i < sample.size(); ++i) {
      const Interval& a = out.spectra[p][i];
      const Interval& b = out.spectra[p + 1][i];
      Rational diff = a.hi - b.lo;
      if (b.hi - a.lo > diff) diff = b.hi - a.lo;
      if (diff > sup) sup = diff;
    }
    out.sup_differences.push_back(sup);
  }
  out.cauchy = !out.sup_differences.empty() && out.sup_differences.back() <= tol;

  if (rows > 0) {
    Rational gap = 0;
    for (size_t i = 0; i < sample.size(); ++i) {
      const Interval& s = out.spectra[rows - 1][i];
      Rational g1 = out.stable[i].lower - s.hi;
      Rational g2 = s.lo - out.stable[i].upper;
      Rational g = g1 > g2 ? g1 : g2;
      if (g < 0) g = 0;
      if (g > gap) gap = g;
    }
    out.limit_gap = gap;
    out.limits_match = gap <= tol;
  }
  return out;
}

std::string TreeNsReport::to_csv(const Basis& basis) const {
  std::ostringstream os;
  os << "class";
  for (size_t p = 0; p < spectra.size(); ++p) os << ",p" << p;
  os << "\n";
  for (size_t i = 0; i < sample.size(); ++i) {
    os << format_word(sample[i].letters(), basis);
    for (size_t p = 0; p < spectra.size(); ++p)
      os << "," << decimal_string(spectra[p][i].mid(), 9);
    os << "\n";
  }
  return os.str();
}

DualityChainReport duality_chain_check(
    const std::vector<FactorSystem>& chain,
    const std::vector<GrushkoTreePoint>& trees,
    const std::vector<CyclicWord>& witnesses) {
  if (chain.size() < 2)
    throw input_error("chain needs at least two factor systems");
  if (trees.size() != chain.size())
    throw input_error("chain and tree counts differ");
  if (witnesses.size() + 1 != chain.size())
    throw input_error("each consecutive pair of systems needs one witness");
  const Basis& basis = trees[0].graph().basis();

  DualityChainReport out;
  out.ok = true;
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    bool ab = ffs_leq(chain[i], chain[i + 1]);
    bool ba = ffs_leq(chain[i + 1], chain[i]);
    if (!ab && !ba)
      throw input_error("factor systems at step " + std::to_string(i) +
                        " are not comparable");
    size_t smaller = ab ? i : i + 1;
    const CyclicWord& w = witnesses[i];
    bool carried = false;
    for (const CoreGraph& f : chain[smaller].factors)
      if (is_conjugate_into(w.letters(), f)) carried = true;
    if (!carried)
      throw input_error("witness '" + format_word(w.letters(), basis) +
                        "' is not carried by the smaller system of step " +
                        std::to_string(i));
    DualityStep step;
    step.step = (int)i;
    step.smaller = (int)smaller;
    step.dual_in_first = rational_dual(trees[i], w);
    step.dual_in_second = rational_dual(trees[i + 1], w);
    step.ok = step.dual_in_first && step.dual_in_second;
    if (!step.ok) out.ok = false;
    out.steps.push_back(step);
  }
  return out;
}

}  // namespace relttk
