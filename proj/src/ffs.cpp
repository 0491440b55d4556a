#include "ffs.hpp"

namespace relttk {

int FactorSystem::rank() const {
  int r = 0;
  for (auto& f : factors) r += f.rank();
  return r;
}

int FactorSystem::cofactor_rank() const { return ambient_rank - rank(); }

FactorSystem make_system(const Basis& basis, const std::vector<std::vector<Word>>& generator_sets) {
  FactorSystem sys;
  sys.ambient_rank = basis.rank();
  for (auto& gens : generator_sets) {
    CoreGraph g = CoreGraph::from_generators(basis, gens).cored();
    if (g.rank() < 1) throw input_error("trivial subgroup cannot be a factor of a system");
    sys.factors.push_back(std::move(g));
  }
  return sys;
}

FactorSystem aligned_system(const Basis& basis) {
  FactorSystem sys;
  sys.ambient_rank = basis.rank();
  for (int b = 0; b < basis.block_count(); ++b)
    sys.factors.push_back(CoreGraph::rose(basis, basis.block(b)).cored());
  return sys;
}

bool is_conjugate_into(const Word& g, const CoreGraph& subgroup) {
  CyclicWord c(g);
  if (c.trivial()) return true;
  return subgroup.contains_conjugate(c);
}

bool ffs_leq(const FactorSystem& a, const FactorSystem& d) {
  if (a.ambient_rank != d.ambient_rank)
    throw input_error("cannot compare systems with different ambient ranks");
  for (auto& f : a.factors) {
    bool found = false;
    for (auto& g : d.factors) {
      if (f.immerses_into(g)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool ffs_equal(const FactorSystem& a, const FactorSystem& d) {
  return ffs_leq(a, d) && ffs_leq(d, a);
}

int zeta(const FactorSystem& a) { return a.factor_count() + a.cofactor_rank(); }

FfsClass classify_ffs(const FactorSystem& a) {
  int k = a.factor_count();
  int n = a.cofactor_rank();
  if (n < 0) throw input_error("system rank exceeds ambient rank");
  if (k == 0) return FfsClass::trivial;
  if (k == 1 && n == 0 && a.rank() == a.ambient_rank) return FfsClass::trivial;
  if (k == 2 && n == 0) return FfsClass::empty_complex;
  if (k == 1 && n == 1) return FfsClass::zero_dimensional_hnn;
  if (k == 3 && n == 0) return FfsClass::zero_dimensional_triple;
  return FfsClass::non_exceptional;
}

std::string to_string(FfsClass c) {
  switch (c) {
    case FfsClass::trivial: return "trivial";
    case FfsClass::empty_complex: return "empty_complex";
    case FfsClass::zero_dimensional_hnn: return "zero_dimensional_hnn";
    case FfsClass::zero_dimensional_triple: return "zero_dimensional_triple";
    case FfsClass::non_exceptional: return "non_exceptional";
  }
  return "unknown";
}

}  // namespace relttk
