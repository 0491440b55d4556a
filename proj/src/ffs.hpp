#pragma once

#include <string>
#include <vector>

#include "coregraph.hpp"

namespace relttk {

// System of conjugacy classes of free factors, each stored as a folded core
// graph.  The constructor does not verify that the subgroups really are free
// factors in compatible position; use aligned_system for the basis-aligned
// construction, which always is one.
struct FactorSystem {
  int ambient_rank = 0;
  std::vector<CoreGraph> factors;

  int factor_count() const { return static_cast<int>(factors.size()); }
  int rank() const;           // sum of factor ranks
  int cofactor_rank() const;  // ambient_rank - rank()
};

FactorSystem make_system(const Basis& basis, const std::vector<std::vector<Word>>& generator_sets);
// One factor per peripheral block of the basis.
FactorSystem aligned_system(const Basis& basis);

// True if some conjugate of g lies in the subgroup.
bool is_conjugate_into(const Word& g, const CoreGraph& subgroup);

// A <= D: every factor of A is conjugate into some factor of D.
bool ffs_leq(const FactorSystem& a, const FactorSystem& d);
bool ffs_equal(const FactorSystem& a, const FactorSystem& d);

// zeta = number of factors + cofactor rank; the complexity that the
// exceptional enumeration below is stated in.
int zeta(const FactorSystem& a);

enum class FfsClass {
  trivial,                  // empty system or the full group
  empty_complex,            // two factors, cofactor rank 0
  zero_dimensional_hnn,     // one factor, cofactor rank 1
  zero_dimensional_triple,  // three factors, cofactor rank 0
  non_exceptional,
};

FfsClass classify_ffs(const FactorSystem& a);
std::string to_string(FfsClass c);

}  // namespace relttk
