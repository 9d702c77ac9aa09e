#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kpos/diagram.hpp"
#include "kpos/laurent.hpp"
#include "kpos/smith.hpp"

namespace kpos {

struct GroupSummand {
  std::int64_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors, each >= 2, ascending

  bool is_zero() const noexcept { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const GroupSummand&, const GroupSummand&) = default;
};

// Kh^{i,j}: (homological i, quantum j) -> Z^rank + torsion. Zero groups are never stored.
class BigradedGroups {
 public:
  using Key = std::pair<int, int>;  // (i, j)

  void add_free(int i, int j, std::int64_t rank);
  void add_torsion(int i, int j, const BigInt& order, std::int64_t count = 1);
  // Replaces the group at (i, j).
  void set(int i, int j, GroupSummand g);

  GroupSummand at(int i, int j) const;
  const std::map<Key, GroupSummand>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const BigradedGroups&, const BigradedGroups&) = default;

 private:
  std::map<Key, GroupSummand> entries_;
};

struct KhovanovOptions {
  int crossing_cap = 16;
  // Quantum-grading slices computed concurrently; 0 picks hardware_concurrency().
  unsigned threads = 0;
};

// Integral Khovanov homology, unreduced, normalized so the unknot has Z at (0, -1) and (0, 1).
BigradedGroups khovanov_homology(const Diagram& d, const KhovanovOptions& opts = {});

// Sum over (i, j) of (-1)^i rank Kh^{i,j} q^j. Torsion is ignored.
// The chain complex in quantum grading j, as transposed differentials: matrix r has a
// row per generator of C^r and a column per generator of C^{r+1}, with homological
// degree r counted from the all-A state.
std::vector<SparseIntMatrix> khovanov_chain_slice(const Diagram& d, int j, const KhovanovOptions& opts = {});

LaurentPoly euler_characteristic(const BigradedGroups& kh);

struct GradingSummary {
  int j_lower = 0;          // min { j : Kh^{*,j} != 0 }
  int j_upper = 0;          // max { j : Kh^{*,j} != 0 }
  int j_min_potential = 0;  // c - 3 q(D) - |s_A|
  int j_max_potential = 0;  // -c + 3 p(D) + |s_B|
};

// Errc::EmptyHomology if kh has no groups.
std::pair<int, int> extreme_gradings(const BigradedGroups& kh);
GradingSummary extreme_gradings(const BigradedGroups& kh, const Diagram& d);

// Total free rank in homological grading 1.
std::int64_t kh1_rank(const BigradedGroups& kh);

// Mirror image: free part at (-i, -j), torsion at (1 - i, -j).
BigradedGroups mirror_groups(const BigradedGroups& kh);

// Text form: "(1 + t)q^3 + q^5 + t^2 q^5 T^2 + ...". Each a t^i q^j is Z^a at (i, j) and
// each a t^i q^j T^2 is (Z_2)^a. Errc::MalformedKhPolynomial on bad syntax,
// Errc::UnsupportedTorsionExponent for T^k with k != 2.
BigradedGroups parse_kh_polynomial(std::string_view text);

// Canonical form, ascending (j, i), free part before torsion. Torsion of order m is written T^m.
std::string to_kh_polynomial(const BigradedGroups& kh);

}  // namespace kpos
