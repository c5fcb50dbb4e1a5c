#pragma once

// Duality testing for antichain pairs in a product of posets.
//
// Given A and B with a not <= b for all a in A, b in B, decide whether every
// element of P lies above some a or below some b. When it does not, return a
// witness x with x not >= a for all a and x not <= b for all b.

#include <cstdint>
#include <optional>
#include <vector>

#include "posetmine/bitset.hpp"
#include "posetmine/poset.hpp"

namespace pmine {

using Antichain = std::vector<ElementVector>;

struct DualResult {
  bool dual = true;
  std::optional<ElementVector> witness;
};

enum class DualAlgorithm {
  automatic,  // tree recursion when every factor is a tree, generic splitting otherwise
  fdtb,
  generic,
  brute,
};

struct DualizeOptions {
  DualAlgorithm algorithm = DualAlgorithm::automatic;
  std::size_t max_depth = 100000;
  /// Sub-boxes with at most this many elements are enumerated outright.
  std::uint64_t exhaustive_cap = 64;
  /// Largest product scanned by brute_dualizer.
  std::uint64_t brute_force_cap = 1'000'000;
  /// Verify a not <= b for every pair before starting (O(|A||B|n)).
  bool check_precondition = true;
};

struct DualizeStats {
  std::uint64_t calls = 0;
  std::uint64_t base_cases = 0;
  std::size_t max_depth = 0;
};

/// A product of node subsets, one per factor.
struct SubproblemBox {
  std::vector<Bitset> sets;

  SubproblemBox() = default;
  explicit SubproblemBox(const ProductPoset& P);

  bool contains(const ElementVector& x) const;
  /// Number of elements, saturating at `cap`.
  std::uint64_t volume(std::uint64_t cap = UINT64_MAX) const;
  /// Sum of factor subset sizes; strictly decreases along every recursion.
  std::size_t weight() const;
};

/// Throws PreconditionError when some a <= b.
void check_partial_duality(const ProductPoset& P, const Antichain& A, const Antichain& B);

/// Sorted, duplicate-free minimal (resp. maximal) elements of xs.
Antichain min_antichain(const ProductPoset& P, Antichain xs);
Antichain max_antichain(const ProductPoset& P, Antichain xs);

/// x satisfies x not >= a for all a in A and x not <= b for all b in B.
bool is_witness(const ProductPoset& P, const ElementVector& x, const Antichain& A, const Antichain& B);

DualResult dual_check(const ProductPoset& P, const Antichain& A, const Antichain& B, const DualizeOptions& opts = {},
                      DualizeStats* stats = nullptr);

/// Recursive test restricted to Q; every factor must be a tree.
DualResult fdtb(const ProductPoset& P, const SubproblemBox& Q, const Antichain& A, const Antichain& B,
                const DualizeOptions& opts = {}, DualizeStats* stats = nullptr);

/// Enumerates every element of Q.
DualResult pd_exhaustive(const ProductPoset& P, const SubproblemBox& Q, const Antichain& A, const Antichain& B);

/// Scans all of P. Throws ResourceExceeded when |P| exceeds `cap`.
DualResult brute_dualizer(const ProductPoset& P, const Antichain& A, const Antichain& B,
                          std::uint64_t cap = 1'000'000);

/// chi with chi^chi = v, and epsilon = 1 / chi.
struct DualityThreshold {
  double volume = 0;
  double chi = 1;
  double epsilon = 1;

  static DualityThreshold for_volume(double v);
};

}  // namespace pmine
