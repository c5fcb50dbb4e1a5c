#pragma once

// Level-wise enumeration of frequent elements of a product of posets, and of
// infrequent elements by running the same walk on the dual product.

#include <cstddef>
#include <functional>
#include <unordered_set>
#include <vector>

#include "posetmine/dataset.hpp"
#include "posetmine/poset.hpp"

namespace pmine {

struct LevelElement {
  ElementVector element;
  unsigned level = 0;
  std::size_t support = 0;
};

struct AprioriOptions {
  /// Largest number of survivors allowed on one level; 0 means unbounded.
  std::size_t max_level_width = 0;
  unsigned workers = 1;
};

using ElementSink = std::function<void(const LevelElement&)>;

/// Emits every p with support(p) >= t, by ascending level and lexicographically within a level.
void apriori_frequent(const TransactionDB& db, std::size_t t, const ElementSink& sink, const AprioriOptions& opts = {});
std::vector<LevelElement> apriori_frequent(const TransactionDB& db, std::size_t t, const AprioriOptions& opts = {});

/// Emits every p with support(p) < t, walking down from the top. Levels are
/// levels in the dual product. Throws NotDualizable when a factor has no top.
void apriori_infrequent(const TransactionDB& db, std::size_t t, const ElementSink& sink,
                        const AprioriOptions& opts = {});
std::vector<LevelElement> apriori_infrequent(const TransactionDB& db, std::size_t t, const AprioriOptions& opts = {});

/// Sorted elements of one level that survived, used to generate the next one.
struct Frontier {
  unsigned level = 0;
  std::vector<ElementVector> elements;

  bool contains(const ElementVector& x) const;
};

/// Candidates of the next level: immediate successors of frontier elements whose
/// immediate predecessors all survived. Sorted, duplicate-free.
/// `kept` holds every survivor so far; without it only the frontier is
/// consulted, which suffices when every factor is graded.
using ElementSet = std::unordered_set<ElementVector, ElementHash>;
std::vector<ElementVector> candidates(const ProductPoset& space, const Frontier& frontier,
                                      const ElementSet* kept = nullptr);

/// Candidates with support >= t, with their supports.
std::vector<LevelElement> prune(const TransactionDB& db, const std::vector<ElementVector>& candidates, std::size_t t,
                                unsigned level, unsigned workers = 1);

}  // namespace pmine
