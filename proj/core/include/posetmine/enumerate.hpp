#pragma once

// Joint generation of the minimal infrequent and maximal frequent elements of a
// product of posets, driven by the duality test.

#include <cstddef>
#include <functional>

#include "posetmine/dataset.hpp"
#include "posetmine/dualize.hpp"

namespace pmine {

/// Support of an element; must be monotone decreasing along the order.
using SupportOracle = std::function<std::size_t(const ElementVector&)>;

struct Border {
  Antichain minimal_infrequent;  // sorted
  Antichain maximal_frequent;    // sorted
  std::size_t iterations = 0;
};

struct EnumerateOptions {
  DualizeOptions dualize{.check_precondition = false};
  /// Stop after this many new border elements; 0 means no limit.
  std::size_t max_iterations = 0;
  /// Verify |maximal frequent| <= (|D| - t + 1) * max(1, |minimal infrequent|) on completion.
  bool check_dual_bound = true;
};

/// Both borders for threshold t over the rows of `db`.
Border generate_minimal_infrequent(const TransactionDB& db, std::size_t t, const EnumerateOptions& opts = {});

/// Same loop with a pluggable support function. `seeds` are known minimal
/// t-infrequent elements used to start the infrequent side. `rows` enables
/// the dual-bound check when nonzero.
Border joint_generate(const ProductPoset& P, const SupportOracle& support, std::size_t t, Antichain seeds = {},
                      const EnumerateOptions& opts = {}, std::size_t rows = 0);

/// Walks x down to a minimal element that is still t-infrequent.
ElementVector minimalize(const ProductPoset& P, ElementVector x, const SupportOracle& support, std::size_t t);
/// Walks x up to a maximal element that is still t-frequent.
ElementVector maximalize(const ProductPoset& P, ElementVector x, const SupportOracle& support, std::size_t t);

}  // namespace pmine
