#include "posetmine/apriori.hpp"

#include <algorithm>
#include <unordered_set>

#include "posetmine/errors.hpp"

namespace pmine {

bool Frontier::contains(const ElementVector& x) const { return std::binary_search(elements.begin(), elements.end(), x); }

std::vector<ElementVector> candidates(const ProductPoset& space, const Frontier& frontier, const ElementSet* kept) {
  ElementSet seen;
  std::vector<ElementVector> out;
  for (const auto& x : frontier.elements) {
    for (auto& y : space.immediate_successors(x)) {
      // Successors on a longer path skip a level; they reappear from the right parent.
      if (space.level(y) != frontier.level + 1) continue;
      if (seen.count(y)) continue;
      bool closed = true;
      for (const auto& p : space.immediate_predecessors(y)) {
        if (kept ? !kept->count(p) : !frontier.contains(p)) {
          closed = false;
          break;
        }
      }
      seen.insert(y);
      if (closed) out.push_back(std::move(y));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LevelElement> prune(const TransactionDB& db, const std::vector<ElementVector>& cands, std::size_t t,
                                unsigned level, unsigned workers) {
  const auto counts = db.support_counts(cands, workers);
  std::vector<LevelElement> out;
  for (std::size_t k = 0; k < cands.size(); ++k)
    if (counts[k] >= t) out.push_back({cands[k], level, counts[k]});
  return out;
}

namespace {

// Shared walk. `keep(support)` must be monotone along `space`: if it fails for
// p it fails for everything above p.
template <typename Keep>
void levelwise(const ProductPoset& space, const TransactionDB& db, Keep keep, const ElementSink& sink,
               const AprioriOptions& opts) {
  Frontier frontier;
  const ElementVector root = space.bottom();
  const std::size_t s0 = db.support_count(root);
  if (!keep(s0)) return;
  sink({root, 0, s0});
  frontier.elements.push_back(root);
  ElementSet kept{root};

  while (!frontier.elements.empty()) {
    const auto next = candidates(space, frontier, &kept);
    if (next.empty()) break;
    const auto counts = db.support_counts(next, opts.workers);
    Frontier survivors;
    survivors.level = frontier.level + 1;
    for (std::size_t k = 0; k < next.size(); ++k) {
      if (!keep(counts[k])) continue;
      survivors.elements.push_back(next[k]);
      if (opts.max_level_width && survivors.elements.size() > opts.max_level_width)
        throw ResourceExceeded("level " + std::to_string(survivors.level) + " exceeds width cap " +
                               std::to_string(opts.max_level_width));
    }
    for (std::size_t k = 0, s = 0; k < next.size(); ++k)
      if (s < survivors.elements.size() && next[k] == survivors.elements[s]) {
        sink({next[k], survivors.level, counts[k]});
        ++s;
      }
    kept.insert(survivors.elements.begin(), survivors.elements.end());
    frontier = std::move(survivors);
  }
}

}  // namespace

void apriori_frequent(const TransactionDB& db, std::size_t t, const ElementSink& sink, const AprioriOptions& opts) {
  levelwise(db.space(), db, [t](std::size_t s) { return s >= t; }, sink, opts);
}

std::vector<LevelElement> apriori_frequent(const TransactionDB& db, std::size_t t, const AprioriOptions& opts) {
  std::vector<LevelElement> out;
  apriori_frequent(db, t, [&](const LevelElement& e) { out.push_back(e); }, opts);
  return out;
}

void apriori_infrequent(const TransactionDB& db, std::size_t t, const ElementSink& sink, const AprioriOptions& opts) {
  // Node ids are shared with the dual view, so elements need no translation.
  const ProductPoset dual = db.space().dual_view();
  levelwise(dual, db, [t](std::size_t s) { return s < t; }, sink, opts);
}

std::vector<LevelElement> apriori_infrequent(const TransactionDB& db, std::size_t t, const AprioriOptions& opts) {
  std::vector<LevelElement> out;
  apriori_infrequent(db, t, [&](const LevelElement& e) { out.push_back(e); }, opts);
  return out;
}

}  // namespace pmine
