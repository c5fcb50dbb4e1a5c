#include "posetmine/enumerate.hpp"

#include <algorithm>

#include "posetmine/errors.hpp"

namespace pmine {

namespace {

// Lowers (or raises) single coordinates while the predicate still holds,
// scanning the coordinates cyclically until a full pass changes nothing.
template <typename Keep>
ElementVector descend(const ProductPoset& P, ElementVector x, bool down, Keep keep) {
  const std::size_t n = P.dimension();
  std::size_t i = 0;
  std::size_t stable = 0;
  while (stable < n) {
    bool moved = false;
    const auto& f = P.factor(i);
    for (NodeId v : down ? f.predecessors(x[i]) : f.successors(x[i])) {
      ElementVector y = x;
      y[i] = v;
      if (keep(y)) {
        x = std::move(y);
        moved = true;
        break;
      }
    }
    if (moved) {
      stable = 0;
    } else {
      ++stable;
      i = (i + 1) % n;
    }
  }
  return x;
}

}  // namespace

ElementVector minimalize(const ProductPoset& P, ElementVector x, const SupportOracle& support, std::size_t t) {
  P.check(x);
  if (support(x) >= t) throw PreconditionError("minimalize needs an infrequent element");
  return descend(P, std::move(x), true, [&](const ElementVector& y) { return support(y) < t; });
}

ElementVector maximalize(const ProductPoset& P, ElementVector x, const SupportOracle& support, std::size_t t) {
  P.check(x);
  if (support(x) < t) throw PreconditionError("maximalize needs a frequent element");
  return descend(P, std::move(x), false, [&](const ElementVector& y) { return support(y) >= t; });
}

Border joint_generate(const ProductPoset& P, const SupportOracle& support, std::size_t t, Antichain seeds,
                      const EnumerateOptions& opts, std::size_t rows) {
  for (const auto& s : seeds) {
    P.check(s);
    if (support(s) >= t) throw PreconditionError("seed is not infrequent");
  }
  Border out;
  Antichain& X = out.minimal_infrequent;
  Antichain& Y = out.maximal_frequent;
  X = min_antichain(P, std::move(seeds));

  while (true) {
    const DualResult r = dual_check(P, X, Y, opts.dualize);
    if (r.dual) break;
    const ElementVector& x = *r.witness;
    if (support(x) < t) {
      ElementVector m = minimalize(P, x, support, t);
      for (const auto& e : X)
        if (P.comparable(e, m)) throw InternalError("new minimal infrequent element is comparable to a known one");
      X.push_back(std::move(m));
    } else {
      ElementVector m = maximalize(P, x, support, t);
      for (const auto& e : Y)
        if (P.comparable(e, m)) throw InternalError("new maximal frequent element is comparable to a known one");
      Y.push_back(std::move(m));
    }
    ++out.iterations;
    if (opts.max_iterations && out.iterations > opts.max_iterations)
      throw ResourceExceeded("joint generation exceeded " + std::to_string(opts.max_iterations) + " iterations");
  }

  // The bound needs t >= 1; below that every element is frequent and it does not apply.
  if (opts.check_dual_bound && rows > 0 && t >= 1) {
    const long long slack = static_cast<long long>(rows) - static_cast<long long>(t) + 1;
    const long long bound = slack * static_cast<long long>(std::max<std::size_t>(1, X.size()));
    if (static_cast<long long>(Y.size()) > std::max(0LL, bound))
      throw InternalError("maximal frequent count " + std::to_string(Y.size()) + " exceeds dual bound " +
                          std::to_string(bound));
  }
  std::sort(X.begin(), X.end());
  std::sort(Y.begin(), Y.end());
  return out;
}

Border generate_minimal_infrequent(const TransactionDB& db, std::size_t t, const EnumerateOptions& opts) {
  return joint_generate(
      db.space(), [&db](const ElementVector& x) { return db.support_count(x); }, t, {}, opts, db.size());
}

}  // namespace pmine
