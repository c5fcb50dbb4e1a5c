#include "posetmine/dualize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "posetmine/errors.hpp"

namespace pmine {

SubproblemBox::SubproblemBox(const ProductPoset& P) {
  for (const auto& f : P.factors()) sets.emplace_back(f.size(), true);
}

bool SubproblemBox::contains(const ElementVector& x) const {
  if (x.size() != sets.size()) return false;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (x[i] >= sets[i].size() || !sets[i].test(x[i])) return false;
  return true;
}

std::uint64_t SubproblemBox::volume(std::uint64_t cap) const {
  std::uint64_t v = 1;
  for (const auto& s : sets) {
    const std::uint64_t c = s.count();
    if (c == 0) return 0;
    if (v > cap / c) return cap;
    v *= c;
  }
  return std::min(v, cap);
}

std::size_t SubproblemBox::weight() const {
  std::size_t w = 0;
  for (const auto& s : sets) w += s.count();
  return w;
}

void check_partial_duality(const ProductPoset& P, const Antichain& A, const Antichain& B) {
  for (const auto& a : A) P.check(a);
  for (const auto& b : B) P.check(b);
  for (std::size_t u = 0; u < A.size(); ++u)
    for (std::size_t w = 0; w < B.size(); ++w)
      if (P.leq(A[u], B[w]))
        throw PreconditionError("A[" + std::to_string(u) + "] <= B[" + std::to_string(w) + "]");
}

bool is_witness(const ProductPoset& P, const ElementVector& x, const Antichain& A, const Antichain& B) {
  for (const auto& a : A)
    if (P.leq(a, x)) return false;
  for (const auto& b : B)
    if (P.leq(x, b)) return false;
  return true;
}

DualityThreshold DualityThreshold::for_volume(double v) {
  DualityThreshold th;
  th.volume = v;
  if (!(v > 1)) return th;
  // chi * ln(chi) is increasing on [1, inf); bisect on [1, max(2, log2 v)].
  double lo = 1;
  double hi = std::max(2.0, std::log2(v));
  const double target = std::log(v);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::log(mid) < target ? lo : hi) = mid;
  }
  th.chi = 0.5 * (lo + hi);
  th.epsilon = 1.0 / th.chi;
  return th;
}

namespace {

Antichain extremes(const ProductPoset& P, Antichain xs, bool minimal) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Antichain out;
  for (std::size_t u = 0; u < xs.size(); ++u) {
    bool keep = true;
    for (std::size_t w = 0; w < xs.size() && keep; ++w)
      if (u != w && (minimal ? P.leq(xs[w], xs[u]) : P.leq(xs[u], xs[w]))) keep = false;
    if (keep) out.push_back(xs[u]);
  }
  return out;
}

}  // namespace

Antichain min_antichain(const ProductPoset& P, Antichain xs) { return extremes(P, std::move(xs), true); }
Antichain max_antichain(const ProductPoset& P, Antichain xs) { return extremes(P, std::move(xs), false); }

namespace {

using Box = std::vector<Bitset>;
using ElementSet = std::unordered_set<ElementVector, ElementHash>;
using Witness = std::optional<ElementVector>;

std::size_t box_weight(const Box& Q) {
  std::size_t w = 0;
  for (const auto& s : Q) w += s.count();
  return w;
}

bool box_nonempty(const Box& Q) {
  return std::all_of(Q.begin(), Q.end(), [](const Bitset& s) { return s.any(); });
}

std::vector<NodeId> members(const Bitset& s) {
  std::vector<NodeId> out;
  s.for_each([&](std::size_t v) { out.push_back(static_cast<NodeId>(v)); });
  return out;
}

// Visits the product of `choices` until `f` returns true.
template <typename F>
bool for_each_product(const std::vector<std::vector<NodeId>>& choices, F&& f) {
  for (const auto& c : choices)
    if (c.empty()) return false;
  const std::size_t n = choices.size();
  std::vector<std::size_t> idx(n, 0);
  ElementVector x;
  x.coords.resize(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = choices[i][idx[i]];
    if (f(x)) return true;
    std::size_t i = n;
    for (;;) {
      if (i == 0) return false;
      --i;
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
    }
  }
}

class Solver {
 public:
  Solver(const ProductPoset& P, const DualizeOptions& opts, DualizeStats* stats) : P_(P), opts_(opts), stats_(stats) {}

  Witness tree(const Box& Q, Antichain A, Antichain B, std::size_t depth, std::size_t parent_weight);
  Witness generic(const Box& Q, Antichain A, Antichain B, std::size_t depth, std::size_t parent_weight);
  Witness enumerate(const Box& Q, const Antichain& A, const Antichain& B) const;

 private:
  void enter(const Box& Q, std::size_t depth, std::size_t parent_weight);
  void normalize(const Box& Q, Antichain& A, Antichain& B) const;
  Witness small_side(const Box& Q, const Antichain& A, const Antichain& B) const;
  Witness outside_extremes(const Box& Q, const Antichain& C, bool maxima, const Antichain& other) const;
  std::optional<NodeId> q_parent(std::size_t i, const Bitset& Qi, NodeId u) const;
  const Bitset& cone(std::size_t i, NodeId v, bool up) const {
    return up ? P_.factor(i).up_set(v) : P_.factor(i).down_set(v);
  }

  const ProductPoset& P_;
  const DualizeOptions& opts_;
  DualizeStats* stats_;
};

void Solver::enter(const Box& Q, std::size_t depth, std::size_t parent_weight) {
  if (depth > opts_.max_depth)
    throw ResourceExceeded("dualization recursion exceeded depth " + std::to_string(opts_.max_depth));
  if (box_weight(Q) >= parent_weight) throw InternalError("dualization subproblem did not shrink");
  if (stats_) {
    ++stats_->calls;
    stats_->max_depth = std::max(stats_->max_depth, depth);
  }
}

// Drops elements that miss Q, moves each remaining a to the minimal points of
// its up-set inside Q (each b to the maximal points of its down-set) and keeps
// the extremes. A+ and B- restricted to Q are unchanged.
void Solver::normalize(const Box& Q, Antichain& A, Antichain& B) const {
  const std::size_t n = Q.size();
  auto project = [&](const Antichain& xs, bool up) {
    Antichain out;
    std::vector<std::vector<NodeId>> choices(n);
    // Projections of one node are shared by many elements.
    std::vector<std::unordered_map<NodeId, std::vector<NodeId>>> memo(n);
    for (const auto& x : xs) {
      bool relevant = true;
      for (std::size_t i = 0; i < n && relevant; ++i) {
        choices[i].clear();
        if (Q[i].test(x[i])) {
          choices[i].push_back(x[i]);
          continue;
        }
        auto [it, fresh] = memo[i].try_emplace(x[i]);
        if (fresh) {
          Bitset S = cone(i, x[i], up);
          S &= Q[i];
          S.for_each([&](std::size_t v) {
            if (cone(i, static_cast<NodeId>(v), !up).count_and(S) == 1) it->second.push_back(static_cast<NodeId>(v));
          });
        }
        choices[i] = it->second;
        relevant = !choices[i].empty();
      }
      if (!relevant) continue;
      for_each_product(choices, [&](const ElementVector& y) {
        out.push_back(y);
        return false;
      });
    }
    return up ? min_antichain(P_, std::move(out)) : max_antichain(P_, std::move(out));
  };
  A = project(A, true);
  B = project(B, false);
}

std::optional<NodeId> Solver::q_parent(std::size_t i, const Bitset& Qi, NodeId u) const {
  auto p = P_.factor(i).parent(u);
  while (p && !Qi.test(*p)) p = P_.factor(i).parent(*p);
  return p;
}

Witness Solver::enumerate(const Box& Q, const Antichain& A, const Antichain& B) const {
  std::vector<std::vector<NodeId>> choices;
  for (const auto& s : Q) choices.push_back(members(s));
  Witness found;
  for_each_product(choices, [&](const ElementVector& x) {
    if (!is_witness(P_, x, A, B)) return false;
    found = x;
    return true;
  });
  return found;
}

// With C = A and maxima: Q minus A+ is a union of boxes, one per way of
// choosing, for every a, a coordinate where x escapes a's up-set. Its maximal
// elements must all belong to B when the pair is dual, and any maximal element
// outside B is a witness. The minima case is the mirror image.
Witness Solver::outside_extremes(const Box& Q, const Antichain& C, bool maxima, const Antichain& other) const {
  const std::size_t n = Q.size();
  const std::size_t k = C.size();
  std::vector<Box> boxes;
  if (n > 0 || k == 0) {
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      Box R = Q;
      for (std::size_t c = 0; c < k; ++c) R[pick[c]].subtract(cone(pick[c], C[c][pick[c]], maxima));
      if (box_nonempty(R)) boxes.push_back(std::move(R));
      std::size_t c = k;
      bool done = true;
      while (c > 0) {
        --c;
        if (++pick[c] < n) {
          done = false;
          break;
        }
        pick[c] = 0;
      }
      if (done) break;
    }
  }
  // Boxes inside other boxes add nothing.
  std::vector<Box> kept;
  for (std::size_t u = 0; u < boxes.size(); ++u) {
    bool inside = false;
    for (std::size_t w = 0; w < boxes.size() && !inside; ++w) {
      if (u == w) continue;
      bool sub = true;
      for (std::size_t i = 0; i < n && sub; ++i) sub = boxes[u][i].is_subset_of(boxes[w][i]);
      if (sub && (boxes[u] != boxes[w] || w < u)) inside = true;
    }
    if (!inside) kept.push_back(boxes[u]);
  }

  const ElementSet allowed(other.begin(), other.end());
  ElementSet seen;
  Witness found;
  for (const auto& R : kept) {
    std::vector<std::vector<NodeId>> ext(n);
    for (std::size_t i = 0; i < n; ++i)
      R[i].for_each([&](std::size_t v) {
        if (cone(i, static_cast<NodeId>(v), maxima).count_and(R[i]) == 1) ext[i].push_back(static_cast<NodeId>(v));
      });
    const bool stop = for_each_product(ext, [&](const ElementVector& x) {
      if (!seen.insert(x).second) return false;
      for (const auto& R2 : kept) {
        bool reach = true;
        bool strict = false;
        for (std::size_t i = 0; i < n && reach; ++i) {
          const Bitset& c = cone(i, x[i], maxima);
          const std::size_t hits = c.count_and(R2[i]);
          reach = hits > 0;
          strict = strict || hits > (R2[i].test(x[i]) ? 1u : 0u);
        }
        if (reach && strict) return false;  // not extreme in the union
      }
      if (allowed.count(x)) return false;
      found = x;
      return true;
    });
    if (stop) break;
  }
  return found;
}

Witness Solver::small_side(const Box& Q, const Antichain& A, const Antichain& B) const {
  if (stats_) ++stats_->base_cases;
  return A.size() <= B.size() ? outside_extremes(Q, A, true, B) : outside_extremes(Q, B, false, A);
}

Witness Solver::generic(const Box& Q, Antichain A, Antichain B, std::size_t depth, std::size_t parent_weight) {
  enter(Q, depth, parent_weight);
  if (!box_nonempty(Q)) return std::nullopt;
  normalize(Q, A, B);
  SubproblemBox sb;
  sb.sets = Q;
  if (sb.volume(opts_.exhaustive_cap + 1) <= opts_.exhaustive_cap) {
    if (stats_) ++stats_->base_cases;
    return enumerate(Q, A, B);
  }
  if (std::min(A.size(), B.size()) <= 3) return small_side(Q, A, B);

  const ElementVector& a = A.front();
  const ElementVector& b = B.front();
  std::size_t i = 0;
  while (P_.factor(i).leq(a[i], b[i])) ++i;
  const std::size_t w = box_weight(Q);
  Box Q1 = Q;
  Q1[i] &= P_.factor(i).up_set(a[i]);
  if (auto x = generic(Q1, A, B, depth + 1, w)) return x;
  Box Q2 = Q;
  Q2[i].subtract(P_.factor(i).up_set(a[i]));
  return generic(Q2, std::move(A), std::move(B), depth + 1, w);
}

Witness Solver::tree(const Box& Q, Antichain A, Antichain B, std::size_t depth, std::size_t parent_weight) {
  enter(Q, depth, parent_weight);
  if (!box_nonempty(Q)) return std::nullopt;
  normalize(Q, A, B);
  if (std::min(A.size(), B.size()) <= 3) return small_side(Q, A, B);
  SubproblemBox sb;
  sb.sets = Q;
  if (sb.volume(opts_.exhaustive_cap + 1) <= opts_.exhaustive_cap) {
    if (stats_) ++stats_->base_cases;
    return enumerate(Q, A, B);
  }

  // First pair in order, first coordinate separating it.
  const ElementVector a = A.front();
  const ElementVector& b0 = B.front();
  std::size_t i = 0;
  while (P_.factor(i).leq(a[i], b0[i])) ++i;
  const auto& Pi = P_.factor(i);
  const Bitset& up_a = Pi.up_set(a[i]);

  const double v = static_cast<double>(A.size()) * static_cast<double>(B.size());
  const double eps = DualityThreshold::for_volume(v).epsilon;
  const double eA =
      static_cast<double>(std::count_if(A.begin(), A.end(), [&](const auto& x) { return Pi.leq(a[i], x[i]); })) /
      static_cast<double>(A.size());
  const double eB =
      static_cast<double>(std::count_if(B.begin(), B.end(), [&](const auto& y) { return !Pi.leq(a[i], y[i]); })) /
      static_cast<double>(B.size());

  const std::size_t w = box_weight(Q);
  Box Q1 = Q;  // coordinate i above a_i
  Q1[i] &= up_a;
  Box Q2 = Q;  // the rest; holds b_i, so nonempty
  Q2[i].subtract(up_a);

  if (std::min(eA, eB) > eps) {
    if (auto x = tree(Q1, A, B, depth + 1, w)) return x;
    return tree(Q2, std::move(A), std::move(B), depth + 1, w);
  }

  if (eB <= eps) {
    if (auto x = tree(Q1, A, B, depth + 1, w)) return x;
    // Q0: the part of Q_i at or below a_i's parent in Q_i.
    Bitset Q0(Pi.size());
    if (auto p = q_parent(i, Q[i], a[i])) {
      Q0 = Pi.down_set(*p);
      Q0 &= Q2[i];
    }
    Bitset rest = Q2[i];
    rest.subtract(Q0);
    std::map<NodeId, Bitset> comps;
    rest.for_each([&](std::size_t u) {
      NodeId r = static_cast<NodeId>(u);
      while (auto p = q_parent(i, Q[i], r)) {
        if (!rest.test(*p)) break;
        r = *p;
      }
      auto [it, fresh] = comps.try_emplace(r, Bitset(Pi.size()));
      it->second.set(u);
    });
    for (auto& [root, comp] : comps) {
      Box R = Q;
      R[i] = comp;
      if (auto x = tree(R, A, B, depth + 1, w)) return x;
    }
    if (Q0.any()) {
      // An uncovered x with x_i in Q0 lifts to (a_i, rest of x), which must lie
      // above some a' with a'_i <= a_i.
      for (const auto& a2 : A) {
        if (!Pi.leq(a2[i], a[i])) continue;
        Box R = Q;
        R[i] = Q0;
        for (std::size_t k = 0; k < R.size(); ++k)
          if (k != i) R[k] &= P_.factor(k).up_set(a2[k]);
        if (!box_nonempty(R)) continue;
        if (auto x = tree(R, A, B, depth + 1, w)) return x;
      }
    }
    return std::nullopt;
  }

  // eA is small: settle Q2 first, then walk the nodes of Q1 outward from the
  // root; an uncovered x lowers to its Q-parent, whose row is already settled.
  if (auto x = tree(Q2, A, B, depth + 1, w)) return x;
  std::vector<NodeId> order = members(Q1[i]);
  std::stable_sort(order.begin(), order.end(), [&](NodeId u, NodeId t) { return Pi.level(u) < Pi.level(t); });
  for (NodeId xj : order) {
    Box row = Q;
    row[i] = Bitset(Pi.size());
    row[i].set(xj);
    const auto p = q_parent(i, Q[i], xj);
    if (!p) {
      if (auto x = tree(row, A, B, depth + 1, w)) return x;
      continue;
    }
    for (const auto& b : B) {
      if (!Pi.leq(*p, b[i]) || Pi.leq(xj, b[i])) continue;
      Box R = row;
      for (std::size_t k = 0; k < R.size(); ++k)
        if (k != i) R[k] &= P_.factor(k).down_set(b[k]);
      if (!box_nonempty(R)) continue;
      if (auto x = tree(R, A, B, depth + 1, w)) return x;
    }
  }
  return std::nullopt;
}

DualResult finish(const ProductPoset& P, const Antichain& A, const Antichain& B, Witness x) {
  DualResult r;
  if (!x) return r;
  P.check(*x);
  if (!is_witness(P, *x, A, B)) throw InternalError("dualization produced a covered element");
  r.dual = false;
  r.witness = std::move(x);
  return r;
}

}  // namespace

DualResult pd_exhaustive(const ProductPoset& P, const SubproblemBox& Q, const Antichain& A, const Antichain& B) {
  DualizeOptions opts;
  Solver s(P, opts, nullptr);
  return finish(P, A, B, s.enumerate(Q.sets, A, B));
}

DualResult brute_dualizer(const ProductPoset& P, const Antichain& A, const Antichain& B, std::uint64_t cap) {
  if (P.size(cap + 1) > cap)
    throw ResourceExceeded("brute-force duality check over more than " + std::to_string(cap) + " elements");
  return pd_exhaustive(P, SubproblemBox(P), A, B);
}

DualResult fdtb(const ProductPoset& P, const SubproblemBox& Q, const Antichain& A, const Antichain& B,
                const DualizeOptions& opts, DualizeStats* stats) {
  if (!P.all_trees()) throw PreconditionError("tree recursion needs every factor to be a tree");
  if (Q.sets.size() != P.dimension()) throw PreconditionError("subproblem box has wrong dimension");
  Solver s(P, opts, stats);
  return finish(P, A, B, s.tree(Q.sets, A, B, 0, Q.weight() + 1));
}

DualResult dual_check(const ProductPoset& P, const Antichain& A, const Antichain& B, const DualizeOptions& opts,
                      DualizeStats* stats) {
  if (opts.check_precondition) check_partial_duality(P, A, B);
  const SubproblemBox full(P);
  DualAlgorithm alg = opts.algorithm;
  if (alg == DualAlgorithm::automatic) alg = P.all_trees() ? DualAlgorithm::fdtb : DualAlgorithm::generic;
  switch (alg) {
    case DualAlgorithm::brute: return brute_dualizer(P, A, B, opts.brute_force_cap);
    case DualAlgorithm::fdtb: return fdtb(P, full, A, B, opts, stats);
    default: {
      Solver s(P, opts, stats);
      return finish(P, A, B, s.generic(full.sets, A, B, 0, full.weight() + 1));
    }
  }
}

}  // namespace pmine
