#pragma once

// Factor posets and their Cartesian products.
//
// A FactorPoset is a finite poset with a unique minimum, stored as its Hasse
// diagram plus the reflexive-transitive closure as bitsets. Node identifiers
// are dense integers; labels only matter at I/O boundaries. A dual view shares
// the same storage and swaps every order query.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posetmine/bitset.hpp"

namespace pmine {

using NodeId = std::uint32_t;

enum class PosetKind {
  chain,                 // totally ordered, stored as a path tree
  bottomed_antichain,    // star tree: a bottom covered by pairwise incomparable atoms
  tree,                  // rooted tree, root is the bottom
  interval_lattice,      // intervals ordered by containment, closed under meet/join
  interval_semilattice,  // dual of an interval lattice with the top removed
};

const char* to_string(PosetKind kind) noexcept;

class FactorPoset {
 public:
  FactorPoset() = default;

  /// Chain l_0 < l_1 < ... ; the first label is the bottom.
  static FactorPoset chain(std::vector<std::string> labels);

  /// Star tree: `bottom` below every atom, atoms pairwise incomparable.
  static FactorPoset bottomed_antichain(std::string bottom, std::vector<std::string> atoms);

  /// Rooted tree. parent[v] is v's immediate predecessor; exactly one node has none.
  static FactorPoset tree(std::vector<std::string> labels, const std::vector<std::optional<NodeId>>& parent);

  /// Generic construction from strict relations (lo, hi) meaning lo < hi. The
  /// relations need not be covers; the Hasse diagram is derived. Validates the
  /// structural invariants of `kind`.
  static FactorPoset from_relations(PosetKind kind, std::vector<std::string> labels,
                                    const std::vector<std::pair<NodeId, NodeId>>& less);

  std::size_t size() const noexcept;
  PosetKind kind() const noexcept;
  bool is_dual() const noexcept { return dual_; }
  /// True when the view is a rooted tree (chain, star or taxonomy) in its natural orientation.
  bool is_tree() const noexcept;

  const std::string& label(NodeId v) const;
  std::optional<NodeId> find(const std::string& label) const;
  bool contains(NodeId v) const noexcept { return v < size(); }
  /// Throws InvalidElement when v is out of range.
  void check(NodeId v) const;

  NodeId bottom() const noexcept;
  std::optional<NodeId> top() const noexcept;

  bool leq(NodeId u, NodeId v) const noexcept;
  bool lt(NodeId u, NodeId v) const noexcept { return u != v && leq(u, v); }
  bool comparable(NodeId u, NodeId v) const noexcept { return leq(u, v) || leq(v, u); }

  /// Immediate predecessors (covered elements), ascending id.
  std::span<const NodeId> predecessors(NodeId v) const noexcept;
  /// Immediate successors (covering elements), ascending id.
  std::span<const NodeId> successors(NodeId v) const noexcept;

  /// Nodes w with w >= v, resp. w <= v, in this view.
  const Bitset& up_set(NodeId v) const noexcept;
  const Bitset& down_set(NodeId v) const noexcept;

  /// Longest path length from the bottom in the precedence graph.
  unsigned level(NodeId v) const noexcept;
  unsigned max_level() const noexcept;

  /// Unique immediate predecessor in a tree view; nullopt for the root.
  std::optional<NodeId> parent(NodeId v) const noexcept;

  /// Greatest lower bound, or nullopt when it does not exist or is not unique.
  std::optional<NodeId> meet(NodeId u, NodeId v) const;
  /// Least upper bound, or nullopt when it does not exist or is not unique.
  std::optional<NodeId> join(NodeId u, NodeId v) const;

  /// Order-reversing view sharing storage. Throws NotDualizable without a unique maximum.
  FactorPoset dual() const;

 private:
  struct Storage;
  FactorPoset(std::shared_ptr<const Storage> s, bool dual) : s_(std::move(s)), dual_(dual) {}

  std::shared_ptr<const Storage> s_;
  bool dual_ = false;
};

/// One coordinate per factor.
struct ElementVector {
  std::vector<NodeId> coords;

  ElementVector() = default;
  explicit ElementVector(std::vector<NodeId> c) : coords(std::move(c)) {}
  ElementVector(std::initializer_list<NodeId> c) : coords(c) {}

  std::size_t size() const noexcept { return coords.size(); }
  NodeId operator[](std::size_t i) const noexcept { return coords[i]; }
  NodeId& operator[](std::size_t i) noexcept { return coords[i]; }
  auto begin() const noexcept { return coords.begin(); }
  auto end() const noexcept { return coords.end(); }

  friend auto operator<=>(const ElementVector&, const ElementVector&) = default;
  friend bool operator==(const ElementVector&, const ElementVector&) = default;
};

struct ElementHash {
  std::size_t operator()(const ElementVector& x) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (NodeId c : x.coords) h = (h ^ c) * 1099511628211ull;
    return h;
  }
};

class ProductPoset {
 public:
  ProductPoset() = default;
  explicit ProductPoset(std::vector<FactorPoset> factors) : factors_(std::move(factors)) {}

  std::size_t dimension() const noexcept { return factors_.size(); }
  const FactorPoset& factor(std::size_t i) const noexcept { return factors_[i]; }
  const std::vector<FactorPoset>& factors() const noexcept { return factors_; }

  ElementVector bottom() const;
  /// Throws InvalidElement naming the offending coordinate.
  void check(const ElementVector& x) const;

  bool leq(const ElementVector& p, const ElementVector& q) const;
  bool lt(const ElementVector& p, const ElementVector& q) const { return p != q && leq(p, q); }
  bool comparable(const ElementVector& p, const ElementVector& q) const { return leq(p, q) || leq(q, p); }

  std::vector<ElementVector> immediate_predecessors(const ElementVector& x) const;
  std::vector<ElementVector> immediate_successors(const ElementVector& x) const;
  unsigned level(const ElementVector& x) const;

  /// Componentwise meet; nullopt when some factor has no unique meet.
  std::optional<ElementVector> meet(const ElementVector& x, const ElementVector& y) const;

  /// Every factor dualized. Throws NotDualizable when a factor lacks a unique maximum.
  ProductPoset dual_view() const;

  bool all_trees() const noexcept;
  /// Number of elements, saturating at `cap`.
  std::uint64_t size(std::uint64_t cap = UINT64_MAX) const noexcept;
  /// Visits every element in lexicographic order of node ids.
  void for_each_element(const std::function<void(const ElementVector&)>& visit) const;
  std::vector<std::string> labels(const ElementVector& x) const;

 private:
  std::vector<FactorPoset> factors_;
};

}  // namespace pmine
