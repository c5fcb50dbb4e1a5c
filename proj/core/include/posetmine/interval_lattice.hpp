#pragma once

// Lattices of closed intervals, the quantitative interval semi-lattice and
// decoding of minimal infrequent lattice elements back to concrete intervals.
//
// Endpoints are exact integers counted in precision units of a ValueScale, so
// ordering never depends on floating point.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posetmine/poset.hpp"

namespace pmine {

/// How integer endpoints map to user-facing values.
struct ValueScale {
  enum class Kind { number, clock };
  Kind kind = Kind::number;
  /// Size of one integer step: a decimal fraction for numbers, minutes for clock values.
  double unit = 1.0;

  static ValueScale clock_minutes(double minutes = 1.0) { return {Kind::clock, minutes}; }
  static ValueScale number(double unit = 1.0) { return {Kind::number, unit}; }

  /// Parses "12.5" or "H:MM" into precision units; nullopt when malformed or off-grid.
  std::optional<std::int64_t> parse(const std::string& text) const;
  std::string format(std::int64_t value) const;
};

struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool contains(const Interval& o) const noexcept { return lo <= o.lo && o.hi <= hi; }
  bool is_point() const noexcept { return lo == hi; }
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

using IntervalSet = std::vector<Interval>;

/// Intersection; nullopt when disjoint.
std::optional<Interval> intersect(const Interval& a, const Interval& b) noexcept;
/// Smallest interval containing both.
Interval span(const Interval& a, const Interval& b) noexcept;

struct IntervalLattice {
  FactorPoset poset;
  /// Interval of each node; nullopt marks the adjoined empty bottom.
  std::vector<std::optional<Interval>> node_interval;
  ValueScale scale;

  std::optional<NodeId> node_of(const Interval& iv) const;
  bool has_empty_bottom() const noexcept { return !node_interval[poset.bottom()].has_value(); }
};

/// Closure of `generators` under intersection and span, ordered by containment.
/// Disjoint pairs meet at an adjoined empty bottom. `force_empty_bottom` adds
/// that bottom even when every pair intersects (needed for absent cells).
IntervalLattice build_lattice(const IntervalSet& generators, ValueScale scale = {}, bool force_empty_bottom = false);

/// Consecutive elementary intervals between the sorted distinct endpoints of a
/// column. Missing cells are nullopt. Throws IngestError when every cell is missing.
IntervalSet elementary_intervals(const std::vector<std::optional<Interval>>& column);

/// Quantitative attribute over the distinct values v_0 < ... < v_{m-1}: every
/// interval [v_i, v_j] ordered by reverse containment, minimum = full span.
/// Mining uses the chain-pair embedding: a left-endpoint chain (ascending)
/// and a right-endpoint chain (descending). Pairs with left > right encode no
/// interval and are filtered by callers.
class QuantitativeSemilattice {
 public:
  QuantitativeSemilattice(std::vector<std::int64_t> values, ValueScale scale = {});

  std::size_t value_count() const noexcept { return values_.size(); }
  const std::vector<std::int64_t>& values() const noexcept { return values_; }
  const ValueScale& scale() const noexcept { return scale_; }

  /// Node i <-> value v_i; bottom = v_0.
  const FactorPoset& left_chain() const noexcept { return left_; }
  /// Node r <-> value v_{m-1-r}; bottom = v_{m-1}.
  const FactorPoset& right_chain() const noexcept { return right_; }

  NodeId left_node(std::size_t value_index) const noexcept { return static_cast<NodeId>(value_index); }
  NodeId right_node(std::size_t value_index) const noexcept {
    return static_cast<NodeId>(values_.size() - 1 - value_index);
  }
  std::int64_t left_value(NodeId left) const noexcept { return values_[left]; }
  std::int64_t right_value(NodeId right) const noexcept { return values_[values_.size() - 1 - right]; }
  /// Interval encoded by a (left, right) chain pair; nullopt for left > right.
  std::optional<Interval> decode(NodeId left, NodeId right) const noexcept;
  std::optional<std::size_t> index_of(std::int64_t value) const noexcept;

  /// Explicit semi-lattice with m(m+1)/2 nodes. Throws ResourceExceeded above `max_values`.
  IntervalLattice materialize(std::size_t max_values = 256) const;

 private:
  std::vector<std::int64_t> values_;
  ValueScale scale_;
  FactorPoset left_;
  FactorPoset right_;
};

QuantitativeSemilattice quantitative_semilattice(const std::vector<std::int64_t>& values, ValueScale scale = {});

struct DecodedInterval {
  enum class Kind {
    empty,        // bottom: no constraint
    point,        // [lo, lo]
    interval,     // a lattice interval used as is
    open_points,  // every point p with lo < p < hi (no finite representative)
    padded,       // [lo, hi] already widened by epsilon
  };
  Kind kind = Kind::empty;
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::string describe(const ValueScale& scale) const;
  friend bool operator==(const DecodedInterval&, const DecodedInterval&) = default;
};

/// Concrete interval represented by a minimal infrequent lattice element.
/// epsilon is in precision units (one unit when defaulted).
DecodedInterval decode_minimal_infrequent(const IntervalLattice& lattice, NodeId node, std::int64_t epsilon = 1);

}  // namespace pmine
