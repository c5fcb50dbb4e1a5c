#include "posetmine/interval_lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <set>

#include "posetmine/errors.hpp"

namespace pmine {

namespace {

int decimals_for(double unit) {
  if (unit >= 1.0 && std::floor(unit) == unit) return 0;
  int d = 0;
  double u = unit;
  while (d < 9 && std::fabs(u - std::round(u)) > 1e-9) {
    u *= 10;
    ++d;
  }
  return d;
}

std::optional<std::int64_t> to_units(double value, double unit) {
  const double q = value / unit;
  const double r = std::round(q);
  if (std::fabs(q - r) > 1e-6 * std::max(1.0, std::fabs(q))) return std::nullopt;
  return static_cast<std::int64_t>(r);
}

}  // namespace

std::optional<std::int64_t> ValueScale::parse(const std::string& raw) const {
  std::string text = raw;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  text = text.substr(start);
  if (text.empty()) return std::nullopt;

  if (kind == Kind::clock) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return std::nullopt;
    int h = 0;
    int m = 0;
    auto r1 = std::from_chars(text.data(), text.data() + colon, h);
    auto r2 = std::from_chars(text.data() + colon + 1, text.data() + text.size(), m);
    if (r1.ec != std::errc{} || r1.ptr != text.data() + colon) return std::nullopt;
    if (r2.ec != std::errc{} || r2.ptr != text.data() + text.size()) return std::nullopt;
    if (h < 0 || m < 0 || m >= 60) return std::nullopt;
    return to_units(static_cast<double>(h * 60 + m), unit);
  }

  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v)) return std::nullopt;
  return to_units(v, unit);
}

std::string ValueScale::format(std::int64_t value) const {
  char buf[64];
  if (kind == Kind::clock) {
    const double minutes = static_cast<double>(value) * unit;
    const long long total = std::llround(minutes);
    const long long h = total / 60;
    const long long m = std::llabs(total % 60);
    std::snprintf(buf, sizeof buf, "%s%lld:%02lld", total < 0 ? "-" : "", std::llabs(h), m);
    return buf;
  }
  const int d = decimals_for(unit);
  if (d == 0) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(static_cast<double>(value) * unit)));
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", d, static_cast<double>(value) * unit);
  }
  return buf;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) noexcept {
  const Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (r.lo > r.hi) return std::nullopt;
  return r;
}

Interval span(const Interval& a, const Interval& b) noexcept { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

std::optional<NodeId> IntervalLattice::node_of(const Interval& iv) const {
  for (NodeId v = 0; v < node_interval.size(); ++v)
    if (node_interval[v] && *node_interval[v] == iv) return v;
  return std::nullopt;
}

IntervalLattice build_lattice(const IntervalSet& generators, ValueScale scale, bool force_empty_bottom) {
  if (generators.empty()) throw PreconditionError("interval set must be nonempty");
  std::set<Interval> closed;
  std::deque<Interval> pending;
  bool empty_meet = force_empty_bottom;
  for (const auto& g : generators) {
    if (g.lo > g.hi) throw PreconditionError("interval with lo > hi");
    if (closed.insert(g).second) pending.push_back(g);
  }
  // Worklist closure: every new interval is combined with everything known so far.
  while (!pending.empty()) {
    const Interval cur = pending.front();
    pending.pop_front();
    std::vector<Interval> fresh;
    for (const auto& other : closed) {
      if (auto m = intersect(cur, other)) {
        if (!closed.count(*m)) fresh.push_back(*m);
      } else {
        empty_meet = true;
      }
      const Interval j = span(cur, other);
      if (!closed.count(j)) fresh.push_back(j);
    }
    for (const auto& f : fresh)
      if (closed.insert(f).second) pending.push_back(f);
  }

  IntervalLattice lat;
  lat.scale = scale;
  std::vector<std::string> labels;
  if (empty_meet) {
    lat.node_interval.push_back(std::nullopt);
    labels.emplace_back("-");
  }
  for (const auto& iv : closed) {
    lat.node_interval.emplace_back(iv);
    labels.push_back("[" + scale.format(iv.lo) + "," + scale.format(iv.hi) + "]");
  }
  std::vector<std::pair<NodeId, NodeId>> less;
  const auto n = static_cast<NodeId>(lat.node_interval.size());
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      const auto& a = lat.node_interval[u];
      const auto& b = lat.node_interval[v];
      if (!a || (b && b->contains(*a))) less.emplace_back(u, v);
    }
  lat.poset = FactorPoset::from_relations(PosetKind::interval_lattice, std::move(labels), less);
  return lat;
}

IntervalSet elementary_intervals(const std::vector<std::optional<Interval>>& column) {
  std::vector<std::int64_t> points;
  for (const auto& cell : column) {
    if (!cell) continue;
    points.push_back(cell->lo);
    points.push_back(cell->hi);
  }
  if (points.empty()) throw IngestError("interval column has no entries");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  IntervalSet out;
  if (points.size() == 1) {
    out.push_back({points[0], points[0]});
    return out;
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i) out.push_back({points[i], points[i + 1]});
  return out;
}

// ---------------------------------------------------------------------------

QuantitativeSemilattice::QuantitativeSemilattice(std::vector<std::int64_t> values, ValueScale scale)
    : values_(std::move(values)), scale_(scale) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  if (values_.empty()) throw PreconditionError("quantitative attribute needs at least one value");
  std::vector<std::string> asc;
  for (auto v : values_) asc.push_back(scale_.format(v));
  std::vector<std::string> desc(asc.rbegin(), asc.rend());
  left_ = FactorPoset::chain(std::move(asc));
  right_ = FactorPoset::chain(std::move(desc));
}

std::optional<Interval> QuantitativeSemilattice::decode(NodeId left, NodeId right) const noexcept {
  const auto lo = left_value(left);
  const auto hi = right_value(right);
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

std::optional<std::size_t> QuantitativeSemilattice::index_of(std::int64_t value) const noexcept {
  auto it = std::lower_bound(values_.begin(), values_.end(), value);
  if (it == values_.end() || *it != value) return std::nullopt;
  return static_cast<std::size_t>(it - values_.begin());
}

IntervalLattice QuantitativeSemilattice::materialize(std::size_t max_values) const {
  const std::size_t m = values_.size();
  if (m > max_values)
    throw ResourceExceeded("quantitative semi-lattice over " + std::to_string(m) + " values exceeds cap " +
                           std::to_string(max_values));
  IntervalLattice lat;
  lat.scale = scale_;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      lat.node_interval.emplace_back(Interval{values_[i], values_[j]});
      labels.push_back("[" + scale_.format(values_[i]) + "," + scale_.format(values_[j]) + "]");
    }
  std::vector<std::pair<NodeId, NodeId>> less;
  const auto n = static_cast<NodeId>(lat.node_interval.size());
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v && lat.node_interval[u]->contains(*lat.node_interval[v])) less.emplace_back(u, v);
  lat.poset = FactorPoset::from_relations(PosetKind::interval_semilattice, std::move(labels), less);
  return lat;
}

QuantitativeSemilattice quantitative_semilattice(const std::vector<std::int64_t>& values, ValueScale scale) {
  return QuantitativeSemilattice(values, scale);
}

// ---------------------------------------------------------------------------

std::string DecodedInterval::describe(const ValueScale& scale) const {
  switch (kind) {
    case Kind::empty: return "empty";
    case Kind::point: return "[" + scale.format(lo) + "," + scale.format(lo) + "]";
    case Kind::interval:
    case Kind::padded: return "[" + scale.format(lo) + "," + scale.format(hi) + "]";
    case Kind::open_points: return "any point in (" + scale.format(lo) + "," + scale.format(hi) + ")";
  }
  return "?";
}

DecodedInterval decode_minimal_infrequent(const IntervalLattice& lattice, NodeId node, std::int64_t epsilon) {
  const auto& P = lattice.poset;
  P.check(node);
  const auto& self = lattice.node_interval[node];
  if (!self) return {DecodedInterval::Kind::empty, 0, 0};
  if (node == P.bottom() && !lattice.has_empty_bottom()) {
    // Bottom of a lattice without an adjoined empty element: the meet of everything.
    return {self->is_point() ? DecodedInterval::Kind::point : DecodedInterval::Kind::interval, self->lo, self->hi};
  }
  if (self->is_point()) return {DecodedInterval::Kind::point, self->lo, self->lo};

  std::vector<Interval> preds;
  for (NodeId p : P.predecessors(node))
    if (lattice.node_interval[p]) preds.push_back(*lattice.node_interval[p]);
  std::sort(preds.begin(), preds.end());

  if (preds.empty()) {
    // Only the empty bottom lies below: every interior point is supported exactly like the node.
    return {DecodedInterval::Kind::open_points, self->lo, self->hi};
  }
  if (preds.size() == 1) {
    const Interval& p = preds.front();
    return {DecodedInterval::Kind::padded, p.lo - (self->lo < p.lo ? epsilon : 0),
            p.hi + (self->hi > p.hi ? epsilon : 0)};
  }
  if (preds.size() == 2) {
    const Interval& left = preds[0];   // [a, b]
    const Interval& right = preds[1];  // [c, d], a < c
    if (left.is_point() && right.is_point()) return {DecodedInterval::Kind::open_points, left.lo, right.lo};
    // Overlapping predecessors give [c-eps, b+eps]; a gap between them flips the endpoints.
    const auto from = right.lo - epsilon;
    const auto to = left.hi + epsilon;
    return {DecodedInterval::Kind::padded, std::min(from, to), std::max(from, to)};
  }
  throw InternalError("interval lattice node " + P.label(node) + " has " + std::to_string(preds.size()) +
                      " immediate predecessors");
}

}  // namespace pmine
