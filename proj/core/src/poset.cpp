#include "posetmine/poset.hpp"

#include <algorithm>
#include <unordered_map>

#include "posetmine/errors.hpp"

namespace pmine {

const char* to_string(PosetKind kind) noexcept {
  switch (kind) {
    case PosetKind::chain: return "chain";
    case PosetKind::bottomed_antichain: return "bottomed-antichain";
    case PosetKind::tree: return "tree";
    case PosetKind::interval_lattice: return "interval-lattice";
    case PosetKind::interval_semilattice: return "interval-semilattice";
  }
  return "?";
}

struct FactorPoset::Storage {
  PosetKind kind{};
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> index;
  std::vector<std::vector<NodeId>> preds;
  std::vector<std::vector<NodeId>> succs;
  std::vector<Bitset> up;    // up[v] = {w : v <= w}
  std::vector<Bitset> down;  // down[v] = {w : w <= v}
  std::vector<unsigned> depth;   // longest path from bottom
  std::vector<unsigned> height;  // longest path from top, valid only with a top
  std::vector<std::optional<NodeId>> parent;
  NodeId bottom = 0;
  std::optional<NodeId> top;
  unsigned max_depth = 0;
  unsigned max_height = 0;
};

namespace {

std::vector<NodeId> topological_order(std::size_t n, const std::vector<std::vector<NodeId>>& out) {
  std::vector<unsigned> indeg(n, 0);
  for (const auto& o : out)
    for (NodeId w : o) ++indeg[w];
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(static_cast<NodeId>(v));
  for (std::size_t head = 0; head < order.size(); ++head)
    for (NodeId w : out[order[head]])
      if (--indeg[w] == 0) order.push_back(w);
  if (order.size() != n) throw InvalidPoset("precedence relation contains a cycle");
  return order;
}

}  // namespace

FactorPoset FactorPoset::from_relations(PosetKind kind, std::vector<std::string> labels,
                                        const std::vector<std::pair<NodeId, NodeId>>& less) {
  const std::size_t n = labels.size();
  if (n == 0) throw InvalidPoset("poset must have at least one element");

  auto s = std::make_shared<Storage>();
  s->kind = kind;
  for (NodeId v = 0; v < n; ++v) {
    if (!s->index.emplace(labels[v], v).second) throw InvalidPoset("duplicate label '" + labels[v] + "'");
  }
  s->labels = std::move(labels);

  std::vector<std::vector<NodeId>> out(n);
  for (auto [lo, hi] : less) {
    if (lo >= n || hi >= n) throw InvalidPoset("relation refers to unknown node");
    if (lo == hi) throw InvalidPoset("relation " + s->labels[lo] + " < itself");
    out[lo].push_back(hi);
  }
  const auto order = topological_order(n, out);

  // Closure: process in reverse topological order so successors are finished.
  s->up.assign(n, Bitset(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    s->up[v].set(v);
    for (NodeId w : out[v]) s->up[v] |= s->up[w];
  }
  s->down.assign(n, Bitset(n));
  for (NodeId v = 0; v < n; ++v) s->up[v].for_each([&](std::size_t w) { s->down[w].set(v); });

  // Hasse diagram: u covers-below v iff u < v and no w with u < w < v.
  s->preds.assign(n, {});
  s->succs.assign(n, {});
  for (NodeId v = 0; v < n; ++v) {
    Bitset strict = s->down[v];
    strict.reset(v);
    strict.for_each([&](std::size_t u) {
      Bitset between = s->up[u];
      between &= strict;
      if (between.count() == 1) {
        s->preds[v].push_back(static_cast<NodeId>(u));
        s->succs[u].push_back(v);
      }
    });
  }
  for (auto& p : s->preds) std::sort(p.begin(), p.end());
  for (auto& p : s->succs) std::sort(p.begin(), p.end());

  std::vector<NodeId> minima;
  std::vector<NodeId> maxima;
  for (NodeId v = 0; v < n; ++v) {
    if (s->preds[v].empty()) minima.push_back(v);
    if (s->succs[v].empty()) maxima.push_back(v);
  }
  if (minima.size() != 1) throw InvalidPoset("poset must have a unique minimum element");
  s->bottom = minima.front();
  if (maxima.size() == 1) s->top = maxima.front();

  s->depth.assign(n, 0);
  for (NodeId v : order)
    for (NodeId w : s->succs[v]) s->depth[w] = std::max(s->depth[w], s->depth[v] + 1);
  s->max_depth = *std::max_element(s->depth.begin(), s->depth.end());
  s->height.assign(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (NodeId u : s->preds[*it]) s->height[u] = std::max(s->height[u], s->height[*it] + 1);
  s->max_height = s->height[s->bottom];

  switch (kind) {
    case PosetKind::chain:
      for (NodeId v = 0; v < n; ++v)
        if (s->up[v].count() + s->down[v].count() != n + 1) throw InvalidPoset("chain has incomparable elements");
      [[fallthrough]];
    case PosetKind::bottomed_antichain:
      if (kind == PosetKind::bottomed_antichain) {
        for (NodeId v = 0; v < n; ++v) {
          if (v == s->bottom) continue;
          if (s->preds[v].size() != 1 || s->preds[v][0] != s->bottom || !s->succs[v].empty())
            throw InvalidPoset("bottomed antichain must be a star over its bottom");
        }
      }
      [[fallthrough]];
    case PosetKind::tree:
      s->parent.assign(n, std::nullopt);
      for (NodeId v = 0; v < n; ++v) {
        if (v == s->bottom) continue;
        if (s->preds[v].size() != 1)
          throw InvalidPoset("tree node '" + s->labels[v] + "' has " + std::to_string(s->preds[v].size()) +
                             " immediate predecessors");
        s->parent[v] = s->preds[v][0];
      }
      break;
    case PosetKind::interval_lattice:
    case PosetKind::interval_semilattice: {
      FactorPoset probe(s, false);
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) {
          if (!probe.meet(u, v)) throw InvalidPoset("missing meet of " + s->labels[u] + " and " + s->labels[v]);
          if (kind == PosetKind::interval_lattice && !probe.join(u, v))
            throw InvalidPoset("missing join of " + s->labels[u] + " and " + s->labels[v]);
        }
      break;
    }
  }
  return FactorPoset(std::move(s), false);
}

FactorPoset FactorPoset::chain(std::vector<std::string> labels) {
  std::vector<std::pair<NodeId, NodeId>> rel;
  for (NodeId v = 1; v < labels.size(); ++v) rel.emplace_back(v - 1, v);
  return from_relations(PosetKind::chain, std::move(labels), rel);
}

FactorPoset FactorPoset::bottomed_antichain(std::string bottom, std::vector<std::string> atoms) {
  std::vector<std::string> labels;
  labels.reserve(atoms.size() + 1);
  labels.push_back(std::move(bottom));
  std::vector<std::pair<NodeId, NodeId>> rel;
  for (auto& a : atoms) {
    rel.emplace_back(0, static_cast<NodeId>(labels.size()));
    labels.push_back(std::move(a));
  }
  return from_relations(PosetKind::bottomed_antichain, std::move(labels), rel);
}

FactorPoset FactorPoset::tree(std::vector<std::string> labels, const std::vector<std::optional<NodeId>>& parent) {
  if (parent.size() != labels.size()) throw InvalidPoset("parent array size mismatch");
  std::vector<std::pair<NodeId, NodeId>> rel;
  for (NodeId v = 0; v < parent.size(); ++v)
    if (parent[v]) rel.emplace_back(*parent[v], v);
  return from_relations(PosetKind::tree, std::move(labels), rel);
}

std::size_t FactorPoset::size() const noexcept { return s_ ? s_->labels.size() : 0; }
PosetKind FactorPoset::kind() const noexcept { return s_->kind; }

bool FactorPoset::is_tree() const noexcept {
  if (dual_) return size() == 1 || (s_->kind == PosetKind::chain);
  return s_->kind == PosetKind::chain || s_->kind == PosetKind::bottomed_antichain || s_->kind == PosetKind::tree;
}

const std::string& FactorPoset::label(NodeId v) const {
  check(v);
  return s_->labels[v];
}

std::optional<NodeId> FactorPoset::find(const std::string& label) const {
  auto it = s_->index.find(label);
  if (it == s_->index.end()) return std::nullopt;
  return it->second;
}

void FactorPoset::check(NodeId v) const {
  if (!s_ || v >= s_->labels.size())
    throw InvalidElement("node " + std::to_string(v) + " is not an element of a factor of size " +
                         std::to_string(size()));
}

NodeId FactorPoset::bottom() const noexcept { return dual_ ? *s_->top : s_->bottom; }

std::optional<NodeId> FactorPoset::top() const noexcept {
  if (dual_) return s_->bottom;
  return s_->top;
}

bool FactorPoset::leq(NodeId u, NodeId v) const noexcept { return dual_ ? s_->up[v].test(u) : s_->up[u].test(v); }

std::span<const NodeId> FactorPoset::predecessors(NodeId v) const noexcept {
  return dual_ ? std::span<const NodeId>(s_->succs[v]) : std::span<const NodeId>(s_->preds[v]);
}

std::span<const NodeId> FactorPoset::successors(NodeId v) const noexcept {
  return dual_ ? std::span<const NodeId>(s_->preds[v]) : std::span<const NodeId>(s_->succs[v]);
}

const Bitset& FactorPoset::up_set(NodeId v) const noexcept { return dual_ ? s_->down[v] : s_->up[v]; }
const Bitset& FactorPoset::down_set(NodeId v) const noexcept { return dual_ ? s_->up[v] : s_->down[v]; }

unsigned FactorPoset::level(NodeId v) const noexcept { return dual_ ? s_->height[v] : s_->depth[v]; }
unsigned FactorPoset::max_level() const noexcept { return dual_ ? s_->max_height : s_->max_depth; }

std::optional<NodeId> FactorPoset::parent(NodeId v) const noexcept {
  if (dual_) {
    auto p = predecessors(v);
    if (p.size() == 1) return p[0];
    return std::nullopt;
  }
  if (s_->parent.empty()) return std::nullopt;
  return s_->parent[v];
}

std::optional<NodeId> FactorPoset::meet(NodeId u, NodeId v) const {
  check(u);
  check(v);
  Bitset common = down_set(u);
  common &= down_set(v);
  std::optional<NodeId> result;
  common.for_each([&](std::size_t w) {
    if (!result && common.is_subset_of(down_set(static_cast<NodeId>(w)))) result = static_cast<NodeId>(w);
  });
  return result;
}

std::optional<NodeId> FactorPoset::join(NodeId u, NodeId v) const {
  check(u);
  check(v);
  Bitset common = up_set(u);
  common &= up_set(v);
  std::optional<NodeId> result;
  common.for_each([&](std::size_t w) {
    if (!result && common.is_subset_of(up_set(static_cast<NodeId>(w)))) result = static_cast<NodeId>(w);
  });
  return result;
}

FactorPoset FactorPoset::dual() const {
  const bool has_max = dual_ ? true : s_->top.has_value();
  if (!has_max) throw NotDualizable(std::string("factor of kind ") + to_string(s_->kind) + " has no unique maximum");
  return FactorPoset(s_, !dual_);
}

// ---------------------------------------------------------------------------

ElementVector ProductPoset::bottom() const {
  ElementVector b;
  b.coords.reserve(factors_.size());
  for (const auto& f : factors_) b.coords.push_back(f.bottom());
  return b;
}

void ProductPoset::check(const ElementVector& x) const {
  if (x.size() != factors_.size())
    throw InvalidElement("element has " + std::to_string(x.size()) + " coordinates, product has " +
                         std::to_string(factors_.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!factors_[i].contains(x[i]))
      throw InvalidElement("coordinate " + std::to_string(i) + " = " + std::to_string(x[i]) +
                           " is not an element of its factor");
  }
}

bool ProductPoset::leq(const ElementVector& p, const ElementVector& q) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (!factors_[i].leq(p[i], q[i])) return false;
  return true;
}

std::vector<ElementVector> ProductPoset::immediate_predecessors(const ElementVector& x) const {
  std::vector<ElementVector> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (NodeId y : factors_[i].predecessors(x[i])) {
      ElementVector z = x;
      z[i] = y;
      out.push_back(std::move(z));
    }
  }
  return out;
}

std::vector<ElementVector> ProductPoset::immediate_successors(const ElementVector& x) const {
  std::vector<ElementVector> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (NodeId y : factors_[i].successors(x[i])) {
      ElementVector z = x;
      z[i] = y;
      out.push_back(std::move(z));
    }
  }
  return out;
}

unsigned ProductPoset::level(const ElementVector& x) const {
  unsigned d = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) d += factors_[i].level(x[i]);
  return d;
}

std::optional<ElementVector> ProductPoset::meet(const ElementVector& x, const ElementVector& y) const {
  ElementVector m = x;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    auto mi = factors_[i].meet(x[i], y[i]);
    if (!mi) return std::nullopt;
    m[i] = *mi;
  }
  return m;
}

ProductPoset ProductPoset::dual_view() const {
  std::vector<FactorPoset> d;
  d.reserve(factors_.size());
  for (const auto& f : factors_) d.push_back(f.dual());
  return ProductPoset(std::move(d));
}

bool ProductPoset::all_trees() const noexcept {
  return std::all_of(factors_.begin(), factors_.end(), [](const FactorPoset& f) { return f.is_tree(); });
}

std::uint64_t ProductPoset::size(std::uint64_t cap) const noexcept {
  std::uint64_t total = 1;
  for (const auto& f : factors_) {
    const std::uint64_t s = f.size();
    if (s != 0 && total > cap / s) return cap;
    total *= s;
  }
  return std::min(total, cap);
}

void ProductPoset::for_each_element(const std::function<void(const ElementVector&)>& visit) const {
  const std::size_t n = factors_.size();
  ElementVector x(std::vector<NodeId>(n, 0));
  for (const auto& f : factors_)
    if (f.size() == 0) return;
  while (true) {
    visit(x);
    std::size_t i = n;
    for (;;) {
      if (i == 0) return;
      --i;
      if (x[i] + 1 < factors_[i].size()) {
        ++x[i];
        break;
      }
      x[i] = 0;
    }
  }
}

std::vector<std::string> ProductPoset::labels(const ElementVector& x) const {
  std::vector<std::string> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(factors_[i].label(x[i]));
  return out;
}

}  // namespace pmine
