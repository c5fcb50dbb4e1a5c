#include "posetmine/rules.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "posetmine/errors.hpp"

namespace pmine {

namespace {

using ElementSet = std::unordered_set<ElementVector, ElementHash>;
using BorderMap = std::unordered_map<ElementVector, Antichain, ElementHash>;

void check_fraction(double v, const char* name, bool allow_zero) {
  if (!std::isfinite(v) || v > 1.0 || v < 0.0 || (!allow_zero && v == 0.0))
    throw ConfigError(std::string(name) + " must lie in " + (allow_zero ? "[0,1]" : "(0,1]"));
}

bool is_binary(const ProductPoset& P) {
  for (const auto& f : P.factors())
    if (f.size() != 2 || f.kind() != PosetKind::chain || f.is_dual()) return false;
  return true;
}

bool is_graded(const ProductPoset& P) {
  for (const auto& f : P.factors())
    for (NodeId v = 0; v < f.size(); ++v)
      for (NodeId w : f.successors(v))
        if (f.level(w) != f.level(v) + 1) return false;
  return true;
}

void require_rows(const TransactionDB& db) {
  if (db.size() == 0) throw PreconditionError("database has no rows");
}

}  // namespace

std::size_t confidence_threshold(std::size_t consequent_support, double c) {
  check_fraction(c, "confidence", false);
  return static_cast<std::size_t>(std::floor(static_cast<double>(consequent_support) / c + 1e-9)) + 1;
}

std::vector<Rule> irredundant_rules(const TransactionDB& db, const std::vector<LevelElement>& family, double c,
                                    const RuleOptions& opts) {
  check_fraction(c, "confidence", false);
  const ProductPoset& P = db.space();
  const std::size_t n = P.dimension();
  const ElementVector bottom = P.bottom();
  const FactorPoset bit = FactorPoset::chain({"0", "1"});
  // In a graded product every immediate successor sits exactly one level up,
  // so only the previous level's borders need to be kept.
  const bool graded = is_graded(P);

  std::map<unsigned, std::vector<const LevelElement*>, std::greater<>> by_level;
  for (const auto& e : family) by_level[e.level].push_back(&e);

  std::vector<Rule> out;
  BorderMap upper;
  for (const auto& [level, zs] : by_level) {
    BorderMap current;
    for (const LevelElement* ze : zs) {
      const ElementVector& z = ze->element;
      std::vector<std::size_t> active;
      for (std::size_t i = 0; i < n; ++i)
        if (z[i] != bottom[i]) active.push_back(i);
      const ProductPoset cube(std::vector<FactorPoset>(active.size(), bit));
      auto to_full = [&](const ElementVector& b) {
        ElementVector x = bottom;
        for (std::size_t k = 0; k < active.size(); ++k)
          if (b[k]) x[active[k]] = z[active[k]];
        return x;
      };
      auto to_cube = [&](const ElementVector& x) {
        ElementVector b;
        for (std::size_t i : active) b.coords.push_back(x[i] == z[i] ? 1 : 0);
        return b;
      };
      const SupportOracle support = [&](const ElementVector& b) { return db.support_count(to_full(b)); };
      const std::size_t tz = confidence_threshold(ze->support, c);

      // Minimal sets of the covering elements stay infrequent here; lower them to seeds.
      ElementSet inherited;
      Antichain seeds;
      for (const auto& z2 : P.immediate_successors(z)) {
        auto it = upper.find(z2);
        if (it == upper.end()) continue;
        for (const auto& x : it->second) {
          inherited.insert(x);
          if (P.leq(x, z)) seeds.push_back(minimalize(cube, to_cube(x), support, tz));
        }
      }
      const Border border = joint_generate(cube, support, tz, std::move(seeds), opts.enumerate, db.size());

      Antichain mapped;
      for (const auto& b : border.minimal_infrequent) {
        ElementVector x = to_full(b);
        if (!inherited.count(x)) {
          Rule r;
          r.antecedent = x;
          r.consequent = z;
          r.antecedent_support = db.support_count(x);
          r.consequent_support = ze->support;
          r.support = static_cast<double>(ze->support) / static_cast<double>(db.size());
          r.confidence = r.antecedent_support
                             ? static_cast<double>(ze->support) / static_cast<double>(r.antecedent_support)
                             : 0.0;
          out.push_back(std::move(r));
        }
        mapped.push_back(std::move(x));
      }
      current.emplace(z, std::move(mapped));
    }
    if (graded) upper = std::move(current);
    else upper.merge(current);
  }
  sort_rules(P, out);
  return out;
}

std::vector<Rule> gen_generalized_rules(const TransactionDB& db, double c, double s, const RuleOptions& opts) {
  check_fraction(c, "confidence", false);
  check_fraction(s, "support", false);
  require_rows(db);
  const auto family = apriori_frequent(db, absolute_threshold(s, db.size()), opts.apriori);
  return irredundant_rules(db, family, c, opts);
}

std::vector<Rule> gen_rules(const TransactionDB& db, double c, double s, const RuleOptions& opts) {
  if (!is_binary(db.space())) throw PreconditionError("binary rules need a 0/1 database");
  return gen_generalized_rules(db, c, s, opts);
}

bool check_rule_implication(const ProductPoset& P, const Rule& r1, const Rule& r2) {
  return P.leq(r1.antecedent, r2.antecedent) && P.leq(r2.consequent, r1.consequent);
}

void RareRuleConfig::validate() const {
  if (!std::isfinite(s1) || !std::isfinite(s2) || !std::isfinite(c)) throw ConfigError("thresholds must be finite");
  if (!(s1 > 0 && s1 < s2 && s2 < 1)) throw ConfigError("rare thresholds need 0 < s1 < s2 < 1");
  check_fraction(c, "confidence", false);
}

std::vector<LevelElement> rare_itemsets(const TransactionDB& db, const RareRuleConfig& cfg, const RuleOptions& opts) {
  cfg.validate();
  require_rows(db);
  const ProductPoset& P = db.space();
  if (!is_binary(P)) throw PreconditionError("rare rules need a 0/1 database");
  const double rows = static_cast<double>(db.size());
  const auto upper_t = static_cast<std::size_t>(std::floor(cfg.s2 * rows + 1e-9)) + 1;
  const std::size_t lower_t = absolute_threshold(cfg.s1, db.size());

  // Stage 1: minimal sets with support <= s2|D|.
  const Border border = generate_minimal_infrequent(db, upper_t, opts.enumerate);

  // Stage 2: supersets of each with support >= s1|D|, via the rows containing it.
  std::map<ElementVector, std::size_t> found;
  for (const auto& x : border.minimal_infrequent) {
    const TransactionDB sub = db.subset(db.support_mask(x));
    apriori_frequent(
        sub, lower_t,
        [&](const LevelElement& e) {
          ElementVector y = e.element;
          for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::max(y[i], x[i]);
          found.emplace(std::move(y), e.support);
        },
        opts.apriori);
  }

  std::vector<LevelElement> out;
  for (auto& [y, sup] : found) {
    const double v = static_cast<double>(sup);
    if (v + 1e-9 < cfg.s1 * rows || v > cfg.s2 * rows + 1e-9)
      throw InternalError("rare itemset support outside [s1|D|, s2|D|]");
    out.push_back({y, P.level(y), sup});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.level < b.level; });
  return out;
}

std::vector<Rule> gen_rare_rules(const TransactionDB& db, const RareRuleConfig& cfg, const RuleOptions& opts) {
  const auto family = rare_itemsets(db, cfg, opts);
  return irredundant_rules(db, family, cfg.c, opts);
}

// ---------------------------------------------------------------------------

namespace {

std::string attribute_term(const TransactionDB& db, const Attribute& a, const ElementVector& x) {
  const auto& f = db.space().factor(a.first_factor);
  const NodeId v = x[a.first_factor];
  switch (a.kind) {
    case AttributeKind::binary: return a.name;
    case AttributeKind::signed_item: return (f.label(v) == "-" ? "¬" : "") + a.name;
    case AttributeKind::taxonomy: return f.label(v);
    case AttributeKind::quantitative: {
      const auto& q = *a.quantitative;
      const auto iv = q.decode(v, x[a.first_factor + 1]);
      if (!iv) return a.name + ": none";
      if (iv->is_point()) return a.name + ": " + q.scale().format(iv->lo);
      return a.name + ": " + q.scale().format(iv->lo) + ".." + q.scale().format(iv->hi);
    }
    default: return a.name + ": " + f.label(v);
  }
}

bool at_bottom(const ProductPoset& P, const Attribute& a, const ElementVector& x) {
  for (std::size_t i = a.first_factor; i < a.first_factor + a.factor_count; ++i)
    if (x[i] != P.factor(i).bottom()) return false;
  return true;
}

bool same(const Attribute& a, const ElementVector& x, const ElementVector& z) {
  for (std::size_t i = a.first_factor; i < a.first_factor + a.factor_count; ++i)
    if (x[i] != z[i]) return false;
  return true;
}

std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "∅";
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) out += (k ? " and ⟨" : "⟨") + terms[k] + "⟩";
  return out;
}

}  // namespace

std::vector<std::string> antecedent_terms(const TransactionDB& db, const Rule& r) {
  std::vector<std::string> out;
  for (const auto& a : db.attributes())
    if (!at_bottom(db.space(), a, r.antecedent)) out.push_back(attribute_term(db, a, r.antecedent));
  return out;
}

std::vector<std::string> consequent_terms(const TransactionDB& db, const Rule& r) {
  std::vector<std::string> out;
  for (const auto& a : db.attributes())
    if (!same(a, r.antecedent, r.consequent)) out.push_back(attribute_term(db, a, r.consequent));
  return out;
}

std::string render_rule(const TransactionDB& db, const Rule& r) {
  return join_terms(antecedent_terms(db, r)) + " ⇒ " + join_terms(consequent_terms(db, r));
}

void sort_rules(const ProductPoset& P, std::vector<Rule>& rules) {
  std::vector<std::pair<unsigned, std::size_t>> key(rules.size());
  for (std::size_t k = 0; k < rules.size(); ++k) key[k] = {P.level(rules[k].consequent), k};
  std::sort(key.begin(), key.end(), [&](const auto& a, const auto& b) {
    const Rule& ra = rules[a.second];
    const Rule& rb = rules[b.second];
    if (a.first != b.first) return a.first < b.first;
    if (ra.consequent != rb.consequent) return ra.consequent < rb.consequent;
    return ra.antecedent < rb.antecedent;
  });
  std::vector<Rule> sorted;
  sorted.reserve(rules.size());
  for (const auto& k : key) sorted.push_back(std::move(rules[k.second]));
  rules = std::move(sorted);
}

// ---------------------------------------------------------------------------

BoundingBox default_bounding_box(const std::vector<Point>& points, std::int64_t pad) {
  if (points.empty()) throw PreconditionError("point set is empty");
  BoundingBox box{points.front(), points.front()};
  for (const auto& p : points)
    for (std::size_t i = 0; i < p.size(); ++i) {
      box.lower[i] = std::min(box.lower[i], p[i]);
      box.upper[i] = std::max(box.upper[i], p[i]);
    }
  for (auto& v : box.lower) v -= pad;
  for (auto& v : box.upper) v += pad;
  return box;
}

std::size_t interior_count(const std::vector<Point>& points, const Point& lower, const Point& upper) {
  std::size_t c = 0;
  for (const auto& p : points) {
    bool inside = true;
    for (std::size_t i = 0; i < p.size() && inside; ++i) inside = lower[i] < p[i] && p[i] < upper[i];
    c += inside;
  }
  return c;
}

std::vector<KBox> gen_maximal_kboxes(const std::vector<Point>& points, std::size_t k,
                                     const std::optional<BoundingBox>& given, const EnumerateOptions& opts) {
  if (points.empty()) throw PreconditionError("point set is empty");
  const std::size_t n = points.front().size();
  if (n == 0) throw PreconditionError("points need at least one coordinate");
  for (const auto& p : points)
    if (p.size() != n) throw PreconditionError("points have different dimensions");
  if (k >= points.size())
    throw ConfigError("trivial instance: k >= number of points, the whole bounding box qualifies");
  const BoundingBox box = given ? *given : default_bounding_box(points);
  if (box.lower.size() != n || box.upper.size() != n) throw PreconditionError("bounding box has wrong dimension");
  for (const auto& p : points)
    for (std::size_t i = 0; i < n; ++i)
      if (!(box.lower[i] < p[i] && p[i] < box.upper[i]))
        throw PreconditionError("bounding box must contain every point in its interior");

  // Grid per axis; the first n factors hold the lower corner a, the next n the
  // upper corner b through the reversed chain u - b.
  std::vector<std::vector<std::int64_t>> grid(n);
  std::vector<FactorPoset> factors;
  for (std::size_t i = 0; i < n; ++i) {
    auto& g = grid[i];
    g = {box.lower[i], box.upper[i]};
    for (const auto& p : points) g.push_back(p[i]);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    std::vector<std::string> labels;
    for (auto v : g) labels.push_back(std::to_string(v));
    factors.push_back(FactorPoset::chain(labels));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> labels;
    for (auto it = grid[i].rbegin(); it != grid[i].rend(); ++it) labels.push_back(std::to_string(*it));
    factors.push_back(FactorPoset::chain(labels));
  }
  auto index = [&](std::size_t i, std::int64_t v) {
    return static_cast<NodeId>(std::lower_bound(grid[i].begin(), grid[i].end(), v) - grid[i].begin());
  };
  std::vector<ElementVector> rows;
  for (const auto& p : points) {
    ElementVector r;
    r.coords.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = index(i, p[i]);
      r[n + i] = static_cast<NodeId>(grid[i].size() - 1) - r[i];
    }
    rows.push_back(std::move(r));
  }
  const TransactionDB db(ProductPoset(std::move(factors)), std::move(rows));
  const Border border = joint_generate(
      db.space(), [&db](const ElementVector& x) { return db.interior_support(x); }, k + 1, {}, opts, db.size());

  std::vector<KBox> out;
  for (const auto& x : border.minimal_infrequent) {
    KBox b;
    bool proper = true;
    for (std::size_t i = 0; i < n; ++i) {
      b.lower.push_back(grid[i][x[i]]);
      b.upper.push_back(grid[i][grid[i].size() - 1 - x[n + i]]);
      proper = proper && b.lower[i] <= b.upper[i];
    }
    if (!proper) continue;  // encodes no box
    b.interior_count = interior_count(points, b.lower, b.upper);
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pmine
