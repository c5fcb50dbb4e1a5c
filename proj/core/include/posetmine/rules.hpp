#pragma once

// Irredundant association rules (binary and generalized), rare rules and
// maximal k-boxes, all built on joint generation of minimal infrequent elements.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posetmine/apriori.hpp"
#include "posetmine/dataset.hpp"
#include "posetmine/enumerate.hpp"

namespace pmine {

/// x => z with x <= z and x_i in {z_i, bottom_i}. Coordinates where x and z
/// agree (and are not the bottom) form the antecedent; the remaining non-bottom
/// coordinates of z form the consequent.
struct Rule {
  ElementVector antecedent;  // x
  ElementVector consequent;  // z
  std::size_t antecedent_support = 0;
  std::size_t consequent_support = 0;
  double support = 0;     // |S(z)| / |D|
  double confidence = 0;  // |S(z)| / |S(x)|

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.antecedent == b.antecedent && a.consequent == b.consequent;
  }
};

struct RuleOptions {
  AprioriOptions apriori;
  EnumerateOptions enumerate;
};

/// Smallest support count t' with "support < t'" equivalent to support <= s_z / c.
std::size_t confidence_threshold(std::size_t consequent_support, double c);

/// Irredundant rules of a binary database. Throws PreconditionError for non-binary data.
std::vector<Rule> gen_rules(const TransactionDB& db, double c, double s, const RuleOptions& opts = {});

/// Irredundant rules over any supported poset product.
std::vector<Rule> gen_generalized_rules(const TransactionDB& db, double c, double s, const RuleOptions& opts = {});

/// Rules x => z where z ranges over `family` (sorted by level, any element order)
/// and x over the minimal elements of the sub-cube of z with support <= |S(z)|/c,
/// each pair reported at the largest z of the family that still produces it.
std::vector<Rule> irredundant_rules(const TransactionDB& db, const std::vector<LevelElement>& family, double c,
                                    const RuleOptions& opts = {});

/// True when r2 follows from r1: r2's antecedent lies above r1's and r2's
/// consequent below r1's, so support and confidence carry over.
bool check_rule_implication(const ProductPoset& P, const Rule& r1, const Rule& r2);

struct RareRuleConfig {
  double s1 = 0;
  double s2 = 0;
  double c = 0;

  /// Throws ConfigError unless 0 < s1 < s2 < 1 and 0 < c <= 1.
  void validate() const;
};

/// Sets with s1|D| <= support <= s2|D|, found from the minimal rare sets
/// outward; sorted by level then lexicographically.
std::vector<LevelElement> rare_itemsets(const TransactionDB& db, const RareRuleConfig& cfg,
                                        const RuleOptions& opts = {});

/// Confident rules whose consequent set is one of the rare itemsets.
std::vector<Rule> gen_rare_rules(const TransactionDB& db, const RareRuleConfig& cfg, const RuleOptions& opts = {});

/// Antecedent and consequent terms, one per attribute, e.g. "Age: 34..38", "Married: Yes", "¬Milk".
std::vector<std::string> antecedent_terms(const TransactionDB& db, const Rule& r);
std::vector<std::string> consequent_terms(const TransactionDB& db, const Rule& r);
/// "⟨Age: 34..38⟩ ⇒ ⟨Married: Yes⟩ and ⟨NumCars: 2⟩"
std::string render_rule(const TransactionDB& db, const Rule& r);

/// Canonical order: consequent level, consequent, antecedent.
void sort_rules(const ProductPoset& P, std::vector<Rule>& rules);

// ---------------------------------------------------------------------------

using Point = std::vector<std::int64_t>;

struct BoundingBox {
  Point lower;
  Point upper;
};

struct KBox {
  Point lower;
  Point upper;
  std::size_t interior_count = 0;

  friend auto operator<=>(const KBox&, const KBox&) = default;
};

/// Coordinate-wise min/max of the points padded by `pad` units.
BoundingBox default_bounding_box(const std::vector<Point>& points, std::int64_t pad = 1);

/// Points strictly inside the open box (lower, upper).
std::size_t interior_count(const std::vector<Point>& points, const Point& lower, const Point& upper);

/// Maximal boxes on the grid of point coordinates and box faces whose open
/// interior holds at most k points. Sorted.
std::vector<KBox> gen_maximal_kboxes(const std::vector<Point>& points, std::size_t k,
                                     const std::optional<BoundingBox>& box = std::nullopt,
                                     const EnumerateOptions& opts = {});

}  // namespace pmine
