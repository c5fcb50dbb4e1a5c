#pragma once

// Random instances and brute-force oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "posetmine/dataset.hpp"
#include "posetmine/dualize.hpp"
#include "posetmine/rules.hpp"

namespace testing_support {

using namespace pmine;

inline std::string data_path(const std::string& name) { return std::string(POSETMINE_DATA_DIR) + "/" + name; }

inline TransactionDB table(int which) {
  switch (which) {
    case 1: return load_dataset(data_path("table1.csv"));
    case 2: return load_dataset(data_path("table2.csv"), data_path("table2.schema.json"));
    case 3: return load_dataset(data_path("table3.csv"), data_path("table3.schema.json"));
    default: return load_dataset(data_path("table4.csv"), data_path("table4.schema.json"));
  }
}

/// Element whose labels are given per factor.
inline ElementVector by_labels(const ProductPoset& P, const std::vector<std::string>& labels) {
  ElementVector x;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto v = P.factor(i).find(labels[i]);
    if (!v) throw std::runtime_error("no label " + labels[i]);
    x.coords.push_back(*v);
  }
  return x;
}

/// Binary element from the set of item names.
inline ElementVector itemset(const TransactionDB& db, const std::set<std::string>& items) {
  ElementVector x = db.space().bottom();
  for (const auto& a : db.attributes())
    if (items.count(a.name)) x[a.first_factor] = 1;
  return x;
}

// ---------------------------------------------------------------------------
// Random instances

inline FactorPoset random_factor(std::mt19937& rng, std::size_t max_nodes = 6) {
  std::uniform_int_distribution<std::size_t> size(2, max_nodes);
  const std::size_t n = size(rng);
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < n; ++v) labels.push_back("v" + std::to_string(v));
  switch (rng() % 3) {
    case 0: return FactorPoset::chain(labels);
    case 1: return FactorPoset::bottomed_antichain(labels[0], {labels.begin() + 1, labels.end()});
    default: {
      std::vector<std::optional<NodeId>> parent(n);
      for (NodeId v = 1; v < n; ++v) parent[v] = static_cast<NodeId>(rng() % v);
      return FactorPoset::tree(labels, parent);
    }
  }
}

inline ProductPoset random_product(std::mt19937& rng, std::size_t max_factors = 4, std::size_t max_nodes = 6) {
  std::uniform_int_distribution<std::size_t> dims(1, max_factors);
  std::vector<FactorPoset> fs;
  const std::size_t n = dims(rng);
  for (std::size_t i = 0; i < n; ++i) fs.push_back(random_factor(rng, max_nodes));
  return ProductPoset(std::move(fs));
}

inline ElementVector random_element(std::mt19937& rng, const ProductPoset& P) {
  ElementVector x;
  for (const auto& f : P.factors()) x.coords.push_back(static_cast<NodeId>(rng() % f.size()));
  return x;
}

/// Rows are biased upward so that supports spread out.
inline TransactionDB random_db(std::mt19937& rng, const ProductPoset& P, std::size_t max_rows = 20) {
  std::uniform_int_distribution<std::size_t> count(1, max_rows);
  std::vector<ElementVector> rows;
  const std::size_t m = count(rng);
  for (std::size_t r = 0; r < m; ++r) {
    ElementVector x;
    for (const auto& f : P.factors()) {
      NodeId a = static_cast<NodeId>(rng() % f.size());
      NodeId b = static_cast<NodeId>(rng() % f.size());
      x.coords.push_back(f.level(a) >= f.level(b) ? a : b);
    }
    rows.push_back(std::move(x));
  }
  return TransactionDB(P, std::move(rows));
}

inline TransactionDB random_binary_db(std::mt19937& rng, std::size_t items, std::size_t rows, double density = 0.5) {
  std::vector<FactorPoset> fs(items, FactorPoset::chain({"0", "1"}));
  std::vector<Attribute> attrs;
  for (std::size_t i = 0; i < items; ++i) {
    Attribute a;
    a.name = std::string(1, static_cast<char>('A' + i));
    a.kind = AttributeKind::binary;
    a.first_factor = i;
    attrs.push_back(a);
  }
  std::bernoulli_distribution bit(density);
  std::vector<ElementVector> data;
  for (std::size_t r = 0; r < rows; ++r) {
    ElementVector x;
    for (std::size_t i = 0; i < items; ++i) x.coords.push_back(bit(rng) ? 1 : 0);
    data.push_back(std::move(x));
  }
  return TransactionDB(ProductPoset(std::move(fs)), std::move(data), std::move(attrs));
}

// ---------------------------------------------------------------------------
// Oracles: plain scans, independent of the library's algorithms.

inline std::vector<ElementVector> all_elements(const ProductPoset& P) {
  std::vector<ElementVector> out;
  P.for_each_element([&](const ElementVector& x) { out.push_back(x); });
  return out;
}

inline std::size_t scan_support(const TransactionDB& db, const ElementVector& x) {
  std::size_t c = 0;
  for (const auto& r : db.rows()) c += db.space().leq(x, r);
  return c;
}

inline std::set<ElementVector> brute_frequent(const TransactionDB& db, std::size_t t) {
  std::set<ElementVector> out;
  for (const auto& x : all_elements(db.space()))
    if (scan_support(db, x) >= t) out.insert(x);
  return out;
}

struct BruteBorder {
  std::set<ElementVector> minimal_infrequent;
  std::set<ElementVector> maximal_frequent;
};

inline BruteBorder brute_border(const ProductPoset& P, const std::function<std::size_t(const ElementVector&)>& sup,
                                std::size_t t) {
  BruteBorder b;
  const auto xs = all_elements(P);
  for (const auto& x : xs) {
    const bool freq = sup(x) >= t;
    if (!freq) {
      bool minimal = true;
      for (const auto& y : xs)
        if (y != x && P.leq(y, x) && sup(y) < t) minimal = false;
      if (minimal) b.minimal_infrequent.insert(x);
    } else {
      bool maximal = true;
      for (const auto& y : xs)
        if (y != x && P.leq(x, y) && sup(y) >= t) maximal = false;
      if (maximal) b.maximal_frequent.insert(x);
    }
  }
  return b;
}

/// Verdict of a full scan: nullopt when every element is covered.
inline std::optional<ElementVector> brute_uncovered(const ProductPoset& P, const Antichain& A, const Antichain& B) {
  for (const auto& x : all_elements(P)) {
    bool covered = false;
    for (const auto& a : A) covered = covered || P.leq(a, x);
    for (const auto& b : B) covered = covered || P.leq(x, b);
    if (!covered) return x;
  }
  return std::nullopt;
}

/// Random partially dual pair: A an antichain, B elements above no a.
inline std::pair<Antichain, Antichain> random_pair(std::mt19937& rng, const ProductPoset& P) {
  Antichain A;
  const std::size_t na = rng() % 7;
  for (std::size_t k = 0; k < na; ++k) A.push_back(random_element(rng, P));
  A = min_antichain(P, A);
  Antichain B;
  const std::size_t nb = rng() % 9;
  for (std::size_t k = 0; k < nb * 3 && B.size() < nb; ++k) {
    ElementVector b = random_element(rng, P);
    bool ok = true;
    for (const auto& a : A) ok = ok && !P.leq(a, b);
    if (ok) B.push_back(b);
  }
  B = max_antichain(P, B);
  return {A, B};
}

// ---------------------------------------------------------------------------
// Rules oracle: pairs (x, z) with z in the family, x a minimal element of z's
// sub-cube with support < t'(z), reported at the largest such z.

inline bool in_cube(const ProductPoset& P, const ElementVector& x, const ElementVector& z) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != z[i] && x[i] != P.factor(i).bottom()) return false;
  return true;
}

inline bool minimal_in_cube(const TransactionDB& db, const ElementVector& x, const ElementVector& z, std::size_t tz) {
  const auto& P = db.space();
  if (!in_cube(P, x, z) || scan_support(db, x) >= tz) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == P.factor(i).bottom()) continue;
    ElementVector y = x;
    y[i] = P.factor(i).bottom();
    if (scan_support(db, y) < tz) return false;
  }
  return true;
}

inline std::set<std::pair<ElementVector, ElementVector>> brute_rules(const TransactionDB& db,
                                                                     const std::set<ElementVector>& family, double c) {
  const auto& P = db.space();
  std::map<ElementVector, std::size_t> tz;
  for (const auto& z : family) tz[z] = confidence_threshold(scan_support(db, z), c);
  std::set<std::pair<ElementVector, ElementVector>> out;
  for (const auto& z : family) {
    for (const auto& x : all_elements(P)) {
      if (!minimal_in_cube(db, x, z, tz[z])) continue;
      bool larger = false;
      for (const auto& z2 : family)
        if (z2 != z && P.leq(z, z2) && minimal_in_cube(db, x, z2, tz[z2])) larger = true;
      if (!larger) out.insert({x, z});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// k-box oracle over every grid box.

inline std::set<std::pair<Point, Point>> brute_kboxes(const std::vector<Point>& pts, std::size_t k,
                                                      const BoundingBox& box) {
  const std::size_t n = pts.front().size();
  std::vector<std::vector<std::int64_t>> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = {box.lower[i], box.upper[i]};
    for (const auto& p : pts) grid[i].push_back(p[i]);
    std::sort(grid[i].begin(), grid[i].end());
    grid[i].erase(std::unique(grid[i].begin(), grid[i].end()), grid[i].end());
  }
  std::set<std::pair<Point, Point>> out;
  std::vector<std::size_t> lo(n, 0), hi(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      Point a(n), b(n);
      for (std::size_t d = 0; d < n; ++d) a[d] = grid[d][lo[d]], b[d] = grid[d][hi[d]];
      if (interior_count(pts, a, b) > k) return;
      for (std::size_t d = 0; d < n; ++d) {
        if (lo[d] > 0) {
          Point a2 = a;
          a2[d] = grid[d][lo[d] - 1];
          if (interior_count(pts, a2, b) <= k) return;
        }
        if (hi[d] + 1 < grid[d].size()) {
          Point b2 = b;
          b2[d] = grid[d][hi[d] + 1];
          if (interior_count(pts, a, b2) <= k) return;
        }
      }
      out.insert({a, b});
      return;
    }
    for (lo[i] = 0; lo[i] < grid[i].size(); ++lo[i])
      for (hi[i] = lo[i]; hi[i] < grid[i].size(); ++hi[i]) rec(i + 1);
  };
  rec(0);
  return out;
}

}  // namespace testing_support
