#include <gtest/gtest.h>

#include <random>

#include "posetmine/enumerate.hpp"
#include "posetmine/errors.hpp"
#include "support.hpp"

using namespace pmine;
namespace ts = testing_support;

namespace {

std::set<ElementVector> as_set(const Antichain& a) { return {a.begin(), a.end()}; }

/// X+ and Y- split P: every element lies in exactly one of them.
void expect_partition(const ProductPoset& P, const Border& b) {
  for (const auto& x : ts::all_elements(P)) {
    bool up = false, down = false;
    for (const auto& a : b.minimal_infrequent) up = up || P.leq(a, x);
    for (const auto& y : b.maximal_frequent) down = down || P.leq(x, y);
    EXPECT_NE(up, down);
  }
}

}  // namespace

TEST(Enumerate, BordersMatchBruteForce) {
  std::mt19937 rng(31);
  for (int round = 0; round < 300; ++round) {
    auto P = ts::random_product(rng);
    auto db = ts::random_db(rng, P);
    const std::size_t t = rng() % (db.size() + 2);
    auto got = generate_minimal_infrequent(db, t);
    auto want = ts::brute_border(P, [&](const ElementVector& x) { return ts::scan_support(db, x); }, t);
    EXPECT_EQ(as_set(got.minimal_infrequent), want.minimal_infrequent) << "round " << round;
    EXPECT_EQ(as_set(got.maximal_frequent), want.maximal_frequent) << "round " << round;
    EXPECT_TRUE(std::is_sorted(got.minimal_infrequent.begin(), got.minimal_infrequent.end()));
    expect_partition(P, got);
  }
}

TEST(Enumerate, IntervalColumns) {
  auto db = ts::table(4);
  for (std::size_t t = 0; t <= db.size() + 1; ++t) {
    auto got = generate_minimal_infrequent(db, t);
    auto want = ts::brute_border(db.space(), [&](const ElementVector& x) { return ts::scan_support(db, x); }, t);
    EXPECT_EQ(as_set(got.minimal_infrequent), want.minimal_infrequent) << t;
    EXPECT_EQ(as_set(got.maximal_frequent), want.maximal_frequent) << t;
  }
}

TEST(Enumerate, TableOneBorder) {
  auto db = ts::table(1);
  auto b = generate_minimal_infrequent(db, 4);
  std::set<ElementVector> mi{ts::itemset(db, {"Bread", "Cheese", "Milk"}), ts::itemset(db, {"Cheese", "Milk", "Orange Juice"}),
                             ts::itemset(db, {"Cheese", "Milk", "Yogurt"}),
                             ts::itemset(db, {"Cheese", "Orange Juice", "Yogurt"})};
  // every infrequent set contains one of the four triples above
  std::set<ElementVector> got_mi = as_set(b.minimal_infrequent);
  for (const auto& x : mi) EXPECT_TRUE(got_mi.count(x));
  EXPECT_TRUE(as_set(b.maximal_frequent).count(ts::itemset(db, {"Bread", "Butter", "Cheese", "Orange Juice"})));
}

TEST(Enumerate, ExtremeThresholds) {
  auto db = ts::table(3);
  auto zero = generate_minimal_infrequent(db, 0);
  EXPECT_TRUE(zero.minimal_infrequent.empty());
  auto above = generate_minimal_infrequent(db, db.size() + 1);
  EXPECT_EQ(above.minimal_infrequent, (Antichain{db.space().bottom()}));
  EXPECT_TRUE(above.maximal_frequent.empty());
}

TEST(Enumerate, WalksStayOnTheRightSide) {
  auto db = ts::table(1);
  const auto& P = db.space();
  auto sup = [&](const ElementVector& x) { return db.support_count(x); };
  auto top = ElementVector(std::vector<NodeId>(6, 1));
  auto m = minimalize(P, top, sup, 4);
  EXPECT_LT(sup(m), 4u);
  for (const auto& p : P.immediate_predecessors(m)) EXPECT_GE(sup(p), 4u);
  auto M = maximalize(P, P.bottom(), sup, 4);
  EXPECT_GE(sup(M), 4u);
  for (const auto& s : P.immediate_successors(M)) EXPECT_LT(sup(s), 4u);
  EXPECT_THROW(minimalize(P, P.bottom(), sup, 4), PreconditionError);
  EXPECT_THROW(maximalize(P, top, sup, 4), PreconditionError);
}

TEST(Enumerate, SeedsAndCustomOracle) {
  // support = number of coordinates at bottom; infrequent once two leave it
  ProductPoset P({FactorPoset::chain({"0", "1"}), FactorPoset::chain({"0", "1"}), FactorPoset::chain({"0", "1"})});
  auto sup = [](const ElementVector& x) { return static_cast<std::size_t>(3 - (x[0] + x[1] + x[2])); };
  auto b = joint_generate(P, sup, 2, {ElementVector({1, 1, 0})});
  EXPECT_EQ(b.minimal_infrequent.size(), 3u);
  EXPECT_EQ(b.maximal_frequent.size(), 3u);
  EXPECT_THROW(joint_generate(P, sup, 2, {P.bottom()}), PreconditionError);
}

TEST(Enumerate, IterationCap) {
  auto db = ts::table(1);
  EnumerateOptions o;
  o.max_iterations = 2;
  EXPECT_THROW(generate_minimal_infrequent(db, 4, o), ResourceExceeded);
}

TEST(Enumerate, DualBoundHolds) {
  std::mt19937 rng(77);
  for (int round = 0; round < 200; ++round) {
    auto P = ts::random_product(rng);
    auto db = ts::random_db(rng, P);
    const std::size_t t = 1 + rng() % db.size();
    auto b = generate_minimal_infrequent(db, t);
    EXPECT_LE(b.maximal_frequent.size(), (db.size() - t + 1) * std::max<std::size_t>(1, b.minimal_infrequent.size()));
  }
}
