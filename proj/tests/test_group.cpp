#include <doctest.h>

#include <numeric>
#include <random>

#include "fdk/group.hpp"
#include "oracles.hpp"

using namespace fdk;

TEST_CASE("index order is lexicographic order on residues") {
  FiniteAbelianGroup g({2, 3, 4});
  CHECK(g.size() == 24);
  CHECK(g.exponent() == 12);
  const oracle::Group og({2, 3, 4});
  for (Index i = 0; i < g.size(); ++i) {
    CHECK(g.residues_of(i) == og.elems[static_cast<std::size_t>(i)]);
    CHECK(g.index_of(g.residues_of(i)) == i);
  }
}

TEST_CASE("arithmetic agrees with componentwise residues") {
  for (const auto& orders : oracle::small_groups()) {
    FiniteAbelianGroup g(orders);
    const oracle::Group og(orders);
    for (Index a = 0; a < g.size(); ++a) {
      CHECK(g.add(a, g.neg(a)) == 0);
      for (Index b = 0; b < g.size(); ++b) {
        REQUIRE(g.add(a, b) == og.add(a, b));
        REQUIRE(g.sub(a, b) == og.sub(a, b));
        REQUIRE(g.pairing_exponent(a, b) == og.pair_exp(a, b));
      }
    }
  }
}

TEST_CASE("pairing is symmetric, bilinear and nondegenerate") {
  FiniteAbelianGroup g({4, 6});
  const auto l = g.exponent();
  for (Index x = 0; x < g.size(); ++x) {
    bool trivial_everywhere = true;
    for (Index y = 0; y < g.size(); ++y) {
      CHECK(g.pairing_exponent(x, y) == g.pairing_exponent(y, x));
      if (g.pairing_exponent(x, y) != 0) trivial_everywhere = false;
      for (Index z = 0; z < g.size(); z += 5) {
        CHECK(g.pairing_exponent(g.add(x, z), y) == (g.pairing_exponent(x, y) + g.pairing_exponent(z, y)) % l);
      }
    }
    CHECK(trivial_everywhere == (x == 0));
  }
}

TEST_CASE("element order divides the exponent") {
  FiniteAbelianGroup g({2, 8});
  for (Index x = 0; x < g.size(); ++x) {
    const auto k = g.element_order(x);
    CHECK(g.exponent() % k == 0);
    CHECK(g.scale(x, k) == 0);
    for (std::int64_t j = 1; j < k; ++j) CHECK(g.scale(x, j) != 0);
  }
}

TEST_CASE("group elements check their group") {
  FiniteAbelianGroup a({4});
  FiniteAbelianGroup b({2, 2});
  GroupElement x(a, std::vector<std::int64_t>{1});
  GroupElement y(b, std::vector<std::int64_t>{1, 0});
  CHECK_THROWS_AS(add(x, y), std::invalid_argument);
  CHECK_THROWS_AS(pairing_exponent(x, y), std::invalid_argument);
  CHECK(GroupElement(a, std::vector<std::int64_t>{5}).residues() == std::vector<std::int64_t>{1});
  CHECK(GroupElement(a, std::vector<std::int64_t>{-1}).index() == 3);
  CHECK_THROWS_AS(GroupElement(a, std::vector<std::int64_t>{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteAbelianGroup(std::vector<std::int64_t>{}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteAbelianGroup(std::vector<std::int64_t>{0}), std::invalid_argument);
  CHECK(FiniteAbelianGroup({4, 3}).to_string() == "Z/4 x Z/3");
}

TEST_CASE("annihilator has complementary order and is an involution") {
  for (const auto& orders : oracle::small_groups()) {
    FiniteAbelianGroup g(orders);
    for (Index gen = 0; gen < g.size(); ++gen) {
      const auto h = subgroup_closure(g, {GroupElement(g, gen)});
      const auto ann = annihilator(h);
      CHECK(h.size() * ann.size() == g.size());
      CHECK(annihilator(ann) == h);
      for (auto x : h.elements()) {
        for (auto y : ann.elements()) CHECK(g.pairing_exponent(x, y) == 0);
      }
    }
  }
}

TEST_CASE("subset configurations are sets") {
  FiniteAbelianGroup g({5});
  CHECK_THROWS_AS(SubsetConfig(g, std::vector<Index>{0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SubsetConfig(g, std::vector<Index>{}), std::invalid_argument);
  CHECK_THROWS_AS(SubsetConfig(g, std::vector<Index>{7}), std::out_of_range);
  SubsetConfig s(g, std::vector<Index>{3, 0});
  CHECK(s.indices() == std::vector<Index>{0, 3});
  CHECK(s.translated(2).indices() == std::vector<Index>{0, 2});
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(1));
}

TEST_CASE("dense tables match group arithmetic") {
  FiniteAbelianGroup g({3, 6});
  GroupTables t(g);
  for (Index a = 0; a < g.size(); ++a) {
    for (Index b = 0; b < g.size(); ++b) {
      CHECK(t.add(a, b) == g.add(a, b));
      CHECK(t.sub(a, b) == g.sub(a, b));
      CHECK(t.pairing(a, b) == g.pairing_exponent(a, b));
    }
  }
  CHECK_THROWS(GroupTables(FiniteAbelianGroup({4097})));
}

TEST_CASE("closure of random generators matches brute force") {
  std::mt19937_64 rng(7);
  FiniteAbelianGroup g({2, 4, 4});
  const oracle::Group og({2, 4, 4});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Index> gens;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) gens.push_back(static_cast<Index>(rng() % static_cast<std::uint64_t>(g.size())));
    std::set<std::int64_t> span{0};
    for (bool grew = true; grew;) {
      grew = false;
      for (auto a : std::vector<std::int64_t>(span.begin(), span.end())) {
        for (auto v : gens) grew |= span.insert(og.add(a, v)).second;
      }
    }
    const auto c = closure_indices(g, gens);
    CHECK(std::vector<std::int64_t>(span.begin(), span.end()) == c);
  }
}
