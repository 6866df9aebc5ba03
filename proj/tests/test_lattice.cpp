#include <algorithm>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "infodec/lattice.hpp"

using namespace infodec;

namespace {

// Independent ordering oracle via the monotone-function view: an antichain a
// sits below b exactly when a's induced indicator ("some block fits inside T")
// dominates b's over every ground subset T.
bool leq_oracle(const Antichain& a, const Antichain& b) {
  auto hits = [](const Antichain& c, Block t) {
    for (Block bl : c.blocks)
      if (block_subset(bl, t)) return true;
    return false;
  };
  for (Block t = 1; t < (1 << a.ground); ++t)
    if (hits(b, t) && !hits(a, t)) return false;
  return true;
}

}  // namespace

TEST_CASE("antichain construction canonicalizes and validates") {
  Antichain a = Antichain::make(3, {Block(0b110), Block(0b001)});
  CHECK(a.label() == "1|23");
  CHECK(Antichain::make(3, {Block(0b011), Block(0b101), Block(0b110)}).label() ==
        "12|13|23");
  CHECK_THROWS_AS(Antichain::make(3, {}), argument_error);
  CHECK_THROWS_AS(Antichain::make(3, {Block(0)}), argument_error);
  CHECK_THROWS_AS(Antichain::make(3, {Block(0b1000)}), argument_error);  // off-ground
  CHECK_THROWS_AS(Antichain::make(3, {Block(0b001), Block(0b011)}), argument_error);
  CHECK_THROWS_AS(Antichain::make(3, {Block(0b001), Block(0b001)}), argument_error);
}

TEST_CASE("antichain parse inverts label") {
  for (const char* text : {"123", "1|23", "12|13|23", "1|2|3", "3|12"}) {
    Antichain a = Antichain::parse(3, text);
    CHECK(a.label() == text);
  }
  CHECK_THROWS_AS(Antichain::parse(3, ""), argument_error);
  CHECK_THROWS_AS(Antichain::parse(3, "14"), argument_error);
  CHECK_THROWS_AS(Antichain::parse(3, "1|12"), argument_error);
  CHECK_THROWS_AS(Antichain::parse(3, "x"), argument_error);
}

TEST_CASE("ordering matches the quantifier definition and the oracle") {
  PILattice lat = PILattice::build(3);
  for (int i = 0; i < lat.size(); ++i)
    for (int j = 0; j < lat.size(); ++j) {
      bool expect = leq_oracle(lat.node(i), lat.node(j));
      CHECK(lat.leq(i, j) == expect);
      CHECK(leq(lat.node(i), lat.node(j)) == expect);
    }
  CHECK_THROWS_AS(leq(Antichain::make(2, {Block(1)}), Antichain::make(3, {Block(1)})),
                  argument_error);
}

TEST_CASE("lattice sizes match the free distributive lattice") {
  CHECK(PILattice::build(1).size() == 1);
  CHECK(PILattice::build(2).size() == 4);
  CHECK(PILattice::build(3).size() == 18);
  CHECK(PILattice::build(4).size() == 166);
  CHECK_THROWS_AS(PILattice::build(5), capacity_error);
  CHECK_THROWS_AS(PILattice::build(0), argument_error);
}

TEST_CASE("both enumeration strategies agree where both run") {
  for (int n = 1; n <= 3; ++n) {
    auto filt = PILattice::enumerate_by_filter(n);
    auto down = PILattice::enumerate_by_downsets(n);
    std::set<Antichain> fs(filt.begin(), filt.end());
    std::set<Antichain> ds(down.begin(), down.end());
    CHECK(fs == ds);
    CHECK(fs.size() == static_cast<std::size_t>(kAntichainCount[n - 1]));
  }
  CHECK(PILattice::enumerate_by_downsets(4).size() == 166);
}

TEST_CASE("top, bottom, layers and node order") {
  PILattice lat = PILattice::build(3);
  CHECK(lat.label(lat.top()) == "123");
  CHECK(lat.label(lat.bottom()) == "1|2|3");
  CHECK(lat.layer(lat.top()) == 0);
  CHECK(lat.layer(lat.bottom()) == lat.layer_count() - 1);
  CHECK(lat.layer_count() == 7);
  // Everything is below the top and above the bottom.
  for (int i = 0; i < lat.size(); ++i) {
    CHECK(lat.leq(i, lat.top()));
    CHECK(lat.leq(lat.bottom(), i));
    CHECK(lat.index_of(lat.node(i)) == i);
  }
  // Strictly comparable nodes sit on strictly ordered layers.
  for (int i = 0; i < lat.size(); ++i)
    for (int j = 0; j < lat.size(); ++j)
      if (i != j && lat.leq(i, j)) CHECK(lat.layer(i) > lat.layer(j));
}

TEST_CASE("downsets and covers are consistent with the order") {
  PILattice lat = PILattice::build(3);
  for (int i = 0; i < lat.size(); ++i) {
    for (int below : lat.strict_downset(i)) {
      CHECK(below != i);
      CHECK(lat.leq(below, i));
    }
    for (int c : lat.covers_below(i)) {
      CHECK(lat.leq(c, i));
      // Nothing strictly between a node and its cover.
      for (int mid = 0; mid < lat.size(); ++mid)
        if (mid != c && mid != i)
          CHECK_FALSE((lat.leq(c, mid) && lat.leq(mid, i)));
    }
  }
  // Covers are exactly the transitive reduction of the order.
  for (int i = 0; i < lat.size(); ++i) {
    std::set<int> expected;
    for (int a = 0; a < lat.size(); ++a) {
      if (a == i || !lat.leq(a, i)) continue;
      bool direct = true;
      for (int mid = 0; mid < lat.size() && direct; ++mid)
        if (mid != a && mid != i && lat.leq(a, mid) && lat.leq(mid, i)) direct = false;
      if (direct) expected.insert(a);
    }
    std::set<int> got(lat.covers_below(i).begin(), lat.covers_below(i).end());
    CHECK(got == expected);
  }
}

TEST_CASE("index lookup rejects foreign nodes") {
  PILattice lat = PILattice::build(2);
  CHECK_THROWS_AS(lat.index_of(Antichain::make(3, {Block(0b111)})), argument_error);
}
