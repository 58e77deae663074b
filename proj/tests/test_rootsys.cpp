#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "weylred/rootsys.hpp"

using namespace weylred;
using namespace weylred::rootsys;

namespace {

// Independent order oracle: orbit of a regular dominant vector under the
// numbers game on weight coordinates. Shares no state with the matrix BFS.
long long weyl_order_oracle(const RootSystem& rs) {
  int n = rs.rank();
  std::set<std::vector<long long>> seen;
  std::vector<std::vector<long long>> queue;
  std::vector<long long> start(n, 1);
  seen.insert(start);
  queue.push_back(start);
  const auto& c = rs.cartan_datum().cartan;
  while (!queue.empty()) {
    auto x = queue.back();
    queue.pop_back();
    for (int j = 0; j < n; ++j) {
      std::vector<long long> y(n);
      for (int i = 0; i < n; ++i) y[i] = x[i] - x[j] * c[i][j];
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return (long long)seen.size();
}

} // namespace

TEST_CASE("build_root_system: op examples") {
  auto a1 = RootSystem::build(Series::A, 1);
  CHECK(a1.num_positive() == 1);
  CHECK(a1.roots().size() == 2);

  auto a2 = RootSystem::build(Series::A, 2);
  CHECK(a2.num_positive() == 3);

  auto g2 = RootSystem::build(Series::G, 2);
  CHECK(g2.num_positive() == 6);
  std::set<long long> lengths;
  for (int id = 0; id < g2.num_positive(); ++id)
    lengths.insert(g2.form(g2.roots()[id], g2.roots()[id]));
  CHECK(lengths == std::set<long long>{2, 6});
}

TEST_CASE("build_root_system: invalid series/rank rejected") {
  CHECK_THROWS_AS(RootSystem::build(Series::F, 5), validation_error);
  CHECK_THROWS_AS(RootSystem::build(Series::G, 3), validation_error);
  CHECK_THROWS_AS(RootSystem::build(Series::E, 5), validation_error);
  CHECK_THROWS_AS(RootSystem::build(Series::B, 1), validation_error);
  CHECK_THROWS_AS(RootSystem::build(Series::C, 1), validation_error);
  CHECK_THROWS_AS(RootSystem::build(Series::D, 2), validation_error);
  CHECK_THROWS_AS(RootSystem::build(Series::A, 0), validation_error);
  CHECK_THROWS_AS(RootSystem::build("Q", 2), validation_error);
}

TEST_CASE("root sets match the classical counts") {
  std::map<std::string, int> expected_pos = {
      {"A3", 6}, {"A4", 10}, {"B2", 4}, {"B3", 9}, {"C3", 9},
      {"D4", 12}, {"F4", 24}, {"D3", 6},
  };
  for (const auto& [name, np] : expected_pos) {
    auto rs = RootSystem::build(name.substr(0, 1), name[1] - '0');
    CHECK_MESSAGE(rs.num_positive() == np, name);
    for (const auto& r : rs.roots()) {
      bool pos = false, neg = false;
      for (int v : r) {
        pos |= v > 0;
        neg |= v < 0;
      }
      CHECK(!(pos && neg));
    }
    for (const auto& r : rs.roots()) CHECK(rs.form(r, r) > 0);
  }
}

TEST_CASE("symmetrizer: d_i a_ij = d_j a_ji and short roots have length 2") {
  for (const char* name : {"A2", "B3", "C3", "D4", "F4", "G2", "E6"}) {
    auto rs = RootSystem::build(std::string(1, name[0]), name[1] - '0');
    const auto& cd = rs.cartan_datum();
    long long min_sq = 1 << 20;
    for (int i = 0; i < rs.rank(); ++i) {
      CHECK(cd.cartan[i][i] == 2);
      for (int j = 0; j < rs.rank(); ++j) {
        if (i != j) CHECK(cd.cartan[i][j] <= 0);
        CHECK(cd.sym[i] * cd.cartan[i][j] == cd.sym[j] * cd.cartan[j][i]);
      }
      Coords e(rs.rank(), 0);
      e[i] = 1;
      min_sq = std::min(min_sq, rs.form(e, e));
    }
    CHECK(min_sq == 2);
  }
}

TEST_CASE("enumerate_weyl_group: op examples and cap") {
  auto a1 = RootSystem::build(Series::A, 1);
  CHECK(WeylGroup::enumerate(a1).size() == 2);

  auto a3 = RootSystem::build(Series::A, 3);
  CHECK(WeylGroup::enumerate(a3).size() == 24);

  auto f4 = RootSystem::build(Series::F, 4);
  CHECK(WeylGroup::enumerate(f4).size() == 1152);

  CHECK_THROWS_AS(WeylGroup::enumerate(f4, 100), cap_exceeded);
}

TEST_CASE("enumeration order: BFS by length with lex tie-break") {
  auto a2 = RootSystem::build(Series::A, 2);
  auto W = WeylGroup::enumerate(a2);
  REQUIRE(W.size() == 6);
  std::vector<Word> expected = {{}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}};
  for (std::size_t i = 0; i < W.size(); ++i) CHECK(W[i].word == expected[i]);
  for (std::size_t i = 0; i + 1 < W.size(); ++i) {
    const auto &a = W[i].word, &b = W[i + 1].word;
    CHECK((a.size() < b.size() || (a.size() == b.size() && a <= b)));
  }
}

TEST_CASE("group axioms hold exhaustively on small types") {
  for (const char* name : {"A3", "B3", "G2"}) {
    auto rs = RootSystem::build(std::string(1, name[0]), name[1] - '0');
    auto W = WeylGroup::enumerate(rs);
    for (std::size_t a = 0; a < W.size(); ++a) {
      CHECK(W.compose(W.inverse(a), a) == W.identity_id());
      for (std::size_t b = 0; b < W.size(); ++b) W.compose(a, b); // throws if not closed
    }
  }
}

TEST_CASE("length function consistency: word length equals inversion count") {
  for (const char* name : {"A3", "B2", "G2"}) {
    auto rs = RootSystem::build(std::string(1, name[0]), name[1] - '0');
    auto W = WeylGroup::enumerate(rs);
    for (std::size_t a = 0; a < W.size(); ++a) {
      CHECK(rs.length(W[a].mat) == W[a].length());
      for (int i = 0; i < rs.rank(); ++i) {
        auto m = W[a].mat * rs.simple_reflection(i);
        int dl = rs.length(m) - W[a].length();
        CHECK((dl == 1 || dl == -1));
      }
    }
  }
}

TEST_CASE("canonical_word recovers a reduced word") {
  auto rs = RootSystem::build(Series::B, 3);
  auto W = WeylGroup::enumerate(rs);
  for (std::size_t a = 0; a < W.size(); ++a) {
    Word w = rs.canonical_word(W[a].mat);
    CHECK((int)w.size() == W[a].length());
    IMatrix m = IMatrix::identity(rs.rank());
    for (auto i : w) m = m * rs.simple_reflection(i);
    CHECK(m == W[a].mat);
  }
}

TEST_CASE("longest_element: op examples") {
  auto a2 = RootSystem::build(Series::A, 2);
  CHECK(longest_element(a2, {}).mat.is_identity());
  auto w0 = longest_element(a2, {0, 1});
  CHECK(w0.length() == 3);
  CHECK((w0.mat * w0.mat).is_identity());

  auto a3 = RootSystem::build(Series::A, 3);
  auto w13 = longest_element(a3, {0, 2});
  CHECK(w13.length() == 2);
  CHECK((w13.mat * w13.mat).is_identity());
  CHECK(w13.mat == a3.simple_reflection(0) * a3.simple_reflection(2));
}

TEST_CASE("longest element maps theta-positives to negatives, permutes the rest") {
  auto rs = RootSystem::build(Series::B, 3);
  std::vector<int> theta{0, 1};
  auto w0 = longest_element(rs, theta);
  for (int id = 0; id < rs.num_positive(); ++id) {
    const auto& r = rs.roots()[id];
    bool in_theta = true;
    for (int i = 0; i < rs.rank(); ++i)
      if (r[i] != 0 && std::find(theta.begin(), theta.end(), i) == theta.end()) in_theta = false;
    bool image_positive = RootSystem::coords_positive(w0.mat.apply(r));
    if (in_theta)
      CHECK(!image_positive);
    else
      CHECK(image_positive);
  }
}

TEST_CASE("unique positive-to-negative element is w0") {
  auto rs = RootSystem::build(Series::G, 2);
  auto W = WeylGroup::enumerate(rs);
  auto w0 = longest_element(rs, {0, 1});
  int count = 0;
  for (std::size_t a = 0; a < W.size(); ++a) {
    bool flips_all = true;
    for (int id = 0; id < rs.num_positive() && flips_all; ++id)
      flips_all = !RootSystem::coords_positive(W[a].mat.apply(rs.roots()[id]));
    if (flips_all) {
      ++count;
      CHECK(W[a].mat == w0.mat);
    }
  }
  CHECK(count == 1);
}

TEST_CASE("-w0 permutes the simple roots") {
  for (const char* name : {"A3", "A4", "B3", "C3", "D4", "F4", "G2"}) {
    auto rs = RootSystem::build(std::string(1, name[0]), name[1] - '0');
    std::vector<int> all(rs.rank());
    std::iota(all.begin(), all.end(), 0);
    auto w0 = longest_element(rs, all);
    for (int i = 0; i < rs.rank(); ++i) {
      Coords e(rs.rank(), 0);
      e[i] = 1;
      Coords img = w0.mat.apply(e);
      for (auto& v : img) v = -v;
      int nonzero = 0, where = -1;
      for (int k = 0; k < rs.rank(); ++k)
        if (img[k] != 0) { ++nonzero; where = k; }
      CHECK(nonzero == 1);
      CHECK(img[where] == 1);
    }
  }
}

TEST_CASE("root count equals Weyl orbit closure of the simples") {
  for (const char* name : {"A3", "B3", "C3", "G2"}) {
    auto rs = RootSystem::build(std::string(1, name[0]), name[1] - '0');
    auto W = WeylGroup::enumerate(rs);
    std::set<Coords> orbit;
    for (int i = 0; i < rs.rank(); ++i) {
      Coords e(rs.rank(), 0);
      e[i] = 1;
      for (std::size_t a = 0; a < W.size(); ++a) orbit.insert(W[a].mat.apply(e));
    }
    CHECK(orbit.size() == rs.roots().size());
    for (const auto& r : rs.roots()) CHECK(orbit.count(r) == 1);
  }
}

TEST_CASE("Weyl matrices permute the root set") {
  auto rs = RootSystem::build(Series::C, 3);
  auto W = WeylGroup::enumerate(rs);
  for (std::size_t a = 0; a < W.size(); a += 7) {
    for (const auto& r : rs.roots()) CHECK(rs.is_root(W[a].mat.apply(r)));
  }
}

TEST_CASE("BFS order matches the orbit-stabilizer oracle") {
  for (const char* name : {"A1", "A2", "A3", "B2", "C3", "G2"}) {
    auto rs = RootSystem::build(std::string(1, name[0]), name[1] - '0');
    auto W = WeylGroup::enumerate(rs);
    CHECK((long long)W.size() == weyl_order_oracle(rs));
  }
}

TEST_CASE("parabolic subgroup extraction") {
  auto rs = RootSystem::build(Series::A, 3);
  auto W = WeylGroup::enumerate(rs);
  CHECK(W.parabolic({}).size() == 1);
  CHECK(W.parabolic({0}).size() == 2);
  CHECK(W.parabolic({0, 1}).size() == 6);
  CHECK(W.parabolic({0, 2}).size() == 4);
  CHECK(W.parabolic({0, 1, 2}).size() == 24);
}

TEST_CASE("weight coordinates invert each other") {
  auto rs = RootSystem::build(Series::F, 4);
  for (int j = 0; j < rs.rank(); ++j) {
    QVec w = rs.fundamental_weight(j);
    QVec back = rs.to_weight_coords(w);
    for (int i = 0; i < rs.rank(); ++i) CHECK(back[i] == (i == j ? Rat(1) : Rat(0)));
  }
}
