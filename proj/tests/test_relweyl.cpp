#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "weylred/relweyl.hpp"

using namespace weylred;
using namespace weylred::rootsys;
using namespace weylred::relweyl;

namespace {

struct Fixture {
  RootSystem rs;
  WeylGroup W;
  Fixture(const char* series, int rank)
      : rs(RootSystem::build(std::string(1, series[0]), rank)), W(WeylGroup::enumerate(rs)) {}
};

std::vector<int> full_theta(const RootSystem& rs) {
  std::vector<int> t(rs.rank());
  std::iota(t.begin(), t.end(), 0);
  return t;
}

std::vector<std::vector<int>> all_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

// Alternative characterization used as oracle: minimal-length coset
// representatives (all theta_M simples stay positive) that normalize Phi^M.
std::vector<std::size_t> relative_weyl_oracle(const RootSystem& rs, const WeylGroup& W,
                                              const std::vector<int>& theta_M) {
  std::set<Coords> phiM;
  for (const auto& r : rs.roots()) {
    bool in = true;
    for (int i = 0; i < rs.rank(); ++i)
      if (r[i] != 0 && std::find(theta_M.begin(), theta_M.end(), i) == theta_M.end()) in = false;
    if (in) phiM.insert(r);
  }
  std::vector<std::size_t> out;
  for (std::size_t id = 0; id < W.size(); ++id) {
    const IMatrix& w = W[id].mat;
    bool minimal = true;
    for (int i : theta_M) {
      Coords e(rs.rank(), 0);
      e[i] = 1;
      if (!RootSystem::coords_positive(w.apply(e))) { minimal = false; break; }
    }
    if (!minimal) continue;
    bool normalizes = true;
    for (const auto& r : phiM)
      if (!phiM.count(w.apply(r))) { normalizes = false; break; }
    if (normalizes) out.push_back(id);
  }
  return out;
}

} // namespace

TEST_CASE("relative_roots: op examples") {
  {
    Fixture f("A", 1);
    auto ctx = LeviContext::make(f.rs, f.W, {});
    CHECK(ctx.relative_roots().size() == 1); // one positive ray; negatives mirror
    CHECK(ctx.relative_roots()[0].lifts.size() == 1);
  }
  {
    Fixture f("A", 2);
    auto ctx = LeviContext::make(f.rs, f.W, {0});
    REQUIRE(ctx.relative_roots().size() == 1);
    CHECK(ctx.relative_roots()[0].lifts.size() == 2); // alpha2 and alpha1+alpha2
  }
  {
    Fixture f("A", 3);
    auto ctx = LeviContext::make(f.rs, f.W, {0, 2});
    REQUIRE(ctx.relative_roots().size() == 1);
    CHECK(ctx.relative_roots()[0].lifts.size() == 4);
  }
}

TEST_CASE("relative_roots: reduced rays with divisibility flag (C2 long Levi)") {
  Fixture f("C", 2);
  auto ctx = LeviContext::make(f.rs, f.W, {1});
  REQUIRE(ctx.relative_roots().size() == 1);
  CHECK(ctx.relative_roots()[0].divisible); // projections come in two lengths
  CHECK(ctx.relative_roots()[0].lifts.size() == 3);
  // the reduced representative is the shorter projection
  const auto& rr = ctx.relative_roots()[0];
  CHECK(f.rs.form(rr.restriction, rr.restriction) == Rat(1));

  // B2 with the short-root Levi: all three projections coincide, no multiple
  Fixture b("B", 2);
  auto bctx = LeviContext::make(b.rs, b.W, {1});
  REQUIRE(bctx.relative_roots().size() == 1);
  CHECK(!bctx.relative_roots()[0].divisible);
  CHECK(bctx.relative_roots()[0].lifts.size() == 3);
}

TEST_CASE("relative_reflection: op examples") {
  {
    Fixture f("A", 2);
    auto ctx = LeviContext::make(f.rs, f.W, {0});
    const auto& rf = ctx.reflection(0);
    CHECK(!rf.normalizes_levi);
    Coords a1{1, 0};
    CHECK(rf.mat.apply(a1) == Coords{0, 1}); // maps alpha1 to alpha2
  }
  {
    Fixture f("A", 3);
    auto ctx = LeviContext::make(f.rs, f.W, {0, 2});
    const auto& rf = ctx.reflection(0);
    CHECK(rf.normalizes_levi);
    Coords a1{1, 0, 0};
    CHECK(rf.mat.apply(a1) == Coords{0, 0, 1}); // diagram flip alpha1 <-> alpha3
    CHECK((rf.mat * rf.mat).is_identity());
  }
  {
    Fixture f("A", 1);
    auto ctx = LeviContext::make(f.rs, f.W, {});
    const auto& rf = ctx.reflection(0);
    CHECK(rf.normalizes_levi);
    CHECK(rf.mat == f.rs.simple_reflection(0));
  }
}

TEST_CASE("relative_reflection rejects non-roots") {
  Fixture f("A", 2);
  auto ctx = LeviContext::make(f.rs, f.W, {0});
  CHECK_THROWS_AS(ctx.reflection(5), validation_error);
}

TEST_CASE("phi_M0: op examples") {
  {
    Fixture f("A", 2);
    auto ctx = LeviContext::make(f.rs, f.W, {0});
    CHECK(ctx.phi0().empty());
  }
  {
    Fixture f("A", 3);
    auto ctx = LeviContext::make(f.rs, f.W, {0, 2});
    CHECK(ctx.phi0().size() == ctx.relative_roots().size());
  }
  {
    Fixture f("A", 3);
    auto ctx = LeviContext::make(f.rs, f.W, full_theta(f.rs));
    CHECK(ctx.relative_roots().empty());
    CHECK(ctx.phi0().empty());
  }
}

TEST_CASE("relative_weyl_group: op examples") {
  {
    Fixture f("A", 3);
    auto full = LeviContext::make(f.rs, f.W, full_theta(f.rs));
    CHECK(full.group().size() == 1);
    auto ctx = LeviContext::make(f.rs, f.W, {0, 2});
    CHECK(ctx.group().size() == 2);
  }
  {
    Fixture f("A", 2);
    auto ctx = LeviContext::make(f.rs, f.W, {0});
    CHECK(ctx.group().size() == 1);
  }
}

TEST_CASE("decompose: op examples") {
  {
    Fixture f("A", 3);
    auto full = LeviContext::make(f.rs, f.W, full_theta(f.rs));
    auto d = full.decompose();
    CHECK(d.w0.size() == 1);
    CHECK(d.w1.size() == 1);

    auto ctx = LeviContext::make(f.rs, f.W, {0, 2});
    auto d2 = ctx.decompose();
    CHECK(d2.w0.size() == 2);
    CHECK(d2.w1.size() == 1);
  }
  {
    Fixture f("A", 2);
    auto ctx = LeviContext::make(f.rs, f.W, {});
    auto d = ctx.decompose();
    CHECK(d.w0.size() == 6);
    CHECK(d.w1.size() == 1);
  }
}

TEST_CASE("exhaustive invariants at rank <= 3: decomposition, stability, covariance") {
  for (const char* name : {"A1", "A2", "A3", "B2", "B3", "C3", "D3", "G2"}) {
    Fixture f(std::string(1, name[0]).c_str(), name[1] - '0');
    for (const auto& theta : all_subsets(f.rs.rank())) {
      auto ctx = LeviContext::make(f.rs, f.W, theta);

      // semidirect decomposition |W_M| = |W_M^0| |W_M^1|, bijectivity is
      // verified inside decompose()
      auto d = ctx.decompose();
      CHECK(d.w0.size() * d.w1.size() == ctx.group().size());

      // every w in W_M^1 keeps (Phi_M^0)^+ positive
      for (std::size_t w : d.w1) CHECK(ctx.acts_positively(w, ctx.phi0()));

      // W_M preserves Phi_M and Phi_M^0
      std::set<int> phi0set(ctx.phi0().begin(), ctx.phi0().end());
      for (std::size_t w : ctx.group()) {
        for (int r = 0; r < (int)ctx.relative_roots().size(); ++r) {
          auto [img, sign] = ctx.act(w, r); // throws if image is no relative root
          (void)sign;
          CHECK((phi0set.count(r) == phi0set.count(img)));
        }
      }

      // conjugation covariance on positive images: omega_{w.alpha} = w omega_alpha w^{-1}
      for (std::size_t w : ctx.group()) {
        for (int r : ctx.phi0()) {
          auto [img, sign] = ctx.act(w, r);
          if (sign < 0) continue; // omega is defined on positive relative roots
          std::size_t lhs = ctx.reflection(img).element_id;
          std::size_t rhs =
              f.W.compose(w, f.W.compose(ctx.reflection(r).element_id, f.W.inverse(w)));
          CHECK(lhs == rhs);
        }
      }

      // normalizing reflections are involutions
      for (int r : ctx.phi0())
        CHECK((ctx.reflection(r).mat * ctx.reflection(r).mat).is_identity());

      // oracle equivalence: filter definition vs minimal coset representatives
      CHECK(ctx.group() == relative_weyl_oracle(f.rs, f.W, theta));
    }
  }
}

TEST_CASE("bruhat_tits_cosets: op examples") {
  Fixture f("A", 3);
  {
    // theta_L = theta_M: representatives are all of W_M
    auto out = bruhat_tits_cosets(f.rs, f.W, {0, 2}, {0, 2});
    CHECK(out.w_m_l.size() == 1);
    CHECK(out.reps.size() == 2);
  }
  {
    // theta_L = Delta: a single coset
    auto out = bruhat_tits_cosets(f.rs, f.W, {0, 2}, full_theta(f.rs));
    CHECK(out.w_m_l.size() == 2);
    CHECK(out.reps.size() == 1);
    CHECK(out.reps[0] == f.W.identity_id());
  }
}

TEST_CASE("bruhat_tits_cosets rejects nesting violations") {
  Fixture f("A", 3);
  CHECK_THROWS_AS(bruhat_tits_cosets(f.rs, f.W, {0, 2}, {0, 1}), validation_error);
}

TEST_CASE("(**) factorization is bijective for all nested pairs at rank <= 3") {
  for (const char* name : {"A2", "A3", "B3", "C3", "G2"}) {
    Fixture f(std::string(1, name[0]).c_str(), name[1] - '0');
    for (const auto& tM : all_subsets(f.rs.rank())) {
      for (const auto& tL : all_subsets(f.rs.rank())) {
        std::vector<int> inter;
        std::set_intersection(tM.begin(), tM.end(), tL.begin(), tL.end(),
                              std::back_inserter(inter));
        if (inter != tM) continue;
        // throws internal_error unless the factorization is a bijection
        auto out = bruhat_tits_cosets(f.rs, f.W, tM, tL);
        auto ctxG = LeviContext::make(f.rs, f.W, tM);
        CHECK(out.reps.size() * out.w_m_l.size() == ctxG.group().size());
        CHECK(out.factor.size() == ctxG.group().size());
      }
    }
  }
}

TEST_CASE("restricted action and coroot functionals are exact") {
  Fixture f("A", 3);
  auto ctx = LeviContext::make(f.rs, f.W, {0, 2});
  REQUIRE(ctx.dim() == 1);
  // the nontrivial W_M element acts on a_M* by -1
  std::size_t w = ctx.group()[1];
  IMat act = ctx.restricted_action(w);
  CHECK(act.at(0, 0) == -1);
  // <varpi_2, beta^vee> = 2 for the unique positive relative root
  QVec fn = ctx.coroot_functional(0);
  CHECK(fn[0] == Rat(2));
  // pairing of the relative root with its own coroot is 2
  CHECK(f.rs.coroot_pairing(ctx.relative_roots()[0].restriction,
                            ctx.relative_roots()[0].restriction) == Rat(2));
}

TEST_CASE("coords round-trip through a_M*") {
  Fixture f("B", 3);
  auto ctx = LeviContext::make(f.rs, f.W, {0});
  QVec c{Rat(1, 3), Rat(-2, 5)};
  QVec amb = ctx.coords_to_ambient(c);
  for (int i : ctx.theta_M()) {
    Coords e(f.rs.rank(), 0);
    e[i] = 1;
    QVec eq(f.rs.rank(), Rat(0));
    for (int k = 0; k < f.rs.rank(); ++k) eq[k] = Rat(e[k]);
    CHECK(f.rs.form(amb, eq) == Rat(0)); // lands in a_M*
  }
  CHECK(ctx.ambient_to_coords(amb) == c);
}
