#include "weylred/hierarchy.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace weylred::hierarchy {

using inertial::corank_one_reducibility_set;
using inertial::mat_apply;
using inertial::mod1;
using inertial::muller_irreducible;
using inertial::stabilizer;
using rootsys::Coords;
using rootsys::IMatrix;
using rootsys::RootSystem;

namespace {

std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// rays of Phi_M^{L,0} as indices into the full relative system
std::vector<int> l0_rays_in_full(const InertialDatum& datum, const LeviContext& ctxL) {
  std::vector<int> out;
  for (int r : ctxL.phi0()) {
    auto idx = datum.levi().find_ray(ctxL.relative_roots()[r].ray);
    if (!idx) throw internal_error("L-relative root ray missing from the full system");
    out.push_back(*idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

HypothesisReport check_working_hypothesis(const InertialDatum& datum,
                                          std::vector<int> theta_L) {
  const auto& ctx = datum.levi();
  const auto& rs = ctx.root_system();
  std::sort(theta_L.begin(), theta_L.end());
  LeviContext ctxL = LeviContext::make(rs, ctx.weyl(), ctx.theta_M(), theta_L);

  HypothesisReport rep;
  rep.theta_L = theta_L;

  std::vector<int> l0 = l0_rays_in_full(datum, ctxL);
  for (const auto& rr : corank_one_reducibility_set(datum))
    if (!std::binary_search(l0.begin(), l0.end(), rr.rel_idx))
      rep.offending_roots.push_back(rr.rel_idx);
  rep.cond_rank_one = rep.offending_roots.empty();

  for (std::size_t w : stabilizer(datum).r_group)
    if (!ctxL.contains(w)) rep.offending_elements.push_back(w);
  rep.cond_r_group = rep.offending_elements.empty();

  rep.holds = rep.cond_rank_one && rep.cond_r_group;
  return rep;
}

MinimalLevi minimal_qualifying_levi(const InertialDatum& datum) {
  const auto& ctx = datum.levi();
  const auto& rs = ctx.root_system();
  const auto& W = ctx.weyl();
  int n = rs.rank();

  std::vector<int> seed = ctx.theta_M();
  for (const auto& rr : corank_one_reducibility_set(datum))
    for (int lift : ctx.relative_roots()[rr.rel_idx].lifts) {
      const Coords& root = rs.roots()[lift];
      for (int i = 0; i < n; ++i)
        if (root[i] != 0) seed = sorted_union(seed, {i});
    }
  for (std::size_t w : stabilizer(datum).r_group)
    seed = sorted_union(seed, rootsys::word_support(W[w]));

  std::vector<int> extra;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(seed.begin(), seed.end(), i)) extra.push_back(i);

  // supersets of the seed, smallest first, lexicographic tie-break
  std::vector<std::vector<int>> candidates;
  for (int mask = 0; mask < (1 << extra.size()); ++mask) {
    std::vector<int> s = seed;
    for (std::size_t k = 0; k < extra.size(); ++k)
      if (mask & (1 << k)) s = sorted_union(s, {extra[k]});
    candidates.push_back(std::move(s));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });

  MinimalLevi out;
  out.seed = seed;
  bool found = false;
  for (const auto& cand : candidates) {
    auto rep = check_working_hypothesis(datum, cand);
    if (rep.holds) {
      out.theta_L = cand;
      out.report = std::move(rep);
      found = true;
      break;
    }
  }
  if (!found) throw internal_error("no qualifying Levi found, but Delta always qualifies");

  // certify minimality: every maximal proper sub-Levi above the seed fails
  for (int drop : out.theta_L) {
    if (std::binary_search(out.seed.begin(), out.seed.end(), drop)) continue;
    std::vector<int> sub;
    for (int i : out.theta_L)
      if (i != drop) sub.push_back(i);
    if (check_working_hypothesis(datum, sub).holds)
      throw internal_error("qualifying Levi was not minimal");
    out.rejected_below.push_back(std::move(sub));
  }
  return out;
}

RankOneOracle default_rank_one_oracle() {
  return [](int, bool in_red, const Rat&) -> long long { return in_red ? 2 : 1; };
}

namespace {

// factor w in W^L into its component supported on one piece of theta_L
IMatrix piece_factor(const RootSystem& rs, const IMatrix& w, const std::vector<int>& piece) {
  IMatrix out = IMatrix::identity(rs.rank());
  for (int k : piece)
    for (int r = 0; r < rs.rank(); ++r) out.at(r, k) = w.at(r, k);
  return out;
}

struct PieceData {
  std::vector<PieceCount> pieces;
  long long total = 1;
  bool product_pattern = true;
  std::size_t r_order = 1;
};

PieceData count_at_level(const InertialDatum& datum, const std::vector<int>& theta_L,
                         const RankOneOracle& oracle,
                         const std::vector<std::size_t>& r_group) {
  const auto& ctx = datum.levi();
  const auto& rs = ctx.root_system();
  const auto& W = ctx.weyl();
  LeviContext ctxL = LeviContext::make(rs, W, ctx.theta_M(), theta_L);
  auto pieces = rootsys::dynkin_components(rs, theta_L);

  auto red = corank_one_reducibility_set(datum);
  std::set<int> red_set;
  std::map<int, Rat> red_val;
  for (const auto& rr : red) {
    red_set.insert(rr.rel_idx);
    red_val[rr.rel_idx] = rr.value;
  }

  PieceData out;
  out.r_order = r_group.size();
  std::vector<PieceCount> counts;
  long long proj_product = 1;
  for (const auto& piece : pieces) {
    PieceCount pc;
    pc.piece = piece;
    // co-rank-one situations of M inside this piece
    for (int r : ctxL.phi0()) {
      const auto& ray = ctxL.relative_roots()[r].ray;
      bool in_piece = false, outside = false;
      for (int j = 0; j < rs.rank(); ++j) {
        if (ray[j] == 0) continue;
        bool off_M = std::find(ctx.theta_M().begin(), ctx.theta_M().end(), j) ==
                     ctx.theta_M().end();
        if (!off_M) continue;
        if (std::find(piece.begin(), piece.end(), j) != piece.end())
          in_piece = true;
        else
          outside = true;
      }
      if (!in_piece) continue;
      if (outside) throw internal_error("relative root ray straddles two pieces");
      int full_idx = *datum.levi().find_ray(ctxL.relative_roots()[r].ray);
      bool in_red = red_set.count(full_idx) > 0;
      pc.red_factor *= oracle(full_idx, in_red, in_red ? red_val[full_idx] : Rat(0));
    }
    // R-group projection onto the piece
    std::set<std::vector<int>> proj;
    for (std::size_t w : r_group) {
      IMatrix f = piece_factor(rs, W[w].mat, piece);
      if (!W.find(f)) throw internal_error("piecewise factor of an R-group element not in W");
      proj.insert(f.a);
    }
    pc.r_factor = (long long)proj.size();
    proj_product *= pc.r_factor;
    pc.count = pc.red_factor * pc.r_factor;
    out.total *= pc.count;
    counts.push_back(std::move(pc));
  }
  out.pieces = std::move(counts);
  out.product_pattern = (proj_product == (long long)r_group.size());
  return out;
}

} // namespace

JHCount jh_count(const InertialDatum& datum, std::vector<int> theta_L,
                 const RankOneOracle& oracle) {
  std::sort(theta_L.begin(), theta_L.end());
  auto rep = check_working_hypothesis(datum, theta_L);
  if (!rep.holds)
    throw validation_error("working hypothesis fails at the requested Levi");

  auto st = stabilizer(datum);
  PieceData here = count_at_level(datum, theta_L, oracle, st.r_group);

  std::vector<int> delta(datum.levi().root_system().rank());
  std::iota(delta.begin(), delta.end(), 0);
  PieceData full = count_at_level(datum, delta, oracle, st.r_group);

  JHCount out;
  out.theta_L = std::move(theta_L);
  out.per_piece = here.pieces;
  out.total = here.total;
  out.r_group_nontrivial = st.r_group.size() > 1;
  out.r_group_product_pattern = here.product_pattern;
  out.agrees_with_full_level = here.total == full.total;
  return out;
}

std::vector<SigmaComponent> sigma_components(const InertialDatum& datum) {
  const auto& ctx = datum.levi();
  const auto& rs = ctx.root_system();

  // Phi_sigma: relative roots whose reflection fixes the whole datum
  auto st = stabilizer(datum);
  std::vector<int> phi_sigma;
  for (int r : ctx.phi0()) {
    std::size_t w = ctx.reflection(r).element_id;
    if (std::binary_search(st.w_sigma.begin(), st.w_sigma.end(), w)) phi_sigma.push_back(r);
  }

  // orthogonality graph on the positive representatives
  std::vector<SigmaComponent> out;
  std::set<int> unvisited(phi_sigma.begin(), phi_sigma.end());
  while (!unvisited.empty()) {
    std::vector<int> comp{*unvisited.begin()};
    unvisited.erase(unvisited.begin());
    for (std::size_t k = 0; k < comp.size(); ++k) {
      const QVec& a = ctx.relative_roots()[comp[k]].restriction;
      for (auto it = unvisited.begin(); it != unvisited.end();) {
        const QVec& b = ctx.relative_roots()[*it].restriction;
        if (!rs.form(a, b).is_zero()) {
          comp.push_back(*it);
          it = unvisited.erase(it);
        } else {
          ++it;
        }
      }
    }
    std::sort(comp.begin(), comp.end());

    SigmaComponent sc;
    sc.rel_roots = comp;
    // Levi closure: all ambient roots projecting into the span of the piece
    QMat basis((int)comp.size(), rs.rank());
    for (int i = 0; i < (int)comp.size(); ++i)
      for (int j = 0; j < rs.rank(); ++j)
        basis.at(i, j) = ctx.relative_roots()[comp[i]].restriction[j];
    int base_rank = rank(basis);
    // a root off Phi^M projects onto the ray of the relative root it lifts,
    // so the closure collects whole lift families whose restriction lies in
    // the span of the component
    std::set<int> levi_ids(ctx.levi_roots().begin(), ctx.levi_roots().end());
    for (int r = 0; r < (int)ctx.relative_roots().size(); ++r) {
      const auto& rr = ctx.relative_roots()[r];
      QMat ext((int)comp.size() + 1, rs.rank());
      for (int i = 0; i < (int)comp.size(); ++i)
        for (int j = 0; j < rs.rank(); ++j) ext.at(i, j) = basis.at(i, j);
      for (int j = 0; j < rs.rank(); ++j) ext.at((int)comp.size(), j) = rr.restriction[j];
      if (rank(ext) != base_rank) continue;
      for (int lift : rr.lifts) {
        levi_ids.insert(lift);
        levi_ids.insert(rs.negative_of(lift));
      }
    }
    sc.levi_root_ids.assign(levi_ids.begin(), levi_ids.end());

    // standard iff the root set is exactly the parabolic span of the simple
    // roots it contains
    std::vector<int> theta_cand;
    for (int i = 0; i < rs.rank(); ++i) {
      Coords e(rs.rank(), 0);
      e[i] = 1;
      auto id = rs.root_id(e);
      if (id && levi_ids.count(*id)) theta_cand.push_back(i);
    }
    std::size_t parabolic_count = 0;
    for (int id = 0; id < (int)rs.roots().size(); ++id) {
      bool supported = true;
      for (int j = 0; j < rs.rank(); ++j)
        if (rs.roots()[id][j] != 0 &&
            std::find(theta_cand.begin(), theta_cand.end(), j) == theta_cand.end())
          supported = false;
      if (supported) ++parabolic_count;
    }
    if (parabolic_count == levi_ids.size()) sc.theta = theta_cand;
    out.push_back(std::move(sc));
  }
  return out;
}

ReducibilityLocus reducibility_locus(const InertialDatum& datum) {
  const auto& ctx = datum.levi();
  ReducibilityLocus locus;
  for (int r : ctx.phi0()) {
    const auto& rf = ctx.reflection(r);
    if (!datum.fixes_base(rf.element_id)) continue;
    QVec normal = ctx.coroot_functional(r);
    if (is_zero(normal)) throw internal_error("zero coroot functional");
    for (const Rat& c : datum.red_values(ctx.orbit_of(r))) {
      locus.hyperplanes.push_back({r, ctx.orbit_of(r), normal, c});
      if (!c.is_zero()) locus.hyperplanes.push_back({r, ctx.orbit_of(r), normal, -c});
    }
  }
  const auto& W = ctx.weyl();
  for (std::size_t w : ctx.group()) {
    if (w == W.identity_id()) continue;
    if (!datum.fixes_base(w)) continue;
    IMat sys = ctx.restricted_action(w);
    for (int i = 0; i < sys.rows; ++i) sys.at(i, i) -= 1;
    if (sys.is_zero())
      throw internal_error("nontrivial W_M element acting trivially on a_M*");
    locus.torsion_conditions.push_back({w, std::move(sys)});
  }
  // deterministic witness of nonemptiness of the complement
  for (int k = 0;; ++k) {
    Twist t = deterministic_twist_sample(ctx, k);
    if (!locus_contains(datum, locus, t) &&
        muller_irreducible(datum.with_twist(t)).irreducible) {
      locus.generic_witness = t;
      locus.witness_sample_index = k;
      break;
    }
    if (k > 10000) throw internal_error("no generic witness found in 10000 samples");
  }
  return locus;
}

bool locus_contains(const InertialDatum& datum, const ReducibilityLocus& locus,
                    const Twist& t) {
  (void)datum;
  for (const auto& h : locus.hyperplanes) {
    Rat acc(0);
    for (std::size_t k = 0; k < h.normal.size(); ++k) acc += h.normal[k] * t.re[k];
    if (acc == h.value) return true;
  }
  for (const auto& tc : locus.torsion_conditions) {
    QVec dre = mat_apply(tc.system, t.re);
    if (!is_zero(dre)) continue;
    QVec dim = mod1(mat_apply(tc.system, t.im));
    if (is_zero(dim)) return true;
  }
  return false;
}

namespace {

int nth_prime(int n) {
  static std::vector<int> primes{11};
  auto is_prime = [](int x) {
    for (int d = 2; d * d <= x; ++d)
      if (x % d == 0) return false;
    return true;
  };
  while ((int)primes.size() <= n) {
    int c = primes.back() + 2;
    while (!is_prime(c)) c += 2;
    primes.push_back(c);
  }
  return primes[n];
}

} // namespace

Twist deterministic_twist_sample(const LeviContext& ctx, int k) {
  int d = ctx.dim();
  Twist t;
  t.re.resize(d);
  t.im.resize(d);
  for (int j = 0; j < d; ++j) {
    t.re[j] = Rat(1, nth_prime(2 * d * k + j));
    t.im[j] = Rat(1, nth_prime(2 * d * k + d + j));
  }
  return t;
}

Twist hyperplane_point(const InertialDatum& datum, const RedHyperplane& h) {
  const auto& ctx = datum.levi();
  QVec alpha_coords = ctx.ambient_to_coords(ctx.relative_roots()[h.rel_idx].restriction);
  Twist t;
  t.re = (h.value / Rat(2)) * alpha_coords;
  t.im.assign(ctx.dim(), Rat(0));
  return t;
}

} // namespace weylred::hierarchy
