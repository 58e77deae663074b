#include "weylred/exponents.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace weylred::exponents {

using rootsys::Coords;
using rootsys::IMatrix;

SignedPermutation SignedPermutation::identity(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;
  return from_images(std::move(img));
}

SignedPermutation SignedPermutation::from_images(std::vector<int> img) {
  int n = (int)img.size();
  std::vector<bool> seen(n, false);
  for (int v : img) {
    int a = v < 0 ? -v : v;
    if (a < 1 || a > n || seen[a - 1])
      throw validation_error("not a signed permutation");
    seen[a - 1] = true;
  }
  SignedPermutation s;
  s.img_ = std::move(img);
  return s;
}

SignedPermutation SignedPermutation::from_cycles(int n,
                                                 const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;
  auto set_image = [&](int a, int b) {
    if (a > 0)
      img[a - 1] = b;
    else
      img[-a - 1] = -b;
  };
  for (const auto& cyc : cycles) {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int a = cyc[k];
      int b = cyc[(k + 1) % cyc.size()];
      if (a == 0 || b == 0 || std::abs(a) > n || std::abs(b) > n)
        throw validation_error("cycle symbol out of range");
      set_image(a, b);
    }
  }
  return from_images(std::move(img));
}

int SignedPermutation::image(int a) const {
  if (a > 0) return img_[a - 1];
  return -img_[-a - 1];
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& rhs) const {
  if (degree() != rhs.degree()) throw internal_error("degree mismatch");
  std::vector<int> img(degree());
  for (int i = 1; i <= degree(); ++i) img[i - 1] = image(rhs.image(i));
  return from_images(std::move(img));
}

bool SignedPermutation::is_identity() const {
  for (int i = 1; i <= degree(); ++i)
    if (img_[i - 1] != i) return false;
  return true;
}

namespace {

// order symbols by (magnitude, positive first) for canonical rotations
bool symbol_less(int a, int b) {
  int ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma < mb;
  return a > b; // positive before negative
}

std::vector<int> canonical_rotation(const std::vector<int>& cyc) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < cyc.size(); ++k)
    if (symbol_less(cyc[k], cyc[best])) best = k;
  std::vector<int> out;
  for (std::size_t k = 0; k < cyc.size(); ++k) out.push_back(cyc[(best + k) % cyc.size()]);
  return out;
}

bool cycle_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return symbol_less(a[k], b[k]);
  return false;
}

} // namespace

std::vector<std::vector<int>> SignedPermutation::canonical_cycles() const {
  int n = degree();
  std::set<int> unvisited;
  for (int i = 1; i <= n; ++i) {
    unvisited.insert(i);
    unvisited.insert(-i);
  }
  std::vector<std::vector<int>> cycles;
  while (!unvisited.empty()) {
    int start = *std::min_element(unvisited.begin(), unvisited.end(), symbol_less);
    std::vector<int> cyc;
    int a = start;
    do {
      cyc.push_back(a);
      unvisited.erase(a);
      a = image(a);
    } while (a != start);
    if (cyc.size() == 1) continue; // fixed symbol
    // drop the mirror partner; it is either disjoint (erased when reached)
    // or equal to this cycle as a cyclic set
    std::vector<int> mirror;
    for (int v : cyc) mirror.push_back(-v);
    bool self_paired = false;
    for (int v : mirror)
      if (std::find(cyc.begin(), cyc.end(), v) != cyc.end()) self_paired = true;
    if (!self_paired)
      for (int v : mirror) unvisited.erase(v);
    // pick the smaller of the two mirror representatives
    std::vector<int> canon = canonical_rotation(cyc);
    std::vector<int> canon_m = canonical_rotation(mirror);
    cycles.push_back(cycle_less(canon_m, canon) ? canon_m : canon);
  }
  std::sort(cycles.begin(), cycles.end(), cycle_less);
  return cycles;
}

std::string SignedPermutation::str() const {
  auto cycles = canonical_cycles();
  if (cycles.empty()) return "()";
  std::string out;
  for (const auto& cyc : cycles) {
    out += "(";
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      if (k) out += " ";
      out += std::to_string(cyc[k]);
    }
    out += ")";
  }
  return out;
}

std::vector<std::vector<int>> theta_pieces(const RootSystem& rs,
                                           const std::vector<int>& theta) {
  return rootsys::dynkin_components(rs, theta);
}

SignedEmbedding signed_embedding(const LeviContext& ctx,
                                 const std::vector<std::size_t>& subgroup) {
  const RootSystem& rs = ctx.root_system();
  SignedEmbedding out;
  out.pieces = theta_pieces(rs, ctx.theta_M());
  int n = (int)out.pieces.size();

  auto piece_of = [&](int simple) {
    for (int i = 0; i < n; ++i)
      if (std::find(out.pieces[i].begin(), out.pieces[i].end(), simple) != out.pieces[i].end())
        return i;
    return -1;
  };

  const WeylGroup& W = ctx.weyl();
  for (std::size_t w : subgroup) {
    std::vector<int> img(n, 0);
    for (int i = 0; i < n; ++i) {
      int target = 0; // signed piece index, 1-based
      for (int k : out.pieces[i]) {
        Coords e(rs.rank(), 0);
        e[k] = 1;
        Coords image = W[w].mat.apply(e);
        // the image must be a simple root of theta_M, up to sign
        int sign = RootSystem::coords_positive(image) ? 1 : -1;
        if (sign < 0)
          for (auto& v : image) v = -v;
        int nonzero = 0, where = -1;
        for (int j = 0; j < rs.rank(); ++j)
          if (image[j] != 0) { ++nonzero; where = j; }
        int pc = (nonzero == 1 && image[where] == 1) ? piece_of(where) : -1;
        if (pc < 0)
          throw internal_error("element does not preserve the piece decomposition");
        int signed_target = sign * (pc + 1);
        if (target == 0)
          target = signed_target;
        else if (target != signed_target)
          throw internal_error("element maps one piece into two pieces");
      }
      img[i] = target;
    }
    out.images.emplace_back(w, SignedPermutation::from_images(std::move(img)));
  }

  // homomorphism check over the listed elements
  auto find_image = [&](std::size_t w) -> const SignedPermutation& {
    for (const auto& [id, s] : out.images)
      if (id == w) return s;
    throw internal_error("image lookup outside the subgroup");
  };
  out.homomorphism_verified = true;
  for (std::size_t u : subgroup)
    for (std::size_t v : subgroup) {
      std::size_t uv = W.compose(u, v);
      bool found = false;
      for (const auto& [id, s] : out.images)
        if (id == uv) { found = true; break; }
      if (!found) continue; // subgroup closure is the caller's business
      if (!(find_image(uv) == find_image(u).compose(find_image(v))))
        throw internal_error("piece action is not a homomorphism");
    }
  return out;
}

std::vector<std::vector<int>> associated_roots(const SignedPermutation& s) {
  int n = s.degree();
  std::set<std::vector<int>> dedup;
  for (const auto& cyc : s.canonical_cycles()) {
    for (std::size_t j = 0; j < cyc.size(); ++j)
      for (std::size_t l = j + 1; l < cyc.size(); ++l) {
        std::vector<int> v(n, 0);
        auto add = [&](int sym, int coef) {
          if (sym > 0)
            v[sym - 1] += coef;
          else
            v[-sym - 1] -= coef;
        };
        add(cyc[j], 1);
        add(cyc[l], -1);
        // primitive, sign-normalized
        int g = 0;
        for (int x : v) g = std::gcd(g, std::abs(x));
        if (g == 0) throw internal_error("zero associated root inside a cycle");
        int lead = 0;
        for (int x : v)
          if (x != 0) { lead = x; break; }
        for (auto& x : v) x = (lead < 0 ? -x : x) / g;
        dedup.insert(v);
      }
  }
  return std::vector<std::vector<int>>(dedup.begin(), dedup.end());
}

namespace {

// realize piece functionals on a_M* coordinates: row i is the functional of
// piece i, column k the coefficient on the k-th off-theta coordinate
QMat piece_functionals(const LeviContext& ctx, const std::vector<std::vector<int>>& pieces) {
  const RootSystem& rs = ctx.root_system();
  int d = ctx.dim();
  QMat F((int)pieces.size(), d);
  for (int i = 0; i < (int)pieces.size(); ++i)
    for (int k = 0; k < d; ++k) {
      QVec w = rs.fundamental_weight(ctx.off_indices()[k]);
      Rat acc(0);
      for (int m : pieces[i]) acc += w[m];
      F.at(i, k) = acc;
    }
  return F;
}

std::optional<QVec> realize_in_am(const QMat& F, const std::vector<int>& e_vec) {
  int d = F.cols;
  QVec out(d, Rat(0));
  for (int i = 0; i < F.rows; ++i) {
    if (e_vec[i] == 0) continue;
    for (int k = 0; k < d; ++k) out[k] += Rat(e_vec[i]) * F.at(i, k);
  }
  if (is_zero(out)) return std::nullopt; // trivial on a_M*: dropped
  return out;
}

} // namespace

SpanTest span_test(const InertialDatum& datum) {
  const LeviContext& ctx = datum.levi();
  SpanTest out;
  out.dim = ctx.dim();
  for (const auto& rr : inertial::corank_one_reducibility_set(datum))
    out.normals.push_back(ctx.coroot_functional(rr.rel_idx));

  auto st = inertial::stabilizer(datum);
  auto emb = signed_embedding(ctx, st.r_group);
  QMat F = piece_functionals(ctx, emb.pieces);
  std::set<QVec> dedup;
  for (const auto& [id, s] : emb.images) {
    (void)id;
    for (const auto& v : associated_roots(s))
      if (auto realized = realize_in_am(F, v)) dedup.insert(*realized);
  }
  for (const auto& v : dedup) out.normals.push_back(v);

  QMat m((int)out.normals.size(), out.dim);
  for (int i = 0; i < m.rows; ++i)
    for (int k = 0; k < out.dim; ++k) m.at(i, k) = out.normals[i][k];
  out.rank = rank(m);
  out.spans = out.rank == out.dim;
  if (!out.spans) out.witness = hierarchy::minimal_qualifying_levi(datum);
  return out;
}

std::vector<std::vector<std::size_t>> all_subgroups(const WeylGroup& W,
                                                    const std::vector<std::size_t>& elements,
                                                    std::size_t cap) {
  std::set<std::vector<std::size_t>> found;
  found.insert({W.identity_id()});
  // cyclic subgroups first, then extend by one generator until stable
  std::vector<std::vector<std::size_t>> frontier{{W.identity_id()}};
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& sub : frontier) {
      for (std::size_t g : elements) {
        if (std::binary_search(sub.begin(), sub.end(), g)) continue;
        std::vector<std::size_t> gens = sub;
        gens.push_back(g);
        auto closure = W.subgroup_closure(gens);
        // keep only subgroups inside the given element set
        bool inside = true;
        for (std::size_t x : closure)
          if (!std::binary_search(elements.begin(), elements.end(), x)) { inside = false; break; }
        if (!inside) continue;
        if (found.insert(closure).second) {
          if (found.size() > cap)
            throw cap_exceeded("subgroup enumeration exceeds cap " + std::to_string(cap));
          next.push_back(closure);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<std::size_t>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

ExponentSet enumerate_special_exponents(const LeviContext& ctx,
                                        const std::map<int, std::vector<Rat>>& red_table,
                                        std::vector<std::vector<std::size_t>> candidates) {
  const WeylGroup& W = ctx.weyl();
  int d = ctx.dim();
  ExponentSet out;
  out.normalization_note =
      "block functional e_i = sum of fundamental coweight coordinates over piece i; "
      "conditions vanishing on a_M* are dropped";

  // the induction assumption must cover every orbit of Phi_M^0
  std::set<int> orbits_needed;
  for (int r : ctx.phi0()) orbits_needed.insert(ctx.orbit_of(r));
  for (int orbit : orbits_needed)
    if (!red_table.count(orbit))
      throw validation_error("reducibility value table misses orbit " + std::to_string(orbit));

  // affine conditions from reducibility values
  for (int r : ctx.phi0()) {
    QVec normal = ctx.coroot_functional(r);
    for (const Rat& c : red_table.at(ctx.orbit_of(r))) {
      out.conditions.push_back({normal, c, r, ctx.orbit_of(r), false});
      if (!c.is_zero()) out.conditions.push_back({normal, -c, r, ctx.orbit_of(r), false});
    }
  }

  if (candidates.empty()) candidates = all_subgroups(W, ctx.group());

  // homogeneous block-equality conditions from the candidate R-groups
  {
    std::set<QVec> dedup;
    auto pieces = theta_pieces(ctx.root_system(), ctx.theta_M());
    QMat F = piece_functionals(ctx, pieces);
    for (const auto& cand : candidates) {
      auto emb = signed_embedding(ctx, cand);
      for (const auto& [id, s] : emb.images) {
        (void)id;
        for (const auto& v : associated_roots(s))
          if (auto realized = realize_in_am(F, v)) dedup.insert(*realized);
      }
    }
    for (const auto& v : dedup) out.conditions.push_back({v, Rat(0), -1, -1, true});
  }

  // real parts: solve every full-rank subset of size d
  int N = (int)out.conditions.size();
  std::vector<int> pick(d);
  std::set<QVec> seen_solutions;
  std::vector<RealExponent> reals;
  auto try_subset = [&](const std::vector<int>& subset) {
    QMat A(d, d);
    QVec b(d);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) A.at(i, k) = out.conditions[subset[i]].normal[k];
      b[i] = out.conditions[subset[i]].value;
    }
    auto sol = solve(A, b);
    if (sol.kind != SolveResult::Unique) return;
    if (seen_solutions.insert(sol.x).second) reals.push_back({sol.x, subset});
  };
  if (d == 0) {
    reals.push_back({QVec{}, {}});
  } else {
    // iterate over d-subsets of the condition pool
    std::iota(pick.begin(), pick.end(), 0);
    if (N >= d) {
      while (true) {
        try_subset(pick);
        int i = d - 1;
        while (i >= 0 && pick[i] == N - d + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  std::sort(reals.begin(), reals.end(),
            [](const RealExponent& a, const RealExponent& b) { return a.x < b.x; });
  out.real_parts = std::move(reals);

  // imaginary parts: per candidate, stack (w - id) on the torsion coordinates
  std::map<QVec, std::vector<int>> torsion;
  for (int c = 0; c < (int)candidates.size(); ++c) {
    const auto& cand = candidates[c];
    std::vector<IMat> blocks;
    for (std::size_t w : cand) {
      if (w == W.identity_id()) continue;
      IMat m = ctx.restricted_action(w);
      for (int i = 0; i < d; ++i) m.at(i, i) -= 1;
      blocks.push_back(std::move(m));
    }
    IMat stacked((int)blocks.size() * d, d);
    for (int b = 0; b < (int)blocks.size(); ++b)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) stacked.at(b * d + i, j) = blocks[b].at(i, j);
    auto sols = torsion_kernel_mod1(stacked);
    if (!sols) {
      out.skipped_candidates.push_back(c);
      continue;
    }
    auto snf = smith_normal_form(stacked);
    out.torsion_certificates.push_back({c, snf.diag});
    for (const auto& y : *sols) torsion[y].push_back(c);
  }
  for (auto& [y, cands] : torsion) out.im_parts.push_back({y, cands});

  return out;
}

} // namespace weylred::exponents
