#include "weylred/relweyl.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace weylred::relweyl {

namespace {

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

// primitive integer vector on the same ray as a rational vector
Coords primitive_ray(const QVec& v) {
  long long lcm = 1;
  for (const auto& c : v)
    if (!c.is_zero()) lcm = std::lcm(lcm, c.den());
  Coords out(v.size(), 0);
  long long g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat scaled = Rat(lcm) * v[i];
    if (!scaled.is_integral()) throw internal_error("primitive_ray: scaling failed");
    out[i] = (int)scaled.num();
    g = std::gcd(g, scaled.num() < 0 ? -scaled.num() : scaled.num());
  }
  if (g == 0) throw internal_error("primitive_ray of zero vector");
  for (auto& x : out) x = (int)(x / g);
  return out;
}

} // namespace

LeviContext LeviContext::make(const RootSystem& rs, const WeylGroup& W,
                              std::vector<int> theta_M) {
  std::vector<int> all(rs.rank());
  std::iota(all.begin(), all.end(), 0);
  return make(rs, W, std::move(theta_M), all);
}

LeviContext LeviContext::make(const RootSystem& rs, const WeylGroup& W,
                              std::vector<int> theta_M, std::vector<int> theta_L) {
  rootsys::validate_theta(rs, theta_M);
  rootsys::validate_theta(rs, theta_L);
  std::sort(theta_M.begin(), theta_M.end());
  std::sort(theta_L.begin(), theta_L.end());
  if (!subset_of(theta_M, theta_L))
    throw validation_error("nesting violation: theta_M is not contained in theta_L");
  LeviContext ctx;
  ctx.rs_ = &rs;
  ctx.W_ = &W;
  ctx.theta_M_ = std::move(theta_M);
  ctx.theta_L_ = std::move(theta_L);
  for (int j = 0; j < rs.rank(); ++j)
    if (std::find(ctx.theta_M_.begin(), ctx.theta_M_.end(), j) == ctx.theta_M_.end())
      ctx.off_.push_back(j);
  ctx.build();
  return ctx;
}

void LeviContext::build() {
  const RootSystem& rs = *rs_;
  int n = rs.rank();
  int m = (int)theta_M_.size();

  auto supported_on = [&](const Coords& r, const std::vector<int>& theta) {
    for (int i = 0; i < n; ++i)
      if (r[i] != 0 && std::find(theta.begin(), theta.end(), i) == theta.end()) return false;
    return true;
  };

  // Phi^M and Phi^L as root id sets
  std::vector<int> phiL;
  for (int id = 0; id < (int)rs.roots().size(); ++id) {
    if (supported_on(rs.roots()[id], theta_M_)) phiM_.push_back(id);
    if (supported_on(rs.roots()[id], theta_L_)) phiL.push_back(id);
  }

  // Gram matrix of theta_M for the orthogonal projection onto span(theta_M)
  QMat gram(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Coords ea(n, 0), eb(n, 0);
      ea[theta_M_[a]] = 1;
      eb[theta_M_[b]] = 1;
      gram.at(a, b) = Rat(rs.form(ea, eb));
    }
  QMat gram_inv = m > 0 ? gram.inverse() : QMat();

  auto project = [&](const Coords& beta) {
    QVec out(n);
    for (int i = 0; i < n; ++i) out[i] = Rat(beta[i]);
    if (m == 0) return out;
    QVec rhs(m);
    for (int a = 0; a < m; ++a) {
      Coords ea(n, 0);
      ea[theta_M_[a]] = 1;
      rhs[a] = Rat(rs.form(beta, ea));
    }
    QVec coeff = gram_inv.apply(rhs);
    for (int a = 0; a < m; ++a) out[theta_M_[a]] -= coeff[a];
    return out;
  };

  // group the projections of Phi^L \ Phi^M by positive ray
  struct RayData {
    QVec shortest;
    std::vector<int> lifts;
    bool divisible = false;
  };
  std::map<Coords, RayData> rays;
  for (int id : phiL) {
    if (!rs.is_positive_id(id)) continue;
    if (supported_on(rs.roots()[id], theta_M_)) continue;
    QVec p = project(rs.roots()[id]);
    Coords ray = primitive_ray(p);
    auto& rd = rays[ray];
    rd.lifts.push_back(id);
    if (rd.shortest.empty()) {
      rd.shortest = p;
    } else if (p != rd.shortest) {
      rd.divisible = true;
      if (rs.form(p, p) < rs.form(rd.shortest, rd.shortest)) rd.shortest = p;
    }
  }
  for (auto& [ray, rd] : rays) {
    RelativeRoot rr;
    rr.ray = ray;
    rr.restriction = rd.shortest;
    rr.lifts = rd.lifts;
    rr.divisible = rd.divisible;
    ray_index_.emplace(ray, (int)rel_.size());
    rel_.push_back(std::move(rr));
  }

  // W_M^L: elements of the parabolic W^L mapping theta_M onto itself
  std::set<Coords> theta_set;
  for (int i : theta_M_) {
    Coords e(n, 0);
    e[i] = 1;
    theta_set.insert(e);
  }
  for (std::size_t id : W_->parabolic(theta_L_)) {
    const IMatrix& w = (*W_)[id].mat;
    bool ok = true;
    for (int i : theta_M_) {
      Coords e(n, 0);
      e[i] = 1;
      if (!theta_set.count(w.apply(e))) { ok = false; break; }
    }
    if (ok) wM_.push_back(id);
  }

  // relative reflections omega_alpha = w0^{M_alpha} w0^M
  IMatrix w0M = rootsys::longest_element(rs, theta_M_).mat;
  std::set<int> phiM_set(phiM_.begin(), phiM_.end());
  for (int r = 0; r < (int)rel_.size(); ++r) {
    std::vector<int> sub = phiM_;
    for (int id : rel_[r].lifts) {
      sub.push_back(id);
      sub.push_back(rs.negative_of(id));
    }
    IMatrix w0a = rootsys::subsystem_longest_element(rs, sub);
    RelativeReflection rf;
    rf.root = r;
    rf.mat = w0a * w0M;
    bool norm = true;
    for (int id : phiM_) {
      auto img = rs.root_id(rf.mat.apply(rs.roots()[id]));
      if (!img || !phiM_set.count(*img)) { norm = false; break; }
    }
    rf.normalizes_levi = norm;
    if (norm) {
      auto found = W_->find(rf.mat);
      if (!found) throw internal_error("normalizing relative reflection not in W");
      rf.element_id = *found;
      // a normalizing omega_alpha always stabilizes theta_M
      if (!std::binary_search(wM_.begin(), wM_.end(), rf.element_id))
        throw internal_error("normalizing relative reflection not in W_M");
      phi0_.push_back(r);
    } else {
      rf.element_id = W_->find(rf.mat).value_or((std::size_t)-1);
    }
    refl_.push_back(std::move(rf));
  }

  // W_M-orbits of the +/- ray pairs
  orbit_of_.assign(rel_.size(), -1);
  for (int r = 0; r < (int)rel_.size(); ++r) {
    if (orbit_of_[r] >= 0) continue;
    std::vector<int> orbit{r};
    orbit_of_[r] = (int)orbits_.size();
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (std::size_t w : wM_) {
        auto [img, sign] = act(w, orbit[k]);
        (void)sign;
        if (orbit_of_[img] < 0) {
          orbit_of_[img] = (int)orbits_.size();
          orbit.push_back(img);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits_.push_back(std::move(orbit));
  }
}

bool LeviContext::contains(std::size_t w) const {
  return std::binary_search(wM_.begin(), wM_.end(), w);
}

std::optional<int> LeviContext::find_ray(const Coords& ray) const {
  auto it = ray_index_.find(ray);
  if (it == ray_index_.end()) return std::nullopt;
  return it->second;
}

const RelativeReflection& LeviContext::reflection(int rel_idx) const {
  if (rel_idx < 0 || rel_idx >= (int)refl_.size())
    throw validation_error("not a relative root index");
  return refl_[rel_idx];
}

bool LeviContext::in_phi0(int rel_idx) const {
  return std::binary_search(phi0_.begin(), phi0_.end(), rel_idx);
}

std::pair<int, int> LeviContext::act(std::size_t w, int rel_idx) const {
  const IMatrix& mat = (*W_)[w].mat;
  QVec img = mat.apply(rel_[rel_idx].restriction);
  Coords ray = primitive_ray(img);
  auto it = ray_index_.find(ray);
  if (it != ray_index_.end()) return {it->second, +1};
  for (auto& v : ray) v = -v;
  it = ray_index_.find(ray);
  if (it == ray_index_.end()) throw internal_error("relative root image is not a relative root");
  return {it->second, -1};
}

bool LeviContext::acts_positively(std::size_t w, const std::vector<int>& rel_indices) const {
  for (int r : rel_indices)
    if (act(w, r).second < 0) return false;
  return true;
}

RelativeDecomposition LeviContext::decompose() const {
  RelativeDecomposition d;
  std::vector<std::size_t> gens;
  for (int r : phi0_) gens.push_back(refl_[r].element_id);
  d.w0 = W_->subgroup_closure(gens);
  for (std::size_t w : wM_)
    if (acts_positively(w, phi0_)) d.w1.push_back(w);
  // verify |W_M| = |W0| * |W1| with unique factorization: all forward
  // products must be distinct and exhaust W_M
  for (std::size_t u : d.w0)
    for (std::size_t v : d.w1) {
      std::size_t w = W_->compose(u, v);
      if (!std::binary_search(wM_.begin(), wM_.end(), w) || d.factor.count(w))
        throw internal_error("semidirect factorization of the relative Weyl group failed");
      d.factor.emplace(w, std::make_pair(u, v));
    }
  if (d.factor.size() != wM_.size())
    throw internal_error("relative Weyl group order mismatch in decomposition");
  return d;
}

int LeviContext::orbit_of(int rel_idx) const { return orbit_of_[rel_idx]; }

QVec LeviContext::coords_to_ambient(const QVec& am_coords) const {
  if ((int)am_coords.size() != dim())
    throw validation_error("twist coordinate length must equal dim a_M*");
  QVec wt(rs_->rank(), Rat(0));
  for (int k = 0; k < dim(); ++k) wt[off_[k]] = am_coords[k];
  return rs_->from_weight_coords(wt);
}

QVec LeviContext::ambient_to_coords(const QVec& ambient) const {
  QVec wt = rs_->to_weight_coords(ambient);
  for (int i : theta_M_)
    if (!wt[i].is_zero())
      throw internal_error("vector is not orthogonal to theta_M");
  QVec out(dim());
  for (int k = 0; k < dim(); ++k) out[k] = wt[off_[k]];
  return out;
}

IMat LeviContext::restricted_action(std::size_t w) const {
  int d = dim();
  IMat out(d, d);
  const IMatrix& mat = (*W_)[w].mat;
  for (int k = 0; k < d; ++k) {
    QVec img = mat.apply(rs_->fundamental_weight(off_[k]));
    QVec wt = rs_->to_weight_coords(img);
    for (int i : theta_M_)
      if (!wt[i].is_zero())
        throw internal_error("element does not preserve a_M*");
    for (int l = 0; l < d; ++l) {
      if (!wt[off_[l]].is_integral())
        throw internal_error("non-integral weight-lattice action");
      out.at(l, k) = wt[off_[l]].num();
    }
  }
  return out;
}

QVec LeviContext::coroot_functional(int rel_idx) const {
  const QVec& alpha = rel_[rel_idx].restriction;
  QVec out(dim());
  for (int k = 0; k < dim(); ++k)
    out[k] = rs_->coroot_pairing(rs_->fundamental_weight(off_[k]), alpha);
  return out;
}

Rat LeviContext::pair_with_coroot(const QVec& am_coords, int rel_idx) const {
  QVec f = coroot_functional(rel_idx);
  Rat acc(0);
  for (int k = 0; k < dim(); ++k) acc += f[k] * am_coords[k];
  return acc;
}

CosetFactorization bruhat_tits_cosets(const RootSystem& rs, const WeylGroup& W,
                                      const std::vector<int>& theta_M,
                                      const std::vector<int>& theta_L) {
  LeviContext ctxG = LeviContext::make(rs, W, theta_M);
  LeviContext ctxL = LeviContext::make(rs, W, theta_M, theta_L);

  // Phi_M^{L,0} seen inside the full relative system, via rays
  std::vector<int> l0_in_G;
  for (int r : ctxL.phi0()) {
    auto idx = ctxG.find_ray(ctxL.relative_roots()[r].ray);
    if (!idx) throw internal_error("L-relative root ray missing from the full system");
    l0_in_G.push_back(*idx);
  }

  CosetFactorization out;
  out.w_m_l = ctxL.group();
  for (std::size_t v : out.w_m_l)
    if (ctxL.acts_positively(v, ctxL.phi0())) out.w_m_l1.push_back(v);

  // X = {w in W_M : w.(Phi_M^{L,0})^+ > 0}, grouped into cosets of W_M^{L,1}
  std::set<std::size_t> covered;
  for (std::size_t w : ctxG.group()) {
    if (!ctxG.acts_positively(w, l0_in_G)) continue;
    if (covered.count(w)) continue;
    out.reps.push_back(w); // ids ascend in length, so the first hit is minimal
    for (std::size_t v : out.w_m_l1) covered.insert(W.compose(w, v));
  }

  for (std::size_t w : ctxG.group()) {
    int hits = 0;
    std::pair<std::size_t, std::size_t> uv{0, 0};
    for (std::size_t u : out.reps) {
      std::size_t v = W.compose(W.inverse(u), w);
      if (std::binary_search(out.w_m_l.begin(), out.w_m_l.end(), v)) {
        ++hits;
        uv = {u, v};
      }
    }
    if (hits != 1)
      throw internal_error("coset factorization is not unique");
    out.factor.emplace(w, uv);
  }
  if (out.reps.size() * out.w_m_l.size() != ctxG.group().size())
    throw internal_error("coset count mismatch in factorization");
  return out;
}

} // namespace weylred::relweyl
