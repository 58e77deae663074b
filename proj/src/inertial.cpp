#include "weylred/inertial.hpp"

#include <algorithm>
#include <set>

namespace weylred::inertial {

std::string mode_name(Phi0Mode m) {
  return m == Phi0Mode::Principal ? "principal" : "stabilizer";
}

QVec mat_apply(const IMat& m, const QVec& v) {
  QVec out(m.rows, Rat(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0 && !v[j].is_zero()) out[i] += Rat(m.at(i, j)) * v[j];
  return out;
}

QVec mod1(QVec v) {
  for (auto& c : v) c = c.mod1();
  return v;
}

InertialDatum InertialDatum::make(LeviContext ctx, std::vector<std::string> labels,
                                  std::vector<std::vector<int>> action, int base_label,
                                  Twist twist,
                                  std::map<int, std::vector<Rat>> red_points_by_orbit,
                                  std::optional<Phi0Mode> mode) {
  InertialDatum d;
  d.levi_ = std::move(ctx);
  if (!d.levi_.levi_is_full())
    throw validation_error("an inertial datum needs the full ambient Levi context");
  if (labels.empty()) throw validation_error("label set must be nonempty");
  {
    std::set<std::string> dedup(labels.begin(), labels.end());
    if (dedup.size() != labels.size()) throw validation_error("duplicate labels");
  }
  d.labels_ = std::move(labels);
  int nl = (int)d.labels_.size();
  if (base_label < 0 || base_label >= nl)
    throw validation_error("base label out of range");
  d.base_ = base_label;

  const auto& group = d.levi_.group();
  if (action.size() != group.size())
    throw validation_error("action table must list one permutation per element of W_M (got " +
                           std::to_string(action.size()) + ", need " +
                           std::to_string(group.size()) + ")");
  for (std::size_t k = 0; k < group.size(); ++k) {
    const auto& perm = action[k];
    if ((int)perm.size() != nl) throw validation_error("action permutation has wrong size");
    std::vector<bool> seen(nl, false);
    for (int v : perm) {
      if (v < 0 || v >= nl || seen[v])
        throw validation_error("action entry is not a permutation of the labels");
      seen[v] = true;
    }
    d.action_.emplace(group[k], perm);
  }
  // the table must be a homomorphism: action(u v) = action(u) o action(v)
  const auto& W = d.levi_.weyl();
  for (std::size_t u : group)
    for (std::size_t v : group) {
      const auto& pu = d.action_.at(u);
      const auto& pv = d.action_.at(v);
      const auto& puv = d.action_.at(W.compose(u, v));
      for (int x = 0; x < nl; ++x)
        if (puv[x] != pu[pv[x]])
          throw validation_error("action table is not a group homomorphism");
    }
  {
    const auto& pid = d.action_.at(W.identity_id());
    for (int x = 0; x < nl; ++x)
      if (pid[x] != x) throw validation_error("action of the identity must be trivial");
  }

  int dim = d.levi_.dim();
  if ((int)twist.re.size() != dim || (int)twist.im.size() != dim)
    throw validation_error("twist coordinates must have length dim a_M* = " +
                           std::to_string(dim));
  twist.im = mod1(std::move(twist.im));
  d.twist_ = std::move(twist);

  const auto& orbits = d.levi_.orbits();
  // reducibility values, keyed per orbit of Phi_M^0; missing orbits default
  // to {1} and the caller is told which ones via defaulted_orbits()
  std::set<int> phi0_orbits;
  for (int r : d.levi_.phi0()) phi0_orbits.insert(d.levi_.orbit_of(r));
  for (const auto& [orbit, vals] : red_points_by_orbit) {
    if (orbit < 0 || orbit >= (int)orbits.size())
      throw validation_error("red_points orbit id out of range");
    if (!phi0_orbits.count(orbit))
      throw validation_error("red_points keyed on an orbit outside Phi_M^0");
    for (const auto& v : vals)
      if (v.sign() < 0) throw validation_error("reducibility values must be nonnegative");
    auto sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    d.red_.emplace(orbit, std::move(sorted));
  }
  for (int orbit : phi0_orbits)
    if (!d.red_.count(orbit)) {
      d.red_.emplace(orbit, std::vector<Rat>{Rat(1)});
      d.defaulted_orbits_.push_back(orbit);
    }

  if (mode) {
    d.mode_ = *mode;
  } else {
    d.mode_ = d.levi_.theta_M().empty() ? Phi0Mode::Principal : Phi0Mode::Stabilizer;
    d.mode_defaulted_ = true;
  }
  return d;
}

const std::vector<Rat>& InertialDatum::red_values(int orbit) const {
  auto it = red_.find(orbit);
  if (it == red_.end()) throw internal_error("no reducibility values for this orbit");
  return it->second;
}

const std::vector<int>& InertialDatum::action_of(std::size_t w) const {
  auto it = action_.find(w);
  if (it == action_.end()) throw internal_error("element outside W_M in action lookup");
  return it->second;
}

InertialDatum InertialDatum::with_twist(Twist t) const {
  InertialDatum d = *this;
  int dim = levi_.dim();
  if ((int)t.re.size() != dim || (int)t.im.size() != dim)
    throw validation_error("twist coordinates must have length dim a_M*");
  t.im = mod1(std::move(t.im));
  d.twist_ = std::move(t);
  return d;
}

InertialDatum InertialDatum::transported(std::size_t u) const {
  if (!levi_.contains(u)) throw validation_error("transport element must lie in W_M");
  InertialDatum d = *this;
  IMat ru = levi_.restricted_action(u);
  d.twist_.re = mat_apply(ru, twist_.re);
  d.twist_.im = mod1(mat_apply(ru, twist_.im));
  d.base_ = action_of(u)[base_];
  return d;
}

namespace {

bool fixes_twist(const InertialDatum& datum, std::size_t w) {
  const auto& ctx = datum.levi();
  IMat rw = ctx.restricted_action(w);
  if (mat_apply(rw, datum.twist().re) != datum.twist().re) return false;
  QVec im2 = mod1(mat_apply(rw, datum.twist().im));
  return im2 == datum.twist().im;
}

// the alpha-component of the imaginary part is trivial mod 1
bool im_component_trivial(const InertialDatum& datum, int rel_idx) {
  const auto& ctx = datum.levi();
  return ctx.pair_with_coroot(datum.twist().im, rel_idx).mod1().is_zero();
}

std::vector<int> phi_sigma0_in_mode(const InertialDatum& datum, Phi0Mode mode,
                                    const std::vector<std::size_t>& w_sigma) {
  const auto& ctx = datum.levi();
  std::vector<int> out;
  for (int r : ctx.phi0()) {
    const auto& rf = ctx.reflection(r);
    if (mode == Phi0Mode::Principal) {
      if (datum.fixes_base(rf.element_id) &&
          ctx.pair_with_coroot(datum.twist().re, r).is_zero() &&
          im_component_trivial(datum, r))
        out.push_back(r);
    } else {
      if (std::binary_search(w_sigma.begin(), w_sigma.end(), rf.element_id))
        out.push_back(r);
    }
  }
  return out;
}

} // namespace

StabilizerData stabilizer(const InertialDatum& datum) {
  const auto& ctx = datum.levi();
  const auto& W = ctx.weyl();
  StabilizerData out;
  for (std::size_t w : ctx.group())
    if (datum.fixes_base(w) && fixes_twist(datum, w)) out.w_sigma.push_back(w);

  out.phi_sigma0 = phi_sigma0_in_mode(datum, datum.mode(), out.w_sigma);
  auto other = phi_sigma0_in_mode(datum,
                                  datum.mode() == Phi0Mode::Principal ? Phi0Mode::Stabilizer
                                                                      : Phi0Mode::Principal,
                                  out.w_sigma);
  out.modes_disagree = other != out.phi_sigma0;

  std::vector<std::size_t> gens;
  for (int r : out.phi_sigma0) gens.push_back(ctx.reflection(r).element_id);
  out.w_sigma0 = W.subgroup_closure(gens);
  for (std::size_t w : out.w_sigma)
    if (ctx.acts_positively(w, out.phi_sigma0)) out.r_group.push_back(w);

  // semidirect factorization W_sigma = W_sigma^0 . R_sigma, verified
  for (std::size_t u : out.w_sigma0)
    if (!std::binary_search(out.w_sigma.begin(), out.w_sigma.end(), u))
      throw validation_error(
          "Phi_sigma^0 reflections do not all fix sigma; the '" + mode_name(datum.mode()) +
          "' mode is unstable for this datum (try mode \"stabilizer\")");
  for (std::size_t w : out.w_sigma) {
    int hits = 0;
    for (std::size_t u : out.w_sigma0) {
      std::size_t v = W.compose(W.inverse(u), w);
      if (std::binary_search(out.r_group.begin(), out.r_group.end(), v)) ++hits;
    }
    if (hits != 1)
      throw validation_error("W_sigma does not factor as W_sigma^0 x R_sigma for this datum");
  }
  return out;
}

std::vector<RedRoot> corank_one_reducibility_set(const InertialDatum& datum) {
  const auto& ctx = datum.levi();
  std::vector<RedRoot> out;
  for (int r : ctx.phi0()) {
    const auto& rf = ctx.reflection(r);
    if (!datum.fixes_base(rf.element_id)) continue;
    if (!im_component_trivial(datum, r)) continue;
    Rat v = abs(ctx.pair_with_coroot(datum.twist().re, r));
    const auto& reds = datum.red_values(ctx.orbit_of(r));
    if (std::binary_search(reds.begin(), reds.end(), v)) out.push_back({r, v});
  }
  return out;
}

MullerVerdict muller_irreducible(const InertialDatum& datum) {
  MullerVerdict v{true, std::nullopt, std::nullopt};
  auto red = corank_one_reducibility_set(datum);
  if (!red.empty()) {
    v.irreducible = false;
    v.red_witness = red.front();
  }
  auto st = stabilizer(datum);
  if (st.r_group.size() > 1) {
    v.irreducible = false;
    for (std::size_t w : st.r_group)
      if (w != datum.levi().weyl().identity_id()) {
        v.rgroup_witness = w;
        break;
      }
  }
  return v;
}

std::vector<std::vector<int>> trivial_action(const LeviContext& ctx, int nlabels) {
  std::vector<int> id(nlabels);
  for (int i = 0; i < nlabels; ++i) id[i] = i;
  return std::vector<std::vector<int>>(ctx.group().size(), id);
}

} // namespace weylred::inertial
