#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weylred/relweyl.hpp"

namespace weylred::inertial {

using relweyl::LeviContext;

/*
  Abstract model of an inertial datum (sigma, nu) on a standard Levi: a
  finite labeled W_M-set stands in for the ramified part of sigma, the twist
  holds the unramified part split into an exact rational real part and a
  torsion (mod 1) imaginary part, and per-orbit co-rank-one reducibility
  values feed the hyperplane bookkeeping. All arithmetic is exact.

  Twist coordinates live in a_M*, written in the basis of fundamental
  weights attached to the simple roots outside theta_M.
*/

struct Twist {
  QVec re; // arbitrary rationals
  QVec im; // reduced to [0,1) on construction
};

// Which definition of Phi_sigma^0 is in force.
enum class Phi0Mode { Principal, Stabilizer };

std::string mode_name(Phi0Mode m);

class InertialDatum {
public:
  // action: one permutation of labels per element of ctx.group(), listed in
  // the canonical (sorted-id) order. Validated as a group homomorphism.
  static InertialDatum make(LeviContext ctx, std::vector<std::string> labels,
                            std::vector<std::vector<int>> action, int base_label,
                            Twist twist,
                            std::map<int, std::vector<Rat>> red_points_by_orbit,
                            std::optional<Phi0Mode> mode = std::nullopt);

  const LeviContext& levi() const { return levi_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int base_label() const { return base_; }
  const Twist& twist() const { return twist_; }
  Phi0Mode mode() const { return mode_; }
  bool mode_defaulted() const { return mode_defaulted_; }
  const std::vector<int>& defaulted_orbits() const { return defaulted_orbits_; }
  const std::vector<Rat>& red_values(int orbit) const;

  // label permutation attached to a W_M element (ambient id)
  const std::vector<int>& action_of(std::size_t w) const;
  bool fixes_base(std::size_t w) const { return action_of(w)[base_] == base_; }

  InertialDatum with_twist(Twist t) const;
  InertialDatum transported(std::size_t u) const; // datum moved by u in W_M

private:
  LeviContext levi_;
  std::vector<std::string> labels_;
  std::map<std::size_t, std::vector<int>> action_;
  int base_ = 0;
  Twist twist_;
  std::map<int, std::vector<Rat>> red_;
  std::vector<int> defaulted_orbits_;
  Phi0Mode mode_ = Phi0Mode::Stabilizer;
  bool mode_defaulted_ = false;
};

struct StabilizerData {
  std::vector<std::size_t> w_sigma;  // elements fixing (label, twist)
  std::vector<int> phi_sigma0;       // positive relative indices
  std::vector<std::size_t> w_sigma0; // generated by their reflections
  std::vector<std::size_t> r_group;  // W_sigma^1
  bool modes_disagree = false;       // the two Phi_sigma^0 definitions differ here
};

// [OP] stabilizer: W_sigma, Phi_sigma^0 (per the datum's mode), W_sigma^0 and
// the R-group, with the semidirect factorization verified.
StabilizerData stabilizer(const InertialDatum& datum);

struct RedRoot {
  int rel_idx; // positive relative root index
  Rat value;   // the matched reducibility value |<re, alpha^vee>|
};

// [OP] corank_one_reducibility_set: Red(sigma) with a witnessing value per
// root. Roots are returned by their positive representatives.
std::vector<RedRoot> corank_one_reducibility_set(const InertialDatum& datum);

struct MullerVerdict {
  bool irreducible;
  std::optional<RedRoot> red_witness;       // set when a reducibility root exists
  std::optional<std::size_t> rgroup_witness; // set when the R-group is nontrivial
};

// [OP] muller_irreducible: true iff Red is empty and the R-group is trivial.
MullerVerdict muller_irreducible(const InertialDatum& datum);

// convenience builders
std::vector<std::vector<int>> trivial_action(const LeviContext& ctx, int nlabels);

// apply an integer matrix to rational coordinates
QVec mat_apply(const IMat& m, const QVec& v);
QVec mod1(QVec v);

} // namespace weylred::inertial
