#pragma once

#include <functional>

#include "weylred/inertial.hpp"

namespace weylred::hierarchy {

using inertial::InertialDatum;
using inertial::RedRoot;
using inertial::Twist;
using relweyl::LeviContext;

/*
  The Levi-level criteria: does all reducibility of the induction live
  inside a given intermediate Levi theta_L, and what does that force?

  The key count combinator takes everything downstream of a co-rank-one
  situation from a pluggable oracle; the default oracle scores 2 at a
  reducibility point and 1 otherwise, and R-group contributions are counted
  by the order of the piecewise projections. These are bookkeeping devices
  for the hierarchy, not claims to compute true Jordan-Hoelder multisets.
*/

struct HypothesisReport {
  std::vector<int> theta_L;
  bool cond_rank_one = false;
  std::vector<int> offending_roots; // positive relative indices outside Phi_M^{L,0}
  bool cond_r_group = false;
  std::vector<std::size_t> offending_elements; // R-group elements outside W_M^L
  bool holds = false;
};

// [OP] check_working_hypothesis
HypothesisReport check_working_hypothesis(const InertialDatum& datum,
                                          std::vector<int> theta_L);

struct MinimalLevi {
  std::vector<int> theta_L;
  HypothesisReport report;
  std::vector<int> seed; // theta_M + supports of Red lifts and R-group words
  // maximal proper sub-Levis above the seed, all verified to fail
  std::vector<std::vector<int>> rejected_below;
};

// [OP] minimal_qualifying_levi: smallest passing theta_L above the seed,
// smallest size first, lexicographic tie-break; Delta always qualifies.
MinimalLevi minimal_qualifying_levi(const InertialDatum& datum);

// count for one co-rank-one situation; in_red tells whether the root sits in
// Red(sigma), value is the matched reducibility value when it does
using RankOneOracle = std::function<long long(int rel_idx, bool in_red, const Rat& value)>;

struct PieceCount {
  std::vector<int> piece; // simple indices of the irreducible piece of theta_L
  long long red_factor = 1;
  long long r_factor = 1;
  long long count = 1;
};

struct JHCount {
  std::vector<int> theta_L;
  std::vector<PieceCount> per_piece;
  long long total = 1;
  bool r_group_nontrivial = false;    // flagged per the open counting question
  bool r_group_product_pattern = true; // |R_sigma| = prod |proj_i(R_sigma)|
  bool agrees_with_full_level = true;  // same total computed at theta_L = Delta
};

RankOneOracle default_rank_one_oracle();

// [OP] jh_count. Throws validation_error when the hypothesis fails at
// theta_L (use check_working_hypothesis for the failing report).
JHCount jh_count(const InertialDatum& datum, std::vector<int> theta_L,
                 const RankOneOracle& oracle = default_rank_one_oracle());

struct SigmaComponent {
  std::vector<int> rel_roots;      // positive relative indices of Phi_{sigma,i}
  std::vector<int> levi_root_ids;  // ambient roots of the Levi closure M_i
  std::optional<std::vector<int>> theta; // present when M_i is standard
};

// [OP] sigma_components: Phi_sigma split by the orthogonality graph, each
// piece with its Levi closure C_G((cap Ker alpha)^0).
std::vector<SigmaComponent> sigma_components(const InertialDatum& datum);

struct RedHyperplane {
  int rel_idx = -1; // positive relative root
  int orbit = -1;
  QVec normal;      // coroot functional on a_M* coordinates
  Rat value;        // the signed reducibility value c
};

struct TorsionCondition {
  std::size_t element;  // label-fixing candidate R-group element, != id
  IMat system;          // restricted action minus identity
};

struct ReducibilityLocus {
  std::vector<RedHyperplane> hyperplanes;
  std::vector<TorsionCondition> torsion_conditions;
  Twist generic_witness;
  int witness_sample_index = -1;
};

// [OP] reducibility_locus: all conditions under which the Muller verdict can
// fail as the twist varies; every emitted condition is nontrivial, and a
// deterministically sampled twist off the locus is returned as a witness.
ReducibilityLocus reducibility_locus(const InertialDatum& datum);

// exact membership test of a twist in the emitted locus
bool locus_contains(const InertialDatum& datum, const ReducibilityLocus& locus,
                    const Twist& t);

// deterministic rational sample stream (coordinates 1/p over increasing
// primes), k = 0, 1, 2, ...
Twist deterministic_twist_sample(const LeviContext& ctx, int k);

// a point on the given hyperplane with zero imaginary part
Twist hyperplane_point(const InertialDatum& datum, const RedHyperplane& h);

} // namespace weylred::hierarchy
