#pragma once

#include "weylred/hierarchy.hpp"

namespace weylred::exponents {

using hierarchy::MinimalLevi;
using inertial::InertialDatum;
using relweyl::LeviContext;
using rootsys::RootSystem;
using rootsys::WeylGroup;

/*
  Finite enumeration of candidate special exponents: real parts from
  full-rank systems of reducibility hyperplanes and block-equality
  conditions, imaginary parts from torsion systems of candidate R-group
  elements. Everything is exact; every emitted solution carries a
  certificate naming the full-rank subsystem it solves.

  Block functionals: each irreducible piece Theta_i of theta_M gets
  e_i(x) = sum over k in Theta_i of the alpha_k-coordinate of x, i.e. the
  pairing with the sum of fundamental coweights of the piece. This fixes
  the "up to scalar" normalization; conditions whose realized normal
  vanishes on a_M* are dropped as trivial.
*/

// A permutation of {±1, ..., ±n} commuting with negation; cycles are taken
// modulo the global sign flip (a_1 ... a_k) = ((-a_1) ... (-a_k)).
class SignedPermutation {
public:
  static SignedPermutation identity(int n);
  // images of +1..+n, entries in {±1..±n}
  static SignedPermutation from_images(std::vector<int> img);
  static SignedPermutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int degree() const { return (int)img_.size(); }
  int image(int a) const; // works for negative symbols too
  SignedPermutation compose(const SignedPermutation& rhs) const; // this after rhs
  bool operator==(const SignedPermutation& rhs) const { return img_ == rhs.img_; }
  bool operator<(const SignedPermutation& rhs) const { return img_ < rhs.img_; }
  bool is_identity() const;

  // canonical cycle list: one representative per mirror pair, fixed symbols
  // omitted, deterministic rotation and ordering
  std::vector<std::vector<int>> canonical_cycles() const;
  std::string str() const;

private:
  std::vector<int> img_;
};

// [OP] theta_pieces (same decomposition the hierarchy module uses).
std::vector<std::vector<int>> theta_pieces(const RootSystem& rs,
                                           const std::vector<int>& theta);

// [OP] signed_embedding: how a subgroup of W_M permutes the pieces of
// theta_M, with signs. Throws internal_error if an element fails to
// preserve the decomposition (a model inconsistency).
struct SignedEmbedding {
  std::vector<std::vector<int>> pieces;
  std::vector<std::pair<std::size_t, SignedPermutation>> images; // per element
  bool homomorphism_verified = false;
};
SignedEmbedding signed_embedding(const LeviContext& ctx,
                                 const std::vector<std::size_t>& subgroup);

// [OP] associated_roots: for each canonical cycle (a_{i_1} ... a_{i_k}) all
// pairwise differences e_{a_j} - e_{a_l}, j < l, with e_{-i} = -e_i; vectors
// live in the piece space Z^n, reduced to primitive sign-normalized
// representatives and deduplicated.
std::vector<std::vector<int>> associated_roots(const SignedPermutation& s);

// [OP] span_test: do the reducibility coroots plus the R-group block
// conditions span a_M*? On failure the qualifying Levi witness explains why
// no discrete-series support is possible.
struct SpanTest {
  bool spans = false;
  int rank = 0;
  int dim = 0;
  std::vector<QVec> normals;
  std::optional<MinimalLevi> witness; // set when spans is false
};
SpanTest span_test(const InertialDatum& datum);

// condition pool entries for the exponent enumeration
struct ExponentCondition {
  QVec normal;      // functional on a_M* coordinates, never zero
  Rat value;        // affine right-hand side (0 for block equalities)
  int rel_idx = -1; // relative root for reducibility conditions, -1 otherwise
  int orbit = -1;
  bool from_r_group = false;
};

struct RealExponent {
  QVec x;
  std::vector<int> conditions; // indices of the full-rank defining subsystem
};

struct TorsionPart {
  QVec y;
  std::vector<int> candidates; // which R-group candidates produced it
};

struct TorsionCertificate {
  int candidate = -1;
  std::vector<long long> diag; // invariant factors of the stacked system
};

struct ExponentSet {
  std::vector<ExponentCondition> conditions;
  std::vector<RealExponent> real_parts;
  std::vector<TorsionPart> im_parts;
  std::vector<TorsionCertificate> torsion_certificates;
  std::vector<int> skipped_candidates; // torsion systems with free directions
  std::string normalization_note;
};

// all subgroups of the group generated by `elements` (sorted ambient ids),
// as sorted id lists; deterministic order (size, then lexicographic)
std::vector<std::vector<std::size_t>> all_subgroups(const WeylGroup& W,
                                                    const std::vector<std::size_t>& elements,
                                                    std::size_t cap = 100000);

// [OP] enumerate_special_exponents. The reducibility table must cover every
// orbit of Phi_M^0 (keys are orbit ids of the context); candidates default
// to all subgroups of W_M when empty.
ExponentSet enumerate_special_exponents(const LeviContext& ctx,
                                        const std::map<int, std::vector<Rat>>& red_table,
                                        std::vector<std::vector<std::size_t>> candidates = {});

} // namespace weylred::exponents
