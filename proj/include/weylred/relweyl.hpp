#pragma once

#include <map>
#include <vector>

#include "weylred/rootsys.hpp"

namespace weylred::relweyl {

using rootsys::Coords;
using rootsys::IMatrix;
using rootsys::RootSystem;
using rootsys::WeylGroup;

/*
  Relative root systems and relative Weyl groups for a standard Levi pair
  theta_M ⊆ theta_L ⊆ Delta.

  A relative root is the set of roots of Phi^L (off Phi^M) whose orthogonal
  projections to span(theta_M)^perp lie on a common ray. We store one record
  per positive ray: the primitive integer direction, the shortest occurring
  projection (the reduced relative root), and the positive lifts. Negatives
  mirror the positives and are handled by sign.

  The relative Weyl group of M in L is realized as the Weyl elements of W^L
  mapping theta_M onto itself; those are exactly the minimal-length
  representatives of N_L(M)/M inside W.
*/

struct RelativeRoot {
  QVec restriction;       // reduced representative on the positive ray
  Coords ray;             // primitive integer direction
  std::vector<int> lifts; // ambient positive root ids projecting onto the ray
  bool divisible = false; // a proper multiple of `restriction` also occurs
};

struct RelativeReflection {
  int root = -1;          // positive relative root index
  IMatrix mat;            // w0^{M_alpha} * w0^M
  std::size_t element_id; // id in the ambient Weyl group
  bool normalizes_levi = false;
};

struct RelativeDecomposition {
  std::vector<std::size_t> w0; // subgroup generated by normalizing reflections
  std::vector<std::size_t> w1; // elements preserving (Phi_M^0)^+
  // unique factorization w = u * v with u in w0, v in w1
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> factor;
};

class LeviContext {
public:
  static LeviContext make(const RootSystem& rs, const WeylGroup& W,
                          std::vector<int> theta_M, std::vector<int> theta_L);
  static LeviContext make(const RootSystem& rs, const WeylGroup& W,
                          std::vector<int> theta_M); // theta_L = Delta

  const RootSystem& root_system() const { return *rs_; }
  const WeylGroup& weyl() const { return *W_; }
  const std::vector<int>& theta_M() const { return theta_M_; }
  const std::vector<int>& theta_L() const { return theta_L_; }
  bool levi_is_full() const { return (int)theta_L_.size() == rs_->rank(); }

  // [OP] relative_roots: positive rays only; negatives mirror.
  const std::vector<RelativeRoot>& relative_roots() const { return rel_; }
  std::optional<int> find_ray(const Coords& ray) const;

  // [OP] relative_reflection (alpha given as positive relative index).
  const RelativeReflection& reflection(int rel_idx) const;

  // [OP] phi_M0: positive relative roots contributing reflections.
  const std::vector<int>& phi0() const { return phi0_; }
  bool in_phi0(int rel_idx) const;

  // [OP] relative_weyl_group: sorted ambient element ids.
  const std::vector<std::size_t>& group() const { return wM_; }
  bool contains(std::size_t w) const;

  // [OP] decompose (verifies the unique factorization exhaustively).
  RelativeDecomposition decompose() const;

  // action of w on the relative root with positive index rel_idx:
  // (image positive index, sign)
  std::pair<int, int> act(std::size_t w, int rel_idx) const;
  bool acts_positively(std::size_t w, const std::vector<int>& rel_indices) const;

  // Phi^M as ambient root ids (both signs).
  const std::vector<int>& levi_roots() const { return phiM_; }

  // W_M-orbits of the +/- pairs of relative roots (indices are positive
  // representatives); orbit ids are indices into orbits().
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  int orbit_of(int rel_idx) const;

  // a_M* bookkeeping (full ambient space; independent of theta_L)
  int dim() const { return (int)off_.size(); }
  const std::vector<int>& off_indices() const { return off_; }
  QVec coords_to_ambient(const QVec& am_coords) const; // sum c_j varpi_j
  QVec ambient_to_coords(const QVec& ambient) const;   // weight coords at off indices
  IMat restricted_action(std::size_t w) const;         // integer action on those coords
  QVec coroot_functional(int rel_idx) const; // j -> <varpi_j, alpha^vee>
  Rat pair_with_coroot(const QVec& am_coords, int rel_idx) const;

private:
  const RootSystem* rs_ = nullptr;
  const WeylGroup* W_ = nullptr;
  std::vector<int> theta_M_, theta_L_, off_;
  std::vector<int> phiM_;
  std::vector<RelativeRoot> rel_;
  std::vector<RelativeReflection> refl_;
  std::vector<int> phi0_;
  std::vector<std::size_t> wM_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> orbit_of_;
  std::map<Coords, int> ray_index_;

  void build();
};

// [OP] bruhat_tits_cosets: representatives of W_M modulo W_M^L picked from
// {w : w(Phi_M^{L,0})^+ > 0}, plus the verified unique factorization.
struct CosetFactorization {
  std::vector<std::size_t> reps;   // canonical minimal-length representatives
  std::vector<std::size_t> w_m_l;  // W_M^L
  std::vector<std::size_t> w_m_l1; // W_M^{L,1}
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> factor; // w -> (u, v)
};

CosetFactorization bruhat_tits_cosets(const RootSystem& rs, const WeylGroup& W,
                                      const std::vector<int>& theta_M,
                                      const std::vector<int>& theta_L);

} // namespace weylred::relweyl
