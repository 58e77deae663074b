#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "weylred/linalg.hpp"

namespace weylred::rootsys {

/*
  Finite crystallographic root systems of types A-G in the simple-root basis.

  Conventions, fixed once and used everywhere downstream:

    - cartan[i][j] = <alpha_j, alpha_i^vee>, so the simple reflection acts by
      s_i(v)_i = v_i - sum_j cartan[i][j] v_j and leaves the other
      coordinates alone.
    - sym[i] = d_i with d_i * cartan[i][j] = d_j * cartan[j][i]; the invariant
      form is (alpha_i, alpha_j) = d_i * cartan[i][j], normalized so short
      roots of each component have squared length 2 (min d_i = 1).
    - roots are integer vectors in the simple-root basis, all-nonnegative or
      all-nonpositive.
    - Weyl elements are identified by their integer action matrix on
      simple-root coordinates; reduced words are cached witnesses, never the
      identity of an element.
*/

using Coords = std::vector<int>;

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

Series parse_series(const std::string& s); // validates
char series_char(Series s);

struct CartanDatum {
  Series series;
  int rank = 0;
  std::vector<std::vector<int>> cartan; // cartan[i][j] = <alpha_j, alpha_i^vee>
  std::vector<int> sym;                 // d_i
};

// Square integer matrix acting on simple-root coordinates, column j = image
// of alpha_j.
struct IMatrix {
  int n = 0;
  std::vector<int> a;

  IMatrix() = default;
  explicit IMatrix(int n_) : n(n_), a((std::size_t)n_ * n_, 0) {}
  static IMatrix identity(int n);

  int& at(int r, int c) { return a[(std::size_t)r * n + c]; }
  int at(int r, int c) const { return a[(std::size_t)r * n + c]; }

  IMatrix operator*(const IMatrix& rhs) const; // composition: (*this) after rhs
  Coords apply(const Coords& v) const;
  QVec apply(const QVec& v) const;
  bool operator==(const IMatrix& rhs) const { return n == rhs.n && a == rhs.a; }
  bool is_identity() const;
};

struct IMatrixHash {
  std::size_t operator()(const IMatrix& m) const noexcept;
};

using Word = std::vector<std::uint8_t>;

struct WeylElement {
  IMatrix mat;
  Word word; // reduced, lexicographically minimal
  int length() const { return (int)word.size(); }
};

class RootSystem {
public:
  // [OP] build_root_system. Rejects invalid (series, rank): B/C need rank>=2,
  // D rank>=3, E in {6,7,8}, F=4, G=2. No degenerate aliasing.
  static RootSystem build(Series s, int rank);
  static RootSystem build(const std::string& series, int rank);

  const CartanDatum& cartan_datum() const { return cartan_; }
  int rank() const { return cartan_.rank; }
  Series series() const { return cartan_.series; }
  std::string name() const;

  // positives first (sorted by height then lex), then their negatives in the
  // same order; root id is the index into this list.
  const std::vector<Coords>& roots() const { return roots_; }
  int num_positive() const { return (int)roots_.size() / 2; }
  bool is_positive_id(int id) const { return id < num_positive(); }
  int negative_of(int id) const {
    return id < num_positive() ? id + num_positive() : id - num_positive();
  }
  std::optional<int> root_id(const Coords& c) const;
  bool is_root(const Coords& c) const { return root_id(c).has_value(); }
  static bool coords_positive(const Coords& c);

  // invariant form and pairings (exact)
  long long form(const Coords& x, const Coords& y) const;
  Rat form(const QVec& x, const QVec& y) const;
  long long coroot_pairing(const Coords& x, const Coords& beta) const; // <x, beta^vee>
  Rat coroot_pairing(const QVec& x, const QVec& beta) const;

  IMatrix simple_reflection(int i) const;
  IMatrix reflection(const Coords& beta) const; // w_beta for any root

  // weight-coordinate helpers: wt(v)_i = <v, alpha_i^vee>
  QVec to_weight_coords(const QVec& root_coords) const;
  QVec from_weight_coords(const QVec& wt_coords) const;
  QVec fundamental_weight(int j) const; // in root coords

  int length(const IMatrix& w) const; // inversion count over positive roots
  Word canonical_word(IMatrix w) const;

private:
  CartanDatum cartan_;
  std::vector<Coords> roots_;
  std::unordered_map<std::string, int> root_index_;
  QMat cartan_q_;     // cartan as rational matrix
  QMat cartan_inv_;   // its inverse

  void finalize();
  static std::string key_of(const Coords& c);
};

// [OP] longest_element: longest element of the parabolic W_theta, computed
// greedily; empty theta gives the identity.
WeylElement longest_element(const RootSystem& rs, const std::vector<int>& theta);

// Longest element of the reflection subgroup generated by an arbitrary
// reflection-closed set of roots (given by ids, both signs or positives).
// Positivity is the ambient one. Used for relative reflections.
IMatrix subsystem_longest_element(const RootSystem& rs, const std::vector<int>& root_ids);

// Canonical simple system of a reflection-closed subset (positive ids).
std::vector<int> subsystem_simples(const RootSystem& rs, const std::vector<int>& positive_ids);

class WeylGroup {
public:
  // [OP] enumerate_weyl_group: BFS by length, ties broken lexicographically
  // by word. Throws cap_exceeded when |W| would pass the cap.
  static WeylGroup enumerate(const RootSystem& rs, std::size_t cap = kDefaultCap);
  static constexpr std::size_t kDefaultCap = 2'000'000;

  std::size_t size() const { return elems_.size(); }
  const WeylElement& operator[](std::size_t id) const { return elems_[id]; }
  const RootSystem& root_system() const { return *rs_; }

  std::optional<std::size_t> find(const IMatrix& m) const;
  std::size_t id_of(const IMatrix& m) const; // throws internal_error if absent
  std::size_t compose(std::size_t a, std::size_t b) const; // a after b
  std::size_t inverse(std::size_t a) const;
  std::size_t identity_id() const { return 0; }

  // Elements of the parabolic subgroup W_theta, as sorted ids.
  std::vector<std::size_t> parabolic(const std::vector<int>& theta) const;

  // Closure of a set of ids under composition; sorted. Throws cap_exceeded
  // if it would exceed `cap` elements (0 = no cap).
  std::vector<std::size_t> subgroup_closure(std::vector<std::size_t> gens,
                                            std::size_t cap = 0) const;

private:
  const RootSystem* rs_ = nullptr;
  std::vector<WeylElement> elems_;
  std::unordered_map<IMatrix, std::size_t, IMatrixHash> index_;
};

void validate_theta(const RootSystem& rs, const std::vector<int>& theta);

// Connected components of the Dynkin subdiagram on theta, each sorted,
// ordered by smallest member.
std::vector<std::vector<int>> dynkin_components(const RootSystem& rs,
                                                const std::vector<int>& theta);

// Simple indices appearing in the cached reduced word (the support of w:
// the smallest parabolic containing it).
std::vector<int> word_support(const WeylElement& w);

} // namespace weylred::rootsys
