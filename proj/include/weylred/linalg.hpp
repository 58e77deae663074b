#pragma once

#include <optional>
#include <vector>

#include "weylred/rat.hpp"

namespace weylred {

using QVec = std::vector<Rat>;

QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rat& c, const QVec& v);
bool is_zero(const QVec& v);

// Dense rational matrix, row major. Small sizes only.
struct QMat {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a((std::size_t)r * c) {}

  Rat& at(int r, int c) { return a[(std::size_t)r * cols + c]; }
  const Rat& at(int r, int c) const { return a[(std::size_t)r * cols + c]; }

  QVec apply(const QVec& v) const;
  QMat operator*(const QMat& rhs) const;
  static QMat identity(int n);
  QMat inverse() const; // throws internal_error if singular
};

int rank(QMat m); // by value: destroyed during elimination

struct SolveResult {
  enum Kind { Inconsistent, Unique, Underdetermined } kind;
  QVec x;   // populated when Unique
  int rank; // rank of the coefficient matrix
};

// Exact solution of A x = b.
SolveResult solve(const QMat& A, const QVec& b);

// Dense integer matrix for torsion systems.
struct IMat {
  int rows = 0;
  int cols = 0;
  std::vector<long long> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a((std::size_t)r * c, 0) {}

  long long& at(int r, int c) { return a[(std::size_t)r * cols + c]; }
  long long at(int r, int c) const { return a[(std::size_t)r * cols + c]; }
  bool is_zero() const;
};

struct SmithForm {
  std::vector<long long> diag; // nonnegative, d_i | d_{i+1}, zeros trailing
  QMat V;                      // unimodular column transform: A*V has Smith shape
  int rank = 0;
};

// Smith-style reduction tracking the right transform only; enough to solve
// A y ≡ 0 (mod 1) by reparametrizing y = V z.
SmithForm smith_normal_form(IMat A);

// All y in [0,1)^cols with A y ≡ 0 (mod 1). nullopt when the solution set is
// infinite (rank < cols). Results sorted, deduplicated.
std::optional<std::vector<QVec>> torsion_kernel_mod1(const IMat& A);

} // namespace weylred
