#include "weylred/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace weylred {

QVec operator+(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec operator-(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec operator*(const Rat& c, const QVec& v) {
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

QVec QMat::apply(const QVec& v) const {
  QVec r(rows, Rat(0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

QMat QMat::operator*(const QMat& rhs) const {
  QMat r(rows, rhs.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < rhs.cols; ++j)
        if (!rhs.at(k, j).is_zero()) r.at(i, j) += at(i, k) * rhs.at(k, j);
    }
  return r;
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

QMat QMat::inverse() const {
  if (rows != cols) throw internal_error("QMat::inverse: not square");
  int n = rows;
  QMat work = *this;
  QMat inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!work.at(r, col).is_zero()) { pivot = r; break; }
    if (pivot < 0) throw internal_error("QMat::inverse: singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(work.at(col, j), work.at(pivot, j));
      std::swap(inv.at(col, j), inv.at(pivot, j));
    }
    Rat p = work.at(col, col);
    for (int j = 0; j < n; ++j) {
      work.at(col, j) /= p;
      inv.at(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || work.at(r, col).is_zero()) continue;
      Rat f = work.at(r, col);
      for (int j = 0; j < n; ++j) {
        work.at(r, j) -= f * work.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

int rank(QMat m) {
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; ++col) {
    int pivot = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) { pivot = i; break; }
    if (pivot < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(pivot, j));
    Rat p = m.at(r, col);
    for (int i = r + 1; i < m.rows; ++i) {
      if (m.at(i, col).is_zero()) continue;
      Rat f = m.at(i, col) / p;
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

SolveResult solve(const QMat& A, const QVec& b) {
  int m = A.rows, n = A.cols;
  QMat aug(m, n + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, n) = b[i];
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < n && r < m; ++col) {
    int pivot = -1;
    for (int i = r; i < m; ++i)
      if (!aug.at(i, col).is_zero()) { pivot = i; break; }
    if (pivot < 0) continue;
    for (int j = 0; j <= n; ++j) std::swap(aug.at(r, j), aug.at(pivot, j));
    Rat p = aug.at(r, col);
    for (int j = col; j <= n; ++j) aug.at(r, j) /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || aug.at(i, col).is_zero()) continue;
      Rat f = aug.at(i, col);
      for (int j = col; j <= n; ++j) aug.at(i, j) -= f * aug.at(r, j);
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (int i = r; i < m; ++i)
    if (!aug.at(i, n).is_zero()) return {SolveResult::Inconsistent, {}, r};
  if (r < n) return {SolveResult::Underdetermined, {}, r};
  QVec x(n, Rat(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = aug.at(i, n);
  return {SolveResult::Unique, x, r};
}

bool IMat::is_zero() const {
  for (long long v : a)
    if (v != 0) return false;
  return true;
}

namespace {

long long checked_mul(long long a, long long b) {
  __int128 p = (__int128)a * b;
  if (p > INT64_MAX || p < INT64_MIN) throw internal_error("IMat: overflow");
  return (long long)p;
}

long long checked_add(long long a, long long b) {
  __int128 s = (__int128)a + b;
  if (s > INT64_MAX || s < INT64_MIN) throw internal_error("IMat: overflow");
  return (long long)s;
}

} // namespace

SmithForm smith_normal_form(IMat A) {
  int m = A.rows, n = A.cols;
  QMat V = QMat::identity(n);
  auto col_swap = [&](int c1, int c2) {
    for (int i = 0; i < m; ++i) std::swap(A.at(i, c1), A.at(i, c2));
    for (int i = 0; i < n; ++i) std::swap(V.at(i, c1), V.at(i, c2));
  };
  auto col_addmul = [&](int dst, int src, long long f) {
    for (int i = 0; i < m; ++i)
      A.at(i, dst) = checked_add(A.at(i, dst), checked_mul(f, A.at(i, src)));
    for (int i = 0; i < n; ++i) V.at(i, dst) += Rat(f) * V.at(i, src);
  };
  auto col_negate = [&](int c) {
    for (int i = 0; i < m; ++i) A.at(i, c) = -A.at(i, c);
    for (int i = 0; i < n; ++i) V.at(i, c) = -V.at(i, c);
  };
  auto row_swap = [&](int r1, int r2) {
    for (int j = 0; j < n; ++j) std::swap(A.at(r1, j), A.at(r2, j));
  };
  auto row_addmul = [&](int dst, int src, long long f) {
    for (int j = 0; j < n; ++j)
      A.at(dst, j) = checked_add(A.at(dst, j), checked_mul(f, A.at(src, j)));
  };

  int t = std::min(m, n);
  int k = 0;
  for (; k < t; ++k) {
    // locate a nonzero pivot in the lower-right block
    int pr = -1, pc = -1;
    for (int i = k; i < m && pr < 0; ++i)
      for (int j = k; j < n; ++j)
        if (A.at(i, j) != 0) { pr = i; pc = j; break; }
    if (pr < 0) break;
    row_swap(k, pr);
    col_swap(k, pc);
    // kill the rest of row k and column k
    bool again = true;
    while (again) {
      again = false;
      for (int i = k + 1; i < m; ++i) {
        if (A.at(i, k) == 0) continue;
        long long q = A.at(i, k) / A.at(k, k);
        row_addmul(i, k, -q);
        if (A.at(i, k) != 0) { row_swap(k, i); again = true; }
      }
      for (int j = k + 1; j < n; ++j) {
        if (A.at(k, j) == 0) continue;
        long long q = A.at(k, j) / A.at(k, k);
        col_addmul(j, k, -q);
        if (A.at(k, j) != 0) { col_swap(k, j); again = true; }
      }
    }
    if (A.at(k, k) < 0) col_negate(k);
  }
  // enforce divisibility d_k | d_{k+1}
  for (int i = 0; i + 1 < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (A.at(j, j) % A.at(i, i) == 0) continue;
      // fold column j into column i, re-reduce the 2x2 corner
      col_addmul(i, j, 1);
      bool again = true;
      while (again) {
        again = false;
        if (A.at(j, i) != 0) {
          long long q = A.at(j, i) / A.at(i, i);
          row_addmul(j, i, -q);
          if (A.at(j, i) != 0) { row_swap(i, j); again = true; }
        }
        if (A.at(i, j) != 0) {
          long long q = A.at(i, j) / A.at(i, i);
          col_addmul(j, i, -q);
          if (A.at(i, j) != 0) { col_swap(i, j); again = true; }
        }
      }
      if (A.at(i, i) < 0) col_negate(i);
      if (A.at(j, j) < 0) col_negate(j);
    }
  }
  SmithForm out;
  out.V = V;
  out.rank = k;
  out.diag.assign(std::min(m, n), 0);
  for (int i = 0; i < k; ++i) out.diag[i] = A.at(i, i);
  return out;
}

std::optional<std::vector<QVec>> torsion_kernel_mod1(const IMat& A) {
  int n = A.cols;
  if (n == 0) return std::vector<QVec>{QVec{}};
  SmithForm snf = smith_normal_form(A);
  if (snf.rank < n) return std::nullopt; // a free direction survives
  // y = V z with z_i ranging over (1/d_i)Z mod 1
  std::vector<long long> d(snf.diag.begin(), snf.diag.begin() + n);
  std::vector<long long> idx(n, 0);
  std::vector<QVec> out;
  while (true) {
    QVec z(n);
    for (int i = 0; i < n; ++i) z[i] = Rat(idx[i], d[i]);
    QVec y = snf.V.apply(z);
    for (auto& c : y) c = c.mod1();
    out.push_back(y);
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < d[i]) break;
      idx[i] = 0;
    }
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace weylred
