#include "cqd/linalg.hpp"

#include <cassert>
#include <cstddef>

namespace cqd {

Matrix zero_matrix(int n) {
  return Matrix(n, std::vector<Rational>(n, Rational(0)));
}

Matrix identity_matrix(int n) {
  Matrix m = zero_matrix(n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void validate_square(const Matrix& q) {
  for (const auto& row : q)
    if (row.size() != q.size()) throw Error("matrix is not square");
}

void validate_symmetric(const Matrix& q) {
  validate_square(q);
  const int n = static_cast<int>(q.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (q[i][j] != q[j][i]) throw Error("matrix is not symmetric");
}

std::vector<Rational> mat_vec(const Matrix& q, const std::vector<Rational>& x) {
  validate_square(q);
  if (x.size() != q.size()) throw Error("matrix-vector size mismatch");
  std::vector<Rational> y(q.size(), Rational(0));
  for (size_t i = 0; i < q.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) y[i] += q[i][j] * x[j];
  return y;
}

namespace {

// lift a witness y of the reduced block (coordinates cut..n-1 of the permuted
// system) back through L^T and the permutation: solves L^T w = [*; y] with
// zeros forced in the head, then undoes the pivot order.
std::vector<Rational> lift_witness(const Matrix& lower, const std::vector<int>& perm,
                                   int cut, std::vector<Rational> reduced) {
  const int n = static_cast<int>(perm.size());
  std::vector<Rational> w(n, Rational(0));
  for (int i = cut; i < n; ++i) w[i] = reduced[i - cut];
  for (int i = cut - 1; i >= 0; --i) {
    Rational acc(0);
    for (int j = i + 1; j < n; ++j) acc += lower[j][i] * w[j];
    w[i] = -acc;
  }
  std::vector<Rational> x(n, Rational(0));
  for (int i = 0; i < n; ++i) x[perm[i]] = w[i];
  return x;
}

Rational quad_form(const Matrix& q, const std::vector<Rational>& x) {
  Rational acc(0);
  for (size_t i = 0; i < q.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) acc += x[i] * q[i][j] * x[j];
  return acc;
}

}  // namespace

PsdResult psd_check(const Matrix& q) {
  validate_symmetric(q);
  const int n = static_cast<int>(q.size());
  Matrix a = q;                   // working copy, Schur complements in place
  Matrix lower = zero_matrix(n);  // unit lower-triangular factors
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  PsdResult res;
  auto fail = [&](int cut, std::vector<Rational> reduced, std::vector<int> minor) {
    res.psd = false;
    res.witness = lift_witness(lower, perm, cut, std::move(reduced));
    res.minor_indices = std::move(minor);
    assert(quad_form(q, res.witness) < 0);
    return res;
  };

  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (a[i][i] > a[piv][piv]) piv = i;
    if (a[piv][piv] < 0) {
      // negative diagonal survives as x^T Q x < 0 along that coordinate
      std::vector<Rational> reduced(n - k, Rational(0));
      reduced[piv - k] = 1;
      std::vector<int> minor;
      for (int i = 0; i < k; ++i) minor.push_back(perm[i]);
      minor.push_back(perm[piv]);
      return fail(k, std::move(reduced), std::move(minor));
    }
    if (a[piv][piv] == 0) {
      // the largest remaining diagonal is zero, so any nonzero entry left is
      // either a negative diagonal or an off-diagonal making a 2x2 block
      // indefinite
      for (int i = k; i < n; ++i)
        for (int j = i; j < n; ++j)
          if (a[i][j] != 0) {
            std::vector<Rational> reduced(n - k, Rational(0));
            reduced[i - k] = 1;
            if (j > i) reduced[j - k] = a[i][j] > 0 ? -1 : 1;
            std::vector<int> minor;
            for (int r = 0; r < k; ++r) minor.push_back(perm[r]);
            minor.push_back(perm[i]);
            if (j > i) minor.push_back(perm[j]);
            return fail(k, std::move(reduced), std::move(minor));
          }
      for (int i = k; i < n; ++i) res.pivots.push_back(Rational(0));
      break;
    }
    if (piv != k) {
      std::swap(perm[k], perm[piv]);
      for (int j = 0; j < n; ++j) std::swap(a[k][j], a[piv][j]);
      for (int i = 0; i < n; ++i) std::swap(a[i][k], a[i][piv]);
      for (int j = 0; j < k; ++j) std::swap(lower[k][j], lower[piv][j]);
    }
    const Rational d = a[k][k];
    res.pivots.push_back(d);
    for (int i = k + 1; i < n; ++i) {
      const Rational l = a[i][k] / d;
      lower[i][k] = l;
      for (int j = k + 1; j <= i; ++j) {
        a[i][j] -= l * a[k][j];
        a[j][i] = a[i][j];
      }
    }
  }
  res.psd = true;
  return res;
}

int rank(const Matrix& q) {
  validate_square(q);
  Matrix a = q;
  const int n = static_cast<int>(a.size());
  int r = 0;
  for (int col = 0; col < n && r < n; ++col) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (a[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    for (int i = r + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[r][col];
      for (int j = col; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

int corank(const Matrix& q) { return static_cast<int>(q.size()) - rank(q); }

}  // namespace cqd
