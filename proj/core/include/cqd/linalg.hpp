#pragma once

#include <vector>

#include "cqd/rational.hpp"

namespace cqd {

using Matrix = std::vector<std::vector<Rational>>;

Matrix zero_matrix(int n);
Matrix identity_matrix(int n);
void validate_square(const Matrix& q);
void validate_symmetric(const Matrix& q);

std::vector<Rational> mat_vec(const Matrix& q, const std::vector<Rational>& x);

struct PsdResult {
  bool psd = false;
  // pivots of the (diagonally pivoted) LDL^T factorization, in pivot order;
  // on failure, filled up to the violating step
  std::vector<Rational> pivots;
  // when not psd: a vector with x^T Q x < 0
  std::vector<Rational> witness;
  // when not psd: indices of a principal submatrix with negative determinant
  std::vector<int> minor_indices;
};

// exact LDL^T with symmetric (largest-diagonal) pivoting; PSD iff it runs to
// completion with all pivots >= 0
PsdResult psd_check(const Matrix& q);

// exact rank via Gaussian elimination; corank = n - rank
int rank(const Matrix& q);
int corank(const Matrix& q);

}  // namespace cqd
