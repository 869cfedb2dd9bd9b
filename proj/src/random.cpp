// Copyright 2026 The branchlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "branchlab/random.hpp"

#include <cmath>

namespace branchlab {

namespace {

Matrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  // Fill column by column so the draw order is fixed.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

StateVector random_state(Index dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::invalid_argument, "dimension must be >= 1");
  StateVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

StateVector random_state_in(const Event& e, Rng& rng) {
  if (e.is_zero()) throw Error(ErrorCode::zero_vector, "no states in the zero subspace");
  return e.frame() * random_state(e.rank(), rng);
}

Matrix random_unitary(Index dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::invalid_argument, "dimension must be >= 1");
  const Matrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

Matrix random_hermitian(Index dim, Rng& rng) {
  const Matrix z = ginibre(dim, dim, rng);
  Matrix h = (z + z.adjoint()) / 2.0;
  return h / op_norm(h);
}

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> u(lo, hi);
  return u(rng);
}

}  // namespace branchlab
