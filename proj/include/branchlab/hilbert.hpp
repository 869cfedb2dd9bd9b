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

// Finite-dimensional complex Hilbert space kernel: vectors, operators and
// subspaces (events) with the lattice operations meet, join and ortho.
//
// Subspaces are stored as orthonormal frames with a cached projector. Every
// rank decision is taken against an explicit threshold from Tolerances.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "branchlab/error.hpp"

namespace branchlab {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using StateVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

struct Tolerances {
  double exact = 1e-10;        // orthogonality, idempotence, unitarity
  double consistency = 1e-8;   // history overlaps, branching weights
  double rank = 1e-12;         // singular-value cutoff
  double near_orth = 1e-3;     // "almost orthogonal"

  /// Throws Error(invalid_tolerances) unless all are positive and
  /// rank <= exact <= consistency.
  void validate() const;
};

enum class OperatorKind { general, unitary, projector };

/// A (dim_out x dim_in) complex matrix tagged with the property it was
/// validated against at construction.
class Operator {
 public:
  static Operator general(Matrix m);
  static Operator unitary(Matrix m, const Tolerances& tol = {});
  static Operator projector(Matrix m, const Tolerances& tol = {});

  const Matrix& matrix() const { return m_; }
  OperatorKind kind() const { return kind_; }
  Index dim_in() const { return m_.cols(); }
  Index dim_out() const { return m_.rows(); }

 private:
  Operator(Matrix m, OperatorKind kind) : m_(std::move(m)), kind_(kind) {}

  Matrix m_;
  OperatorKind kind_;
};

/// A subspace of C^n, held as an orthonormal frame (n x rank) and its
/// projector. The zero subspace has an empty frame.
class Event {
 public:
  static Event zero(Index ambient_dim);
  static Event full(Index ambient_dim);
  /// Validates that the columns are orthonormal within tol.exact.
  static Event from_frame(Matrix frame, const Tolerances& tol = {});
  /// The line through v (v must be nonzero).
  static Event line(const StateVector& v);

  Index ambient_dim() const { return frame_.rows(); }
  Index rank() const { return frame_.cols(); }
  bool is_zero() const { return frame_.cols() == 0; }

  const Matrix& frame() const { return frame_; }
  const Matrix& projector() const { return projector_; }

  StateVector project(const StateVector& v) const;
  /// ||(1 - P) v|| <= tol.exact * ||v||.
  bool contains(const StateVector& v, const Tolerances& tol = {}) const;
  /// ||(1 - P_this) P_other|| <= tol.exact.
  bool contains(const Event& other, const Tolerances& tol = {}) const;

 private:
  explicit Event(Matrix frame);

  Matrix frame_;
  Matrix projector_;
};

/// Largest singular value.
double op_norm(const Matrix& m);

/// ||U - V|| in operator norm.
double op_norm_distance(const Operator& u, const Operator& v);
double op_norm_distance(const Matrix& u, const Matrix& v);

Event span(const std::vector<StateVector>& vectors, const Tolerances& tol = {});
Event span(Index ambient_dim, const std::vector<StateVector>& vectors,
           const Tolerances& tol = {});
/// Column span of a matrix, rank cut at tol.rank.
Event column_span(const Matrix& columns, const Tolerances& tol = {});

Event meet(const Event& e, const Event& f, const Tolerances& tol = {});
Event join(const Event& e, const Event& f, const Tolerances& tol = {});
Event ortho(const Event& e);

/// ||P_E P_F|| <= tol.exact.
bool is_orthogonal(const Event& e, const Event& f, const Tolerances& tol = {});

/// ||P_E - P_F||, zero iff the subspaces coincide.
double subspace_distance(const Event& e, const Event& f);
bool same_subspace(const Event& e, const Event& f, const Tolerances& tol = {});

bool is_unitary(const Matrix& m, const Tolerances& tol = {});
/// Columns orthonormal: m^dagger m = 1.
bool is_isometry(const Matrix& m, const Tolerances& tol = {});
bool is_projector(const Matrix& m, const Tolerances& tol = {});

/// exp(i t H) for Hermitian H, by eigendecomposition.
Matrix hermitian_exp(const Matrix& hermitian, double t);

/// Completes the orthonormal columns of `leading` (n x k) to an orthonormal
/// basis of C^n; the first k columns of the result equal `leading`.
Matrix complete_basis(const Matrix& leading);

void require_same_dim(const Event& e, const Event& f);

}  // namespace branchlab
