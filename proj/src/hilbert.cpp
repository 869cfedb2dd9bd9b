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

#include "branchlab/hilbert.hpp"

#include <string>

namespace branchlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::invalid_tolerances: return "InvalidTolerances";
    case ErrorCode::not_unitary: return "NotUnitary";
    case ErrorCode::not_projector: return "NotProjector";
    case ErrorCode::not_orthonormal: return "NotOrthonormal";
    case ErrorCode::invalid_partition: return "InvalidPartition";
    case ErrorCode::non_commuting: return "NonCommuting";
    case ErrorCode::invalid_sample_space: return "InvalidSampleSpace";
    case ErrorCode::enumeration_cap: return "EnumerationCap";
    case ErrorCode::not_consistent: return "NotConsistent";
    case ErrorCode::invalid_mapping: return "InvalidMapping";
    case ErrorCode::zero_vector: return "ZeroVector";
    case ErrorCode::state_outside_domain: return "StateOutsideDomain";
    case ErrorCode::norm_mismatch: return "NormMismatch";
    case ErrorCode::no_room_in_reward: return "NoRoomInReward";
    case ErrorCode::insufficient_dimension: return "InsufficientDimension";
    case ErrorCode::targets_outside_reward: return "TargetsOutsideReward";
    case ErrorCode::degenerate_frame: return "DegenerateFrame";
    case ErrorCode::out_of_range: return "OutOfRange";
    case ErrorCode::schema: return "SchemaError";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  if (!(exact > 0 && consistency > 0 && rank > 0 && near_orth > 0)) {
    throw Error(ErrorCode::invalid_tolerances, "all tolerances must be strictly positive");
  }
  if (!(rank <= exact && exact <= consistency)) {
    throw Error(ErrorCode::invalid_tolerances, "require rank <= exact <= consistency");
  }
}

// ---------------------------------------------------------------------------
// Operator

Operator Operator::general(Matrix m) { return Operator(std::move(m), OperatorKind::general); }

Operator Operator::unitary(Matrix m, const Tolerances& tol) {
  if (!is_isometry(m, tol)) {
    throw Error(ErrorCode::not_unitary, "columns are not orthonormal");
  }
  return Operator(std::move(m), OperatorKind::unitary);
}

Operator Operator::projector(Matrix m, const Tolerances& tol) {
  if (!is_projector(m, tol)) {
    throw Error(ErrorCode::not_projector, "matrix is not a Hermitian idempotent");
  }
  return Operator(std::move(m), OperatorKind::projector);
}

// ---------------------------------------------------------------------------
// Event

Event::Event(Matrix frame) : frame_(std::move(frame)) {
  projector_ = frame_ * frame_.adjoint();
}

Event Event::zero(Index ambient_dim) {
  if (ambient_dim < 1) throw Error(ErrorCode::invalid_argument, "dimension must be >= 1");
  return Event(Matrix(ambient_dim, 0));
}

Event Event::full(Index ambient_dim) {
  if (ambient_dim < 1) throw Error(ErrorCode::invalid_argument, "dimension must be >= 1");
  return Event(Matrix::Identity(ambient_dim, ambient_dim));
}

Event Event::from_frame(Matrix frame, const Tolerances& tol) {
  if (frame.rows() < 1) throw Error(ErrorCode::invalid_argument, "dimension must be >= 1");
  if (frame.cols() > frame.rows()) {
    throw Error(ErrorCode::not_orthonormal, "more frame columns than dimensions");
  }
  if (!is_isometry(frame, tol)) {
    throw Error(ErrorCode::not_orthonormal, "frame columns are not orthonormal");
  }
  return Event(std::move(frame));
}

Event Event::line(const StateVector& v) {
  const double n = v.norm();
  if (v.size() < 1 || n == 0.0) throw Error(ErrorCode::zero_vector, "line through the zero vector");
  Matrix frame = v / n;
  return Event(std::move(frame));
}

StateVector Event::project(const StateVector& v) const {
  if (v.size() != ambient_dim()) throw Error(ErrorCode::dimension_mismatch, "vector vs event");
  return frame_ * (frame_.adjoint() * v);
}

bool Event::contains(const StateVector& v, const Tolerances& tol) const {
  if (v.size() != ambient_dim()) throw Error(ErrorCode::dimension_mismatch, "vector vs event");
  const double n = v.norm();
  return (v - project(v)).norm() <= tol.exact * n;
}

bool Event::contains(const Event& other, const Tolerances& tol) const {
  require_same_dim(*this, other);
  if (other.is_zero()) return true;
  if (other.rank() > rank()) return false;
  const Matrix residual = other.frame_ - frame_ * (frame_.adjoint() * other.frame_);
  return op_norm(residual) <= tol.exact;
}

void require_same_dim(const Event& e, const Event& f) {
  if (e.ambient_dim() != f.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "events live in dimensions " + std::to_string(e.ambient_dim()) + " and " +
                    std::to_string(f.ambient_dim()));
  }
}

// ---------------------------------------------------------------------------
// Norms and predicates

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  // Largest eigenvalue of the smaller Gram matrix; far cheaper than a full
  // SVD and accurate relative to the norm itself.
  const Matrix gram = m.rows() >= m.cols() ? Matrix(m.adjoint() * m) : Matrix(m * m.adjoint());
  const Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double op_norm_distance(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw Error(ErrorCode::shape_mismatch, "operators have different shapes");
  }
  return op_norm(u - v);
}

double op_norm_distance(const Operator& u, const Operator& v) {
  return op_norm_distance(u.matrix(), v.matrix());
}

bool is_isometry(const Matrix& m, const Tolerances& tol) {
  if (m.cols() == 0) return true;
  const Matrix gram = m.adjoint() * m;
  return op_norm(gram - Matrix::Identity(m.cols(), m.cols())) <= tol.exact;
}

bool is_unitary(const Matrix& m, const Tolerances& tol) {
  return m.rows() == m.cols() && is_isometry(m, tol);
}

bool is_projector(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) return false;
  if (op_norm(m - m.adjoint()) > tol.exact) return false;
  return op_norm(m * m - m) <= tol.exact;
}

// ---------------------------------------------------------------------------
// Lattice

Event column_span(const Matrix& columns, const Tolerances& tol) {
  const Index n = columns.rows();
  if (columns.cols() == 0) return Event::zero(n);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > tol.rank) ++r;
  return Event::from_frame(svd.matrixU().leftCols(r), tol);
}

Event span(Index ambient_dim, const std::vector<StateVector>& vectors, const Tolerances& tol) {
  Matrix cols(ambient_dim, static_cast<Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim) {
      throw Error(ErrorCode::dimension_mismatch, "span of vectors with different dimensions");
    }
    cols.col(static_cast<Index>(i)) = vectors[i];
  }
  return column_span(cols, tol);
}

Event span(const std::vector<StateVector>& vectors, const Tolerances& tol) {
  if (vectors.empty()) throw Error(ErrorCode::invalid_argument, "span of an empty list needs a dimension");
  return span(vectors.front().size(), vectors, tol);
}

Event meet(const Event& e, const Event& f, const Tolerances& tol) {
  require_same_dim(e, f);
  const Index n = e.ambient_dim();
  if (e.is_zero() || f.is_zero()) return Event::zero(n);
  // Cosines of the principal angles are the singular values of Qe^† Qf; the
  // intersection is spanned by the directions at angle zero.
  const Matrix cosines = e.frame().adjoint() * f.frame();
  Eigen::JacobiSVD<Matrix> svd(cosines, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > 1.0 - tol.rank) ++r;
  if (r == 0) return Event::zero(n);
  Matrix frame = e.frame() * svd.matrixU().leftCols(r);
  return column_span(frame, tol);
}

Event join(const Event& e, const Event& f, const Tolerances& tol) {
  require_same_dim(e, f);
  Matrix cols(e.ambient_dim(), e.rank() + f.rank());
  cols << e.frame(), f.frame();
  return column_span(cols, tol);
}

Event ortho(const Event& e) {
  const Index n = e.ambient_dim();
  if (e.is_zero()) return Event::full(n);
  if (e.rank() == n) return Event::zero(n);
  return Event::from_frame(complete_basis(e.frame()).rightCols(n - e.rank()));
}

bool is_orthogonal(const Event& e, const Event& f, const Tolerances& tol) {
  require_same_dim(e, f);
  return op_norm(e.frame().adjoint() * f.frame()) <= tol.exact;
}

double subspace_distance(const Event& e, const Event& f) {
  require_same_dim(e, f);
  return op_norm(e.projector() - f.projector());
}

bool same_subspace(const Event& e, const Event& f, const Tolerances& tol) {
  return e.rank() == f.rank() && subspace_distance(e, f) <= tol.exact;
}

Matrix hermitian_exp(const Matrix& hermitian, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  const Eigen::VectorXcd phases =
      (Complex(0.0, t) * es.eigenvalues().cast<Complex>()).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix complete_basis(const Matrix& leading) {
  const Index n = leading.rows();
  const Index k = leading.cols();
  Matrix out(n, n);
  out.leftCols(k) = leading;
  if (k == n) return out;
  const Matrix complement_projector = Matrix::Identity(n, n) - leading * leading.adjoint();
  // Eigenvalues of the complement projector are 0 (x k) and 1 (x n-k),
  // returned in ascending order.
  Eigen::SelfAdjointEigenSolver<Matrix> es(complement_projector);
  out.rightCols(n - k) = es.eigenvectors().rightCols(n - k);
  return out;
}

}  // namespace branchlab
