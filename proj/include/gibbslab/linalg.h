// Copyright 2026 The gibbslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef GIBBSLAB_LINALG_H
#define GIBBSLAB_LINALG_H

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gibbslab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Raised when an input would need more memory or time than the dense engines support.
class CapacityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised on invalid parameters (out-of-range probabilities, bad qubit lists, ...).
class DomainError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Largest register the dense operator engines will build.
constexpr int kMaxDenseQubits = 12;

void require_dense_capacity(int num_qubits, int limit, const char *what);

/// A square operator on n qubits. Qubit 0 is the most significant bit of the basis index.
class DenseOperator {
   public:
    DenseOperator() = default;
    DenseOperator(int num_qubits, Matrix m);
    static DenseOperator identity(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Matrix &matrix() const { return m_; }

    DenseOperator adjoint() const;
    DenseOperator operator*(const DenseOperator &other) const;
    double max_abs_diff(const DenseOperator &other) const;

   private:
    int num_qubits_ = 0;
    Matrix m_;
};

/// A validated density matrix: Hermitian, unit trace, positive semidefinite (up to tol).
class DensityMatrix {
   public:
    static constexpr double kDefaultTolerance = 1e-9;

    DensityMatrix() = default;
    DensityMatrix(int num_qubits, Matrix m, double tol = kDefaultTolerance);
    static DensityMatrix maximally_mixed(int num_qubits);
    static DensityMatrix basis_state(int num_qubits, std::uint64_t index);
    static DensityMatrix pure(int num_qubits, const Vector &psi);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Matrix &matrix() const { return m_; }

   private:
    int num_qubits_ = 0;
    Matrix m_;
};

/// A linear map on operators of n qubits, acting on column-stacked vectorizations.
class Superoperator {
   public:
    Superoperator() = default;
    Superoperator(int num_qubits, Matrix m);
    static Superoperator identity(int num_qubits);
    /// X -> A X B.
    static Superoperator left_right(const Matrix &a, const Matrix &b);

    int num_qubits() const { return num_qubits_; }
    const Matrix &matrix() const { return m_; }
    Matrix apply(const Matrix &x) const;

   private:
    int num_qubits_ = 0;
    Matrix m_;
};

int qubits_for_dim(Eigen::Index dim);

Vector vec(const Matrix &m);
Matrix unvec(const Vector &v, Eigen::Index dim);
Matrix kron(const Matrix &a, const Matrix &b);

/// Matrix exponential by scaling and squaring.
Matrix expm(const Matrix &m);

/// Applies f to the eigenvalues of a Hermitian matrix. Throws DomainError if m is not Hermitian.
Matrix hermitian_function(const Matrix &m, const std::function<double(double)> &f);
Eigen::VectorXd hermitian_eigenvalues(const Matrix &m);
double hermiticity_defect(const Matrix &m);

/// Sum of singular values.
double trace_norm(const Matrix &m);
double spectral_norm(const Matrix &m);
double trace_distance(const Matrix &a, const Matrix &b);

/// Partial trace keeping the listed qubits (sorted ascending) of an n-qubit operator.
Matrix partial_trace(const Matrix &op, int num_qubits, std::span<const int> keep);

/// Places op, which acts on `support` (sorted ascending), into the register `target`
/// (sorted ascending, a superset of support), tensoring with identity elsewhere.
Matrix embed(const Matrix &op, std::span<const int> support, std::span<const int> target);
Matrix embed(const Matrix &op, std::span<const int> support, int num_qubits);

/// Entropy in nats.
double von_neumann_entropy(const Matrix &rho);

struct Divergences {
    double trace_distance = 0;
    /// D(rho||sigma) in nats. Infinite when supp(rho) is not contained in supp(sigma).
    double relative_entropy = 0;
    /// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
    double fidelity = 0;
};
Divergences divergences(const DensityMatrix &rho, const DensityMatrix &sigma);
double relative_entropy(const Matrix &rho, const Matrix &sigma);

struct CptpReport {
    bool is_cp = false;
    bool is_tp = false;
    double min_choi_eigenvalue = 0;
    double trace_preservation_defect = 0;
};
CptpReport cptp_check(const Superoperator &channel, double tol = 1e-9);
Matrix choi_matrix(const Superoperator &channel);

}  // namespace gibbslab

#endif
