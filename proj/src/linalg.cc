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
#include "gibbslab/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

namespace gibbslab {

void require_dense_capacity(int num_qubits, int limit, const char *what) {
    if (num_qubits > limit) {
        throw CapacityError(std::string(what) + ": " + std::to_string(num_qubits) +
                            " qubits exceeds the dense limit of " + std::to_string(limit));
    }
}

int qubits_for_dim(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        n++;
    }
    if ((Eigen::Index{1} << n) != dim) {
        throw DomainError("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return n;
}

DenseOperator::DenseOperator(int num_qubits, Matrix m) : num_qubits_(num_qubits), m_(std::move(m)) {
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    if (m_.rows() != d || m_.cols() != d) {
        throw DomainError("operator shape does not match qubit count");
    }
}

DenseOperator DenseOperator::identity(int num_qubits) {
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    return DenseOperator(num_qubits, Matrix::Identity(d, d));
}

DenseOperator DenseOperator::adjoint() const {
    return DenseOperator(num_qubits_, m_.adjoint());
}

DenseOperator DenseOperator::operator*(const DenseOperator &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw DomainError("operator qubit counts differ");
    }
    return DenseOperator(num_qubits_, m_ * other.m_);
}

double DenseOperator::max_abs_diff(const DenseOperator &other) const {
    return (m_ - other.m_).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(int num_qubits, Matrix m, double tol) : num_qubits_(num_qubits), m_(std::move(m)) {
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    if (m_.rows() != d || m_.cols() != d) {
        throw DomainError("density matrix shape does not match qubit count");
    }
    if (hermiticity_defect(m_) > tol) {
        throw DomainError("density matrix is not Hermitian");
    }
    m_ = 0.5 * (m_ + m_.adjoint()).eval();
    if (std::abs(m_.trace() - Complex(1.0)) > tol) {
        throw DomainError("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
        throw DomainError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    return DensityMatrix(num_qubits, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::basis_state(int num_qubits, std::uint64_t index) {
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    Matrix m = Matrix::Zero(d, d);
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return DensityMatrix(num_qubits, std::move(m));
}

DensityMatrix DensityMatrix::pure(int num_qubits, const Vector &psi) {
    Vector v = psi / psi.norm();
    return DensityMatrix(num_qubits, v * v.adjoint());
}

Superoperator::Superoperator(int num_qubits, Matrix m) : num_qubits_(num_qubits), m_(std::move(m)) {
    Eigen::Index d = Eigen::Index{1} << (2 * num_qubits);
    if (m_.rows() != d || m_.cols() != d) {
        throw DomainError("superoperator shape does not match qubit count");
    }
}

Superoperator Superoperator::identity(int num_qubits) {
    Eigen::Index d = Eigen::Index{1} << (2 * num_qubits);
    return Superoperator(num_qubits, Matrix::Identity(d, d));
}

Superoperator Superoperator::left_right(const Matrix &a, const Matrix &b) {
    return Superoperator(qubits_for_dim(a.rows()), kron(b.transpose(), a));
}

Matrix Superoperator::apply(const Matrix &x) const {
    return unvec(m_ * vec(x), x.rows());
}

Vector vec(const Matrix &m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector &v, Eigen::Index dim) {
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix expm(const Matrix &m) {
    return m.exp();
}

double hermiticity_defect(const Matrix &m) {
    if (m.size() == 0) {
        return 0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitian_function(const Matrix &m, const std::function<double(double)> &f) {
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (hermiticity_defect(m) > 1e-8 * scale) {
        throw DomainError("hermitian_function: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd vals = es.eigenvalues();
    Vector fv(vals.size());
    for (Eigen::Index k = 0; k < vals.size(); k++) {
        fv(k) = f(vals(k));
    }
    return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double trace_norm(const Matrix &m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

double spectral_norm(const Matrix &m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double trace_distance(const Matrix &a, const Matrix &b) {
    Matrix d = a - b;
    if (hermiticity_defect(d) < 1e-10) {
        return 0.5 * hermitian_eigenvalues(d).cwiseAbs().sum();
    }
    return 0.5 * trace_norm(d);
}

namespace {

void check_sorted_subset(std::span<const int> qubits, int num_qubits, const char *what) {
    for (std::size_t k = 0; k < qubits.size(); k++) {
        if (qubits[k] < 0 || qubits[k] >= num_qubits) {
            throw DomainError(std::string(what) + ": qubit index out of range");
        }
        if (k > 0 && qubits[k] <= qubits[k - 1]) {
            throw DomainError(std::string(what) + ": qubit list must be strictly increasing");
        }
    }
}

// Maps (kept index a, rest index r) to the full index, for a register of n qubits.
std::vector<std::size_t> compose_table(int n, std::span<const int> keep) {
    std::vector<bool> kept(n, false);
    for (int q : keep) {
        kept[q] = true;
    }
    std::vector<int> rest;
    for (int q = 0; q < n; q++) {
        if (!kept[q]) {
            rest.push_back(q);
        }
    }
    std::size_t ka = std::size_t{1} << keep.size();
    std::size_t kr = std::size_t{1} << rest.size();
    std::vector<std::size_t> table(ka * kr);
    for (std::size_t a = 0; a < ka; a++) {
        std::size_t base = 0;
        for (std::size_t t = 0; t < keep.size(); t++) {
            if ((a >> (keep.size() - 1 - t)) & 1) {
                base |= std::size_t{1} << (n - 1 - keep[t]);
            }
        }
        for (std::size_t r = 0; r < kr; r++) {
            std::size_t full = base;
            for (std::size_t t = 0; t < rest.size(); t++) {
                if ((r >> (rest.size() - 1 - t)) & 1) {
                    full |= std::size_t{1} << (n - 1 - rest[t]);
                }
            }
            table[a * kr + r] = full;
        }
    }
    return table;
}

}  // namespace

Matrix partial_trace(const Matrix &op, int num_qubits, std::span<const int> keep) {
    check_sorted_subset(keep, num_qubits, "partial_trace");
    if (op.rows() != (Eigen::Index{1} << num_qubits)) {
        throw DomainError("partial_trace: operator shape does not match qubit count");
    }
    std::size_t ka = std::size_t{1} << keep.size();
    std::size_t kr = std::size_t{1} << (num_qubits - keep.size());
    auto table = compose_table(num_qubits, keep);
    Matrix out = Matrix::Zero(ka, ka);
    for (std::size_t a = 0; a < ka; a++) {
        for (std::size_t b = 0; b < ka; b++) {
            Complex acc = 0;
            for (std::size_t r = 0; r < kr; r++) {
                acc += op(table[a * kr + r], table[b * kr + r]);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

Matrix embed(const Matrix &op, std::span<const int> support, std::span<const int> target) {
    int n = static_cast<int>(target.size());
    std::vector<int> local;
    for (int q : support) {
        auto it = std::find(target.begin(), target.end(), q);
        if (it == target.end()) {
            throw DomainError("embed: support is not contained in target");
        }
        local.push_back(static_cast<int>(it - target.begin()));
    }
    check_sorted_subset(local, n, "embed");
    if (op.rows() != (Eigen::Index{1} << support.size())) {
        throw DomainError("embed: operator shape does not match support");
    }
    std::size_t ka = std::size_t{1} << local.size();
    std::size_t kr = std::size_t{1} << (n - local.size());
    auto table = compose_table(n, local);
    Eigen::Index d = Eigen::Index{1} << n;
    Matrix out = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < ka; a++) {
        for (std::size_t b = 0; b < ka; b++) {
            Complex v = op(a, b);
            if (v == Complex(0)) {
                continue;
            }
            for (std::size_t r = 0; r < kr; r++) {
                out(table[a * kr + r], table[b * kr + r]) = v;
            }
        }
    }
    return out;
}

Matrix embed(const Matrix &op, std::span<const int> support, int num_qubits) {
    std::vector<int> all(num_qubits);
    for (int q = 0; q < num_qubits; q++) {
        all[q] = q;
    }
    return embed(op, support, all);
}

double von_neumann_entropy(const Matrix &rho) {
    double s = 0;
    for (double l : hermitian_eigenvalues(rho)) {
        if (l > 1e-15) {
            s -= l * std::log(l);
        }
    }
    return s;
}

double relative_entropy(const Matrix &rho, const Matrix &sigma) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sigma + sigma.adjoint()));
    const Eigen::VectorXd &s = es.eigenvalues();
    double cutoff = 1e-14 * std::max(1.0, s.cwiseAbs().maxCoeff());
    double cross = 0;
    for (Eigen::Index k = 0; k < s.size(); k++) {
        double w = (es.eigenvectors().col(k).adjoint() * rho * es.eigenvectors().col(k))(0, 0).real();
        if (s(k) <= cutoff) {
            if (w > 1e-12) {
                return std::numeric_limits<double>::infinity();
            }
            continue;
        }
        cross += w * std::log(s(k));
    }
    return std::max(0.0, -von_neumann_entropy(rho) - cross);
}

Divergences divergences(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.num_qubits() != sigma.num_qubits()) {
        throw DomainError("divergences: qubit counts differ");
    }
    Divergences out;
    out.trace_distance = trace_distance(rho.matrix(), sigma.matrix());
    out.relative_entropy = relative_entropy(rho.matrix(), sigma.matrix());
    Matrix sr = hermitian_function(rho.matrix(), [](double x) { return std::sqrt(std::max(0.0, x)); });
    Matrix inner = sr * sigma.matrix() * sr;
    double root = 0;
    for (double l : hermitian_eigenvalues(inner)) {
        root += std::sqrt(std::max(0.0, l));
    }
    out.fidelity = std::min(1.0, root * root);
    return out;
}

Matrix choi_matrix(const Superoperator &channel) {
    Eigen::Index d = Eigen::Index{1} << channel.num_qubits();
    Matrix j = Matrix::Zero(d * d, d * d);
    for (Eigen::Index r = 0; r < d; r++) {
        for (Eigen::Index c = 0; c < d; c++) {
            Matrix img = unvec(channel.matrix().col(r + c * d), d);
            j.block(r * d, c * d, d, d) = img;
        }
    }
    return j;
}

CptpReport cptp_check(const Superoperator &channel, double tol) {
    Eigen::Index d = Eigen::Index{1} << channel.num_qubits();
    CptpReport rep;
    Matrix j = choi_matrix(channel);
    rep.min_choi_eigenvalue = hermitian_eigenvalues(j).minCoeff();
    if (hermiticity_defect(j) > tol) {
        rep.min_choi_eigenvalue = std::min(rep.min_choi_eigenvalue, -hermiticity_defect(j));
    }
    rep.is_cp = rep.min_choi_eigenvalue >= -tol;
    double defect = 0;
    for (Eigen::Index r = 0; r < d; r++) {
        for (Eigen::Index c = 0; c < d; c++) {
            Complex tr = 0;
            for (Eigen::Index a = 0; a < d; a++) {
                tr += channel.matrix()(a + a * d, r + c * d);
            }
            defect = std::max(defect, std::abs(tr - Complex(r == c ? 1.0 : 0.0)));
        }
    }
    rep.trace_preservation_defect = defect;
    rep.is_tp = defect <= tol;
    return rep;
}

}  // namespace gibbslab
