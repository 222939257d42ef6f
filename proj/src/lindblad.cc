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
#include "gibbslab/lindblad.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gibbslab/rng.h"

namespace gibbslab {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<int> hamming_energies(int n) {
    std::vector<int> e(std::size_t{1} << n);
    for (std::size_t x = 0; x < e.size(); x++) {
        e[x] = std::popcount(x);
    }
    return e;
}

// R with vec(C X C^dagger) = R vec(X).
Matrix frame_rotation(const Matrix &c) {
    return kron(c.conjugate(), c);
}

Matrix matrix_power(const DensityMatrix &sigma, double p) {
    return hermitian_function(sigma.matrix(), [p](double x) {
        if (x <= 0) {
            throw DomainError("Gibbs state is singular");
        }
        return std::pow(x, p);
    });
}

}  // namespace

double glauber_weight(int nu, double beta) {
    return 1.0 / (1.0 + std::exp(beta * nu));
}

double transition_weight(WeightConvention convention, int nu, double beta) {
    return convention == WeightConvention::kDetailedBalance ? glauber_weight(nu, beta) : glauber_weight(-nu, beta);
}

Matrix assemble_in_eigenbasis(const std::vector<int> &energies, const std::vector<Matrix> &jumps, double beta,
                              WeightConvention convention) {
    const Eigen::Index d = static_cast<Eigen::Index>(energies.size());
    const int emin = *std::min_element(energies.begin(), energies.end());
    const int emax = *std::max_element(energies.begin(), energies.end());
    const int span = emax - emin;
    // Columns vec(A_nu) grouped by nu; sum_a conj(v_a) v_a^T then holds every kron(conj(A_nu), A_nu) entry.
    std::vector<std::vector<Vector>> columns(2 * span + 1);
    for (const Matrix &a : jumps) {
        std::vector<Vector> parts(2 * span + 1);
        std::vector<bool> nonzero(2 * span + 1, false);
        for (Eigen::Index y = 0; y < d; y++) {
            for (Eigen::Index x = 0; x < d; x++) {
                Complex v = a(x, y);
                if (std::abs(v) < 1e-15) {
                    continue;
                }
                int k = energies[x] - energies[y] + span;
                if (!nonzero[k]) {
                    parts[k] = Vector::Zero(d * d);
                    nonzero[k] = true;
                }
                parts[k](x + y * d) = v;
            }
        }
        for (int k = 0; k <= 2 * span; k++) {
            if (nonzero[k]) {
                columns[k].push_back(std::move(parts[k]));
            }
        }
    }
    Matrix s = Matrix::Zero(d * d, d * d);
    Matrix kk = Matrix::Zero(d, d);
    for (int k = 0; k <= 2 * span; k++) {
        if (columns[k].empty()) {
            continue;
        }
        double w = transition_weight(convention, k - span, beta);
        Matrix v(d * d, static_cast<Eigen::Index>(columns[k].size()));
        for (std::size_t c = 0; c < columns[k].size(); c++) {
            v.col(static_cast<Eigen::Index>(c)) = columns[k][c];
        }
        Matrix r = v.conjugate() * v.transpose();
        for (Eigen::Index j = 0; j < d; j++) {
            for (Eigen::Index l = 0; l < d; l++) {
                for (Eigen::Index i = 0; i < d; i++) {
                    for (Eigen::Index m = 0; m < d; m++) {
                        s(i * d + m, j * d + l) += w * r(i + j * d, m + l * d);
                    }
                    kk(j, l) += w * r(i + j * d, i + l * d);
                }
            }
        }
    }
    Matrix id = Matrix::Identity(d, d);
    s -= 0.5 * (kron(id, kk) + kron(kk.transpose(), id));
    return s;
}

std::map<int, Matrix> frequency_components(const ParentHamiltonian &hp, const Matrix &a) {
    int n = hp.num_qubits();
    std::vector<Matrix> proj;
    for (int k = 0; k <= n; k++) {
        proj.push_back(hp.eigenprojector(k).matrix());
    }
    std::map<int, Matrix> out;
    for (int nu = -n; nu <= n; nu++) {
        Matrix acc = Matrix::Zero(a.rows(), a.cols());
        for (int k = 0; k <= n; k++) {
            if (k + nu >= 0 && k + nu <= n) {
                acc += proj[k + nu] * a * proj[k];
            }
        }
        if (acc.cwiseAbs().maxCoeff() > 1e-13) {
            out.emplace(nu, std::move(acc));
        }
    }
    return out;
}

DaviesGenerator DaviesGenerator::build(const ParentHamiltonian &hp, double beta, WeightConvention convention) {
    int n = hp.num_qubits();
    require_dense_capacity(n, kMaxDaviesQubits, "build_davies");
    if (!(beta >= 0) || !std::isfinite(beta)) {
        throw DomainError("beta must be finite and non-negative");
    }
    DaviesGenerator g;
    g.hp_ = hp;
    g.beta_ = beta;
    g.convention_ = convention;
    std::vector<Matrix> frame_jumps;
    const Matrix &c = hp.unitary().matrix();
    for (int i = 0; i < n; i++) {
        const auto &cone = hp.supports().lightcone[i];
        double norm = std::ldexp(1.0, -static_cast<int>(cone.size()));
        for (const PauliString &p : all_paulis(static_cast<int>(cone.size()))) {
            Jump j{i, place(p, cone, n), norm};
            frame_jumps.push_back(c.adjoint() * (norm * j.pauli.matrix().matrix()) * c);
            g.jumps_.push_back(std::move(j));
        }
    }
    Matrix frame = assemble_in_eigenbasis(hamming_energies(n), frame_jumps, beta, convention);
    Matrix r = frame_rotation(c);
    g.superop_ = Superoperator(n, r * frame * r.adjoint());
    g.gibbs_ = gibbs_state(hp, beta).rho;
    return g;
}

Superoperator DaviesGenerator::assemble(const ParentHamiltonian &hp, const std::vector<Matrix> &jumps, double beta,
                                        WeightConvention convention) {
    int n = hp.num_qubits();
    require_dense_capacity(n, kMaxDaviesQubits, "build_davies");
    const Matrix &c = hp.unitary().matrix();
    std::vector<Matrix> frame_jumps;
    for (const Matrix &a : jumps) {
        frame_jumps.push_back(c.adjoint() * a * c);
    }
    Matrix frame = assemble_in_eigenbasis(hamming_energies(n), frame_jumps, beta, convention);
    Matrix r = frame_rotation(c);
    return Superoperator(n, r * frame * r.adjoint());
}

Matrix DaviesGenerator::jump_matrix(std::size_t a) const {
    const Jump &j = jumps_.at(a);
    return j.normalization * j.pauli.matrix().matrix();
}

std::map<int, Matrix> DaviesGenerator::components(std::size_t a) const {
    return frequency_components(hp_, jump_matrix(a));
}

Matrix discriminant_matrix(const Superoperator &l, const DensityMatrix &sigma, double s) {
    Matrix left = kron(matrix_power(sigma, -s / 2).transpose(), matrix_power(sigma, -(1 - s) / 2));
    Matrix right = kron(matrix_power(sigma, s / 2).transpose(), matrix_power(sigma, (1 - s) / 2));
    return left * l.matrix() * right;
}

DetailedBalanceReport detailed_balance_check(const DaviesGenerator &l, double s) {
    if (s < 0 || s > 1) {
        throw DomainError("s must lie in [0, 1]");
    }
    const DensityMatrix &sigma = l.gibbs();
    int n = l.num_qubits();
    Matrix g = kron(matrix_power(sigma, s).transpose(), matrix_power(sigma, 1 - s));
    const Matrix &lm = l.superop().matrix();
    Matrix m = lm * g - g * lm.adjoint();
    Eigen::Index d = Eigen::Index{1} << n;
    auto paulis = all_paulis(n);
    Matrix basis(d * d, static_cast<Eigen::Index>(paulis.size()));
    for (std::size_t a = 0; a < paulis.size(); a++) {
        basis.col(static_cast<Eigen::Index>(a)) = vec(paulis[a].matrix().matrix()) / std::sqrt(double(d));
    }
    DetailedBalanceReport rep;
    rep.residual = (basis.adjoint() * m * basis).cwiseAbs().maxCoeff();
    rep.discriminant_hermiticity = hermiticity_defect(discriminant_matrix(l.superop(), sigma, s));
    return rep;
}

Discriminant discriminant_gap(const DaviesGenerator &l, double s) {
    Discriminant out;
    out.s = s;
    out.matrix = discriminant_matrix(l.superop(), l.gibbs(), s);
    Matrix herm = 0.5 * (out.matrix + out.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(-herm);
    out.eigenvalues = es.eigenvalues();
    double scale = std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
    out.gap = std::numeric_limits<double>::infinity();
    Eigen::Index kernel_idx = 0;
    for (Eigen::Index k = 0; k < out.eigenvalues.size(); k++) {
        double v = out.eigenvalues(k);
        if (std::abs(v) < std::abs(out.eigenvalues(kernel_idx))) {
            kernel_idx = k;
        }
        if (v > 1e-9 * scale) {
            out.gap = std::min(out.gap, v);
        }
    }
    out.kernel = es.eigenvectors().col(kernel_idx);
    Eigen::Index big = 0;
    out.kernel.cwiseAbs().maxCoeff(&big);
    out.kernel *= std::conj(out.kernel(big)) / std::abs(out.kernel(big));
    return out;
}

DensityMatrix evolve(const DaviesGenerator &l, const DensityMatrix &rho, double t) {
    if (!(t >= 0)) {
        throw DomainError("evolution time must be non-negative");
    }
    Matrix out = unvec(expm(t * l.superop().matrix()) * vec(rho.matrix()), rho.matrix().rows());
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(rho.num_qubits(), out, 1e-8);
}

std::vector<DensityMatrix> mixing_probes(const DaviesGenerator &l) {
    int n = l.num_qubits();
    Eigen::Index d = Eigen::Index{1} << n;
    const double eps = 1e-9;
    Matrix mixed = Matrix::Identity(d, d) / double(d);
    std::vector<DensityMatrix> probes;
    for (Eigen::Index x = 0; x < d; x++) {
        Matrix m = (1 - eps) * DensityMatrix::basis_state(n, x).matrix() + eps * mixed;
        probes.emplace_back(n, m);
    }
    probes.push_back(l.gibbs());
    probes.emplace_back(n, mixed);
    for (int k = 0; k < 5; k++) {
        std::mt19937_64 rng = make_rng(0x6d6978, k);
        std::normal_distribution<double> g;
        Matrix a(d, d);
        for (Eigen::Index i = 0; i < d; i++) {
            for (Eigen::Index j = 0; j < d; j++) {
                a(i, j) = Complex(g(rng), g(rng));
            }
        }
        Matrix m = a * a.adjoint();
        probes.emplace_back(n, m / m.trace().real());
    }
    return probes;
}

MixingDiagnostics mixing_diagnostics(const DaviesGenerator &l, const std::vector<double> &t_grid) {
    if (t_grid.empty()) {
        throw DomainError("mixing_diagnostics: empty time grid");
    }
    for (std::size_t k = 0; k < t_grid.size(); k++) {
        if (t_grid[k] < 0 || (k > 0 && t_grid[k] <= t_grid[k - 1])) {
            throw DomainError("mixing_diagnostics: time grid must be non-negative and increasing");
        }
    }
    require_dense_capacity(l.num_qubits(), 4, "mixing_diagnostics");
    auto probes = mixing_probes(l);
    const std::size_t gibbs_idx = std::size_t{1} << l.num_qubits();
    MixingDiagnostics out;
    out.t_grid = t_grid;
    std::vector<std::vector<double>> curves(probes.size());
    for (double t : t_grid) {
        Matrix e = expm(t * l.superop().matrix());
        std::vector<Matrix> evolved;
        for (const auto &p : probes) {
            Matrix m = unvec(e * vec(p.matrix()), p.matrix().rows());
            evolved.push_back(0.5 * (m + m.adjoint()));
        }
        double worst = 0;
        for (std::size_t a = 0; a < probes.size(); a++) {
            for (std::size_t b = a + 1; b < probes.size(); b++) {
                double before = trace_distance(probes[a].matrix(), probes[b].matrix());
                if (before < 1e-12) {
                    continue;
                }
                worst = std::max(worst, trace_distance(evolved[a], evolved[b]) / before);
            }
        }
        if (!out.halving_time && worst <= 0.5) {
            out.halving_time = t;
        }
        for (std::size_t a = 0; a < probes.size(); a++) {
            if (a != gibbs_idx) {
                curves[a].push_back(relative_entropy(evolved[a], l.gibbs().matrix()));
            }
        }
    }
    out.fitted_rate = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < probes.size(); a++) {
        if (a == gibbs_idx) {
            continue;
        }
        const auto &c = curves[a];
        for (std::size_t k = 1; k < c.size(); k++) {
            if (c[k] > c[k - 1] + 1e-10) {
                out.curves_monotone = false;
            }
        }
        std::vector<double> ts, ys;
        for (std::size_t k = 0; k < c.size(); k++) {
            if (c[k] > 1e-11) {
                ts.push_back(t_grid[k]);
                ys.push_back(std::log(c[k]));
            }
        }
        if (ts.size() >= 2) {
            double mt = 0, my = 0;
            for (std::size_t k = 0; k < ts.size(); k++) {
                mt += ts[k];
                my += ys[k];
            }
            mt /= double(ts.size());
            my /= double(ts.size());
            double num = 0, den = 0;
            for (std::size_t k = 0; k < ts.size(); k++) {
                num += (ts[k] - mt) * (ys[k] - my);
                den += (ts[k] - mt) * (ts[k] - mt);
            }
            out.fitted_rate = std::min(out.fitted_rate, -num / den);
        }
        out.entropy_curves.push_back(c);
    }
    return out;
}

double entropy_production(const DaviesGenerator &l, const DensityMatrix &rho) {
    Eigen::Index d = rho.matrix().rows();
    const double eps = 1e-9;
    Matrix r = (1 - eps) * rho.matrix() + eps * Matrix::Identity(d, d) / double(d);
    auto log_fn = [](double x) { return std::log(std::max(x, 1e-300)); };
    Matrix diff = hermitian_function(r, log_fn) - hermitian_function(l.gibbs().matrix(), log_fn);
    return (l.superop().apply(r) * diff).trace().real();
}

ConvexDecomposition convex_decomposition(const DaviesGenerator &l) {
    const ParentHamiltonian &hp = l.hamiltonian();
    int n = hp.num_qubits();
    require_dense_capacity(n, 4, "convex_decomposition");
    const Matrix &c = hp.unitary().matrix();
    Matrix r = frame_rotation(c);
    ConvexDecomposition out;
    out.rotated = Superoperator(n, r.adjoint() * l.superop().matrix() * r);
    int ell = hp.supports().ell;
    out.q = std::pow(4.0, 1 - ell);
    auto energies = hamming_energies(n);

    std::vector<Matrix> ni_jumps;
    for (int i = 0; i < n; i++) {
        for (char p : {'I', 'X', 'Y', 'Z'}) {
            ni_jumps.push_back(0.5 * PauliString::single(n, i, p).matrix().matrix());
        }
    }
    out.non_interacting = Superoperator(n, assemble_in_eigenbasis(energies, ni_jumps, l.beta(), l.convention()));

    Eigen::Index d = Eigen::Index{1} << n;
    if (out.q < 1) {
        std::vector<Matrix> rest_jumps;
        for (int i = 0; i < n; i++) {
            const auto &cone = hp.supports().lightcone[i];
            Matrix m = c.adjoint() * build_unitary(lightcone_subcircuit(hp.circuit(), {i})).matrix();
            double own = std::pow(4.0, -static_cast<double>(cone.size()));
            for (const PauliString &local : all_paulis(static_cast<int>(cone.size()))) {
                PauliString p = place(local, cone, n);
                auto supp = p.support();
                bool single = supp.empty() || (supp.size() == 1 && supp[0] == i);
                double weight = single ? own - std::pow(4.0, -ell) : own;
                if (weight <= 0) {
                    continue;
                }
                rest_jumps.push_back(std::sqrt(weight / (1 - out.q)) * (m * p.matrix().matrix() * m.adjoint()));
            }
        }
        out.rest = Superoperator(n, assemble_in_eigenbasis(energies, rest_jumps, l.beta(), l.convention()));
    } else {
        out.rest = Superoperator(n, Matrix::Zero(d * d, d * d));
    }
    Matrix combo = out.q * out.non_interacting.matrix() + (1 - out.q) * out.rest.matrix();
    out.identity_residual = (out.rotated.matrix() - combo).cwiseAbs().maxCoeff();

    Vector sigma(d);
    double z = 0;
    for (Eigen::Index x = 0; x < d; x++) {
        sigma(x) = std::exp(-l.beta() * energies[x]);
        z += sigma(x).real();
    }
    Matrix sigma_beta = Matrix(sigma.asDiagonal()) / z;
    out.rest_fixed_point_residual = out.rest.apply(sigma_beta).cwiseAbs().maxCoeff();
    out.rest_channel = cptp_check(Superoperator(n, expm(1e-3 * out.rest.matrix())), 1e-8);
    return out;
}

double oft_check(const DaviesGenerator &l, std::size_t a, OftGrid grid) {
    const ParentHamiltonian &hp = l.hamiltonian();
    int n = hp.num_qubits();
    Matrix op = l.jump_matrix(a);
    auto reference = frequency_components(hp, op);
    const Matrix &c = hp.unitary().matrix();
    auto energies = hamming_energies(n);
    int count = 2 * n + 1;
    std::vector<double> times;
    for (int j = -n; j <= n; j++) {
        times.push_back(grid == OftGrid::kExact ? 2 * kPi * j / count : kPi * j / n);
    }
    std::vector<Matrix> rotated;
    for (double t : times) {
        Vector phases(energies.size());
        for (std::size_t x = 0; x < energies.size(); x++) {
            phases(x) = std::exp(Complex(0, energies[x] * t));
        }
        Matrix u = c * phases.asDiagonal() * c.adjoint();
        rotated.push_back(u * op * u.adjoint());
    }
    double err = 0;
    for (int nu = -n; nu <= n; nu++) {
        Matrix acc = Matrix::Zero(op.rows(), op.cols());
        for (std::size_t k = 0; k < times.size(); k++) {
            acc += std::exp(Complex(0, -nu * times[k])) * rotated[k];
        }
        acc /= double(count);
        auto it = reference.find(nu);
        if (it != reference.end()) {
            acc -= it->second;
        }
        err = std::max(err, acc.cwiseAbs().maxCoeff());
    }
    return err;
}

BoltzmannFilter boltzmann_filter(int n, double beta, double delta) {
    if (!(delta > 0 && delta < 1)) {
        throw DomainError("delta must lie in (0, 1)");
    }
    if (n < 1) {
        throw DomainError("frequency range must be positive");
    }
    if (!(beta >= 0) || !std::isfinite(beta)) {
        throw DomainError("beta must be finite and non-negative");
    }
    const int m = 2 * n + 1;
    BoltzmannFilter out;
    out.w = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    out.w_trunc = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    out.cutoff = beta > 0 ? std::log(1 / delta) / beta : std::numeric_limits<double>::infinity();
    auto fill = [m](Eigen::MatrixXd &w, int idx, double g) {
        double a = std::sqrt(g), b = std::sqrt(1 - g);
        w(idx, idx) = a;
        w(idx, m + idx) = -b;
        w(m + idx, idx) = b;
        w(m + idx, m + idx) = a;
    };
    for (int omega = -n; omega <= n; omega++) {
        double g = 1 / (1 + std::exp(-beta * omega));
        double gt = g;
        if (omega > out.cutoff) {
            gt = 1;
        } else if (omega < -out.cutoff) {
            gt = 0;
        }
        fill(out.w, omega + n, g);
        fill(out.w_trunc, omega + n, gt);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.w - out.w_trunc);
    out.actual_norm_err = svd.singularValues()(0);
    out.bound = 8 * n * std::sqrt(delta);
    return out;
}

}  // namespace gibbslab
