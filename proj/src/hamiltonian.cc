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
#include "gibbslab/hamiltonian.h"

#include <algorithm>
#include <bit>
#include <cmath>

namespace gibbslab {

namespace {

// The sum restricted to the qubits of `support`, which must contain every term's support.
Matrix restrict_sum(const PauliSum &sum, const std::vector<int> &support) {
    int k = static_cast<int>(support.size());
    Eigen::Index d = Eigen::Index{1} << k;
    Matrix m = Matrix::Zero(d, d);
    for (const auto &[p, c] : sum.terms()) {
        PauliString local(k);
        for (int t = 0; t < k; t++) {
            local.set(t, p.at(support[t]));
        }
        m += c * local.matrix().matrix();
    }
    return m;
}

}  // namespace

ParentHamiltonian ParentHamiltonian::build(const Circuit &circuit) {
    int n = circuit.num_qubits();
    require_dense_capacity(n, kMaxParentQubits, "build_parent");
    ParentHamiltonian hp;
    hp.circuit_ = circuit;
    hp.supports_ = gibbslab::supports(circuit);
    hp.c_ = build_unitary(circuit);
    Eigen::Index d = Eigen::Index{1} << n;
    Matrix h = Matrix::Zero(d, d);
    for (int i = 0; i < n; i++) {
        HamiltonianTerm term;
        term.support = hp.supports_.z_support[i];
        try {
            PauliSum z = conjugate(circuit, PauliSum::from_pauli(PauliString::single(n, i, 'Z')), 1 << 14);
            Eigen::Index ds = Eigen::Index{1} << term.support.size();
            term.local = 0.5 * (Matrix::Identity(ds, ds) - restrict_sum(z, term.support));
        } catch (const CapacityError &) {
            std::size_t bit = std::size_t{1} << (n - 1 - i);
            Matrix cols(d, d / 2);
            Eigen::Index c = 0;
            for (std::size_t x = 0; x < static_cast<std::size_t>(d); x++) {
                if (x & bit) {
                    cols.col(c++) = hp.c_.matrix().col(x);
                }
            }
            Matrix full = cols * cols.adjoint();
            double scale = std::ldexp(1.0, -(n - static_cast<int>(term.support.size())));
            term.local = scale * partial_trace(full, n, term.support);
        }
        h += embed(term.local, term.support, n);
        hp.terms_.push_back(std::move(term));
    }
    hp.h_ = DenseOperator(n, std::move(h));
    return hp;
}

DenseOperator ParentHamiltonian::term(int i) const {
    if (i < 0 || i >= num_qubits()) {
        throw DomainError("term index out of range");
    }
    return DenseOperator(num_qubits(), embed(terms_[i].local, terms_[i].support, num_qubits()));
}

DenseOperator ParentHamiltonian::eigenprojector(int k) const {
    int n = num_qubits();
    if (k < 0 || k > n) {
        throw DomainError("eigenprojector: energy " + std::to_string(k) + " out of range");
    }
    Eigen::Index d = Eigen::Index{1} << n;
    Matrix out = Matrix::Zero(d, d);
    for (Eigen::Index x = 0; x < d; x++) {
        if (std::popcount(static_cast<std::uint64_t>(x)) == k) {
            out += c_.matrix().col(x) * c_.matrix().col(x).adjoint();
        }
    }
    return DenseOperator(n, std::move(out));
}

GibbsState gibbs_state(const ParentHamiltonian &hp, double beta) {
    if (!(beta >= 0) || !std::isfinite(beta)) {
        throw DomainError("beta must be finite and non-negative");
    }
    int n = hp.num_qubits();
    Eigen::Index d = Eigen::Index{1} << n;
    Vector weights(d);
    for (Eigen::Index x = 0; x < d; x++) {
        weights(x) = std::exp(-beta * std::popcount(static_cast<std::uint64_t>(x)));
    }
    const Matrix &c = hp.unitary().matrix();
    Matrix unnorm = c * weights.asDiagonal() * c.adjoint();
    double z = unnorm.trace().real();
    return GibbsState{DensityMatrix(n, unnorm / z), z};
}

std::vector<int> color_interactions(const ParentHamiltonian &hp) {
    const auto &terms = hp.terms();
    std::size_t m = terms.size();
    std::vector<int> color(m, -1);
    auto overlap = [&](std::size_t a, std::size_t b) {
        for (int q : terms[a].support) {
            if (std::find(terms[b].support.begin(), terms[b].support.end(), q) != terms[b].support.end()) {
                return true;
            }
        }
        return false;
    };
    for (std::size_t a = 0; a < m; a++) {
        std::vector<bool> taken(m + 1, false);
        for (std::size_t b = 0; b < a; b++) {
            if (overlap(a, b)) {
                taken[color[b]] = true;
            }
        }
        int c = 0;
        while (taken[c]) {
            c++;
        }
        color[a] = c;
    }
    return color;
}

int coloring_bound(const ParentHamiltonian &hp) {
    return hp.supports().ell * (1 << hp.circuit().depth()) + 1;
}

}  // namespace gibbslab
