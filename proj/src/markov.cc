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
#include "gibbslab/markov.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace gibbslab {

namespace {

std::vector<int> merged(std::vector<int> x, const std::vector<int> &y) {
    x.insert(x.end(), y.begin(), y.end());
    std::sort(x.begin(), x.end());
    return x;
}

bool contains(const std::vector<int> &set, int q) {
    return std::find(set.begin(), set.end(), q) != set.end();
}

// Positions of `sub` within the sorted list `in`.
std::vector<int> local_positions(const std::vector<int> &sub, const std::vector<int> &in) {
    std::vector<int> out;
    for (int q : sub) {
        out.push_back(static_cast<int>(std::find(in.begin(), in.end(), q) - in.begin()));
    }
    return out;
}

Matrix reduce(const Matrix &rho, const std::vector<int> &register_qubits, const std::vector<int> &keep) {
    return partial_trace(rho, static_cast<int>(register_qubits.size()), local_positions(keep, register_qubits));
}

Matrix pseudo_power(const Matrix &m, double p) {
    double top = hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
    double cutoff = 1e-12 * top;
    return hermitian_function(m, [=](double x) { return x > cutoff ? std::pow(x, p) : 0.0; });
}

}  // namespace

int Lattice::distance(int a, int b) const {
    if (width < 1 || height < 1) {
        throw DomainError("lattice dimensions must be positive");
    }
    return std::abs(a % width - b % width) + std::abs(a / width - b / width);
}

void Tripartition::validate(int num_qubits) const {
    std::vector<int> seen;
    for (const auto *part : {&a, &b, &c}) {
        for (std::size_t k = 0; k < part->size(); k++) {
            int q = (*part)[k];
            if (q < 0 || q >= num_qubits) {
                throw DomainError("tripartition qubit out of range");
            }
            if (k > 0 && q <= (*part)[k - 1]) {
                throw DomainError("tripartition parts must be strictly increasing");
            }
            seen.push_back(q);
        }
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw DomainError("tripartition parts overlap");
    }
}

std::vector<int> Tripartition::all() const {
    return merged(merged(a, b), c);
}

int Tripartition::distance_ac() const {
    if (!lattice) {
        throw DomainError("tripartition has no lattice geometry");
    }
    int best = std::numeric_limits<int>::max();
    for (int x : a) {
        for (int y : c) {
            best = std::min(best, lattice->distance(x, y));
        }
    }
    return best;
}

double cmi(const DensityMatrix &rho, const Tripartition &t) {
    t.validate(rho.num_qubits());
    int n = rho.num_qubits();
    auto s = [&](const std::vector<int> &keep) {
        return von_neumann_entropy(partial_trace(rho.matrix(), n, keep));
    };
    return s(merged(t.a, t.b)) + s(merged(t.b, t.c)) - s(t.all()) - s(t.b);
}

bool is_shielding(const ParentHamiltonian &hp, const Tripartition &t) {
    int n = hp.num_qubits();
    t.validate(n);
    std::vector<int> comp(n);
    for (int q = 0; q < n; q++) {
        comp[q] = q;
    }
    auto find = [&](int q) {
        while (comp[q] != q) {
            q = comp[q] = comp[comp[q]];
        }
        return q;
    };
    for (const auto &term : hp.terms()) {
        int first = -1;
        for (int q : term.support) {
            if (contains(t.b, q)) {
                continue;
            }
            if (first < 0) {
                first = q;
            } else {
                comp[find(q)] = find(first);
            }
        }
    }
    for (int x : t.a) {
        for (int y : t.c) {
            if (find(x) == find(y)) {
                return false;
            }
        }
    }
    return true;
}

DensityMatrix petz_recover(const DensityMatrix &rho, const Tripartition &t) {
    t.validate(rho.num_qubits());
    const int n = rho.num_qubits();
    const std::vector<int> abc = t.all();
    const std::vector<int> ab = merged(t.a, t.b);
    const std::vector<int> bc = merged(t.b, t.c);
    Matrix rho_abc = partial_trace(rho.matrix(), n, abc);
    Matrix rho_ab = reduce(rho_abc, abc, ab);
    Matrix rho_bc = reduce(rho_abc, abc, bc);
    Matrix rho_b = reduce(rho_abc, abc, t.b);
    Matrix inv_sqrt_b = embed(pseudo_power(rho_b, -0.5), local_positions(t.b, ab), static_cast<int>(ab.size()));
    Matrix inner = inv_sqrt_b * rho_ab * inv_sqrt_b;
    Matrix lifted = embed(inner, local_positions(ab, abc), static_cast<int>(abc.size()));
    Matrix sqrt_bc = embed(pseudo_power(rho_bc, 0.5), local_positions(bc, abc), static_cast<int>(abc.size()));
    Matrix out = sqrt_bc * lifted * sqrt_bc;
    out = 0.5 * (out + out.adjoint()).eval();
    double tr = out.trace().real();
    return DensityMatrix(static_cast<int>(abc.size()), out / tr, 1e-6);
}

double petz_residual(const DensityMatrix &rho, const Tripartition &t) {
    Matrix rho_abc = partial_trace(rho.matrix(), rho.num_qubits(), t.all());
    return trace_distance(rho_abc, petz_recover(rho, t).matrix());
}

Matrix restricted_gibbs(const ParentHamiltonian &hp, const std::vector<int> &x, double beta) {
    int k = static_cast<int>(x.size());
    Eigen::Index d = Eigen::Index{1} << k;
    Matrix h = Matrix::Zero(d, d);
    for (const auto &term : hp.terms()) {
        if (std::all_of(term.support.begin(), term.support.end(), [&](int q) { return contains(x, q); })) {
            h += embed(term.local, local_positions(term.support, x), k);
        }
    }
    Matrix g = hermitian_function(h, [beta](double e) { return std::exp(-beta * e); });
    return g / g.trace().real();
}

LocalIndistinguishability local_indistinguishability_check(const ParentHamiltonian &hp, const Tripartition &t,
                                                           double beta) {
    const int n = hp.num_qubits();
    t.validate(n);
    LocalIndistinguishability out;
    out.distance = t.distance_ac();
    out.depth = hp.circuit().depth();
    out.separated = out.distance >= 4 * out.depth + 1;

    const std::vector<int> x = t.all();
    const std::vector<int> ab = merged(t.a, t.b);
    Matrix gx = restricted_gibbs(hp, x, beta);
    Matrix gab = restricted_gibbs(hp, ab, beta);
    out.residual = trace_distance(reduce(gx, x, t.a), reduce(gab, ab, t.a));

    // Gates in the lightcones of qubits whose whole lightcone sits in B; they act inside B.
    std::vector<int> seeds;
    for (int q = 0; q < n; q++) {
        const auto &cone = hp.supports().lightcone[q];
        if (std::all_of(cone.begin(), cone.end(), [&](int p) { return contains(t.b, p); })) {
            seeds.push_back(q);
        }
    }
    Matrix u_full = build_unitary(lightcone_subcircuit(hp.circuit(), seeds)).matrix();
    Matrix u = partial_trace(u_full, n, x) * std::ldexp(1.0, -(n - static_cast<int>(x.size())));
    Matrix sigma = u.adjoint() * gx * u;
    std::vector<int> left = t.a, right = t.c;
    for (int q : t.b) {
        int da = std::numeric_limits<int>::max();
        for (int p : t.a) {
            da = std::min(da, t.lattice->distance(p, q));
        }
        (da <= out.depth ? left : right).push_back(q);
    }
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    Matrix prod = embed(reduce(sigma, x, left), local_positions(left, x), static_cast<int>(x.size())) *
                  embed(reduce(sigma, x, right), local_positions(right, x), static_cast<int>(x.size()));
    out.decoupling_residual = trace_distance(sigma, prod);
    return out;
}

}  // namespace gibbslab
