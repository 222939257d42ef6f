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
#ifndef GIBBSLAB_TESTS_TEST_UTIL_H
#define GIBBSLAB_TESTS_TEST_UTIL_H

#include <random>

#include "gibbslab/linalg.h"

namespace gibbslab::testing {

inline Matrix random_matrix(Eigen::Index d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            m(i, j) = Complex(g(rng), g(rng));
        }
    }
    return m;
}

inline DensityMatrix random_state(int n, std::mt19937_64 &rng) {
    Matrix a = random_matrix(Eigen::Index{1} << n, rng);
    Matrix m = a * a.adjoint();
    return DensityMatrix(n, m / m.trace().real());
}

inline DensityMatrix random_pure_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vector v(Eigen::Index{1} << n);
    for (Eigen::Index k = 0; k < v.size(); k++) {
        v(k) = Complex(g(rng), g(rng));
    }
    return DensityMatrix::pure(n, v);
}

inline double max_abs(const Matrix &m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

/// Kronecker product built entry by entry, independent of the library's kron.
inline Matrix naive_kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < out.rows(); i++) {
        for (Eigen::Index j = 0; j < out.cols(); j++) {
            out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
        }
    }
    return out;
}

}  // namespace gibbslab::testing

#endif
