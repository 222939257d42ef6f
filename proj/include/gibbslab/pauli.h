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
#ifndef GIBBSLAB_PAULI_H
#define GIBBSLAB_PAULI_H

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gibbslab/linalg.h"

namespace gibbslab {

/// An n-qubit Pauli string i^phase * P_0 (x) ... (x) P_{n-1}, stored as x/z bit planes.
/// A qubit with both bits set is Y (not XZ).
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(int num_qubits);
    /// Parses "XIZY", optionally prefixed by +, -, i, +i or -i.
    static PauliString from_string(std::string_view text);
    /// Single-qubit Pauli ('I', 'X', 'Y' or 'Z') at qubit q.
    static PauliString single(int num_qubits, int q, char p);

    int num_qubits() const { return num_qubits_; }
    bool x(int q) const;
    bool z(int q) const;
    char at(int q) const;
    void set(int q, char p);
    /// Power of i in the leading phase, in [0, 4).
    int phase() const { return phase_; }
    void set_phase(int k) { phase_ = ((k % 4) + 4) % 4; }

    int weight() const;
    std::vector<int> support() const;
    bool commutes(const PauliString &other) const;
    bool is_identity() const;

    PauliString operator*(const PauliString &other) const;
    bool operator==(const PauliString &other) const;
    /// Ordering ignores the phase, so strings differing only by phase compare equal under it.
    bool less_ignoring_phase(const PauliString &other) const;

    /// Dense matrix including the phase.
    DenseOperator matrix() const;
    std::string str() const;

   private:
    int num_qubits_ = 0;
    int phase_ = 0;
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
};

/// All 4^k Pauli strings on k qubits, in base-4 order with I,X,Y,Z digits (qubit 0 most significant).
std::vector<PauliString> all_paulis(int num_qubits);

/// Places a k-qubit Pauli on the listed qubits of an n-qubit register.
PauliString place(const PauliString &local, const std::vector<int> &qubits, int num_qubits);

struct PhaselessLess {
    bool operator()(const PauliString &a, const PauliString &b) const { return a.less_ignoring_phase(b); }
};

/// A linear combination of Pauli strings. Keys always carry phase 0.
class PauliSum {
   public:
    explicit PauliSum(int num_qubits = 0) : num_qubits_(num_qubits) {}
    static PauliSum from_pauli(const PauliString &p);

    int num_qubits() const { return num_qubits_; }
    void add(const PauliString &p, Complex coefficient);
    void prune(double tol);
    std::size_t size() const { return terms_.size(); }
    const std::map<PauliString, Complex, PhaselessLess> &terms() const { return terms_; }
    /// Union of supports of terms with non-negligible coefficients.
    std::vector<int> support(double tol = 1e-12) const;
    DenseOperator matrix() const;

   private:
    int num_qubits_;
    std::map<PauliString, Complex, PhaselessLess> terms_;
};

}  // namespace gibbslab

#endif
