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
#include "gibbslab/pauli.h"

#include <bit>
#include <cmath>

namespace gibbslab {

namespace {

constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::size_t words_for(int n) {
    return (static_cast<std::size_t>(n) + 63) / 64;
}

}  // namespace

PauliString::PauliString(int num_qubits)
    : num_qubits_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
    if (num_qubits < 0) {
        throw DomainError("negative qubit count");
    }
}

PauliString PauliString::from_string(std::string_view text) {
    int phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        phase = text[0] == '-' ? 2 : 0;
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        phase += 1;
        text.remove_prefix(1);
    }
    PauliString p(static_cast<int>(text.size()));
    for (std::size_t q = 0; q < text.size(); q++) {
        char c = text[q] == '_' ? 'I' : text[q];
        p.set(static_cast<int>(q), c);
    }
    p.set_phase(phase);
    return p;
}

PauliString PauliString::single(int num_qubits, int q, char c) {
    PauliString p(num_qubits);
    p.set(q, c);
    return p;
}

bool PauliString::x(int q) const {
    return (xs_[q >> 6] >> (q & 63)) & 1;
}

bool PauliString::z(int q) const {
    return (zs_[q >> 6] >> (q & 63)) & 1;
}

char PauliString::at(int q) const {
    static constexpr char kNames[4] = {'I', 'X', 'Z', 'Y'};
    return kNames[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
}

void PauliString::set(int q, char c) {
    if (q < 0 || q >= num_qubits_) {
        throw DomainError("Pauli qubit index out of range");
    }
    bool bx, bz;
    switch (c) {
        case 'I': bx = false; bz = false; break;
        case 'X': bx = true; bz = false; break;
        case 'Y': bx = true; bz = true; break;
        case 'Z': bx = false; bz = true; break;
        default: throw DomainError(std::string("unknown Pauli '") + c + "'");
    }
    std::uint64_t bit = std::uint64_t{1} << (q & 63);
    xs_[q >> 6] = bx ? (xs_[q >> 6] | bit) : (xs_[q >> 6] & ~bit);
    zs_[q >> 6] = bz ? (zs_[q >> 6] | bit) : (zs_[q >> 6] & ~bit);
}

int PauliString::weight() const {
    int w = 0;
    for (std::size_t k = 0; k < xs_.size(); k++) {
        w += std::popcount(xs_[k] | zs_[k]);
    }
    return w;
}

std::vector<int> PauliString::support() const {
    std::vector<int> out;
    for (int q = 0; q < num_qubits_; q++) {
        if (x(q) || z(q)) {
            out.push_back(q);
        }
    }
    return out;
}

bool PauliString::commutes(const PauliString &other) const {
    int parity = 0;
    for (std::size_t k = 0; k < xs_.size(); k++) {
        parity += std::popcount((xs_[k] & other.zs_[k]) ^ (zs_[k] & other.xs_[k]));
    }
    return parity % 2 == 0;
}

bool PauliString::is_identity() const {
    return weight() == 0;
}

PauliString PauliString::operator*(const PauliString &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw DomainError("Pauli product of different lengths");
    }
    PauliString out(num_qubits_);
    int g = 0;
    for (int q = 0; q < num_qubits_; q++) {
        int x1 = x(q), z1 = z(q), x2 = other.x(q), z2 = other.z(q);
        if (x1 && z1) {
            g += z2 - x2;
        } else if (x1) {
            g += z2 * (2 * x2 - 1);
        } else if (z1) {
            g += x2 * (1 - 2 * z2);
        }
    }
    for (std::size_t k = 0; k < xs_.size(); k++) {
        out.xs_[k] = xs_[k] ^ other.xs_[k];
        out.zs_[k] = zs_[k] ^ other.zs_[k];
    }
    out.set_phase(phase_ + other.phase_ + g);
    return out;
}

bool PauliString::operator==(const PauliString &other) const {
    return num_qubits_ == other.num_qubits_ && phase_ == other.phase_ && xs_ == other.xs_ && zs_ == other.zs_;
}

bool PauliString::less_ignoring_phase(const PauliString &other) const {
    if (num_qubits_ != other.num_qubits_) {
        return num_qubits_ < other.num_qubits_;
    }
    if (xs_ != other.xs_) {
        return xs_ < other.xs_;
    }
    return zs_ < other.zs_;
}

DenseOperator PauliString::matrix() const {
    require_dense_capacity(num_qubits_, kMaxDenseQubits, "PauliString::matrix");
    std::size_t d = std::size_t{1} << num_qubits_;
    std::size_t xmask = 0, zmask = 0;
    int ny = 0;
    for (int q = 0; q < num_qubits_; q++) {
        std::size_t bit = std::size_t{1} << (num_qubits_ - 1 - q);
        if (x(q)) {
            xmask |= bit;
        }
        if (z(q)) {
            zmask |= bit;
        }
        if (x(q) && z(q)) {
            ny++;
        }
    }
    // Y = i X Z, so P = i^{ny} X^x Z^z and <c ^ x| X^x Z^z |c> = (-1)^{|c & z|}.
    Complex lead = kIPow[(phase_ + ny) % 4];
    Matrix m = Matrix::Zero(d, d);
    for (std::size_t c = 0; c < d; c++) {
        double sign = (std::popcount(c & zmask) % 2) ? -1.0 : 1.0;
        m(c ^ xmask, c) = lead * sign;
    }
    return DenseOperator(num_qubits_, std::move(m));
}

std::string PauliString::str() const {
    static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string s = kPrefix[phase_];
    for (int q = 0; q < num_qubits_; q++) {
        s.push_back(at(q) == 'I' ? '_' : at(q));
    }
    return s;
}

std::vector<PauliString> all_paulis(int num_qubits) {
    static constexpr char kDigits[4] = {'I', 'X', 'Y', 'Z'};
    std::size_t count = std::size_t{1} << (2 * num_qubits);
    std::vector<PauliString> out;
    out.reserve(count);
    for (std::size_t code = 0; code < count; code++) {
        PauliString p(num_qubits);
        for (int q = 0; q < num_qubits; q++) {
            p.set(q, kDigits[(code >> (2 * (num_qubits - 1 - q))) & 3]);
        }
        out.push_back(std::move(p));
    }
    return out;
}

PauliString place(const PauliString &local, const std::vector<int> &qubits, int num_qubits) {
    if (static_cast<int>(qubits.size()) != local.num_qubits()) {
        throw DomainError("place: qubit list length mismatch");
    }
    PauliString out(num_qubits);
    for (std::size_t k = 0; k < qubits.size(); k++) {
        out.set(qubits[k], local.at(static_cast<int>(k)));
    }
    out.set_phase(local.phase());
    return out;
}

PauliSum PauliSum::from_pauli(const PauliString &p) {
    PauliSum s(p.num_qubits());
    s.add(p, 1.0);
    return s;
}

void PauliSum::add(const PauliString &p, Complex coefficient) {
    PauliString key = p;
    key.set_phase(0);
    terms_[key] += coefficient * kIPow[p.phase()];
}

void PauliSum::prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= tol) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

std::vector<int> PauliSum::support(double tol) const {
    std::vector<bool> hit(num_qubits_, false);
    for (const auto &[p, c] : terms_) {
        if (std::abs(c) <= tol) {
            continue;
        }
        for (int q : p.support()) {
            hit[q] = true;
        }
    }
    std::vector<int> out;
    for (int q = 0; q < num_qubits_; q++) {
        if (hit[q]) {
            out.push_back(q);
        }
    }
    return out;
}

DenseOperator PauliSum::matrix() const {
    require_dense_capacity(num_qubits_, kMaxDenseQubits, "PauliSum::matrix");
    Eigen::Index d = Eigen::Index{1} << num_qubits_;
    Matrix m = Matrix::Zero(d, d);
    for (const auto &[p, c] : terms_) {
        m += c * p.matrix().matrix();
    }
    return DenseOperator(num_qubits_, std::move(m));
}

}  // namespace gibbslab
