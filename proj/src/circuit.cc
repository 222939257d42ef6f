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
#include "gibbslab/circuit.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "gibbslab/rng.h"

namespace gibbslab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_qubit(int q, int n) {
    if (q < 0 || q >= n) {
        throw DomainError("qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
    }
}

int ceil_log2(std::size_t k) {
    int r = 0;
    while ((std::size_t{1} << r) < k) {
        r++;
    }
    return r;
}

double snap(double v) {
    if (std::abs(v) < 1e-15) {
        return 0;
    }
    if (std::abs(v - 1) < 1e-15) {
        return 1;
    }
    if (std::abs(v + 1) < 1e-15) {
        return -1;
    }
    return v;
}

}  // namespace

Gate Gate::h(int q) {
    return Gate{GateKind::kH, {q}};
}

Gate Gate::cnot(int control, int target) {
    if (control == target) {
        throw DomainError("CNOT control equals target");
    }
    return Gate{GateKind::kCnot, {control, target}};
}

Gate Gate::cz(int a, int b) {
    if (a == b) {
        throw DomainError("CZ on a single qubit");
    }
    return Gate{GateKind::kCz, {a, b}};
}

Gate Gate::tpow(int q, int k) {
    return Gate{GateKind::kTPow, {q}, ((k % 8) + 8) % 8};
}

Gate Gate::zrot(int q, double theta) {
    return Gate{GateKind::kZRot, {q}, 0, theta};
}

Gate Gate::mzrot(std::vector<int> qubits, double theta) {
    if (qubits.empty()) {
        throw DomainError("multi-Z rotation needs at least one qubit");
    }
    std::vector<int> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("multi-Z rotation repeats a qubit");
    }
    return Gate{GateKind::kMultiZRot, std::move(qubits), 0, theta};
}

bool Gate::is_diagonal() const {
    return kind != GateKind::kH && kind != GateKind::kCnot;
}

Gate Gate::inverse() const {
    Gate g = *this;
    switch (kind) {
        case GateKind::kTPow: g.power = (8 - power) % 8; break;
        case GateKind::kZRot:
        case GateKind::kMultiZRot: g.theta = -theta; break;
        default: break;
    }
    return g;
}

Matrix Gate::local_matrix() const {
    const Complex i(0, 1);
    switch (kind) {
        case GateKind::kH: {
            Matrix m(2, 2);
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        }
        case GateKind::kCnot: {
            Matrix m = Matrix::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
            return m;
        }
        case GateKind::kCz: {
            Matrix m = Matrix::Identity(4, 4);
            m(3, 3) = -1;
            return m;
        }
        case GateKind::kTPow: {
            Matrix m = Matrix::Identity(2, 2);
            m(1, 1) = std::exp(i * (kPi * power / 4));
            return m;
        }
        case GateKind::kZRot: {
            Matrix m = Matrix::Zero(2, 2);
            m(0, 0) = std::exp(i * theta);
            m(1, 1) = std::exp(-i * theta);
            return m;
        }
        case GateKind::kMultiZRot: {
            std::size_t d = std::size_t{1} << qubits.size();
            Matrix m = Matrix::Zero(d, d);
            for (std::size_t c = 0; c < d; c++) {
                double sign = std::popcount(c) % 2 ? -1.0 : 1.0;
                m(c, c) = std::exp(i * (sign * theta));
            }
            return m;
        }
    }
    throw DomainError("unknown gate kind");
}

int Gate::lowered_depth() const {
    if (kind == GateKind::kMultiZRot && qubits.size() > 2) {
        return 2 * ceil_log2(qubits.size()) + 1;
    }
    if (kind == GateKind::kMultiZRot && qubits.size() == 2) {
        return 3;
    }
    return 1;
}

std::string Gate::name() const {
    switch (kind) {
        case GateKind::kH: return "H";
        case GateKind::kCnot: return "CNOT";
        case GateKind::kCz: return "CZ";
        case GateKind::kTPow: return "TPOW";
        case GateKind::kZRot: return "ZROT";
        case GateKind::kMultiZRot: return "MZROT";
    }
    return "?";
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) {
        throw DomainError("a circuit needs at least one qubit");
    }
}

void Circuit::append_layer(Layer layer) {
    if (layer.empty()) {
        return;
    }
    std::vector<bool> used(num_qubits_, false);
    for (const Gate &g : layer) {
        for (int q : g.qubits) {
            check_qubit(q, num_qubits_);
            if (used[q]) {
                throw DomainError("qubit " + std::to_string(q) + " used twice in one layer");
            }
            used[q] = true;
        }
    }
    layers_.push_back(std::move(layer));
}

void Circuit::append(const Circuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw DomainError("cannot append circuits on different registers");
    }
    for (const Layer &l : other.layers_) {
        layers_.push_back(l);
    }
}

int Circuit::depth() const {
    int d = 0;
    for (const Layer &l : layers_) {
        int ld = 0;
        for (const Gate &g : l) {
            ld = std::max(ld, g.lowered_depth());
        }
        d += ld;
    }
    return d;
}

std::size_t Circuit::gate_count() const {
    std::size_t c = 0;
    for (const Layer &l : layers_) {
        c += l.size();
    }
    return c;
}

Circuit Circuit::adjoint() const {
    Circuit out(num_qubits_);
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
        Layer l;
        for (const Gate &g : *it) {
            l.push_back(g.inverse());
        }
        out.layers_.push_back(std::move(l));
    }
    return out;
}

Circuit Circuit::filtered(const std::vector<std::vector<bool>> &keep) const {
    Circuit out(num_qubits_);
    for (std::size_t li = 0; li < layers_.size(); li++) {
        Layer l;
        for (std::size_t gi = 0; gi < layers_[li].size(); gi++) {
            if (keep[li][gi]) {
                l.push_back(layers_[li][gi]);
            }
        }
        out.append_layer(std::move(l));
    }
    return out;
}

void apply_gate(Vector &state, int n, const Gate &g) {
    const std::size_t d = std::size_t{1} << n;
    auto bit = [n](int q) { return std::size_t{1} << (n - 1 - q); };
    const Complex i(0, 1);
    switch (g.kind) {
        case GateKind::kH: {
            std::size_t b = bit(g.qubits[0]);
            const double s = 1 / std::sqrt(2.0);
            for (std::size_t c = 0; c < d; c++) {
                if (!(c & b)) {
                    Complex a0 = state(c), a1 = state(c | b);
                    state(c) = s * (a0 + a1);
                    state(c | b) = s * (a0 - a1);
                }
            }
            break;
        }
        case GateKind::kCnot: {
            std::size_t bc = bit(g.qubits[0]), bt = bit(g.qubits[1]);
            for (std::size_t c = 0; c < d; c++) {
                if ((c & bc) && !(c & bt)) {
                    std::swap(state(c), state(c | bt));
                }
            }
            break;
        }
        case GateKind::kCz: {
            std::size_t m = bit(g.qubits[0]) | bit(g.qubits[1]);
            for (std::size_t c = 0; c < d; c++) {
                if ((c & m) == m) {
                    state(c) = -state(c);
                }
            }
            break;
        }
        case GateKind::kTPow: {
            std::size_t b = bit(g.qubits[0]);
            Complex ph = std::exp(i * (kPi * g.power / 4));
            for (std::size_t c = 0; c < d; c++) {
                if (c & b) {
                    state(c) *= ph;
                }
            }
            break;
        }
        case GateKind::kZRot:
        case GateKind::kMultiZRot: {
            std::size_t m = 0;
            for (int q : g.qubits) {
                m |= bit(q);
            }
            Complex plus = std::exp(i * g.theta), minus = std::exp(-i * g.theta);
            for (std::size_t c = 0; c < d; c++) {
                state(c) *= (std::popcount(c & m) % 2) ? minus : plus;
            }
            break;
        }
    }
}

Vector simulate(const Circuit &circuit, const Vector &initial) {
    require_dense_capacity(circuit.num_qubits(), kMaxStatevectorQubits, "simulate");
    if (initial.size() != (Eigen::Index{1} << circuit.num_qubits())) {
        throw DomainError("simulate: state size does not match circuit");
    }
    Vector s = initial;
    for (const Layer &l : circuit.layers()) {
        for (const Gate &g : l) {
            apply_gate(s, circuit.num_qubits(), g);
        }
    }
    return s;
}

Vector simulate_zero(const Circuit &circuit) {
    require_dense_capacity(circuit.num_qubits(), kMaxStatevectorQubits, "simulate");
    Vector s = Vector::Zero(Eigen::Index{1} << circuit.num_qubits());
    s(0) = 1;
    return simulate(circuit, s);
}

DenseOperator build_unitary(const Circuit &circuit) {
    int n = circuit.num_qubits();
    require_dense_capacity(n, kMaxDenseQubits, "build_unitary");
    Eigen::Index d = Eigen::Index{1} << n;
    Matrix u(d, d);
    for (Eigen::Index c = 0; c < d; c++) {
        Vector e = Vector::Zero(d);
        e(c) = 1;
        u.col(c) = simulate(circuit, e);
    }
    return DenseOperator(n, std::move(u));
}

std::vector<double> output_distribution(const Circuit &circuit) {
    Vector s = simulate_zero(circuit);
    std::vector<double> p(s.size());
    for (Eigen::Index k = 0; k < s.size(); k++) {
        p[k] = std::norm(s(k));
    }
    return p;
}

std::vector<std::uint64_t> sample_distribution(const std::vector<double> &probs, std::uint64_t seed,
                                               std::size_t count) {
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (std::size_t k = 0; k < probs.size(); k++) {
        acc += probs[k];
        cdf[k] = acc;
    }
    std::mt19937_64 rng = make_rng(seed);
    std::uniform_real_distribution<double> u(0.0, acc);
    std::vector<std::uint64_t> out(count);
    for (auto &x : out) {
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u(rng));
        x = std::min<std::size_t>(it - cdf.begin(), probs.size() - 1);
    }
    return out;
}

std::vector<std::uint64_t> sample(const Circuit &circuit, std::uint64_t seed, std::size_t count) {
    return sample_distribution(output_distribution(circuit), seed, count);
}

std::vector<int> lightcone(const Circuit &circuit, int qubit) {
    check_qubit(qubit, circuit.num_qubits());
    std::vector<bool> reached(circuit.num_qubits(), false);
    reached[qubit] = true;
    for (const Layer &l : circuit.layers()) {
        for (const Gate &g : l) {
            bool touch = std::any_of(g.qubits.begin(), g.qubits.end(), [&](int q) { return reached[q]; });
            if (touch) {
                for (int q : g.qubits) {
                    reached[q] = true;
                }
            }
        }
    }
    std::vector<int> out;
    for (int q = 0; q < circuit.num_qubits(); q++) {
        if (reached[q]) {
            out.push_back(q);
        }
    }
    return out;
}

Circuit lightcone_subcircuit(const Circuit &circuit, const std::vector<int> &seeds) {
    std::vector<bool> reached(circuit.num_qubits(), false);
    for (int q : seeds) {
        check_qubit(q, circuit.num_qubits());
        reached[q] = true;
    }
    std::vector<std::vector<bool>> keep;
    for (const Layer &l : circuit.layers()) {
        std::vector<bool> k(l.size(), false);
        for (std::size_t gi = 0; gi < l.size(); gi++) {
            const Gate &g = l[gi];
            if (std::any_of(g.qubits.begin(), g.qubits.end(), [&](int q) { return reached[q]; })) {
                k[gi] = true;
                for (int q : g.qubits) {
                    reached[q] = true;
                }
            }
        }
        keep.push_back(std::move(k));
    }
    return circuit.filtered(keep);
}

namespace {

// Image of the single-qubit X or Z at qubit q under a Clifford gate, as a Pauli string.
PauliString clifford_image(const Gate &g, int n, int q, char xz) {
    PauliString out(n);
    switch (g.kind) {
        case GateKind::kH:
            out.set(q, xz == 'X' ? 'Z' : 'X');
            return out;
        case GateKind::kCnot: {
            int c = g.qubits[0], t = g.qubits[1];
            out.set(q, xz);
            if (xz == 'X' && q == c) {
                out.set(t, 'X');
            } else if (xz == 'Z' && q == t) {
                out.set(c, 'Z');
            }
            return out;
        }
        case GateKind::kCz: {
            int other = g.qubits[0] == q ? g.qubits[1] : g.qubits[0];
            out.set(q, xz);
            if (xz == 'X') {
                out.set(other, 'Z');
            }
            return out;
        }
        default:
            throw DomainError("not a Clifford gate");
    }
}

PauliString conjugate_clifford(const Gate &g, const PauliString &p) {
    int n = p.num_qubits();
    PauliString rest = p;
    for (int q : g.qubits) {
        rest.set(q, 'I');
    }
    PauliString out = rest;
    for (int q : g.qubits) {
        bool x = p.x(q), z = p.z(q);
        PauliString local(n);
        if (x) {
            local = local * clifford_image(g, n, q, 'X');
        }
        if (z) {
            local = local * clifford_image(g, n, q, 'Z');
        }
        if (x && z) {
            // Y = i X Z.
            local.set_phase(local.phase() + 1);
        }
        out = out * local;
    }
    return out;
}

// exp(i theta Z_S) P exp(-i theta Z_S).
void conjugate_zrotation(const std::vector<int> &qs, double theta, const PauliString &p, Complex coef,
                         PauliSum &out) {
    PauliString zs(p.num_qubits());
    for (int q : qs) {
        zs.set(q, 'Z');
    }
    if (p.commutes(zs)) {
        out.add(p, coef);
        return;
    }
    double c = snap(std::cos(2 * theta)), s = snap(std::sin(2 * theta));
    if (c != 0) {
        out.add(p, coef * c);
    }
    if (s != 0) {
        out.add(zs * p, coef * Complex(0, s));
    }
}

void conjugate_gate(const Gate &g, const PauliSum &in, PauliSum &out) {
    for (const auto &[p, coef] : in.terms()) {
        switch (g.kind) {
            case GateKind::kH:
            case GateKind::kCnot:
            case GateKind::kCz:
                out.add(conjugate_clifford(g, p), coef);
                break;
            case GateKind::kTPow:
                // T^k = e^{i k pi / 8} exp(-i (k pi / 8) Z).
                conjugate_zrotation(g.qubits, -kPi * g.power / 8, p, coef, out);
                break;
            case GateKind::kZRot:
            case GateKind::kMultiZRot:
                conjugate_zrotation(g.qubits, g.theta, p, coef, out);
                break;
        }
    }
}

bool touches(const Gate &g, const PauliString &p) {
    return std::any_of(g.qubits.begin(), g.qubits.end(), [&](int q) { return p.x(q) || p.z(q); });
}

// Dense support test: O acts trivially on j iff it commutes with X_j and Z_j.
std::vector<int> dense_z_support(const Circuit &circuit, int i) {
    int n = circuit.num_qubits();
    require_dense_capacity(n, kMaxDenseQubits, "supports (dense fallback)");
    Circuit adj = circuit.adjoint();
    Eigen::Index d = Eigen::Index{1} << n;
    auto apply_o = [&](const Vector &v) {
        Vector w = simulate(adj, v);
        apply_gate(w, n, Gate::zrot(i, kPi / 2));  // exp(i pi/2 Z) = i Z
        return Vector(simulate(circuit, w) * Complex(0, -1));
    };
    auto apply_pauli = [&](Vector v, int q, char c) {
        std::size_t b = std::size_t{1} << (n - 1 - q);
        for (Eigen::Index k = 0; k < d; k++) {
            if (c == 'Z' && (k & b)) {
                v(k) = -v(k);
            }
        }
        if (c == 'X') {
            for (Eigen::Index k = 0; k < d; k++) {
                if (!(k & b)) {
                    std::swap(v(k), v(k | b));
                }
            }
        }
        return v;
    };
    std::mt19937_64 rng = make_rng(0x5eed, static_cast<std::uint64_t>(i));
    std::normal_distribution<double> g;
    std::vector<Vector> probes;
    for (int t = 0; t < 2; t++) {
        Vector v(d);
        for (Eigen::Index k = 0; k < d; k++) {
            v(k) = Complex(g(rng), g(rng));
        }
        probes.push_back(v / v.norm());
    }
    std::vector<int> out;
    for (int j = 0; j < n; j++) {
        bool trivial = true;
        for (const Vector &v : probes) {
            for (char c : {'X', 'Z'}) {
                Vector lhs = apply_o(apply_pauli(v, j, c));
                Vector rhs = apply_pauli(apply_o(v), j, c);
                if ((lhs - rhs).norm() > 1e-9) {
                    trivial = false;
                }
            }
        }
        if (!trivial) {
            out.push_back(j);
        }
    }
    return out;
}

}  // namespace

PauliSum conjugate(const Circuit &circuit, const PauliSum &op, std::size_t max_terms) {
    if (op.num_qubits() != circuit.num_qubits()) {
        throw DomainError("conjugate: operator and circuit sizes differ");
    }
    PauliSum cur = op;
    for (const Layer &l : circuit.layers()) {
        for (const Gate &g : l) {
            PauliSum next(cur.num_qubits());
            conjugate_gate(g, cur, next);
            next.prune(1e-14);
            cur = std::move(next);
            if (cur.size() > max_terms) {
                throw CapacityError("conjugate: Pauli expansion exceeds " + std::to_string(max_terms) + " terms");
            }
        }
    }
    return cur;
}

CircuitSupports supports(const Circuit &circuit, const SupportOptions &options) {
    int n = circuit.num_qubits();
    CircuitSupports s;
    s.lightcone.resize(n);
    s.reverse_lightcone.resize(n);
    s.z_support.resize(n);
    for (int i = 0; i < n; i++) {
        s.lightcone[i] = lightcone(circuit, i);
        for (int j : s.lightcone[i]) {
            s.reverse_lightcone[j].push_back(i);
        }
    }
    for (int i = 0; i < n; i++) {
        PauliSum cur = PauliSum::from_pauli(PauliString::single(n, i, 'Z'));
        bool overflow = false;
        for (const Layer &l : circuit.layers()) {
            for (const Gate &g : l) {
                bool any = false;
                for (const auto &[p, c] : cur.terms()) {
                    if (touches(g, p)) {
                        any = true;
                        break;
                    }
                }
                if (!any) {
                    continue;
                }
                PauliSum next(n);
                conjugate_gate(g, cur, next);
                next.prune(1e-14);
                cur = std::move(next);
                if (cur.size() > options.max_terms) {
                    overflow = true;
                    break;
                }
            }
            if (overflow) {
                break;
            }
        }
        s.z_support[i] = overflow ? dense_z_support(circuit, i) : cur.support(1e-12);
    }
    for (int i = 0; i < n; i++) {
        s.ell = std::max<int>(s.ell, s.lightcone[i].size());
        s.ell_reverse = std::max<int>(s.ell_reverse, s.reverse_lightcone[i].size());
        s.locality = std::max<int>(s.locality, s.z_support[i].size());
    }
    return s;
}

bool is_iqp_shaped(const Circuit &circuit, std::string *why) {
    auto fail = [&](const char *msg) {
        if (why) {
            *why = msg;
        }
        return false;
    };
    int n = circuit.num_qubits();
    const auto &ls = circuit.layers();
    if (ls.size() < 2) {
        return fail("an IQP circuit needs Hadamard layers at both ends");
    }
    auto full_h = [n](const Layer &l) {
        if (static_cast<int>(l.size()) != n) {
            return false;
        }
        return std::all_of(l.begin(), l.end(), [](const Gate &g) { return g.kind == GateKind::kH; });
    };
    if (!full_h(ls.front()) || !full_h(ls.back())) {
        return fail("first and last layers must apply H to every qubit");
    }
    std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(n, std::vector<std::uint64_t>(words, 0));
    for (int q = 0; q < n; q++) {
        rows[q][q >> 6] |= std::uint64_t{1} << (q & 63);
    }
    for (std::size_t li = 1; li + 1 < ls.size(); li++) {
        for (const Gate &g : ls[li]) {
            if (g.kind == GateKind::kH) {
                return fail("Hadamard gate inside the diagonal section");
            }
            if (g.kind == GateKind::kCnot) {
                auto &t = rows[g.qubits[1]];
                const auto &c = rows[g.qubits[0]];
                for (std::size_t w = 0; w < words; w++) {
                    t[w] ^= c[w];
                }
            }
        }
    }
    for (int q = 0; q < n; q++) {
        for (std::size_t w = 0; w < words; w++) {
            std::uint64_t expect = (static_cast<std::size_t>(q >> 6) == w) ? (std::uint64_t{1} << (q & 63)) : 0;
            if (rows[q][w] != expect) {
                return fail("CNOTs in the diagonal section do not cancel");
            }
        }
    }
    return true;
}

Circuit build_iqp_cluster(int width, int height, const std::vector<int> &t_powers) {
    if (width < 1 || height < 1) {
        throw DomainError("grid dimensions must be positive");
    }
    int n = width * height;
    if (static_cast<int>(t_powers.size()) != n) {
        throw DomainError("need one T power per grid site");
    }
    auto idx = [width](int r, int c) { return r * width + c; };
    Circuit circ(n);
    Layer hs;
    for (int q = 0; q < n; q++) {
        hs.push_back(Gate::h(q));
    }
    circ.append_layer(hs);
    for (int parity = 0; parity < 2; parity++) {
        Layer l;
        for (int r = 0; r < height; r++) {
            for (int c = parity; c + 1 < width; c += 2) {
                l.push_back(Gate::cz(idx(r, c), idx(r, c + 1)));
            }
        }
        circ.append_layer(std::move(l));
    }
    for (int parity = 0; parity < 2; parity++) {
        Layer l;
        for (int r = parity; r + 1 < height; r += 2) {
            for (int c = 0; c < width; c++) {
                l.push_back(Gate::cz(idx(r, c), idx(r + 1, c)));
            }
        }
        circ.append_layer(std::move(l));
    }
    Layer ts;
    for (int q = 0; q < n; q++) {
        int k = ((t_powers[q] % 8) + 8) % 8;
        if (k != 0) {
            ts.push_back(Gate::tpow(q, k));
        }
    }
    circ.append_layer(std::move(ts));
    circ.append_layer(hs);
    return circ;
}

std::vector<int> random_t_powers(int num_qubits, std::uint64_t seed) {
    std::mt19937_64 rng = make_rng(seed);
    std::uniform_int_distribution<int> u(0, 7);
    std::vector<int> out(num_qubits);
    for (int &b : out) {
        b = u(rng);
    }
    return out;
}

Circuit random_circuit(int num_qubits, std::uint64_t seed, const RandomCircuitOptions &options) {
    std::mt19937_64 rng = make_rng(seed);
    Circuit circ(num_qubits);
    std::vector<int> order(num_qubits);
    for (int layer = 0; layer < options.depth; layer++) {
        for (int q = 0; q < num_qubits; q++) {
            order[q] = q;
        }
        std::shuffle(order.begin(), order.end(), rng);
        Layer l;
        std::size_t k = 0;
        while (k < order.size()) {
            int kind = std::uniform_int_distribution<int>(0, options.allow_rotations ? 4 : 3)(rng);
            if (kind <= 1 && k + 1 < order.size()) {
                l.push_back(kind == 0 ? Gate::cnot(order[k], order[k + 1]) : Gate::cz(order[k], order[k + 1]));
                k += 2;
            } else if (kind == 2) {
                l.push_back(Gate::h(order[k++]));
            } else if (kind == 4) {
                l.push_back(Gate::zrot(order[k++], std::uniform_real_distribution<double>(-kPi, kPi)(rng)));
            } else {
                l.push_back(Gate::tpow(order[k++], std::uniform_int_distribution<int>(1, 7)(rng)));
            }
        }
        circ.append_layer(std::move(l));
    }
    return circ;
}

}  // namespace gibbslab
