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
#include "gibbslab/repcode.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace gibbslab {

namespace {

constexpr double kPi = std::numbers::pi;

Bits unit_row(int n, std::initializer_list<int> qs) {
    Bits row(n, 0);
    for (int q : qs) {
        row[q] = 1;
    }
    return row;
}

std::vector<int> row_qubits(const Bits &row) {
    std::vector<int> qs;
    for (std::size_t q = 0; q < row.size(); q++) {
        if (row[q]) {
            qs.push_back(static_cast<int>(q));
        }
    }
    return qs;
}

}  // namespace

void IqpProgram::validate() const {
    if (num_qubits < 1) {
        throw DomainError("program needs at least one qubit");
    }
    if (rows.size() != theta.size()) {
        throw DomainError("need one angle per monomial");
    }
    for (const Bits &row : rows) {
        if (static_cast<int>(row.size()) != num_qubits) {
            throw DomainError("monomial width does not match qubit count");
        }
        if (std::none_of(row.begin(), row.end(), [](std::uint8_t b) { return b != 0; })) {
            throw DomainError("all-zero monomial");
        }
    }
}

Vector IqpProgram::diagonal() const {
    validate();
    require_dense_capacity(num_qubits, kMaxStatevectorQubits, "IqpProgram::diagonal");
    std::size_t d = std::size_t{1} << num_qubits;
    std::vector<std::uint64_t> masks;
    for (const Bits &row : rows) {
        std::uint64_t m = 0;
        for (int q = 0; q < num_qubits; q++) {
            if (row[q]) {
                m |= std::uint64_t{1} << (num_qubits - 1 - q);
            }
        }
        masks.push_back(m);
    }
    Vector out(d);
    for (std::size_t x = 0; x < d; x++) {
        double phase = global_phase;
        for (std::size_t j = 0; j < masks.size(); j++) {
            phase += (std::popcount(x & masks[j]) % 2 ? -1.0 : 1.0) * theta[j];
        }
        out(x) = std::exp(Complex(0, phase));
    }
    return out;
}

IqpProgram iqp_to_program(const Circuit &circuit) {
    std::string why;
    if (!is_iqp_shaped(circuit, &why)) {
        throw DomainError("circuit is not IQP-shaped: " + why);
    }
    IqpProgram p;
    p.num_qubits = circuit.num_qubits();
    const int n = p.num_qubits;
    const auto &layers = circuit.layers();
    for (std::size_t li = 1; li + 1 < layers.size(); li++) {
        for (const Gate &g : layers[li]) {
            switch (g.kind) {
                case GateKind::kTPow:
                    p.rows.push_back(unit_row(n, {g.qubits[0]}));
                    p.theta.push_back(-kPi * g.power / 8);
                    p.global_phase += kPi * g.power / 8;
                    break;
                case GateKind::kZRot:
                    p.rows.push_back(unit_row(n, {g.qubits[0]}));
                    p.theta.push_back(g.theta);
                    break;
                case GateKind::kCz:
                    // CZ = exp(i (pi/4) (1 - Z_a - Z_b + Z_a Z_b)).
                    p.rows.push_back(unit_row(n, {g.qubits[0]}));
                    p.theta.push_back(-kPi / 4);
                    p.rows.push_back(unit_row(n, {g.qubits[1]}));
                    p.theta.push_back(-kPi / 4);
                    p.rows.push_back(unit_row(n, {g.qubits[0], g.qubits[1]}));
                    p.theta.push_back(kPi / 4);
                    p.global_phase += kPi / 4;
                    break;
                case GateKind::kMultiZRot: {
                    Bits row(n, 0);
                    for (int q : g.qubits) {
                        row[q] = 1;
                    }
                    p.rows.push_back(std::move(row));
                    p.theta.push_back(g.theta);
                    break;
                }
                default:
                    throw DomainError("only diagonal gates may appear between the Hadamard layers");
            }
        }
    }
    return p;
}

Circuit decompose_multiz(int k, double theta) {
    if (k < 1) {
        throw DomainError("multi-Z rotation needs at least one qubit");
    }
    Circuit c(k);
    std::vector<int> active(k);
    for (int q = 0; q < k; q++) {
        active[q] = q;
    }
    std::vector<Layer> ladder;
    while (active.size() > 1) {
        Layer l;
        std::vector<int> next;
        for (std::size_t m = 0; m + 1 < active.size(); m += 2) {
            l.push_back(Gate::cnot(active[m], active[m + 1]));
            next.push_back(active[m + 1]);
        }
        if (active.size() % 2) {
            next.push_back(active.back());
        }
        ladder.push_back(std::move(l));
        active = std::move(next);
    }
    for (const Layer &l : ladder) {
        c.append_layer(l);
    }
    c.append_layer({Gate::zrot(active[0], theta)});
    for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) {
        c.append_layer(*it);
    }
    return c;
}

Circuit program_to_circuit(const IqpProgram &program, bool decompose) {
    program.validate();
    const int n = program.num_qubits;
    // Rotations commute, so each is placed in the first slot whose qubits are free.
    struct Slot {
        std::vector<bool> used;
        std::vector<Circuit> blocks;
    };
    std::vector<Slot> slots;
    for (std::size_t j = 0; j < program.rows.size(); j++) {
        auto qs = row_qubits(program.rows[j]);
        Circuit block(n);
        if (qs.size() == 1) {
            block.append_layer({Gate::zrot(qs[0], program.theta[j])});
        } else if (!decompose) {
            block.append_layer({Gate::mzrot(qs, program.theta[j])});
        } else {
            Circuit ladder = decompose_multiz(static_cast<int>(qs.size()), program.theta[j]);
            for (const Layer &l : ladder.layers()) {
                Layer mapped;
                for (Gate g : l) {
                    for (int &q : g.qubits) {
                        q = qs[q];
                    }
                    mapped.push_back(std::move(g));
                }
                block.append_layer(std::move(mapped));
            }
        }
        auto fits = [&](const Slot &s) {
            return std::none_of(qs.begin(), qs.end(), [&](int q) { return bool(s.used[q]); });
        };
        auto it = std::find_if(slots.begin(), slots.end(), fits);
        if (it == slots.end()) {
            slots.push_back(Slot{std::vector<bool>(n, false), {}});
            it = slots.end() - 1;
        }
        for (int q : qs) {
            it->used[q] = true;
        }
        it->blocks.push_back(std::move(block));
    }
    Circuit c(n);
    Layer hs;
    for (int q = 0; q < n; q++) {
        hs.push_back(Gate::h(q));
    }
    c.append_layer(hs);
    for (const Slot &s : slots) {
        std::size_t depth = 0;
        for (const Circuit &b : s.blocks) {
            depth = std::max(depth, b.layers().size());
        }
        for (std::size_t t = 0; t < depth; t++) {
            Layer merged;
            for (const Circuit &b : s.blocks) {
                if (t < b.layers().size()) {
                    merged.insert(merged.end(), b.layers()[t].begin(), b.layers()[t].end());
                }
            }
            c.append_layer(std::move(merged));
        }
    }
    c.append_layer(hs);
    return c;
}

std::vector<Bits> repetition_generator(int n, int r) {
    if (n < 1 || r < 1) {
        throw DomainError("repetition code needs n >= 1 and r >= 1");
    }
    std::vector<Bits> g(static_cast<std::size_t>(n) * r, Bits(n, 0));
    for (int i = 0; i < n; i++) {
        for (int t = 0; t < r; t++) {
            g[i * r + t][i] = 1;
        }
    }
    return g;
}

IqpProgram encode_program(const IqpProgram &program, int r) {
    program.validate();
    auto g = repetition_generator(program.num_qubits, r);
    IqpProgram out;
    out.num_qubits = program.num_qubits * r;
    out.theta = program.theta;
    out.global_phase = program.global_phase;
    for (const Bits &row : program.rows) {
        Bits enc(out.num_qubits, 0);
        for (int a = 0; a < out.num_qubits; a++) {
            std::uint8_t acc = 0;
            for (int i = 0; i < program.num_qubits; i++) {
                acc ^= row[i] & g[a][i];
            }
            enc[a] = acc;
        }
        out.rows.push_back(std::move(enc));
    }
    return out;
}

Bits block_decode(const Bits &y, int r) {
    if (r < 1 || r % 2 == 0) {
        throw DomainError("block decoding needs an odd replication factor");
    }
    if (y.size() % static_cast<std::size_t>(r) != 0) {
        throw DomainError("readout length is not a multiple of r");
    }
    Bits x(y.size() / r);
    for (std::size_t i = 0; i < x.size(); i++) {
        int ones = 0;
        for (int t = 0; t < r; t++) {
            ones += y[i * r + t];
        }
        x[i] = 2 * ones > r;
    }
    return x;
}

double repetition_failure(int r, double q) {
    double total = 0, binom = 1;
    for (int j = 0; j <= r; j++) {
        if (2 * j > r) {
            total += binom * std::pow(q, j) * std::pow(1 - q, r - j);
        }
        binom = binom * (r - j) / (j + 1);
    }
    return total;
}

double repcode_bound(int n, double q, int r) {
    return n * std::pow(4 * q * (1 - q), r / 2.0);
}

RepcodeResult repcode_pipeline(const Circuit &base, int r, double p_in, double p_out, std::uint64_t seed,
                               std::size_t count) {
    const int n = base.num_qubits();
    if (n * r > kMaxStatevectorQubits) {
        throw CapacityError("encoded circuit has " + std::to_string(n * r) + " qubits; limit is " +
                            std::to_string(kMaxStatevectorQubits));
    }
    if (r % 2 == 0) {
        throw DomainError("replication factor must be odd");
    }
    NoiseSpec noise{p_in, p_out};
    noise.validate();
    RepcodeResult res;
    res.n = n;
    res.r = r;
    res.p_in = p_in;
    res.p_out = p_out;
    res.q = combined_rate(p_in, p_out);
    res.bound = repcode_bound(n, res.q, r);
    res.samples = count;
    Circuit encoded = program_to_circuit(encode_program(iqp_to_program(base), r), true);
    res.encoded_depth = encoded.depth();
    GadgetedIqp layout;
    layout.core = encoded;
    layout.total_bits = n * r;
    for (int q = 0; q < n * r; q++) {
        layout.root_bits.push_back(q);
    }
    auto samples = sample_noisy_iqp(layout, noise, seed, count);
    std::vector<std::uint64_t> decoded;
    decoded.reserve(count);
    for (const Bits &y : samples) {
        decoded.push_back(bits_to_index(block_decode(y, r)));
    }
    res.ideal = output_distribution(base);
    res.empirical = empirical_distribution(decoded, res.ideal.size());
    res.tvd = total_variation(res.empirical, res.ideal);
    res.standard_error = tvd_standard_error(res.ideal, count);
    return res;
}

std::string repcode_csv(const std::vector<RepcodeResult> &rows) {
    std::ostringstream out;
    out << "n,r,p_in,p_out,q,bound,measured_tvd,samples\n";
    char buf[256];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%.10g,%.10g,%.10g,%.10g,%zu\n", r.n, r.r, r.p_in, r.p_out, r.q,
                      r.bound, r.tvd, r.samples);
        out << buf;
    }
    return out.str();
}

}  // namespace gibbslab
