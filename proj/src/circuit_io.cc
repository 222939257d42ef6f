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
#include <charconv>
#include <cstdio>
#include <sstream>

#include "gibbslab/circuit.h"

namespace gibbslab {

ParseError::ParseError(int line, const std::string &msg)
    : DomainError("line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

int parse_int(const std::string &tok, int line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected an integer, got '" + tok + "'");
    }
    return v;
}

double parse_double(const std::string &tok, int line) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) {
            throw ParseError(line, "expected a number, got '" + tok + "'");
        }
        return v;
    } catch (const std::logic_error &) {
        throw ParseError(line, "expected a number, got '" + tok + "'");
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    int n = -1;
    Circuit circ;
    Layer layer;
    auto flush = [&](int line) {
        try {
            circ.append_layer(std::move(layer));
        } catch (const DomainError &e) {
            throw ParseError(line, e.what());
        }
        layer.clear();
    };
    while (std::getline(in, raw)) {
        line_no++;
        std::string_view s = raw;
        if (auto hash = s.find('#'); hash != std::string_view::npos) {
            s = s.substr(0, hash);
        }
        auto toks = split_ws(s);
        if (toks.empty()) {
            continue;
        }
        if (n < 0) {
            if (toks.size() != 2 || toks[0] != "qubits") {
                throw ParseError(line_no, "expected 'qubits <n>' header");
            }
            n = parse_int(toks[1], line_no);
            if (n < 1) {
                throw ParseError(line_no, "qubit count must be positive");
            }
            circ = Circuit(n);
            continue;
        }
        if (toks.size() == 1 && toks[0] == "---") {
            flush(line_no);
            continue;
        }
        const std::string &op = toks[0];
        auto need = [&](std::size_t k) {
            if (toks.size() != k + 1) {
                throw ParseError(line_no, op + " takes " + std::to_string(k) + " arguments");
            }
        };
        std::vector<int> used;
        try {
            if (op == "H") {
                need(1);
                layer.push_back(Gate::h(parse_int(toks[1], line_no)));
            } else if (op == "CNOT") {
                need(2);
                layer.push_back(Gate::cnot(parse_int(toks[1], line_no), parse_int(toks[2], line_no)));
            } else if (op == "CZ") {
                need(2);
                layer.push_back(Gate::cz(parse_int(toks[1], line_no), parse_int(toks[2], line_no)));
            } else if (op == "TPOW") {
                need(2);
                layer.push_back(Gate::tpow(parse_int(toks[1], line_no), parse_int(toks[2], line_no)));
            } else if (op == "ZROT") {
                need(2);
                layer.push_back(Gate::zrot(parse_int(toks[1], line_no), parse_double(toks[2], line_no)));
            } else if (op == "MZROT") {
                if (toks.size() < 3) {
                    throw ParseError(line_no, "MZROT takes an angle and at least one qubit");
                }
                std::vector<int> qs;
                for (std::size_t k = 2; k < toks.size(); k++) {
                    qs.push_back(parse_int(toks[k], line_no));
                }
                layer.push_back(Gate::mzrot(std::move(qs), parse_double(toks[1], line_no)));
            } else {
                throw ParseError(line_no, "unknown gate '" + op + "'");
            }
        } catch (const ParseError &) {
            throw;
        } catch (const DomainError &e) {
            throw ParseError(line_no, e.what());
        }
        for (int q : layer.back().qubits) {
            if (q < 0 || q >= n) {
                throw ParseError(line_no, "qubit " + std::to_string(q) + " out of range");
            }
        }
        for (std::size_t g = 0; g + 1 < layer.size(); g++) {
            for (int q : layer[g].qubits) {
                for (int r : layer.back().qubits) {
                    if (q == r) {
                        throw ParseError(line_no, "qubit " + std::to_string(q) + " used twice in one layer");
                    }
                }
            }
        }
    }
    if (n < 0) {
        throw ParseError(line_no, "missing 'qubits <n>' header");
    }
    flush(line_no);
    return circ;
}

std::string format_circuit(const Circuit &circuit) {
    std::ostringstream out;
    out << "qubits " << circuit.num_qubits() << "\n";
    bool first = true;
    for (const Layer &l : circuit.layers()) {
        if (!first) {
            out << "---\n";
        }
        first = false;
        for (const Gate &g : l) {
            out << g.name();
            switch (g.kind) {
                case GateKind::kTPow: out << " " << g.qubits[0] << " " << g.power; break;
                case GateKind::kZRot: out << " " << g.qubits[0] << " " << format_double(g.theta); break;
                case GateKind::kMultiZRot:
                    out << " " << format_double(g.theta);
                    for (int q : g.qubits) {
                        out << " " << q;
                    }
                    break;
                default:
                    for (int q : g.qubits) {
                        out << " " << q;
                    }
            }
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace gibbslab
