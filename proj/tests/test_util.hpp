#pragma once

// Shared helpers for the test suites: an independent brute-force evaluator
// (re-deriving local-function semantics instead of calling the library's
// evaluation path) and a random Assumption-2 NFG generator.

#include <complex>
#include <random>
#include <vector>

#include "kwtopo/nfg.hpp"

namespace kwtest {

using kwtopo::Attachment;
using kwtopo::Cplx;
using kwtopo::Edge;
using kwtopo::FnKind;
using kwtopo::LocalFunction;
using kwtopo::Nfg;

// Evaluates the product of local functions at one configuration (indexed by
// edge position) by scanning the raw node/edge structure.
inline Cplx oracle_global(const Nfg& n, const std::vector<uint8_t>& config) {
    uint32_t q = n.modulus();
    Cplx product = 1.0;
    for (size_t ni = 0; ni < n.node_count(); ++ni) {
        const LocalFunction& f = n.node(ni);
        std::vector<uint8_t> args(f.degree(), 0);
        for (size_t pos = 0; pos < n.edge_count(); ++pos) {
            const Edge& e = n.edge(pos);
            for (size_t k = 0; k < e.ends.size(); ++k)
                if (e.ends[k].node == int(ni)) {
                    uint8_t v = config[pos];
                    if (e.negated[k]) v = v == 0 ? 0 : uint8_t(q - v);
                    args[e.ends[k].port] = v;
                }
        }
        if (f.kind() == FnKind::Equality) {
            for (uint8_t a : args)
                if (a != args[0]) return 0.0;
        } else if (f.kind() == FnKind::Parity) {
            uint32_t s = 0;
            for (uint8_t a : args) s += a;
            if (s % q != 0) return 0.0;
        } else {
            size_t idx = 0;
            for (uint8_t a : args) idx = idx * q + a;
            product *= f.values()[idx];
        }
    }
    return product;
}

// Partition sum by full enumeration over all edge variables.
inline Cplx oracle_partition(const Nfg& n) {
    uint32_t q = n.modulus();
    uint64_t total = 1;
    for (size_t i = 0; i < n.edge_count(); ++i) total *= q;
    std::vector<uint8_t> config(n.edge_count(), 0);
    Cplx acc = 0.0;
    for (uint64_t i = 0; i < total; ++i) {
        acc += oracle_global(n, config);
        for (size_t j = n.edge_count(); j-- > 0;) {
            if (++config[j] < q) break;
            config[j] = 0;
        }
    }
    return acc;
}

// Random NFG with only full edges: node kinds mixed over indicators and
// value tables, random negation marks. Degrees are balanced so every port
// pairs up.
inline Nfg random_full_edge_nfg(uint32_t q, std::mt19937& rng, int max_nodes = 5,
                                int max_edges = 6) {
    std::uniform_int_distribution<int> node_count_dist(2, max_nodes);
    std::uniform_real_distribution<double> real_dist(0.1, 2.0);
    std::uniform_int_distribution<int> kind_dist(0, 2);

    int n_nodes = node_count_dist(rng);
    std::vector<int> degrees(n_nodes);
    int stubs = 0;
    for (int i = 0; i < n_nodes; ++i) {
        std::uniform_int_distribution<int> deg_dist(1, 3);
        degrees[i] = deg_dist(rng);
        stubs += degrees[i];
    }
    if (stubs % 2 == 1) {
        ++degrees[0];
        ++stubs;
    }
    while (stubs / 2 > max_edges) {
        for (int i = 0; i < n_nodes && stubs / 2 > max_edges; ++i)
            if (degrees[i] > 1) {
                --degrees[i];
                --stubs;
            }
        if (stubs % 2 == 1) {
            ++degrees[0];
            ++stubs;
        }
    }

    Nfg nfg(q);
    for (int i = 0; i < n_nodes; ++i) {
        int kind = kind_dist(rng);
        if (kind == 0) {
            nfg.add_equality(degrees[i]);
        } else if (kind == 1) {
            nfg.add_parity(degrees[i]);
        } else {
            size_t len = 1;
            for (int d = 0; d < degrees[i]; ++d) len *= q;
            std::vector<Cplx> values(len);
            for (auto& v : values) v = Cplx(real_dist(rng), 0.0);
            nfg.add_table(degrees[i], std::move(values));
        }
    }

    std::vector<Attachment> free_ports;
    for (int i = 0; i < n_nodes; ++i)
        for (int p = 0; p < degrees[i]; ++p) free_ports.push_back({i, p});
    std::shuffle(free_ports.begin(), free_ports.end(), rng);
    std::uniform_int_distribution<int> coin(0, 1);
    for (size_t i = 0; i + 1 < free_ports.size(); i += 2)
        nfg.add_edge(free_ports[i], free_ports[i + 1], coin(rng) == 1, coin(rng) == 1);
    nfg.finalize();
    return nfg;
}

inline double rel_diff(Cplx a, Cplx b) {
    double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace kwtest
