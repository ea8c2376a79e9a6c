#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kwtopo/nfg.hpp"

namespace kwtopo {

/// Multiplicative constant omitted while dualizing an NFG (footnote-5 style
/// bookkeeping). Powers of q are tracked as an exact integer exponent,
/// separate from any real factor, so q-power arithmetic never rounds.
struct ScaleLedger {
    struct Entry {
        int node = -1;
        std::string note;
        int64_t q_exponent = 0;
        double real_factor = 1.0;
    };

    uint32_t q = 2;
    int64_t q_exponent = 0;
    double real_factor = 1.0;
    size_t original_edge_count = 0;
    std::vector<Entry> entries;

    void add(Entry e) {
        q_exponent += e.q_exponent;
        real_factor *= e.real_factor;
        entries.push_back(std::move(e));
    }

    double value() const;
};

/// Discrete Fourier transform of a dense value table of length q^degree over
/// the product group Z_q^degree: fhat(y) = sum_x f(x) prod_i chi_{y_i}(x_i).
/// No normalization; the inverse carries the 1/q^degree factor.
std::vector<Cplx> fourier_table(const std::vector<Cplx>& table, uint32_t q);

/// Inverse transform: f(x) = q^-degree sum_y fhat(y) prod_i chi_{y_i}(-x_i).
std::vector<Cplx> inverse_fourier_table(const std::vector<Cplx>& table, uint32_t q);

/// Dual kind and omitted scale for an indicator node: Equality of any degree
/// maps to Parity with omitted scale q; Parity of degree d maps to Equality
/// with omitted scale q^(d-1). The scale is returned as the exponent of q.
std::pair<FnKind, int64_t> fourier_indicator_check(FnKind kind, int degree, uint32_t q);

/// Fourier-transformed NFG: a degree-two parity junction is inserted on
/// every former full edge, equality and parity nodes swap kinds (scales go
/// to the ledger), and table nodes are replaced by their transforms. The
/// partition sums satisfy Z_dual * ledger = q^/E/ * Z with E the original
/// edge set.
std::pair<Nfg, ScaleLedger> dualize(const Nfg& n);

/// Lemma-1 data for a subgroup Y = span(basis) of Z_q^len: the orthogonal
/// complement (supporting the dual indicator) and the omitted scale |Y| as
/// an exact power of q.
struct SubgroupDual {
    std::vector<ZqVec> dual_basis;
    int64_t scale_q_exponent;
};

SubgroupDual subgroup_indicator_fourier(const std::vector<ZqVec>& basis, size_t len,
                                        uint32_t q);

} // namespace kwtopo
