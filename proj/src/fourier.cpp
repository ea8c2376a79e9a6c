#include "kwtopo/fourier.hpp"

#include <cmath>

namespace kwtopo {

double ScaleLedger::value() const {
    return std::pow(double(q), double(q_exponent)) * real_factor;
}

namespace {

int table_degree(size_t size, uint32_t q) {
    int d = 0;
    size_t s = 1;
    while (s < size) {
        s *= q;
        ++d;
    }
    if (s != size) throw Error("table length is not a power of q");
    if (d == 0) throw Error("empty table");
    return d;
}

// Axis-by-axis 1-D transforms; `sign` +1 for the forward transform,
// -1 for the inverse kernel chi(-x).
std::vector<Cplx> transform(const std::vector<Cplx>& table, uint32_t q, int sign) {
    int degree = table_degree(table.size(), q);
    RootTable roots(q);
    std::vector<Cplx> cur = table;
    std::vector<Cplx> next(table.size());

    size_t stride = table.size() / q; // axis 0 (most significant digit) first
    for (int axis = 0; axis < degree; ++axis) {
        for (size_t base = 0; base < table.size(); ++base) {
            size_t digit = (base / stride) % q;
            if (digit != 0) continue;
            for (uint32_t y = 0; y < q; ++y) {
                Cplx acc = 0.0;
                for (uint32_t x = 0; x < q; ++x) {
                    uint32_t r = (y * x) % q;
                    if (sign < 0) r = (q - r) % q;
                    acc += cur[base + x * stride] * roots.root(r);
                }
                next[base + y * stride] = acc;
            }
        }
        std::swap(cur, next);
        stride /= q;
    }
    return cur;
}

} // namespace

std::vector<Cplx> fourier_table(const std::vector<Cplx>& table, uint32_t q) {
    return transform(table, q, +1);
}

std::vector<Cplx> inverse_fourier_table(const std::vector<Cplx>& table, uint32_t q) {
    int degree = table_degree(table.size(), q);
    auto out = transform(table, q, -1);
    double norm = std::pow(double(q), -double(degree));
    for (auto& v : out) v *= norm;
    return out;
}

std::pair<FnKind, int64_t> fourier_indicator_check(FnKind kind, int degree, uint32_t q) {
    (void)q;
    if (degree < 1) throw Error("indicator degree must be >= 1");
    switch (kind) {
        case FnKind::Equality:
            return {FnKind::Parity, 1};
        case FnKind::Parity:
            return {FnKind::Equality, int64_t(degree) - 1};
        default:
            throw Error("fourier_indicator_check expects an indicator kind");
    }
}

std::pair<Nfg, ScaleLedger> dualize(const Nfg& n) {
    if (!n.finalized()) throw Error("NFG not finalized");
    if (!n.half_edge_positions().empty())
        throw HalfEdgesPresent("dualization requires an NFG without half-edges");
    uint32_t q = n.modulus();

    Nfg dual(q);
    ScaleLedger ledger;
    ledger.q = q;
    ledger.original_edge_count = n.edge_count();

    for (size_t i = 0; i < n.node_count(); ++i) {
        const LocalFunction& f = n.node(i);
        switch (f.kind()) {
            case FnKind::Equality: {
                dual.add_parity(f.degree());
                ledger.add({int(i), "equality -> parity, omitted q", 1, 1.0});
                break;
            }
            case FnKind::Parity: {
                dual.add_equality(f.degree());
                ledger.add({int(i), "parity -> equality, omitted q^(d-1)",
                            int64_t(f.degree()) - 1, 1.0});
                break;
            }
            case FnKind::Table: {
                dual.add_table(f.degree(), fourier_table(f.values(), q));
                ledger.add({int(i), "table -> transform", 0, 1.0});
                break;
            }
        }
    }

    // One degree-two parity junction per former full edge. The junction
    // enforces a + b = 0 between its two segment variables, which realizes
    // the chi(x)*chi(-x) pairing; original negation marks stay on the
    // node-side attachments.
    for (size_t pos = 0; pos < n.edge_count(); ++pos) {
        const Edge& e = n.edge(pos);
        int j = dual.add_parity(2);
        dual.add_edge(e.ends[0], {j, 0}, e.negated[0], false, int(2 * pos));
        dual.add_edge({j, 1}, e.ends[1], false, e.negated[1], int(2 * pos + 1));
    }
    dual.finalize();
    return {std::move(dual), std::move(ledger)};
}

SubgroupDual subgroup_indicator_fourier(const std::vector<ZqVec>& basis, size_t len,
                                        uint32_t q) {
    require_prime(q);
    SubgroupDual out;
    out.dual_basis = orthogonal_complement(basis, len, q);
    out.scale_q_exponent =
        basis.empty() ? 0 : int64_t(rank(ZqMatrix::from_rows(basis, q)));
    return out;
}

} // namespace kwtopo
