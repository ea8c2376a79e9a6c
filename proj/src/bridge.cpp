#include "kwtopo/bridge.hpp"

#include <string>

namespace kwtopo {

namespace {

enum class Closure { None, Outputs, Inputs };

OperatorNfg build(const ZqMatrix& m, Closure closure) {
    uint32_t q = m.modulus();
    size_t rows = m.rows(), cols = m.cols();

    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) {
            uint8_t e = m.at(r, c);
            if (e != 0 && e != 1 && e != q - 1)
                throw UnsupportedEntry("matrix entry " + std::to_string(int(e)) +
                                       " is outside {-1, 0, +1} mod q");
        }

    OperatorNfg out{Nfg(q), {}, {}, {}, {}, {}};
    Nfg& nfg = out.nfg;

    std::vector<int> col_nnz(cols, 0), row_nnz(rows, 0);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            if (m.at(r, c) != 0) {
                ++col_nnz[c];
                ++row_nnz[r];
            }

    // Equality fan-out per domain cell; port 0 faces the input.
    for (size_t c = 0; c < cols; ++c)
        out.domain_nodes.push_back(nfg.add_equality(1 + col_nnz[c]));
    // Parity collector per codomain cell; port 0 faces the output and is
    // negated so the constraint reads  -y_i + sum_j m_ij z_j = 0.
    for (size_t r = 0; r < rows; ++r)
        out.codomain_nodes.push_back(nfg.add_parity(1 + row_nnz[r]));

    // Edge order: domain half-edges, codomain half-edges, then one full
    // edge per nonzero entry ordered by (column, row).
    for (size_t c = 0; c < cols; ++c) {
        if (closure == Closure::Inputs) {
            int t = nfg.add_equality(1); // all-one termination
            out.closure_nodes.push_back(t);
            out.input_edge_ids.push_back(
                nfg.add_edge({out.domain_nodes[c], 0}, {t, 0}));
        } else {
            out.input_edge_ids.push_back(nfg.add_half_edge({out.domain_nodes[c], 0}));
        }
    }
    for (size_t r = 0; r < rows; ++r) {
        if (closure == Closure::Outputs) {
            int t = nfg.add_parity(1); // zero-forcing termination
            out.closure_nodes.push_back(t);
            out.output_edge_ids.push_back(
                nfg.add_edge({out.codomain_nodes[r], 0}, {t, 0}, true, false));
        } else {
            out.output_edge_ids.push_back(
                nfg.add_half_edge({out.codomain_nodes[r], 0}, true));
        }
    }

    std::vector<int> col_port(cols, 1), row_port(rows, 1);
    for (size_t c = 0; c < cols; ++c)
        for (size_t r = 0; r < rows; ++r) {
            uint8_t e = m.at(r, c);
            if (e == 0) continue;
            bool negate = (e == q - 1) && q > 2;
            nfg.add_edge({out.domain_nodes[c], col_port[c]++},
                         {out.codomain_nodes[r], row_port[r]++}, false, negate);
        }

    nfg.finalize();
    return out;
}

} // namespace

OperatorNfg nfg_io(const ZqMatrix& m) { return build(m, Closure::None); }

OperatorNfg nfg_kernel(const ZqMatrix& m) { return build(m, Closure::Outputs); }

OperatorNfg nfg_image(const ZqMatrix& m) { return build(m, Closure::Inputs); }

} // namespace kwtopo
