#pragma once

#include "kwtopo/linalg.hpp"
#include "kwtopo/nfg.hpp"

namespace kwtopo {

/// Operator NFG for a linear map given by a matrix with entries in
/// {-1, 0, +1} mod q: one equality node fans out each domain cell, one
/// parity node collects each codomain cell (negation marks realize -1
/// entries). Role tags record which edges are the domain/codomain
/// half-edges and which nodes are closure terminations.
struct OperatorNfg {
    Nfg nfg;
    std::vector<int> input_edge_ids;   // per domain cell
    std::vector<int> output_edge_ids;  // per codomain cell
    std::vector<int> domain_nodes;     // equality node per domain cell
    std::vector<int> codomain_nodes;   // parity node per codomain cell
    std::vector<int> closure_nodes;    // terminations added by kernel/image forms
};

/// Input/output form: projected valid configurations are the pairs
/// (z, m z). Inputs come first in the half-edge order, then outputs.
OperatorNfg nfg_io(const ZqMatrix& m);

/// Kernel form: outputs of the I/O form are closed with degree-one parity
/// nodes (zero-forcing terminations); projected valid configurations
/// equal ker m.
OperatorNfg nfg_kernel(const ZqMatrix& m);

/// Image form: inputs of the I/O form are closed with degree-one equality
/// nodes (all-one terminations); projected valid configurations equal im m.
OperatorNfg nfg_image(const ZqMatrix& m);

} // namespace kwtopo
