#pragma once

#include <string>

#include "kwtopo/complex.hpp"
#include "kwtopo/fourier.hpp"
#include "kwtopo/nfg.hpp"

namespace kwtopo {

/// NFG JSON schema: top-level fields `q`, `nodes` (array of {id, kind,
/// optional degree, optional values as [re, im] pairs) and `edges` (array
/// of {id, attachments: [{node, port}], negated: attachment indices}).
/// Unknown fields are rejected. Node `id`s are referenced by the
/// attachments; on output ids are the node indices.
std::string nfg_to_json(const Nfg& n);
Nfg nfg_from_json(const std::string& text);

void save_nfg(const Nfg& n, const std::string& path);
Nfg load_nfg(const std::string& path);

/// Dualization ledger sidecar (schema_version 1).
std::string ledger_to_json(const ScaleLedger& ledger);

/// Complex description: cells and boundary matrices (schema_version 1).
std::string complex_to_json(const ChainComplex& c);

/// DOT digraph of the 1-skeleton.
std::string complex_to_dot(const ChainComplex& c);

} // namespace kwtopo
