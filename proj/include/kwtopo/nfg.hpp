#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "kwtopo/linalg.hpp"
#include "kwtopo/zq.hpp"

namespace kwtopo {

enum class FnKind { Equality, Parity, Table };

/// A local function attached to an NFG node: the equality indicator (1 iff
/// all arguments equal), the parity indicator (1 iff arguments sum to zero
/// mod q), or a dense complex value table of length q^degree. Degree-one
/// tables are interaction functions.
class LocalFunction {
public:
    static LocalFunction equality(int degree);
    static LocalFunction parity(int degree);
    static LocalFunction table(int degree, std::vector<Cplx> values, uint32_t q);

    FnKind kind() const { return kind_; }
    int degree() const { return degree_; }
    bool is_indicator() const { return kind_ != FnKind::Table; }
    bool is_interaction() const { return kind_ == FnKind::Table && degree_ == 1; }
    const std::vector<Cplx>& values() const { return values_; }

    /// Evaluate on arguments in port order (negations already applied).
    Cplx eval(std::span<const uint8_t> args, uint32_t q) const;

private:
    LocalFunction(FnKind kind, int degree, std::vector<Cplx> values)
        : kind_(kind), degree_(degree), values_(std::move(values)) {}

    FnKind kind_;
    int degree_;
    std::vector<Cplx> values_; // Table only; port 0 is the most significant digit
};

struct Attachment {
    int node = -1;
    int port = -1;
    bool operator==(const Attachment&) const = default;
};

/// Edge of an NFG: a half-edge has one attachment, a full-edge two. The
/// negated flags mark attachments where the variable enters the local
/// function negated (the paper's small circle).
struct Edge {
    int id = -1;
    std::vector<Attachment> ends;
    std::vector<bool> negated;

    bool is_half() const { return ends.size() == 1; }
};

/// Normal factor graph over the alphabet Z_q. Nodes carry local functions,
/// edges carry variables. Construction is add_* calls followed by
/// finalize(); a finalized NFG is immutable and safe for concurrent reads.
class Nfg {
public:
    explicit Nfg(uint32_t q);

    int add_node(LocalFunction f);
    int add_equality(int degree) { return add_node(LocalFunction::equality(degree)); }
    int add_parity(int degree) { return add_node(LocalFunction::parity(degree)); }
    int add_table(int degree, std::vector<Cplx> values) {
        return add_node(LocalFunction::table(degree, std::move(values), q_));
    }

    /// Full edge between two node ports. Returns the edge id (defaults to
    /// the insertion index; pass `id` to preserve external ids).
    int add_edge(Attachment a, Attachment b, bool neg_a = false, bool neg_b = false,
                 int id = -1);
    /// Half edge on one node port.
    int add_half_edge(Attachment a, bool neg = false, int id = -1);

    /// Validates port coverage and builds evaluation caches. Idempotent.
    void finalize();
    bool finalized() const { return finalized_; }

    uint32_t modulus() const { return q_; }
    size_t node_count() const { return nodes_.size(); }
    size_t edge_count() const { return edges_.size(); }
    const LocalFunction& node(size_t i) const { return nodes_[i]; }
    const Edge& edge(size_t i) const { return edges_[i]; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Edge positions (indices into edges()) in stable construction order.
    const std::vector<size_t>& half_edge_positions() const { return half_positions_; }
    const std::vector<size_t>& full_edge_positions() const { return full_positions_; }

    size_t position_of_edge_id(int id) const;

    /// Satisfies the builders' contract: every local function is an
    /// indicator or has degree one, and half-edges appear only in
    /// all-indicator NFGs.
    bool satisfies_assumption2() const;

    /// Global function value; assignment indexed by edge position.
    Cplx global_value(std::span<const uint8_t> assignment) const;

private:
    friend Cplx nfg_detail_global(const Nfg&, std::span<const uint8_t>);

    uint32_t q_;
    std::vector<LocalFunction> nodes_;
    std::vector<Edge> edges_;
    bool finalized_ = false;

    struct PortRef {
        uint32_t edge_pos;
        bool negated;
    };
    std::vector<std::vector<PortRef>> node_args_; // per node, in port order
    std::vector<size_t> eval_order_;              // indicators first
    std::vector<size_t> half_positions_, full_positions_;
};

/// Exterior function as a dense table over the half-edge variables.
/// `variables` lists half-edge ids in stable order; variables[0] is the
/// most significant mixed-radix digit of the value index. With no
/// half-edges the table is the single-entry partition sum.
struct ConfigTable {
    std::vector<int> variables;
    uint32_t q = 2;
    std::vector<Cplx> values;

    Cplx scalar() const;
    size_t index_of(std::span<const uint8_t> config) const;
};

/// Global function value with the assignment keyed by edge id; every edge
/// must be covered (IncompleteAssignment otherwise).
Cplx global_function_value(const Nfg& n, const std::map<int, uint8_t>& assignment);

/// Brute-force exterior function: for every half-edge configuration, the
/// sum of the global function over all full-edge configurations.
/// q^(#half) and q^(#full) must each stay within the budget.
ConfigTable exterior_function(const Nfg& n, uint64_t budget = kDefaultBudget,
                              unsigned workers = 1);

/// Partition sum by sequential variable elimination; exact up to roundoff
/// with any elimination order. `order` is a permutation of edge ids; when
/// absent a greedy min-degree order is used. `table_cap` bounds the entry
/// count of intermediate tables.
Cplx partition_sum_contracted(const Nfg& n,
                              const std::optional<std::vector<int>>& order = std::nullopt,
                              uint64_t table_cap = uint64_t(1) << 22);

/// Greedy minimum-degree elimination order (edge ids).
std::vector<int> min_degree_order(const Nfg& n);

/// The NFG with every interaction function cut out: each degree-one table
/// node is removed and its edge becomes a half-edge with preserved id.
Nfg support_nfg(const Nfg& n);

/// The set of projected valid configurations C_N: assignments satisfying
/// every indicator node, projected onto the half-edges of the support NFG
/// (returned sorted, without duplicates; entries follow the support NFG's
/// half-edge order).
std::vector<ZqVec> projected_valid_configs(const Nfg& n,
                                           uint64_t budget = kDefaultBudget);

/// Half-edge ids of the support NFG in stable order (the variable order
/// used by projected_valid_configs).
std::vector<int> support_half_edge_ids(const Nfg& n);

} // namespace kwtopo
