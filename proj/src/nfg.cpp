#include "kwtopo/nfg.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "kwtopo/parallel.hpp"

namespace kwtopo {

LocalFunction LocalFunction::equality(int degree) {
    if (degree < 1) throw Error("indicator degree must be >= 1");
    return LocalFunction(FnKind::Equality, degree, {});
}

LocalFunction LocalFunction::parity(int degree) {
    if (degree < 1) throw Error("indicator degree must be >= 1");
    return LocalFunction(FnKind::Parity, degree, {});
}

LocalFunction LocalFunction::table(int degree, std::vector<Cplx> values, uint32_t q) {
    if (degree < 1) throw Error("table degree must be >= 1");
    uint64_t expected = 1;
    for (int i = 0; i < degree; ++i) expected *= q;
    if (values.size() != expected)
        throw Error("table of degree " + std::to_string(degree) + " over Z_" +
                    std::to_string(q) + " needs " + std::to_string(expected) + " values");
    return LocalFunction(FnKind::Table, degree, std::move(values));
}

Cplx LocalFunction::eval(std::span<const uint8_t> args, uint32_t q) const {
    switch (kind_) {
        case FnKind::Equality: {
            for (size_t i = 1; i < args.size(); ++i)
                if (args[i] != args[0]) return 0.0;
            return 1.0;
        }
        case FnKind::Parity: {
            uint32_t s = 0;
            for (uint8_t a : args) s += a;
            return (s % q == 0) ? 1.0 : 0.0;
        }
        case FnKind::Table: {
            size_t idx = 0;
            for (uint8_t a : args) idx = idx * q + a;
            return values_[idx];
        }
    }
    return 0.0;
}

Nfg::Nfg(uint32_t q) : q_(q) {
    if (q < 2) throw Error("modulus must be >= 2");
}

int Nfg::add_node(LocalFunction f) {
    if (finalized_) throw Error("NFG already finalized");
    nodes_.push_back(std::move(f));
    return static_cast<int>(nodes_.size() - 1);
}

int Nfg::add_edge(Attachment a, Attachment b, bool neg_a, bool neg_b, int id) {
    if (finalized_) throw Error("NFG already finalized");
    Edge e;
    e.id = id >= 0 ? id : static_cast<int>(edges_.size());
    e.ends = {a, b};
    e.negated = {neg_a, neg_b};
    edges_.push_back(std::move(e));
    return edges_.back().id;
}

int Nfg::add_half_edge(Attachment a, bool neg, int id) {
    if (finalized_) throw Error("NFG already finalized");
    Edge e;
    e.id = id >= 0 ? id : static_cast<int>(edges_.size());
    e.ends = {a};
    e.negated = {neg};
    edges_.push_back(std::move(e));
    return edges_.back().id;
}

void Nfg::finalize() {
    if (finalized_) return;

    node_args_.assign(nodes_.size(), {});
    for (size_t i = 0; i < nodes_.size(); ++i)
        node_args_[i].resize(nodes_[i].degree(), PortRef{0, false});

    std::vector<std::vector<bool>> seen(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); ++i) seen[i].assign(nodes_[i].degree(), false);

    for (size_t pos = 0; pos < edges_.size(); ++pos) {
        const Edge& e = edges_[pos];
        if (e.ends.empty() || e.ends.size() > 2)
            throw Error("edge must have one or two attachments");
        for (size_t k = 0; k < e.ends.size(); ++k) {
            const Attachment& at = e.ends[k];
            if (at.node < 0 || at.node >= int(nodes_.size()))
                throw Error("attachment references unknown node");
            if (at.port < 0 || at.port >= nodes_[at.node].degree())
                throw Error("attachment port out of range");
            if (seen[at.node][at.port])
                throw Error("node port attached to more than one edge");
            seen[at.node][at.port] = true;
            node_args_[at.node][at.port] = PortRef{uint32_t(pos), e.negated[k]};
        }
        if (e.is_half())
            half_positions_.push_back(pos);
        else
            full_positions_.push_back(pos);
    }

    for (size_t i = 0; i < nodes_.size(); ++i)
        for (bool s : seen[i])
            if (!s) throw Error("node port left unattached");

    // Indicators first so zero factors abort the product early.
    eval_order_.clear();
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].is_indicator()) eval_order_.push_back(i);
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (!nodes_[i].is_indicator()) eval_order_.push_back(i);

    finalized_ = true;
}

size_t Nfg::position_of_edge_id(int id) const {
    for (size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].id == id) return i;
    throw Error("unknown edge id " + std::to_string(id));
}

bool Nfg::satisfies_assumption2() const {
    bool has_interaction = false;
    for (const auto& f : nodes_) {
        if (f.kind() == FnKind::Table) {
            if (f.degree() != 1) return false;
            has_interaction = true;
        }
    }
    if (has_interaction && !half_positions_.empty()) return false;
    return true;
}

Cplx Nfg::global_value(std::span<const uint8_t> assignment) const {
    Cplx product = 1.0;
    uint8_t args[16];
    for (size_t ni : eval_order_) {
        const auto& refs = node_args_[ni];
        const LocalFunction& f = nodes_[ni];
        size_t d = refs.size();
        if (d <= 16) {
            for (size_t p = 0; p < d; ++p) {
                uint8_t v = assignment[refs[p].edge_pos];
                args[p] = refs[p].negated ? zq_neg(v, q_) : v;
            }
            switch (f.kind()) {
                case FnKind::Equality: {
                    for (size_t p = 1; p < d; ++p)
                        if (args[p] != args[0]) return 0.0;
                    break;
                }
                case FnKind::Parity: {
                    uint32_t s = 0;
                    for (size_t p = 0; p < d; ++p) s += args[p];
                    if (s % q_ != 0) return 0.0;
                    break;
                }
                case FnKind::Table: {
                    size_t idx = 0;
                    for (size_t p = 0; p < d; ++p) idx = idx * q_ + args[p];
                    product *= f.values()[idx];
                    break;
                }
            }
        } else {
            std::vector<uint8_t> big(d);
            for (size_t p = 0; p < d; ++p) {
                uint8_t v = assignment[refs[p].edge_pos];
                big[p] = refs[p].negated ? zq_neg(v, q_) : v;
            }
            Cplx val = f.eval(big, q_);
            if (val == Cplx(0.0)) return 0.0;
            product *= val;
        }
    }
    return product;
}

Cplx ConfigTable::scalar() const {
    if (!variables.empty()) throw Error("table has free variables");
    return values.at(0);
}

size_t ConfigTable::index_of(std::span<const uint8_t> config) const {
    if (config.size() != variables.size()) throw Error("configuration length mismatch");
    size_t idx = 0;
    for (uint8_t v : config) idx = idx * q + v;
    return idx;
}

Cplx global_function_value(const Nfg& n, const std::map<int, uint8_t>& assignment) {
    std::vector<uint8_t> dense(n.edge_count(), 0);
    for (size_t pos = 0; pos < n.edge_count(); ++pos) {
        auto it = assignment.find(n.edge(pos).id);
        if (it == assignment.end())
            throw IncompleteAssignment("no value for edge id " +
                                       std::to_string(n.edge(pos).id));
        if (it->second >= n.modulus()) throw Error("assignment value out of range");
        dense[pos] = it->second;
    }
    return n.global_value(dense);
}

namespace {

// Mixed-radix helpers over a subset of edge positions; positions[0] carries
// the most significant digit.
void decode_config(uint64_t index, const std::vector<size_t>& positions, uint32_t q,
                   std::vector<uint8_t>& assignment) {
    for (size_t j = positions.size(); j-- > 0;) {
        assignment[positions[j]] = static_cast<uint8_t>(index % q);
        index /= q;
    }
}

bool increment_config(const std::vector<size_t>& positions, uint32_t q,
                      std::vector<uint8_t>& assignment) {
    for (size_t j = positions.size(); j-- > 0;) {
        uint8_t& d = assignment[positions[j]];
        if (++d < q) return true;
        d = 0;
    }
    return false;
}

} // namespace

ConfigTable exterior_function(const Nfg& n, uint64_t budget, unsigned workers) {
    if (!n.finalized()) throw Error("NFG not finalized");
    const auto& half = n.half_edge_positions();
    const auto& full = n.full_edge_positions();
    uint32_t q = n.modulus();

    uint64_t n_half = checked_power(q, half.size(), budget);
    uint64_t n_full = checked_power(q, full.size(), budget);

    ConfigTable out;
    out.q = q;
    for (size_t pos : half) out.variables.push_back(n.edge(pos).id);
    out.values.assign(n_half, Cplx(0.0));

    std::vector<uint8_t> base(n.edge_count(), 0);
    for (uint64_t h = 0; h < n_half; ++h) {
        decode_config(h, half, q, base);
        out.values[h] = chunked_sum<Cplx>(
            n_full, workers,
            [&](uint64_t lo, uint64_t hi) {
                std::vector<uint8_t> assign = base;
                decode_config(lo, full, q, assign);
                Cplx acc = 0.0;
                for (uint64_t i = lo; i < hi; ++i) {
                    acc += n.global_value(assign);
                    if (i + 1 < hi) increment_config(full, q, assign);
                }
                return acc;
            });
    }
    return out;
}

namespace {

struct Factor {
    std::vector<uint32_t> vars; // edge positions, ascending, unique
    std::vector<Cplx> table;    // vars[0] most significant
};

size_t factor_index(const Factor& f, const std::vector<uint8_t>& values_by_var,
                    uint32_t q) {
    size_t idx = 0;
    for (uint32_t v : f.vars) idx = idx * q + values_by_var[v];
    return idx;
}

Factor materialize_node(const Nfg& n, size_t node_idx) {
    uint32_t q = n.modulus();
    const LocalFunction& f = n.node(node_idx);

    // Incident edge positions with negation flags, in port order.
    std::vector<std::pair<uint32_t, bool>> by_port(f.degree());
    {
        std::vector<bool> seen(f.degree(), false);
        for (size_t pos = 0; pos < n.edge_count(); ++pos) {
            const Edge& e = n.edge(pos);
            for (size_t k = 0; k < e.ends.size(); ++k)
                if (e.ends[k].node == int(node_idx)) {
                    by_port[e.ends[k].port] = {uint32_t(pos), e.negated[k]};
                    seen[e.ends[k].port] = true;
                }
        }
        for (bool s : seen)
            if (!s) throw Error("node port unattached");
    }

    Factor factor;
    for (auto [pos, neg] : by_port) factor.vars.push_back(pos);
    std::sort(factor.vars.begin(), factor.vars.end());
    factor.vars.erase(std::unique(factor.vars.begin(), factor.vars.end()),
                      factor.vars.end());

    uint64_t size = 1;
    for (size_t i = 0; i < factor.vars.size(); ++i) size *= q;
    factor.table.assign(size, Cplx(0.0));

    std::vector<uint8_t> value_of(n.edge_count(), 0);
    std::vector<uint8_t> args(f.degree());
    for (uint64_t idx = 0; idx < size; ++idx) {
        uint64_t rem = idx;
        for (size_t j = factor.vars.size(); j-- > 0;) {
            value_of[factor.vars[j]] = static_cast<uint8_t>(rem % q);
            rem /= q;
        }
        for (int p = 0; p < f.degree(); ++p) {
            uint8_t v = value_of[by_port[p].first];
            args[p] = by_port[p].second ? zq_neg(v, q) : v;
        }
        factor.table[idx] = f.eval(args, q);
    }
    return factor;
}

} // namespace

std::vector<int> min_degree_order(const Nfg& n) {
    // Greedy: repeatedly eliminate the variable whose factor-merge touches
    // the fewest other variables, simulating the fill-in.
    size_t m = n.edge_count();
    std::vector<std::set<uint32_t>> nbr(m);
    std::vector<std::set<uint32_t>> node_vars(n.node_count());
    for (size_t pos = 0; pos < m; ++pos)
        for (const auto& at : n.edge(pos).ends) node_vars[at.node].insert(uint32_t(pos));
    for (const auto& vars : node_vars)
        for (uint32_t a : vars)
            for (uint32_t b : vars)
                if (a != b) nbr[a].insert(b);

    std::vector<bool> eliminated(m, false);
    std::vector<int> order;
    order.reserve(m);
    for (size_t step = 0; step < m; ++step) {
        size_t best = m;
        size_t best_deg = SIZE_MAX;
        for (size_t v = 0; v < m; ++v) {
            if (eliminated[v]) continue;
            size_t deg = nbr[v].size();
            if (deg < best_deg) {
                best_deg = deg;
                best = v;
            }
        }
        eliminated[best] = true;
        order.push_back(n.edge(best).id);
        // connect neighbors into a clique, drop best
        std::vector<uint32_t> live;
        for (uint32_t u : nbr[best])
            if (!eliminated[u]) live.push_back(u);
        for (uint32_t u : live) {
            nbr[u].erase(uint32_t(best));
            for (uint32_t w : live)
                if (w != u) nbr[u].insert(w);
        }
    }
    return order;
}

Cplx partition_sum_contracted(const Nfg& n, const std::optional<std::vector<int>>& order,
                              uint64_t table_cap) {
    if (!n.finalized()) throw Error("NFG not finalized");
    if (!n.half_edge_positions().empty())
        throw HalfEdgesPresent("contraction requires an NFG without half-edges");
    uint32_t q = n.modulus();

    std::vector<int> elim = order ? *order : min_degree_order(n);
    if (elim.size() != n.edge_count())
        throw Error("elimination order must cover every edge exactly once");
    {
        std::set<int> ids;
        for (int id : elim) ids.insert(id);
        for (const auto& e : n.edges())
            if (!ids.count(e.id)) throw Error("elimination order missing edge id");
    }

    std::vector<Factor> factors;
    factors.reserve(n.node_count());
    for (size_t i = 0; i < n.node_count(); ++i) factors.push_back(materialize_node(n, i));

    Cplx scalar = 1.0;
    for (int edge_id : elim) {
        uint32_t v = uint32_t(n.position_of_edge_id(edge_id));

        std::vector<Factor> touching;
        std::vector<Factor> rest;
        for (auto& f : factors) {
            if (std::binary_search(f.vars.begin(), f.vars.end(), v))
                touching.push_back(std::move(f));
            else
                rest.push_back(std::move(f));
        }
        factors = std::move(rest);
        if (touching.empty()) {
            // free variable: summing it out multiplies by q
            scalar *= double(q);
            continue;
        }

        std::set<uint32_t> union_set;
        for (const auto& f : touching)
            union_set.insert(f.vars.begin(), f.vars.end());
        union_set.erase(v);
        Factor merged;
        merged.vars.assign(union_set.begin(), union_set.end());

        uint64_t size = 1;
        for (size_t i = 0; i < merged.vars.size(); ++i) {
            if (size > table_cap / q)
                throw IntermediateTableTooLarge(
                    "intermediate table over " + std::to_string(merged.vars.size()) +
                    " variables exceeds cap");
            size *= q;
        }
        if (size > table_cap)
            throw IntermediateTableTooLarge("intermediate table exceeds cap");
        merged.table.assign(size, Cplx(0.0));

        std::vector<uint8_t> value_of(n.edge_count(), 0);
        for (uint64_t idx = 0; idx < size; ++idx) {
            uint64_t rem = idx;
            for (size_t j = merged.vars.size(); j-- > 0;) {
                value_of[merged.vars[j]] = static_cast<uint8_t>(rem % q);
                rem /= q;
            }
            Cplx acc = 0.0;
            for (uint32_t x = 0; x < q; ++x) {
                value_of[v] = static_cast<uint8_t>(x);
                Cplx prod = 1.0;
                for (const auto& f : touching) prod *= f.table[factor_index(f, value_of, q)];
                acc += prod;
            }
            merged.table[idx] = acc;
        }
        if (merged.vars.empty())
            scalar *= merged.table[0];
        else
            factors.push_back(std::move(merged));
    }

    for (const auto& f : factors) {
        if (!f.vars.empty()) throw Error("contraction left free variables");
        scalar *= f.table[0];
    }
    return scalar;
}

Nfg support_nfg(const Nfg& n) {
    if (!n.finalized()) throw Error("NFG not finalized");
    if (!n.satisfies_assumption2())
        throw AssumptionViolated("support NFG requires an Assumption-2 NFG");

    std::vector<int> node_map(n.node_count(), -1);
    Nfg out(n.modulus());
    for (size_t i = 0; i < n.node_count(); ++i) {
        const auto& f = n.node(i);
        if (f.is_interaction()) continue;
        node_map[i] = out.add_node(f);
    }

    for (size_t pos = 0; pos < n.edge_count(); ++pos) {
        const Edge& e = n.edge(pos);
        std::vector<Attachment> kept;
        std::vector<bool> kept_neg;
        for (size_t k = 0; k < e.ends.size(); ++k) {
            if (node_map[e.ends[k].node] < 0) continue;
            kept.push_back({node_map[e.ends[k].node], e.ends[k].port});
            kept_neg.push_back(e.negated[k]);
        }
        if (kept.size() == 2)
            out.add_edge(kept[0], kept[1], kept_neg[0], kept_neg[1], e.id);
        else if (kept.size() == 1)
            out.add_half_edge(kept[0], kept_neg[0], e.id);
        else
            throw Error("edge lost both attachments while cutting interactions");
    }
    out.finalize();
    return out;
}

std::vector<int> support_half_edge_ids(const Nfg& n) {
    Nfg sup = support_nfg(n);
    std::vector<int> ids;
    for (size_t pos : sup.half_edge_positions()) ids.push_back(sup.edge(pos).id);
    return ids;
}

std::vector<ZqVec> projected_valid_configs(const Nfg& n, uint64_t budget) {
    if (!n.finalized()) throw Error("NFG not finalized");
    uint32_t q = n.modulus();

    // Half-edges of the support NFG, as positions in this NFG.
    std::vector<size_t> proj_positions;
    for (size_t pos = 0; pos < n.edge_count(); ++pos) {
        const Edge& e = n.edge(pos);
        if (e.is_half()) {
            proj_positions.push_back(pos);
            continue;
        }
        bool touches_interaction = false;
        for (const auto& at : e.ends)
            if (n.node(at.node).is_interaction()) touches_interaction = true;
        if (touches_interaction) proj_positions.push_back(pos);
    }

    std::set<ZqVec> seen;
    if (is_prime(q)) {
        // Indicator nodes impose linear constraints; valid configurations
        // form the kernel of the constraint matrix.
        std::vector<ZqVec> rows;
        for (size_t ni = 0; ni < n.node_count(); ++ni) {
            const LocalFunction& f = n.node(ni);
            if (!f.is_indicator()) continue;
            std::vector<std::pair<size_t, bool>> by_port(f.degree());
            for (size_t pos = 0; pos < n.edge_count(); ++pos) {
                const Edge& e = n.edge(pos);
                for (size_t k = 0; k < e.ends.size(); ++k)
                    if (e.ends[k].node == int(ni)) by_port[e.ends[k].port] = {pos, e.negated[k]};
            }
            if (f.kind() == FnKind::Parity) {
                ZqVec row(n.edge_count(), 0);
                for (auto [pos, neg] : by_port) {
                    uint8_t sign = neg ? zq_neg(1, q) : 1;
                    row[pos] = zq_add(row[pos], sign, q);
                }
                rows.push_back(std::move(row));
            } else { // Equality: pairwise with the first argument
                for (int p = 1; p < f.degree(); ++p) {
                    ZqVec row(n.edge_count(), 0);
                    uint8_t s0 = by_port[0].second ? zq_neg(1, q) : 1;
                    uint8_t sp = by_port[p].second ? zq_neg(1, q) : 1;
                    row[by_port[0].first] = zq_add(row[by_port[0].first], s0, q);
                    row[by_port[p].first] = zq_sub(row[by_port[p].first], sp, q);
                    rows.push_back(std::move(row));
                }
            }
        }
        std::vector<ZqVec> kernel;
        if (rows.empty()) {
            kernel = kernel_basis(ZqMatrix(1, n.edge_count(), q)); // all of Z_q^E
        } else {
            kernel = kernel_basis(ZqMatrix::from_rows(rows, q));
        }
        SpanEnumerator span(kernel, n.edge_count(), q, budget);
        ZqVec full;
        for (uint64_t i = 0; i < span.size(); ++i) {
            span.write(i, full);
            ZqVec proj(proj_positions.size());
            for (size_t j = 0; j < proj_positions.size(); ++j)
                proj[j] = full[proj_positions[j]];
            seen.insert(std::move(proj));
        }
    } else {
        // Composite modulus: joint enumeration guarded by the budget.
        uint64_t total = checked_power(q, n.edge_count(), budget);
        std::vector<size_t> all(n.edge_count());
        for (size_t i = 0; i < all.size(); ++i) all[i] = i;
        std::vector<uint8_t> assign(n.edge_count(), 0);
        for (uint64_t i = 0; i < total; ++i) {
            bool valid = true;
            for (size_t ni = 0; ni < n.node_count() && valid; ++ni) {
                const LocalFunction& f = n.node(ni);
                if (!f.is_indicator()) continue;
                std::vector<uint8_t> args(f.degree());
                for (size_t pos = 0; pos < n.edge_count(); ++pos) {
                    const Edge& e = n.edge(pos);
                    for (size_t k = 0; k < e.ends.size(); ++k)
                        if (e.ends[k].node == int(ni))
                            args[e.ends[k].port] =
                                e.negated[k] ? zq_neg(assign[pos], q) : assign[pos];
                }
                valid = f.eval(args, q) != Cplx(0.0);
            }
            if (valid) {
                ZqVec proj(proj_positions.size());
                for (size_t j = 0; j < proj_positions.size(); ++j)
                    proj[j] = assign[proj_positions[j]];
                seen.insert(std::move(proj));
            }
            if (i + 1 < total) increment_config(all, q, assign);
        }
    }
    return std::vector<ZqVec>(seen.begin(), seen.end());
}

} // namespace kwtopo
