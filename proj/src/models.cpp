#include "kwtopo/models.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include "kwtopo/parallel.hpp"

namespace kwtopo {

namespace {

constexpr double kMaxBeta = 12.0; // keeps e^(beta n) finite in double

void require_beta(double beta) {
    if (!(beta > 0)) throw NonpositiveBeta("beta must be positive");
    if (beta > kMaxBeta) throw Error("beta above supported range");
}

} // namespace

InteractionKernel InteractionKernel::ising(double beta) {
    require_beta(beta);
    InteractionKernel k;
    k.q = 2;
    k.beta = beta;
    k.kind = KernelKind::Ising;
    k.kappa = {std::exp(beta), std::exp(-beta)};
    return k;
}

InteractionKernel InteractionKernel::standard_potts(uint32_t q, double beta) {
    require_beta(beta);
    if (q < 2) throw Error("Potts needs q >= 2");
    InteractionKernel k;
    k.q = q;
    k.beta = beta;
    k.kind = KernelKind::StandardPotts;
    k.kappa.assign(q, std::exp(-beta));
    k.kappa[0] = std::exp(beta);
    return k;
}

InteractionKernel InteractionKernel::vector_potts(uint32_t q, double beta) {
    require_beta(beta);
    if (q < 2) throw Error("Potts needs q >= 2");
    InteractionKernel k;
    k.q = q;
    k.beta = beta;
    k.kind = KernelKind::VectorPotts;
    k.kappa.resize(q);
    for (uint32_t x = 0; x < q; ++x)
        k.kappa[x] = std::exp(beta * std::cos(2.0 * std::numbers::pi * x / q));
    return k;
}

InteractionKernel InteractionKernel::make(KernelKind kind, uint32_t q, double beta) {
    switch (kind) {
        case KernelKind::Ising:
            if (q != 2) throw Error("Ising kernel requires q = 2");
            return ising(beta);
        case KernelKind::StandardPotts:
            return standard_potts(q, beta);
        case KernelKind::VectorPotts:
            return vector_potts(q, beta);
    }
    throw Error("unknown kernel kind");
}

std::vector<Cplx> InteractionKernel::table() const {
    return std::vector<Cplx>(kappa.begin(), kappa.end());
}

double dual_beta_ising(double beta) {
    require_beta(beta);
    return -0.5 * std::log(std::tanh(beta));
}

double c_beta(double beta) {
    require_beta(beta);
    return 2.0 * std::sinh(beta) * std::cosh(beta);
}

std::vector<double> LatticeModelNfg::edge_kappa(size_t e) const {
    const auto& vals = nfg.node(kappa_nodes.at(e)).values();
    std::vector<double> out(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) out[i] = vals[i].real();
    return out;
}

LatticeModelNfg model_nfg_from_complex(const ChainComplex& complex,
                                       const InteractionKernel& kernel) {
    uint32_t q = complex.modulus();
    if (kernel.q != q) throw Error("kernel modulus does not match lattice modulus");

    const ZqMatrix& d1 = complex.boundary(1);
    size_t nv = d1.rows(), na = d1.cols();

    // Recover (tail, head) from the boundary column: head has +1, tail has
    // -1. Over F_2 the two are indistinguishable and the direction does not
    // affect any kappa value (x = -x), so the lower-index endpoint becomes
    // the tail. Self-loops cannot occur for the lattices built here (L >= 2).
    std::vector<std::pair<int, int>> arcs(na, {-1, -1});
    std::vector<int> degree(nv, 0);
    for (size_t e = 0; e < na; ++e) {
        if (q == 2) {
            for (size_t v = 0; v < nv; ++v)
                if (d1.at(v, e) == 1) {
                    if (arcs[e].first < 0)
                        arcs[e].first = int(v);
                    else
                        arcs[e].second = int(v);
                }
        } else {
            for (size_t v = 0; v < nv; ++v) {
                uint8_t x = d1.at(v, e);
                if (x == 1)
                    arcs[e].second = int(v);
                else if (x == q - 1)
                    arcs[e].first = int(v);
            }
        }
        if (arcs[e].first < 0 || arcs[e].second < 0)
            throw Error("lattice edge without two distinct endpoints");
        ++degree[arcs[e].first];
        ++degree[arcs[e].second];
    }

    LatticeModelNfg model{Nfg(q), complex, kernel, {}, {}, {}, arcs, {}};
    Nfg& nfg = model.nfg;
    for (size_t v = 0; v < nv; ++v)
        model.site_nodes.push_back(nfg.add_equality(degree[v]));
    std::vector<Cplx> ktable = kernel.table();
    for (size_t e = 0; e < na; ++e) {
        model.parity_nodes.push_back(nfg.add_parity(3));
        model.kappa_nodes.push_back(nfg.add_table(1, ktable));
    }

    // Parity constraint per lattice edge: -x_tail + x_head - u = 0, i.e.
    // the kappa argument u equals x_head - x_tail.
    std::vector<int> site_port(nv, 0);
    for (size_t e = 0; e < na; ++e) {
        int tail = arcs[e].first, head = arcs[e].second;
        int p = model.parity_nodes[e];
        nfg.add_edge({model.site_nodes[tail], site_port[tail]++}, {p, 0}, false, true);
        nfg.add_edge({model.site_nodes[head], site_port[head]++}, {p, 1}, false, false);
        nfg.add_edge({p, 2}, {model.kappa_nodes[e], 0}, true, false);
    }
    nfg.finalize();
    return model;
}

LatticeModelNfg ising_nfg_torus(int l, double beta) {
    if (l < 2) throw Error("torus needs L >= 2");
    return model_nfg_from_complex(build_torus_2complex(l, l, 2),
                                  InteractionKernel::ising(beta));
}

LatticeModelNfg ising_nfg_torus3d(int l, double beta) {
    if (l < 2) throw Error("torus needs L >= 2");
    return model_nfg_from_complex(build_torus_3complex(l, 2),
                                  InteractionKernel::ising(beta));
}

LatticeModelNfg ising_nfg_grid(int rows, int cols, double beta) {
    return model_nfg_from_complex(build_grid_1complex(rows, cols, 2),
                                  InteractionKernel::ising(beta));
}

LatticeModelNfg potts_nfg_torus(int l, uint32_t q, double beta, KernelKind kind) {
    if (l < 2) throw Error("torus needs L >= 2");
    return model_nfg_from_complex(build_torus_2complex(l, l, q),
                                  InteractionKernel::make(kind, q, beta));
}

LatticeModelNfg twisted_nfg(const LatticeModelNfg& base, const std::set<char>& cycles) {
    const auto& info = base.complex.torus_info();
    if (!cycles.empty() && !info)
        throw UnknownCycle("twists require a torus-built lattice");

    size_t na = base.arcs.size();
    uint32_t q = base.nfg.modulus();
    ZqVec shift(na, 0);
    for (char c : cycles) {
        size_t idx;
        if (c == 'h')
            idx = 0;
        else if (c == 'v')
            idx = 1;
        else if (c == 'd')
            idx = 2;
        else
            throw UnknownCycle(std::string("unknown cycle '") + c + "'");
        if (!info || idx >= info->cycles.size())
            throw UnknownCycle(std::string("cycle '") + c +
                               "' does not exist on this lattice");
        for (size_t e = 0; e < na; ++e)
            shift[e] = zq_add(shift[e], info->cycles[idx][e], q);
    }

    LatticeModelNfg out{Nfg(q), base.complex, base.kernel, base.site_nodes,
                        base.parity_nodes, base.kappa_nodes, base.arcs, cycles};
    // Rebuild the NFG with shifted kappa tables where the summed cycle
    // chain is nonzero: kappa'(x) = kappa(alpha - x).
    Nfg& nfg = out.nfg;
    for (size_t i = 0; i < base.nfg.node_count(); ++i) {
        const LocalFunction& f = base.nfg.node(i);
        if (f.kind() == FnKind::Table) {
            // locate the lattice edge of this kappa node
            size_t e = SIZE_MAX;
            for (size_t j = 0; j < base.kappa_nodes.size(); ++j)
                if (base.kappa_nodes[j] == int(i)) e = j;
            if (e == SIZE_MAX) throw Error("table node is not a kappa node");
            if (shift[e] != 0) {
                std::vector<Cplx> tw(q);
                for (uint32_t x = 0; x < q; ++x)
                    tw[x] = f.values()[zq_sub(shift[e], uint8_t(x), q)];
                nfg.add_table(1, std::move(tw));
            } else {
                nfg.add_node(f);
            }
        } else {
            nfg.add_node(f);
        }
    }
    for (size_t pos = 0; pos < base.nfg.edge_count(); ++pos) {
        const Edge& ed = base.nfg.edge(pos);
        nfg.add_edge(ed.ends[0], ed.ends[1], ed.negated[0], ed.negated[1], ed.id);
    }
    nfg.finalize();
    return out;
}

double spin_sum(const LatticeModelNfg& model, unsigned workers, uint64_t budget) {
    uint32_t q = model.nfg.modulus();
    size_t nv = model.site_nodes.size();
    size_t na = model.arcs.size();
    uint64_t total = checked_power(q, nv, budget);

    std::vector<std::vector<double>> kappa(na);
    for (size_t e = 0; e < na; ++e) kappa[e] = model.edge_kappa(e);

    return chunked_sum<double>(total, workers, [&](uint64_t lo, uint64_t hi) {
        std::vector<uint8_t> spins(nv, 0);
        uint64_t rem = lo;
        for (size_t j = nv; j-- > 0;) {
            spins[j] = static_cast<uint8_t>(rem % q);
            rem /= q;
        }
        double acc = 0.0;
        for (uint64_t i = lo; i < hi; ++i) {
            double prod = 1.0;
            for (size_t e = 0; e < na; ++e) {
                uint8_t u = zq_sub(spins[model.arcs[e].second],
                                   spins[model.arcs[e].first], q);
                prod *= kappa[e][u];
            }
            acc += prod;
            // mixed-radix increment, least significant digit last
            for (size_t j = nv; j-- > 0;) {
                if (++spins[j] < q) break;
                spins[j] = 0;
            }
        }
        return acc;
    });
}

double partition_via_support(const LatticeModelNfg& model, uint64_t budget) {
    uint32_t q = model.nfg.modulus();
    auto configs = projected_valid_configs(model.nfg, budget);
    size_t na = model.arcs.size();
    std::vector<std::vector<double>> kappa(na);
    for (size_t e = 0; e < na; ++e) kappa[e] = model.edge_kappa(e);

    double acc = 0.0;
    for (const auto& cfg : configs) {
        if (cfg.size() != na) throw Error("unexpected projection width");
        double prod = 1.0;
        for (size_t e = 0; e < na; ++e) prod *= kappa[e][cfg[e]];
        acc += prod;
    }
    return double(q) * acc;
}

namespace {

double shifted_span_sum(const SpanEnumerator& span, const std::vector<double>& khat,
                        const ZqVec& shift, uint32_t q, unsigned workers) {
    return chunked_sum<double>(span.size(), workers, [&](uint64_t lo, uint64_t hi) {
        ZqVec x;
        double acc = 0.0;
        for (uint64_t i = lo; i < hi; ++i) {
            span.write(i, x);
            double prod = 1.0;
            for (size_t e = 0; e < x.size(); ++e) prod *= khat[zq_add(x[e], shift[e], q)];
            acc += prod;
        }
        return acc;
    });
}

} // namespace

double kernel_side_sum(const ChainComplex& complex, const std::vector<double>& khat,
                       unsigned workers, uint64_t budget) {
    uint32_t q = complex.modulus();
    auto kernel = kernel_basis(complex.boundary(1));
    SpanEnumerator span(kernel, complex.boundary(1).cols(), q, budget);
    ZqVec zero(complex.boundary(1).cols(), 0);
    return shifted_span_sum(span, khat, zero, q, workers);
}

std::vector<double> coset_sums(const ChainComplex& complex,
                               const std::vector<double>& khat, unsigned workers,
                               uint64_t budget) {
    uint32_t q = complex.modulus();
    const auto& info = complex.torus_info();
    if (!info) throw NotATorus("coset sums require a torus-built complex");

    auto im2 = image_basis(complex.boundary(2));
    size_t na = complex.boundary(1).cols();
    SpanEnumerator span(im2, na, q, budget);

    size_t k = info->cycles.size();
    uint64_t n_cosets = 1;
    for (size_t i = 0; i < k; ++i) n_cosets *= q;

    std::vector<double> sums;
    sums.reserve(n_cosets);
    for (uint64_t a = 0; a < n_cosets; ++a) {
        // lexicographic coefficients, first cycle most significant
        ZqVec shift(na, 0);
        uint64_t rem = a;
        for (size_t i = k; i-- > 0;) {
            uint8_t coeff = static_cast<uint8_t>(rem % q);
            rem /= q;
            if (coeff == 0) continue;
            for (size_t e = 0; e < na; ++e)
                shift[e] = zq_add(shift[e], zq_mul(coeff, info->cycles[i][e], q), q);
        }
        sums.push_back(shifted_span_sum(span, khat, shift, q, workers));
    }
    return sums;
}

bool verify_coset_partition(const ChainComplex& complex, uint64_t budget) {
    uint32_t q = complex.modulus();
    require_prime(q);
    const auto& info = complex.torus_info();
    if (!info) throw NotATorus("coset partition requires a torus-built complex");

    size_t na = complex.boundary(1).cols();
    auto kernel = kernel_basis(complex.boundary(1));
    auto im2 = image_basis(complex.boundary(2));
    // Syndrome functionals: basis of (im boundary(2))^perp = ker of the
    // transposed boundary; constant on cosets and injective across them.
    auto syndrome_basis = kernel_basis(complex.boundary(2).transposed());
    ZqMatrix syn = ZqMatrix::from_rows(syndrome_basis, q);

    size_t k = info->cycles.size();
    uint64_t n_cosets = 1;
    for (size_t i = 0; i < k; ++i) n_cosets *= q;

    std::map<ZqVec, uint64_t> rep_syndrome_to_coset;
    for (uint64_t a = 0; a < n_cosets; ++a) {
        ZqVec shift(na, 0);
        uint64_t rem = a;
        for (size_t i = k; i-- > 0;) {
            uint8_t coeff = static_cast<uint8_t>(rem % q);
            rem /= q;
            for (size_t e = 0; e < na; ++e)
                shift[e] = zq_add(shift[e], zq_mul(coeff, info->cycles[i][e], q), q);
        }
        auto [it, fresh] = rep_syndrome_to_coset.emplace(syn.multiply(shift), a);
        if (!fresh) return false; // two representatives share a coset
    }

    SpanEnumerator span(kernel, na, q, budget);
    uint64_t per_coset_expected = checked_power(q, im2.size(), budget);
    std::vector<uint64_t> counts(n_cosets, 0);
    ZqVec x;
    for (uint64_t i = 0; i < span.size(); ++i) {
        span.write(i, x);
        auto it = rep_syndrome_to_coset.find(syn.multiply(x));
        if (it == rep_syndrome_to_coset.end()) return false;
        ++counts[it->second];
    }
    for (uint64_t c : counts)
        if (c != per_coset_expected) return false;
    return span.size() == per_coset_expected * n_cosets;
}

std::optional<DualMatch> match_dual_interaction(const std::vector<Cplx>& khat,
                                                KernelKind form) {
    if (khat.empty()) return std::nullopt;
    const double rel = 1e-12;

    double max_abs = 0.0;
    for (const Cplx& v : khat) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs == 0.0) return std::nullopt;
    std::vector<double> real(khat.size());
    for (size_t i = 0; i < khat.size(); ++i) {
        if (std::abs(khat[i].imag()) > 1e-9 * max_abs) return std::nullopt;
        real[i] = khat[i].real();
        if (!(real[i] > 0)) return std::nullopt;
    }

    uint32_t q = uint32_t(khat.size());
    auto verify = [&](const InteractionKernel& k, double scale) {
        for (uint32_t x = 0; x < q; ++x)
            if (std::abs(scale * k.kappa[x] - real[x]) > rel * std::abs(real[x]))
                return false;
        return true;
    };

    switch (form) {
        case KernelKind::Ising:
        case KernelKind::StandardPotts: {
            // two-value Hamming form: kappa(0) = e^b, kappa(x != 0) = e^-b
            double v0 = real[0];
            double v1 = real.size() > 1 ? real[1] : 0.0;
            for (size_t x = 2; x < real.size(); ++x)
                if (std::abs(real[x] - v1) > rel * std::abs(v1)) return std::nullopt;
            if (!(v0 > v1)) return std::nullopt; // needs a positive dual beta
            double beta_dual = 0.5 * std::log(v0 / v1);
            double scale = std::sqrt(v0 * v1);
            InteractionKernel k = (form == KernelKind::Ising && q == 2)
                                      ? InteractionKernel::ising(beta_dual)
                                      : InteractionKernel::standard_potts(q, beta_dual);
            if (!verify(k, scale)) return std::nullopt;
            return DualMatch{beta_dual, scale};
        }
        case KernelKind::VectorPotts: {
            // log kappa'(x) = log scale + beta cos(2 pi x / q)
            if (q < 3) return std::nullopt;
            double c0 = 1.0, c1 = std::cos(2.0 * std::numbers::pi / q);
            double t0 = std::log(real[0]), t1 = std::log(real[1]);
            double beta_dual = (t0 - t1) / (c0 - c1);
            if (!(beta_dual > 0) || beta_dual > kMaxBeta) return std::nullopt;
            double scale = std::exp(t0 - beta_dual);
            if (!verify(InteractionKernel::vector_potts(q, beta_dual), scale))
                return std::nullopt;
            return DualMatch{beta_dual, scale};
        }
    }
    return std::nullopt;
}

namespace {

std::vector<double> khat_values(const InteractionKernel& kernel) {
    auto t = fourier_table(kernel.table(), kernel.q);
    std::vector<double> out(t.size());
    for (size_t i = 0; i < t.size(); ++i) out[i] = t[i].real();
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

} // namespace

KwReport kw_verify_2d(int l, double beta, double tol, unsigned workers,
                      uint64_t budget) {
    Timer timer;
    KwReport rep;
    rep.dim = 2;
    rep.l = l;
    rep.n = l * l;
    rep.beta = beta;
    rep.beta_dual = dual_beta_ising(beta);
    rep.c_beta = c_beta(beta);

    LatticeModelNfg primal = ising_nfg_torus(l, beta);
    rep.z_primal = spin_sum(primal, workers, budget);

    LatticeModelNfg dual_temp = ising_nfg_torus(l, rep.beta_dual);
    const std::set<char> twists[] = {{}, {'h'}, {'v'}, {'h', 'v'}};
    for (const auto& t : twists)
        rep.sums.push_back(spin_sum(twisted_nfg(dual_temp, t), workers, budget));

    double total = rep.sums[0] + rep.sums[1] + rep.sums[2] + rep.sums[3];
    rep.rhs = 0.5 * std::pow(rep.c_beta, rep.n) * total;
    rep.rel_err = std::abs(rep.z_primal - rep.rhs) / std::abs(rep.z_primal);

    // Proof-route bookkeeping: Z = (ledger / q^|E|) * Z_dual, and Z_dual is
    // the kernel-form sum of the transformed interactions.
    auto [dual_nfg, ledger] = dualize(primal.nfg);
    rep.ledger_exponent = ledger.q_exponent;
    rep.c1_exponent = ledger.q_exponent - int64_t(primal.nfg.edge_count());
    rep.z_dual = kernel_side_sum(primal.complex, khat_values(primal.kernel), workers,
                                 budget);
    rep.c1_numeric = rep.z_primal / rep.z_dual;
    rep.c2_numeric = rep.z_dual / total;
    rep.c2_expected = std::pow(2.0, rep.n - 1) * std::pow(rep.c_beta, rep.n);
    rep.pass = rep.rel_err <= tol;
    rep.seconds = timer.elapsed();
    return rep;
}

KwReport kw_verify_3d(int l, double beta, double tol, unsigned workers,
                      uint64_t budget) {
    Timer timer;
    KwReport rep;
    rep.dim = 3;
    rep.l = l;
    rep.n = l * l * l;
    rep.beta = beta;
    rep.beta_dual = dual_beta_ising(beta);
    rep.c_beta = c_beta(beta);

    LatticeModelNfg primal = ising_nfg_torus3d(l, beta);
    rep.z_primal = spin_sum(primal, workers, budget);

    rep.sums = coset_sums(primal.complex, khat_values(primal.kernel), workers, budget);
    double total = 0.0;
    for (double s : rep.sums) total += s;
    rep.z_dual = total;

    auto [dual_nfg, ledger] = dualize(primal.nfg);
    rep.ledger_exponent = ledger.q_exponent;
    rep.c1_exponent = ledger.q_exponent - int64_t(primal.nfg.edge_count());
    double c1 = std::pow(double(primal.nfg.modulus()), double(rep.c1_exponent));
    rep.rhs = c1 * total;
    rep.rel_err = std::abs(rep.z_primal - rep.rhs) / std::abs(rep.z_primal);
    rep.c1_numeric = rep.z_primal / rep.z_dual;
    rep.c2_numeric = 0.0;
    rep.c2_expected = 0.0;
    rep.cosets_partition_ok = verify_coset_partition(primal.complex, budget);
    rep.pass = rep.rel_err <= tol && rep.cosets_partition_ok;
    rep.seconds = timer.elapsed();
    return rep;
}

CosetCheckReport kw_coset_check(int l, uint32_t q, double beta, KernelKind kind,
                                unsigned workers, uint64_t budget) {
    CosetCheckReport rep;
    LatticeModelNfg model = potts_nfg_torus(l, q, beta, kind);
    rep.z_spin = spin_sum(model, workers, budget);

    auto khat = fourier_table(model.kernel.table(), q);
    KernelKind form = (kind == KernelKind::VectorPotts) ? KernelKind::VectorPotts
                                                        : KernelKind::StandardPotts;
    if (q == 2 && kind == KernelKind::Ising) form = KernelKind::Ising;
    auto match = match_dual_interaction(khat, form);
    if (!match) throw Error("transformed interaction does not match the kernel family");
    rep.beta_dual = match->beta_dual;
    rep.scale = match->scale;

    InteractionKernel dual_kernel = InteractionKernel::make(kind, q, rep.beta_dual);

    auto [dual_nfg, ledger] = dualize(model.nfg);
    int64_t c1_exp = ledger.q_exponent - int64_t(model.nfg.edge_count());
    double c1 = std::pow(double(q), double(c1_exp));

    size_t na = model.arcs.size();
    std::vector<double> kd(dual_kernel.kappa);
    auto sums = coset_sums(model.complex, kd, workers, budget);
    double total = 0.0;
    for (double s : sums) total += s;
    rep.rhs = c1 * std::pow(rep.scale, double(na)) * total;
    rep.rel_err = std::abs(rep.z_spin - rep.rhs) / std::abs(rep.z_spin);
    return rep;
}

Theorem1Report theorem1_bound_check(int l, double beta, unsigned workers) {
    Theorem1Report rep;
    rep.beta_dual = dual_beta_ising(beta);
    LatticeModelNfg base = ising_nfg_torus(l, rep.beta_dual);
    rep.z = spin_sum(base, workers);
    rep.z_h = spin_sum(twisted_nfg(base, {'h'}), workers);
    rep.z_v = spin_sum(twisted_nfg(base, {'v'}), workers);
    rep.z_hv = spin_sum(twisted_nfg(base, {'h', 'v'}), workers);

    double root_n = std::sqrt(double(l * l));
    rep.bound_h = std::exp(2.0 * root_n * rep.beta_dual);
    rep.bound_v = rep.bound_h;
    rep.bound_hv = std::exp(4.0 * root_n * rep.beta_dual);

    auto sandwiched = [](double ratio, double bound) {
        return ratio <= bound && ratio >= 1.0 / bound;
    };
    rep.h_ok = sandwiched(rep.z_h / rep.z, rep.bound_h);
    rep.v_ok = sandwiched(rep.z_v / rep.z, rep.bound_v);
    rep.hv_ok = sandwiched(rep.z_hv / rep.z, rep.bound_hv);
    return rep;
}

} // namespace kwtopo
