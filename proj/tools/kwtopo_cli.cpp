// Command-line front end: lattice homology, partition sums, dualization,
// operator-NFG construction, Kramers-Wannier verification, and CSV sweeps.
//
// Exit codes: 0 success, 1 duality identity violated, 2 invalid
// configuration, 3 composite modulus where a prime is required, 4
// enumeration budget exceeded.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kwtopo/bridge.hpp"
#include "kwtopo/complex.hpp"
#include "kwtopo/json_io.hpp"
#include "kwtopo/models.hpp"
#include "kwtopo/nfg.hpp"

using namespace kwtopo;
using nlohmann::json;

namespace {

uint64_t default_budget() {
    if (const char* env = std::getenv("KWTOPO_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return v;
        std::cerr << "warning: ignoring malformed KWTOPO_BUDGET\n";
    }
    return kDefaultBudget;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct LatticeArgs {
    std::string lattice;
    int rows = 4, cols = 4;
    int l1 = 2, l2 = 2, l = 2;
    std::vector<int> holes;
    uint32_t q = 2;

    void attach(CLI::App* cmd) {
        cmd->add_option("--lattice", lattice,
                        "grid1d | grid2d | torus2d | cube3d | torus3d")
            ->required();
        cmd->add_option("--rows", rows, "grid rows (vertices)");
        cmd->add_option("--cols", cols, "grid cols (vertices)");
        cmd->add_option("--l1", l1, "torus rows");
        cmd->add_option("--l2", l2, "torus cols");
        cmd->add_option("--l", l, "cube/3-torus side");
        cmd->add_option("--hole", holes, "grid2d face index to remove (repeatable)");
        cmd->add_option("--q", q, "alphabet modulus");
    }

    ChainComplex build() const {
        if (lattice == "grid1d") return build_grid_1complex(rows, cols, q);
        if (lattice == "grid2d")
            return build_grid_2complex(rows, cols, q,
                                       std::set<int>(holes.begin(), holes.end()));
        if (lattice == "torus2d") return build_torus_2complex(l1, l2, q);
        if (lattice == "cube3d") return build_cube_3complex(l, q);
        if (lattice == "torus3d") return build_torus_3complex(l, q);
        throw Error("unknown lattice '" + lattice + "'");
    }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

json kw_report_json(const KwReport& r) {
    json doc;
    doc["schema_version"] = 1;
    doc["dim"] = r.dim;
    doc["L"] = r.l;
    doc["n"] = r.n;
    doc["beta"] = r.beta;
    doc["beta_dual"] = r.beta_dual;
    doc["c_beta"] = r.c_beta;
    doc["Z_primal"] = r.z_primal;
    doc["sums"] = r.sums;
    doc["rhs"] = r.rhs;
    doc["rel_err"] = r.rel_err;
    doc["Z_dual"] = r.z_dual;
    doc["ledger_exponent"] = r.ledger_exponent;
    doc["c1_exponent"] = r.c1_exponent;
    doc["c1_numeric"] = r.c1_numeric;
    doc["c2_numeric"] = r.c2_numeric;
    doc["c2_expected"] = r.c2_expected;
    doc["cosets_partition_ok"] = r.cosets_partition_ok;
    doc["pass"] = r.pass;
    doc["seconds"] = r.seconds;
    return doc;
}

int run(int argc, char** argv) {
    CLI::App app{"exact partition sums, chain-complex homology, and finite-size "
                 "Kramers-Wannier duality checks on lattice models"};
    app.require_subcommand(1);

    uint64_t budget = default_budget();
    unsigned workers = 1;
    app.add_option("--workers", workers, "worker threads for enumerations")
        ->capture_default_str();
    app.add_option("--budget", budget, "enumeration budget (states)")
        ->capture_default_str();

    // homology
    auto* cmd_hom = app.add_subcommand("homology", "cell and homology dimensions");
    LatticeArgs hom_args;
    hom_args.attach(cmd_hom);
    std::string hom_json, hom_dot;
    cmd_hom->add_option("--json", hom_json, "write a JSON report here");
    cmd_hom->add_option("--dot", hom_dot, "write the 1-skeleton as DOT here");

    // partition
    auto* cmd_part = app.add_subcommand("partition", "partition sum of an NFG");
    std::string part_nfg, part_model = "";
    int part_l = 2;
    double part_beta = 0.4;
    uint32_t part_q = 2;
    std::string part_kind = "standard";
    std::string part_method = "brute";
    bool part_check = false;
    double part_tol = 1e-10;
    cmd_part->add_option("--nfg", part_nfg, "NFG JSON file");
    cmd_part->add_option("--model", part_model,
                         "built-in model: ising2d | ising3d | potts2d");
    cmd_part->add_option("--l", part_l, "lattice side");
    cmd_part->add_option("--beta", part_beta, "inverse temperature");
    cmd_part->add_option("--q", part_q, "Potts modulus");
    cmd_part->add_option("--kind", part_kind, "potts kernel: standard | vector");
    cmd_part->add_option("--method", part_method, "brute | contract");
    cmd_part->add_flag("--check", part_check, "run both methods and compare");
    cmd_part->add_option("--tol", part_tol, "comparison tolerance for --check");

    // kw
    auto* cmd_kw = app.add_subcommand("kw", "Kramers-Wannier duality check");
    int kw_dim = 2, kw_l = 2;
    double kw_beta = 0.8, kw_tol = 1e-10;
    std::string kw_json;
    cmd_kw->add_option("--dim", kw_dim, "2 or 3")->capture_default_str();
    cmd_kw->add_option("--l", kw_l, "torus side")->required();
    cmd_kw->add_option("--beta", kw_beta, "inverse temperature")->required();
    cmd_kw->add_option("--tol", kw_tol, "relative tolerance")->capture_default_str();
    cmd_kw->add_option("--json", kw_json, "write the report here");

    // dualize
    auto* cmd_dual = app.add_subcommand("dualize", "Fourier-transform an NFG");
    std::string dual_in, dual_out, dual_ledger;
    cmd_dual->add_option("--in", dual_in, "input NFG JSON")->required();
    cmd_dual->add_option("--out", dual_out, "output NFG JSON")->required();
    cmd_dual->add_option("--ledger", dual_ledger, "omitted-scale ledger sidecar");

    // build-nfg
    auto* cmd_build = app.add_subcommand("build-nfg", "operator NFGs from lattices");
    LatticeArgs build_args;
    build_args.attach(cmd_build);
    std::string build_op, build_out, build_dot;
    cmd_build->add_option("--op", build_op,
                          "{io,ker,im}-{bd1,bd2,bd3,d1,d2,d3}, e.g. ker-d1")
        ->required();
    cmd_build->add_option("--out", build_out, "output NFG JSON")->required();
    cmd_build->add_option("--dot", build_dot, "write the lattice 1-skeleton as DOT");

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "CSV sweep of kw over beta");
    int sweep_l = 2, sweep_steps = 5, sweep_dim = 2;
    double sweep_min = 0.2, sweep_max = 1.2, sweep_tol = 1e-10;
    std::string sweep_out;
    cmd_sweep->add_option("--dim", sweep_dim, "2 or 3")->capture_default_str();
    cmd_sweep->add_option("--l", sweep_l, "torus side")->required();
    cmd_sweep->add_option("--beta-min", sweep_min, "first beta")->required();
    cmd_sweep->add_option("--beta-max", sweep_max, "last beta")->required();
    cmd_sweep->add_option("--steps", sweep_steps, "number of rows")->required();
    cmd_sweep->add_option("--tol", sweep_tol, "per-row tolerance");
    cmd_sweep->add_option("--out", sweep_out, "CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    if (cmd_hom->parsed()) {
        ChainComplex c = hom_args.build();
        auto h = homology_dims(c);
        std::cout << "dim C:";
        for (int i = c.top_dimension(); i >= 0; --i) std::cout << " " << c.cell_count(i);
        std::cout << "\ndim H:";
        for (int d : h) std::cout << " " << d;
        std::cout << "\n";
        if (!hom_json.empty()) {
            json doc = json::parse(complex_to_json(c));
            doc["homology"] = h;
            doc["cohomology"] = cohomology_dims(c);
            write_file(hom_json, doc.dump(2) + "\n");
        }
        if (!hom_dot.empty()) write_file(hom_dot, complex_to_dot(c));
        return 0;
    }

    if (cmd_part->parsed()) {
        Nfg nfg(2);
        if (!part_nfg.empty()) {
            nfg = load_nfg(part_nfg);
        } else if (part_model == "ising2d") {
            nfg = ising_nfg_torus(part_l, part_beta).nfg;
        } else if (part_model == "ising3d") {
            nfg = ising_nfg_torus3d(part_l, part_beta).nfg;
        } else if (part_model == "potts2d") {
            KernelKind kind = part_kind == "vector" ? KernelKind::VectorPotts
                                                    : KernelKind::StandardPotts;
            nfg = potts_nfg_torus(part_l, part_q, part_beta, kind).nfg;
        } else {
            std::cerr << "error: need --nfg or a valid --model\n";
            return 2;
        }

        if (part_check) {
            Cplx brute = exterior_function(nfg, budget, workers).scalar();
            Cplx contracted = partition_sum_contracted(nfg);
            double rel = std::abs(brute - contracted) / std::abs(brute);
            std::cout << "Z = " << fmt(brute.real()) << " (brute)\n";
            std::cout << "Z = " << fmt(contracted.real()) << " (contract)\n";
            std::cout << "rel_diff = " << fmt(rel) << "\n";
            return rel <= part_tol ? 0 : 1;
        }
        if (part_method == "contract") {
            Cplx z = partition_sum_contracted(nfg);
            std::cout << "Z = " << fmt(z.real()) << " (contract)\n";
        } else if (part_method == "brute") {
            Cplx z = exterior_function(nfg, budget, workers).scalar();
            std::cout << "Z = " << fmt(z.real()) << " (brute)\n";
        } else {
            std::cerr << "error: unknown method '" << part_method << "'\n";
            return 2;
        }
        return 0;
    }

    if (cmd_kw->parsed()) {
        KwReport rep;
        if (kw_dim == 2)
            rep = kw_verify_2d(kw_l, kw_beta, kw_tol, workers, budget);
        else if (kw_dim == 3)
            rep = kw_verify_3d(kw_l, kw_beta, kw_tol, workers, budget);
        else {
            std::cerr << "error: --dim must be 2 or 3\n";
            return 2;
        }
        std::cout << "L=" << rep.l << " beta=" << fmt(rep.beta)
                  << " beta_dual=" << fmt(rep.beta_dual)
                  << " c_beta=" << fmt(rep.c_beta) << "\n";
        std::cout << "Z_primal = " << fmt(rep.z_primal) << "\n";
        for (size_t i = 0; i < rep.sums.size(); ++i)
            std::cout << "  sum[" << i << "] = " << fmt(rep.sums[i]) << "\n";
        std::cout << "rhs = " << fmt(rep.rhs) << "\nrel_err = " << fmt(rep.rel_err)
                  << "\n"
                  << (rep.pass ? "PASS" : "FAIL") << "\n";
        if (!kw_json.empty()) write_file(kw_json, kw_report_json(rep).dump(2) + "\n");
        return rep.pass ? 0 : 1;
    }

    if (cmd_dual->parsed()) {
        Nfg nfg = load_nfg(dual_in);
        auto [dual, ledger] = dualize(nfg);
        save_nfg(dual, dual_out);
        if (!dual_ledger.empty()) write_file(dual_ledger, ledger_to_json(ledger) + "\n");
        std::cout << "dualized " << nfg.edge_count() << " edges; ledger = q^"
                  << ledger.q_exponent << "\n";
        return 0;
    }

    if (cmd_build->parsed()) {
        ChainComplex c = build_args.build();
        auto dash = build_op.find('-');
        if (dash == std::string::npos) {
            std::cerr << "error: --op must look like ker-d1\n";
            return 2;
        }
        std::string form = build_op.substr(0, dash);
        std::string map = build_op.substr(dash + 1);
        bool coboundary = map.size() == 2 && map[0] == 'd';
        int index = 0;
        if (coboundary)
            index = map[1] - '0';
        else if (map.size() == 3 && map.substr(0, 2) == "bd")
            index = map[2] - '0';
        else {
            std::cerr << "error: unknown map '" << map << "'\n";
            return 2;
        }
        if (index < 1 || index > c.top_dimension()) {
            std::cerr << "error: map index out of range for this lattice\n";
            return 2;
        }
        ZqMatrix m = coboundary ? c.boundary(index).transposed() : c.boundary(index);
        OperatorNfg op{Nfg(2), {}, {}, {}, {}, {}};
        if (form == "io")
            op = nfg_io(m);
        else if (form == "ker")
            op = nfg_kernel(m);
        else if (form == "im")
            op = nfg_image(m);
        else {
            std::cerr << "error: unknown form '" << form << "'\n";
            return 2;
        }
        save_nfg(op.nfg, build_out);
        if (!build_dot.empty()) write_file(build_dot, complex_to_dot(c));
        std::cout << "wrote " << build_out << " (" << op.nfg.node_count() << " nodes, "
                  << op.nfg.edge_count() << " edges)\n";
        return 0;
    }

    if (cmd_sweep->parsed()) {
        std::ostringstream csv;
        csv << "L,beta,beta_dual,c_beta,Z,Z_h,Z_v,Z_hv,rhs,rel_err,seconds\n";
        bool all_pass = true;
        for (int i = 0; i < sweep_steps; ++i) {
            double beta = sweep_steps == 1
                              ? sweep_min
                              : sweep_min + (sweep_max - sweep_min) * i / (sweep_steps - 1);
            KwReport rep = sweep_dim == 2
                               ? kw_verify_2d(sweep_l, beta, sweep_tol, workers, budget)
                               : kw_verify_3d(sweep_l, beta, sweep_tol, workers, budget);
            all_pass = all_pass && rep.pass;
            csv << rep.l << "," << fmt(rep.beta) << "," << fmt(rep.beta_dual) << ","
                << fmt(rep.c_beta);
            for (size_t s = 0; s < 4; ++s)
                csv << "," << (s < rep.sums.size() ? fmt(rep.sums[s]) : "");
            csv << "," << fmt(rep.rhs) << "," << fmt(rep.rel_err) << ","
                << fmt(rep.seconds) << "\n";
        }
        write_file(sweep_out, csv.str());
        std::cout << "wrote " << sweep_out << "\n";
        return all_pass ? 0 : 1;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CompositeModulus& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
