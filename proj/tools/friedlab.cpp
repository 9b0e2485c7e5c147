// friedlab: command-line driver over the verification library.
// Exit codes: 0 all checks pass, 1 check failure, 2 usage error, 3 I/O error.
#include <CLI11.hpp>
#include <json.hpp>

#include "fried/lattice_data.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

using namespace fried;

namespace {

struct CheckRow {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double elapsed_ms = 0.0;
    std::string detail;
};

struct RunReport {
    std::string command;
    std::vector<CheckRow> checks;
    bool all_pass() const {
        for (const auto &c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct Options {
    std::string preset = "sl2c";
    std::string rep_spec;
    std::string classes_path;
    double tol = 1e-10;
    bool use_float = false; // adds SVD cross-checks alongside exact paths
    bool json = false;
    std::uint64_t seed = 1;
};

class Runner {
  public:
    explicit Runner(RunReport &rep) : rep_(rep) {}

    template <typename F> void check(const std::string &name, F &&body) {
        CheckRow row;
        row.name = name;
        auto start = std::chrono::steady_clock::now();
        try {
            body(row); // sets pass / residual / detail
        } catch (const std::exception &e) {
            row.pass = false;
            row.detail = e.what();
        }
        row.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        rep_.checks.push_back(std::move(row));
    }

  private:
    RunReport &rep_;
};

void print_report(const RunReport &rep, bool as_json) {
    if (as_json) {
        nlohmann::ordered_json j;
        j["command"] = rep.command;
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto &c : rep.checks) {
            nlohmann::ordered_json cj;
            cj["name"] = c.name;
            cj["status"] = c.pass ? "pass" : "fail";
            cj["residual"] = c.residual;
            cj["elapsed_ms"] = c.elapsed_ms;
            if (!c.detail.empty()) cj["detail"] = c.detail;
            j["checks"].push_back(cj);
        }
        j["exit_code"] = rep.all_pass() ? 0 : 1;
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "# " << rep.command << "\n";
    for (const auto &c : rep.checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  residual=" << c.residual
                  << "  (" << c.elapsed_ms << " ms)";
        if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
        std::cout << "\n";
    }
    std::cout << (rep.all_pass() ? "all checks passed" : "CHECK FAILURE") << "\n";
}

std::shared_ptr<const GroupModel> load_model(const Options &opt) {
    return std::make_shared<const GroupModel>(build_preset(opt.preset));
}

MatrixRep load_rep(const Options &opt) {
    auto r = build_rep_from_spec(load_model(opt), opt.rep_spec);
    find_admissible_metric(r);
    return r;
}

std::vector<TorusElement> sample_elements(const GroupModel &g, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> len(0.1, 2.5), ang(-3.0, 3.0);
    std::vector<TorusElement> out;
    for (int i = 0; i < count; ++i) {
        TorusElement t;
        t.a_part = len(rng);
        for (int a = 0; a < g.dim_t(); ++a) t.t_angles.push_back(ang(rng));
        out.push_back(std::move(t));
    }
    return out;
}

std::string family_branch(const GroupModel &g) {
    if (g.delta == 1 && g.zperp.cols > 0) return "dirac";
    return "direct";
}

void run_model(const Options &opt, Runner &run) {
    GroupModel g = build_preset(opt.preset);
    auto vr = validate_model(g);
    for (const auto &c : vr.checks)
        run.check("model/" + c.name, [&](CheckRow &row) {
            row.pass = c.pass;
            if (!c.pass) row.detail = c.detail;
        });
}

void run_rep(const Options &opt, Runner &run) {
    auto r = load_rep(opt);
    run.check("rep/homomorphism", [&](CheckRow &row) { row.pass = is_homomorphism(r); });
    run.check("rep/admissible-metric", [&](CheckRow &row) {
        row.pass = metric_is_admissible(r);
    });
    run.check("rep/casimir-scalar", [&](CheckRow &row) {
        try {
            row.detail = rat_to_string(casimir_scalar(r));
            row.pass = true;
        } catch (const NotScalar &) {
            row.detail = "not scalar (reducible with mixed Casimir)";
            row.pass = true; // informational
        }
    });
    run.check("rep/theta-invariance", [&](CheckRow &row) {
        row.pass = true;
        row.detail = is_theta_invariant(r) ? "theta-invariant" : "not theta-invariant";
    });
}

void run_dirac(const Options &opt, Runner &run) {
    auto r = load_rep(opt);
    for (const std::string path : {"p", "uperp"}) {
        if (path == "uperp" && r.model->zperp.cols == 0) continue;
        run.check("dirac/" + path + "/square-identity", [&](CheckRow &row) {
            auto dd = dirac_operator(r, path);
            auto pr = verify_parthasarathy(dd);
            row.pass = pr.exact;
            row.residual = pr.max_residual;
        });
        if (opt.use_float)
            run.check("dirac/" + path + "/kernel-dim-svd", [&](CheckRow &row) {
                auto dd = dirac_operator(r, path);
                Mat d2 = dd.d_squared();
                int exact_dim = nullspace(d2).cols;
                int float_dim = float_kernel_dim(d2);
                row.pass = exact_dim == float_dim;
                row.detail = "exact " + std::to_string(exact_dim) + ", svd " +
                             std::to_string(float_dim);
            });
    }
    run.check("dirac/spinor-halves", [&](CheckRow &row) {
        if (r.model->delta != 1 || r.model->zperp.cols == 0) {
            row.pass = true;
            row.detail = "skipped (needs rank-one split part)";
            return;
        }
        auto halves = spinor_b_m_characters(*r.model);
        auto ref = spinor_reference_characters(*r.model);
        row.pass = halves.first == ref.first && halves.second == ref.second;
    });
}

void run_eta(const Options &opt, Runner &run) {
    auto r = load_rep(opt);
    const GroupModel &g = *r.model;
    auto fam = compute_eta_family(r, family_branch(g));
    run.check("eta/casimir-scalar", [&](CheckRow &row) {
        row.residual = verify_casimir_scalar_eta(fam);
        row.pass = row.residual == 0.0;
    });
    run.check("eta/graded-kernel-identity", [&](CheckRow &row) {
        auto report = verify_graded_kernel_identity(fam, sample_elements(g, opt.seed, 100));
        row.pass = report.exact && report.max_residual <= std::max(opt.tol, 1e-9);
        row.residual = report.max_residual;
    });
    run.check("eta/lift-sum", [&](CheckRow &row) {
        auto eh = compute_eta_hat(fam);
        row.pass = verify_lift_sum_identity(eh, r).ok;
    });
    run.check("eta/half-sum-identities", [&](CheckRow &row) {
        row.pass = kostant_checks(g).all_ok();
    });
    if (opt.use_float)
        run.check("eta/kernel-dim-svd", [&](CheckRow &row) {
            if (fam.branch != "dirac") {
                row.pass = true;
                row.detail = "skipped (direct branch has no Dirac kernel)";
                return;
            }
            auto dd = dirac_operator(r, "uperp");
            Mat d2 = dd.d_squared();
            long long total = 0;
            for (const auto &blk : fam.blocks)
                total += blk.basis_plus.cols + blk.basis_minus.cols;
            int float_dim = float_kernel_dim(d2);
            row.pass = float_dim == total;
            row.detail = "family " + std::to_string(total) + ", svd " + std::to_string(float_dim);
        });
}

void run_zeta(const Options &opt, Runner &run, bool &io_error) {
    auto r = load_rep(opt);
    const GroupModel &g = *r.model;
    ClassFile cf;
    if (opt.classes_path.empty()) {
        cf = synthesize_classes(opt.seed, 50, 0.1, 3.0, g);
    } else {
        try {
            cf = load_classes(opt.classes_path);
        } catch (const std::exception &e) {
            std::cerr << "cannot load classes: " << e.what() << "\n";
            io_error = true;
            return;
        }
    }
    run.check("zeta/records-valid", [&](CheckRow &row) {
        for (const auto &rec : cf.records) validate_record(rec, g.dim_t());
        row.pass = true;
        row.detail = std::to_string(cf.records.size()) + " records";
    });
    auto fam = compute_eta_family(r, family_branch(g));
    auto chi = full_h_character(r);
    run.check("zeta/factorization", [&](CheckRow &row) {
        row.residual = factorization_check(cf.records, fam, chi);
        row.pass = row.residual <= opt.tol;
    });
    run.check("zeta/conjugation-symmetry", [&](CheckRow &row) {
        row.residual =
            conjugation_symmetry_check(cf.records, chi, full_h_character(theta_twist(r)));
        row.pass = row.residual <= std::min(opt.tol, 1e-12);
    });
    run.check("zeta/ruelle-series", [&](CheckRow &row) {
        auto series = ruelle_log_series(cf.records, chi);
        row.pass = true;
        row.detail = std::to_string(series.terms.size()) + " terms, max coeff " +
                     std::to_string(series.max_coeff());
    });
}

Mat demo_generator_a() {
    Mat m(2, 2);
    m(0, 0) = GQ(2);
    m(1, 1) = GQ(Rat(1, 2));
    return m;
}

Mat demo_generator_b() {
    Mat m(2, 2);
    m(0, 0) = GQ(3);
    m(0, 1) = GQ(Rat(1), Rat(2));
    m(1, 0) = GQ(Rat(1), Rat(-2));
    m(1, 1) = GQ(2);
    return m;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"verification driver for the zeta/torsion algebra library"};
    app.require_subcommand(1);
    app.fallthrough(); // allow global flags after the subcommand name

    Options opt;
    if (const char *env = std::getenv("FRIEDLAB_TOL")) opt.tol = std::atof(env);
    app.add_option("--tol", opt.tol, "residual tolerance for float checks");
    app.add_flag("--json", opt.json, "machine-readable report");
    bool exact_flag = false;
    app.add_flag("--exact", exact_flag, "exact mode only (default)");
    app.add_flag("--float", opt.use_float, "add float-mode (SVD) cross-checks");
    app.add_option("--seed", opt.seed, "seed for sampled checks and synthesis");

    auto add_common = [&](CLI::App *sub, bool needs_rep) {
        sub->add_option("--preset", opt.preset, "group model preset")->capture_default_str();
        if (needs_rep)
            sub->add_option("--rep", opt.rep_spec, "rep spec, e.g. \"1,0+theta\"")->required();
    };

    auto *cmd_model = app.add_subcommand("model", "validate a group model preset");
    add_common(cmd_model, false);
    auto *cmd_rep = app.add_subcommand("rep", "build and audit a representation");
    add_common(cmd_rep, true);
    auto *cmd_dirac = app.add_subcommand("dirac", "Dirac-operator identities");
    add_common(cmd_dirac, true);
    auto *cmd_eta = app.add_subcommand("eta", "graded kernel family checks");
    add_common(cmd_eta, true);
    auto *cmd_zeta = app.add_subcommand("zeta", "zeta-series factorization checks");
    add_common(cmd_zeta, true);
    cmd_zeta->add_option("--classes", opt.classes_path,
                         "class file (default: seeded synthetic 50 classes)");

    auto *cmd_lattice = app.add_subcommand("lattice", "class-file tooling");
    std::string lattice_action = "synth";
    std::string lattice_out, lattice_in;
    int lattice_count = 50, lattice_max_len = 5;
    bool lattice_two_gen = false;
    cmd_lattice->add_option("action", lattice_action, "synth | enumerate | validate")->required();
    cmd_lattice->add_option("--preset", opt.preset, "model preset (synth)");
    cmd_lattice->add_option("--count", lattice_count, "record count (synth)");
    cmd_lattice->add_option("--max-len", lattice_max_len, "word length bound (enumerate)");
    cmd_lattice->add_flag("--two-generators", lattice_two_gen,
                          "enumerate the built-in two-generator demo set");
    cmd_lattice->add_option("--out", lattice_out, "write the class file here");
    cmd_lattice->add_option("--classes", lattice_in, "class file to validate");

    auto *cmd_all = app.add_subcommand("verify-all", "run every suite for a preset + rep");
    add_common(cmd_all, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunReport report;
    for (int i = 0; i < argc; ++i) report.command += std::string(i ? " " : "") + argv[i];
    Runner run(report);
    bool io_error = false;

    try {
        if (cmd_model->parsed()) run_model(opt, run);
        if (cmd_rep->parsed()) run_rep(opt, run);
        if (cmd_dirac->parsed()) run_dirac(opt, run);
        if (cmd_eta->parsed()) run_eta(opt, run);
        if (cmd_zeta->parsed()) run_zeta(opt, run, io_error);
        if (cmd_all->parsed()) {
            run_model(opt, run);
            run_rep(opt, run);
            run_dirac(opt, run);
            run_eta(opt, run);
            run_zeta(opt, run, io_error);
        }
        if (cmd_lattice->parsed()) {
            if (lattice_action == "synth") {
                GroupModel g = build_preset(opt.preset);
                ClassFile cf = synthesize_classes(opt.seed, lattice_count, 0.1, 3.0, g);
                if (lattice_out.empty())
                    std::cout << canonical_text(cf);
                else
                    save_classes(cf, lattice_out);
            } else if (lattice_action == "enumerate") {
                std::vector<Mat> gens = {demo_generator_a()};
                if (lattice_two_gen) gens.push_back(demo_generator_b());
                ClassFile cf = enumerate_words(gens, lattice_max_len);
                if (lattice_out.empty())
                    std::cout << canonical_text(cf);
                else
                    save_classes(cf, lattice_out);
            } else if (lattice_action == "validate") {
                if (lattice_in.empty()) {
                    std::cerr << "lattice validate needs --classes\n";
                    return 2;
                }
                ClassFile cf;
                try {
                    cf = load_classes(lattice_in);
                } catch (const std::exception &e) {
                    std::cerr << "invalid class file: " << e.what() << "\n";
                    return 3;
                }
                run.check("lattice/valid", [&](CheckRow &row) {
                    row.pass = true;
                    row.detail = std::to_string(cf.records.size()) + " records";
                });
            } else {
                std::cerr << "unknown lattice action '" << lattice_action << "'\n";
                return 2;
            }
        }
    } catch (const UnknownPreset &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (io_error) return 3;
    if (!report.checks.empty() || !cmd_lattice->parsed()) print_report(report, opt.json);
    return report.all_pass() ? 0 : 1;
}
