// qcorr: classical vs quantum correlation measures for bipartite states.
//
// Subcommands: `measure` for one state (named family or JSON file),
// `sweep` for the full gamma grid as CSV, `selftest` for the reduced
// invariant suite. Exit codes: 0 success, 1 invalid input, 2 solver did
// not converge, 3 selftest property failed.
#include <cstdio>
#include <cstdint>
#include <exception>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "qcorr/correlations.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/families.hpp"
#include "qcorr/selftest.hpp"
#include "qcorr/state_io.hpp"
#include "qcorr/sweep.hpp"

namespace {

void apply_threads(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

void print_report(const std::string& label, const qcorr::DensityMatrix& rho,
                  const qcorr::MeasureReport& rep) {
    std::printf("state                %s, dims %zux%zu\n", label.c_str(), rho.dims().d_a,
                rho.dims().d_b);
    std::printf("mutual_info          %12.6f\n", rep.mutual_info);
    std::printf("ree                  %12.6f\n", rep.ree_value);
    std::printf("psi                  %12.6f\n", rep.psi);
    if (rep.psi != rep.psi_raw)
        std::printf("psi_raw              %12.6f  (clipped to 0 as solver noise)\n", rep.psi_raw);
    std::printf("c1                   %12.6f\n", rep.c1);
    std::printf("c2                   %12.6f\n", rep.c2);
    if (rep.chi_projective)
        std::printf("chi_projective       %12.6f\n", *rep.chi_projective);
    else
        std::printf("chi_projective       unsupported (needs d_a = 2)\n");
    if (rep.chi_povm) std::printf("chi_povm             %12.6f\n", *rep.chi_povm);
    std::printf("negativity           %12.6f\n", rep.negativity);
    std::printf("ppt                  %s\n", rep.ppt ? "yes" : "no");
    std::printf("solver               gap %.3e, %zu iterations, %s\n", rep.ree_gap,
                rep.ree_iterations, rep.ree_converged ? "converged" : "NOT converged");
}

int run_measure(const std::optional<double>& gamma, const std::string& file, double tol,
                std::uint64_t seed, std::size_t povm_trials, std::size_t povm_outcomes,
                bool json) {
    std::optional<qcorr::DensityMatrix> rho;
    std::string label;
    if (gamma) {
        rho = qcorr::werner_state({*gamma});
        char buf[64];
        std::snprintf(buf, sizeof buf, "werner(gamma=%.6f)", *gamma);
        label = buf;
    } else {
        rho = qcorr::load_state_json(file);
        label = file;
    }

    qcorr::MeasureOptions opts;
    opts.ree.tol = tol;
    opts.ree.seed = seed;
    opts.povm_trials = povm_trials;
    opts.povm_outcomes = povm_outcomes;

    qcorr::MeasureReport rep = qcorr::measure_all(*rho, opts);
    if (json)
        std::printf("%s\n", qcorr::report_json(rep).c_str());
    else
        print_report(label, *rho, rep);

    if (!rep.ree_converged) {
        std::fprintf(stderr, "warning: solver gap %.3e did not reach tol %.3e\n", rep.ree_gap,
                     tol);
        return 2;
    }
    return 0;
}

int run_sweep_cmd(const qcorr::SweepConfig& cfg, const std::string& out_path, bool plot) {
    std::vector<qcorr::SweepRow> rows = qcorr::run_sweep(cfg);
    std::string csv = qcorr::sweep_csv(rows);

    {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw qcorr::StateFileError("cannot open output file: " + out_path);
        out << csv;
        if (!out) {
            out.close();
            std::remove(out_path.c_str());
            throw qcorr::StateFileError("failed while writing: " + out_path);
        }
    }
    std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());

    if (plot) {
        std::string plot_path = out_path + ".gp";
        std::ofstream out(plot_path, std::ios::binary);
        if (!out) throw qcorr::StateFileError("cannot open plot script: " + plot_path);
        out << qcorr::sweep_plot_script(out_path);
        std::printf("wrote plot script to %s\n", plot_path.c_str());
    }
    return 0;
}

int run_selftest_cmd(const qcorr::SelftestOptions& opts) {
    std::vector<qcorr::PropertyResult> results = qcorr::run_selftest(opts);
    const qcorr::PropertyResult* first_fail = nullptr;
    for (const auto& r : results) {
        std::printf("%s %-34s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.passed && first_fail == nullptr) first_fail = &r;
    }
    if (first_fail != nullptr) {
        std::fprintf(stderr, "selftest failed: %s\n", first_fail->name.c_str());
        return 3;
    }
    std::printf("all properties passed (%zu)\n", results.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"correlation measures for bipartite quantum states"};
    app.require_subcommand(1);

    // measure
    auto* measure = app.add_subcommand("measure", "compute all measures for one state");
    std::optional<double> gamma;
    std::string file;
    double tol = 1e-6;
    std::uint64_t seed = qcorr::kDefaultOptimizerSeed;
    std::size_t povm_trials = 0, povm_outcomes = 3;
    int threads = 0;
    bool json = false;
    auto* wopt = measure->add_option("--werner", gamma, "Werner mixing parameter in [0,1]");
    auto* fopt = measure->add_option("--file", file, "state JSON file to load");
    wopt->excludes(fopt);
    fopt->excludes(wopt);
    measure->add_option("--tol", tol, "solver duality-gap target in bits");
    measure->add_option("--seed", seed, "optimizer seed");
    measure->add_option("--povm-trials", povm_trials, "POVM search restarts (0 = skip)");
    measure->add_option("--povm-outcomes", povm_outcomes, "POVM elements (2..4)");
    measure->add_option("--threads", threads, "OpenMP thread cap (0 = library default)");
    measure->add_flag("--json", json, "emit the report as JSON");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "gamma sweep over the Werner family, CSV output");
    qcorr::SweepConfig cfg;
    std::string out_path = "sweep.csv";
    int sweep_threads = 0;
    bool plot = false;
    sweep->add_option("--gamma-min", cfg.gamma_min, "grid start (default 0)");
    sweep->add_option("--gamma-max", cfg.gamma_max, "grid end (default 1)");
    sweep->add_option("--gamma-step", cfg.gamma_step, "grid step (default 0.01)");
    sweep->add_option("--tol", cfg.tol, "solver duality-gap target per row");
    sweep->add_option("--seed", cfg.seed, "base seed; row k uses seed xor hash(k)");
    sweep->add_option("--threads", sweep_threads, "OpenMP thread cap (0 = library default)");
    sweep->add_option("--out", out_path, "output CSV path");
    sweep->add_flag("--plot", plot, "also write a gnuplot script next to the CSV");

    // selftest
    auto* selftest = app.add_subcommand("selftest", "run the reduced invariant suite");
    qcorr::SelftestOptions sopts;
    selftest->add_option("--trials", sopts.trials, "trials per property");
    selftest->add_option("--seed", sopts.seed, "base seed");
#ifdef QCORR_FAULT_HOOK
    bool inject = false;
    selftest->add_flag("--inject-fault", inject,
                       "bias the psi-nonnegativity check to force a failure (test hook)");
#endif

    CLI11_PARSE(app, argc, argv);

    try {
        if (measure->parsed()) {
            if (!gamma && file.empty())
                throw qcorr::InvalidParameterError("measure: need --werner or --file");
            apply_threads(threads);
            return run_measure(gamma, file, tol, seed, povm_trials, povm_outcomes, json);
        }
        if (sweep->parsed()) {
            apply_threads(sweep_threads);
            return run_sweep_cmd(cfg, out_path, plot);
        }
#ifdef QCORR_FAULT_HOOK
        if (inject) sopts.fault_bias = 1e-2;
#endif
        return run_selftest_cmd(sopts);
    } catch (const qcorr::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
