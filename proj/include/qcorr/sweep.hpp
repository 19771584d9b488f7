// sweep.hpp
// The gamma sweep over the noisy-singlet family: one full measurement per
// grid point, CSV output stable to the byte across runs and thread counts.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcorr/correlations.hpp"

namespace qcorr {

struct SweepConfig {
    double gamma_min = 0.0;
    double gamma_max = 1.0;
    double gamma_step = 0.01;
    double tol = 1e-6;  // solver gap target per row, bits
    std::size_t max_iters = 5000;
    std::uint64_t seed = kDefaultOptimizerSeed;
    bool parallel = true;
};

struct SweepRow {
    double gamma = 0.0;
    double mutual_info = 0.0;
    double ree = 0.0;
    double psi = 0.0;
    double chi_projective = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double psi_minus_chi = 0.0;
    double psi_minus_c = 0.0;
};

// Grid points gamma_min + k*step up to gamma_max inclusive (within float
// slop). Throws InvalidParameterError unless 0 <= min <= max <= 1, step > 0.
std::vector<double> sweep_grid(const SweepConfig& cfg);

// One row per grid point, rows in gamma order. Row k's solver runs with
// seed derive_seed(cfg.seed, k): identical output no matter how many
// threads computed it.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

// Serial reference used by the equivalence tests and the benchmark.
std::vector<SweepRow> run_sweep_serial(SweepConfig cfg);

// Header plus one line per row; fixed 6-decimal columns, LF endings.
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Companion gnuplot script that draws the comparison curves from the CSV.
std::string sweep_plot_script(const std::string& csv_name);

}  // namespace qcorr
