// correlations.hpp
// The correlation measures the sweep compares: accessible information
// about B over measurements on A (projective grid search and a POVM
// heuristic), and the relative-entropy quantities psi, C1, C2 built from
// the closest separable state.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "qcorr/entanglement.hpp"
#include "qcorr/measurement.hpp"

namespace qcorr {

struct ChiOptions {
    double grid_step = M_PI / 180.0;  // radians; 1 degree by default
    double refine_tol = 1e-9;         // bits; refinement stops once a step cannot gain this
    bool parallel = true;             // grid scan uses OpenMP when set
};

// Max over qubit-A projector pairs of the information gained about B:
// coarse scan of the Bloch hemisphere (projector pairs are antipode
// symmetric) followed by compass-step refinement from the best grid point.
// Deterministic for fixed options, independent of thread count. Throws
// UnsupportedDimensionError unless d_a == 2.
double chi_projective(const DensityMatrix& rho, const ChiOptions& opts = {});

// Serial reference for the grid scan; kept for equivalence tests and the
// kernel benchmark.
double chi_projective_serial(const DensityMatrix& rho, ChiOptions opts = {});

struct PovmOptions {
    std::size_t outcomes = 3;  // POVM elements including the closure one; 2 to 4
    std::size_t trials = 200;  // random restarts
    std::uint64_t seed = kDefaultOptimizerSeed;
    bool parallel = true;
};

// Heuristic search over `outcomes`-element POVMs on A: random PSD elements
// with the closure element completing the set (candidates whose closure
// fails positivity are resampled), each polished by a small hill climb.
// The refined projective pair is seeded as one candidate, so the result
// never lands below chi_projective. Best value found; no optimality claim.
double chi_povm_search(const DensityMatrix& rho, const PovmOptions& opts = {});

// psi = I(A:B) - REE: total correlations minus the entanglement part.
// Values within opts.tol below zero are optimizer noise and clip to 0.
double psi(const DensityMatrix& rho, const ReeOptions& opts = {});

// Mutual-information content of the closest separable state itself.
double c1(const DensityMatrix& rho, const ReeOptions& opts = {});

// Distance from the closest separable state to the product of the
// *input's* marginals. Coincides with c1 up to second order.
double c2(const DensityMatrix& rho, const ReeOptions& opts = {});

struct MeasureOptions {
    ReeOptions ree;
    ChiOptions chi;
    std::size_t povm_trials = 0;  // 0 skips the POVM search
    std::size_t povm_outcomes = 3;
};

struct MeasureReport {
    double mutual_info = 0.0;
    double ree_value = 0.0;
    double ree_gap = 0.0;
    std::size_t ree_iterations = 0;
    bool ree_converged = false;
    double psi = 0.0;      // clipped at zero
    double psi_raw = 0.0;  // before clipping
    double c1 = 0.0;
    double c2 = 0.0;
    std::optional<double> chi_projective;  // absent unless d_a == 2
    std::optional<double> chi_povm;        // absent unless requested (and d_a == 2)
    double negativity = 0.0;
    bool ppt = false;
};

// Computes the full comparison for one state, sharing a single
// closest-separable-state solve between ree, psi, c1 and c2.
MeasureReport measure_all(const DensityMatrix& rho, const MeasureOptions& opts = {});

}  // namespace qcorr
