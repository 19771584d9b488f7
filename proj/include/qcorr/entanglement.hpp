// entanglement.hpp
// Entanglement detection (positive partial transpose, negativity) and the
// relative entropy of entanglement, computed by conditional-gradient
// minimization of S(rho || sigma) over the separable states.
#pragma once

#include <cstdint>

#include "qcorr/families.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

// Partial-transpose eigenvalues above this (slightly negative) floor still
// count as nonnegative.
constexpr double kPptTol = 1e-10;

constexpr std::uint64_t kDefaultOptimizerSeed = 0x6a09e667f3bcc909ULL;

// Peres criterion: no partial-transpose eigenvalue below -kPptTol. Exact
// separability test for 2x2 and 2x3 systems, one-sided beyond that.
bool is_ppt(const DensityMatrix& rho);

// Twice the total weight of negative partial-transpose eigenvalues.
// Zero on PPT states; 1 on a maximally entangled pair of qubits.
double negativity(const DensityMatrix& rho);

struct ProductVector {
    std::vector<cdouble> a;
    std::vector<cdouble> b;
    double value = 0.0;  // <a(x)b| g |a(x)b> attained
};

// Linear maximization oracle over product states: finds the product vector
// maximizing <a(x)b|g|a(x)b> for Hermitian g by alternating top-eigenvector
// updates (each factor's optimum given the other is an eigenproblem).
// Runs `restarts` random starts plus the optional warm start, keeps the
// first candidate within 1e-12 of the best value seen.
ProductVector product_lmo(const ComplexMatrix& g, BipartiteDims dims, std::size_t restarts,
                          RandomSeed seed, const ProductVector* warm_start = nullptr);

struct ReeOptions {
    double tol = 1e-6;            // duality-gap convergence target, in bits
    std::size_t max_iters = 5000;
    std::uint64_t seed = kDefaultOptimizerSeed;
    std::size_t lmo_restarts = 20;
};

struct ReeResult {
    double value = 0.0;      // S(rho || sigma_star) in bits
    double gap = 0.0;        // duality gap at exit; value - gap lower-bounds the optimum
    std::size_t iterations = 0;
    bool converged = false;  // gap <= tol reached within max_iters
    DensityMatrix sigma_star;
};

// Frank-Wolfe over the convex hull of product states, started from the
// maximally mixed state. Each iteration eigendecomposes sigma, forms the
// gradient of S(rho || .) by divided differences of log2 on sigma's
// spectrum, asks the product oracle for the best extreme point, and takes
// an exact (golden-section) line-search step toward it. The duality gap
// certifies the result: the true minimum lies within [value - gap, value].
// For 2x2 and 2x3 systems the feasible set is exactly the separable states;
// in higher dimensions the returned value is an upper bound on the
// entanglement whose quality the gap still certifies.
ReeResult ree(const DensityMatrix& rho, const ReeOptions& opts = {});

// The minimizer sigma_star alone, for callers that only want the state.
DensityMatrix closest_separable_state(const DensityMatrix& rho, const ReeOptions& opts = {});

}  // namespace qcorr
