// families.hpp
// Named state constructors: the noisy-singlet family swept by the CLI,
// its pure and classical endpoints, and seeded random samplers used by
// the property tests.
#pragma once

#include <cstdint>
#include <utility>

#include "qcorr/state.hpp"

namespace qcorr {

struct WernerParam {
    double gamma = 0.0;  // mixing weight in [0, 1]
};

struct RandomSeed {
    std::uint64_t value = 0;
};

// (1-gamma)/4 * I + gamma * |phi+><phi+| on two qubits, with
// |phi+> = (|00> + |11>)/sqrt(2). Throws for gamma outside [0, 1].
DensityMatrix werner_state(WernerParam p);

// The gamma = 1 endpoint: the maximally entangled two-qubit state.
DensityMatrix bell_state();

// (|00><00| + |11><11|)/2: perfectly correlated in the computational
// basis, zero entanglement. One bit of purely classical correlation.
DensityMatrix classically_correlated();

// G G^dagger normalized, with G a dim.total() x rank complex Gaussian
// matrix. rank must lie in [1, dim.total()].
DensityMatrix random_density(BipartiteDims dims, std::size_t rank, RandomSeed seed);

// |a><a| (x) |b><b| with a, b independent Haar-random unit vectors.
DensityMatrix random_pure_product(BipartiteDims dims, RandomSeed seed);

// Independent Haar-random unitaries on the two factors, drawn from one
// stream (Gaussian matrix, Gram-Schmidt with positive diagonal).
std::pair<ComplexMatrix, ComplexMatrix> random_local_unitary(BipartiteDims dims, RandomSeed seed);

}  // namespace qcorr
