// eig.hpp
// Hermitian eigendecomposition via cyclic Jacobi with complex rotations.
//
// The matrices this library diagonalizes are 4x4 in the common case and
// 16x16 at worst, far below the size where LAPACK pays off, and the inner
// optimization loops need tight control over allocation. A two-sided
// Jacobi sweep is simple, allocation-free in the hot path, and delivers
// eigenvectors orthonormal to machine precision, which the relative
// entropy gradients depend on.
//
// Each rotation zeroes one off-diagonal pair (p,q): the complex phase of
// a[p][q] is absorbed into the rotation so the remaining 2x2 problem is
// real symmetric, then the classic Rutishauser tangent formula picks the
// inner rotation angle. Sweeps repeat until the off-diagonal Frobenius
// mass falls below 1e-14 relative to the matrix norm (at most 100 sweeps,
// which tiny matrices never approach).
#pragma once

#include <cstddef>

#include "qcorr/matrix.hpp"

namespace qcorr {

struct HermitianSpectrum {
    std::vector<double> eigenvalues;  // sorted descending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Throws InvalidStateError if m is not square or its hermiticity defect
// exceeds hermitian_tol.
HermitianSpectrum hermitian_eig(const ComplexMatrix& m, double hermitian_tol = 1e-10);

// Base-2 logarithm of a positive semidefinite matrix given its spectrum.
// Eigenvalues at or below support_tol are treated as exact zeros and their
// eigenspace is skipped, so the result is log2 restricted to the support.
ComplexMatrix matrix_log2(const HermitianSpectrum& spec, double support_tol = 1e-12);

// Allocation-free core used by the optimizer hot loops. a is an n*n
// row-major Hermitian matrix, destroyed in place; on return evals holds the
// eigenvalues sorted descending and vecs the matching orthonormal columns
// (n*n row-major). Buffers must be caller-allocated. Not length-checked.
void jacobi_hermitian(std::size_t n, cdouble* a, double* evals, cdouble* vecs);

}  // namespace qcorr
