#include "qcorr/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double kOffDiagTol = 1e-14;  // relative to the Frobenius norm
constexpr int kMaxSweeps = 100;

double offdiag_norm(std::size_t n, const cdouble* a) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a[i * n + j]);
    return std::sqrt(2.0 * s);
}

}  // namespace

void jacobi_hermitian(std::size_t n, cdouble* a, double* evals, cdouble* vecs) {
    for (std::size_t k = 0; k < n * n; ++k) vecs[k] = 0.0;
    for (std::size_t i = 0; i < n; ++i) vecs[i * n + i] = 1.0;

    double scale = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) scale += std::norm(a[k]);
    scale = std::sqrt(scale);
    if (scale == 0.0) {
        for (std::size_t i = 0; i < n; ++i) evals[i] = 0.0;
        return;
    }

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_norm(n, a) <= kOffDiagTol * scale) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cdouble apq = a[p * n + q];
                double g = std::abs(apq);
                if (g <= 1e-300) {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                double app = a[p * n + p].real();
                double aqq = a[q * n + q].real();
                cdouble ph = apq / g;

                double tau = (aqq - app) / (2.0 * g);
                double t;
                if (std::abs(tau) > 1e150) {
                    t = 0.5 / tau;  // asymptotic root, avoids tau*tau overflow
                } else {
                    double sgn = (tau >= 0.0) ? 1.0 : -1.0;
                    t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;

                // A <- A * R with R mixing columns p and q; the phase of apq
                // rides along on both mixed columns so the 2x2 core is real.
                for (std::size_t i = 0; i < n; ++i) {
                    cdouble aip = a[i * n + p];
                    cdouble aiq = a[i * n + q];
                    a[i * n + p] = c * ph * aip - s * aiq;
                    a[i * n + q] = s * ph * aip + c * aiq;
                }
                // A <- R^dagger * A
                cdouble phc = std::conj(ph);
                for (std::size_t j = 0; j < n; ++j) {
                    cdouble apj = a[p * n + j];
                    cdouble aqj = a[q * n + j];
                    a[p * n + j] = c * phc * apj - s * aqj;
                    a[q * n + j] = s * phc * apj + c * aqj;
                }
                // V <- V * R
                for (std::size_t i = 0; i < n; ++i) {
                    cdouble vip = vecs[i * n + p];
                    cdouble viq = vecs[i * n + q];
                    vecs[i * n + p] = c * ph * vip - s * viq;
                    vecs[i * n + q] = s * ph * vip + c * viq;
                }

                // The rotation annihilates (p,q) analytically; writing the
                // exact values keeps rounding residue out of later pivots.
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                a[p * n + p] = app * c * c - 2.0 * g * c * s + aqq * s * s;
                a[q * n + q] = app * s * s + 2.0 * g * c * s + aqq * c * c;
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) evals[i] = a[i * n + i].real();

    // Sort descending, carrying eigenvector columns along.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return evals[x] > evals[y]; });

    std::vector<double> ev(evals, evals + n);
    std::vector<cdouble> vv(vecs, vecs + n * n);
    for (std::size_t k = 0; k < n; ++k) {
        evals[k] = ev[order[k]];
        for (std::size_t i = 0; i < n; ++i) vecs[i * n + k] = vv[i * n + order[k]];
    }
}

HermitianSpectrum hermitian_eig(const ComplexMatrix& m, double hermitian_tol) {
    if (!m.square()) throw InvalidStateError("hermitian_eig: matrix is not square");
    if (!m.all_finite()) throw InvalidStateError("hermitian_eig: matrix has non-finite entries");
    double defect = m.hermiticity_defect();
    if (defect > hermitian_tol)
        throw InvalidStateError("hermitian_eig: matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");

    std::size_t n = m.rows();
    ComplexMatrix work = m;
    work.hermitize();  // symmetrize away the sub-tolerance defect

    HermitianSpectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    jacobi_hermitian(n, work.data(), out.eigenvalues.data(), out.eigenvectors.data());
    return out;
}

ComplexMatrix matrix_log2(const HermitianSpectrum& spec, double support_tol) {
    std::size_t n = spec.eigenvalues.size();
    const ComplexMatrix& v = spec.eigenvectors;
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double lam = spec.eigenvalues[k];
        if (lam <= support_tol) {
            if (lam < -1e-10)
                throw InvalidStateError("matrix_log2: matrix is not positive semidefinite");
            continue;  // outside the support, contributes nothing
        }
        double f = std::log2(lam);
        for (std::size_t i = 0; i < n; ++i) {
            cdouble vik = v(i, k);
            if (vik == cdouble{}) continue;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += f * vik * std::conj(v(j, k));
        }
    }
    out.hermitize();
    return out;
}

}  // namespace qcorr
