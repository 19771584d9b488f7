// oracles.hpp
// Independent reference computations for the test suite. Everything here
// deliberately avoids the library's eigensolver and optimizers: eigenvalues
// come from characteristic polynomials or closed 2x2 formulas, optima from
// brute-force grids with local zoom. Slow and simple on purpose.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qcorr/matrix.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/state.hpp"

namespace oracles {

using qcorr::cdouble;
using qcorr::ComplexMatrix;

inline double binary_entropy(double x) {
    auto xlx = [](double t) { return t > 0.0 ? t * std::log2(t) : 0.0; };
    return -xlx(x) - xlx(1.0 - x);
}

// Closed forms for the noisy-singlet family, from its known spectrum
// {(1+3g)/4, (1-g)/4 x3} and maximally mixed marginals.
inline double werner_entropy(double g) {
    auto xlx = [](double t) { return t > 0.0 ? t * std::log2(t) : 0.0; };
    return -xlx((1.0 + 3.0 * g) / 4.0) - 3.0 * xlx((1.0 - g) / 4.0);
}

inline double werner_mutual_info(double g) { return 2.0 - werner_entropy(g); }

inline double werner_negativity(double g) { return std::max(0.0, (3.0 * g - 1.0) / 2.0); }

inline double werner_ree(double g) {
    if (g <= 1.0 / 3.0) return 0.0;
    return 1.0 - binary_entropy((1.0 + 3.0 * g) / 4.0);
}

inline double werner_chi(double g) { return 1.0 - binary_entropy((1.0 + g) / 2.0); }

// Coefficients of det(xI - A) for Hermitian A via Newton's identities on
// the power sums tr(A^k). Returned as c[0..n], c[n] = 1 (monic).
inline std::vector<double> char_poly(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    ComplexMatrix pw = ComplexMatrix::identity(n);
    std::vector<double> p(n + 1, 0.0);  // p[k] = tr(A^k)
    for (std::size_t k = 1; k <= n; ++k) {
        pw = pw * a;
        p[k] = pw.trace().real();
    }
    std::vector<double> e(n + 1, 0.0);  // elementary symmetric functions
    e[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= k; ++i)
            acc += (i % 2 == 1 ? 1.0 : -1.0) * e[k - i] * p[i];
        e[k] = acc / static_cast<double>(k);
    }
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
        c[n - k] = (k % 2 == 1 ? -1.0 : 1.0) * e[k];
    return c;
}

inline double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

// All real roots of the characteristic polynomial, found by sampling the
// Gershgorin interval and bisecting every sign change. Reliable for the
// random matrices the tests feed it, where eigenvalues are distinct.
inline std::vector<double> char_poly_eigenvalues(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) radius += std::abs(a(i, j));
        lo = std::min(lo, a(i, i).real() - radius);
        hi = std::max(hi, a(i, i).real() + radius);
    }
    lo -= 1e-9;
    hi += 1e-9;

    const std::vector<double> c = char_poly(a);
    const int samples = 200000;
    std::vector<double> roots;
    double x_prev = lo, f_prev = poly_eval(c, lo);
    for (int s = 1; s <= samples; ++s) {
        double x = lo + (hi - lo) * s / samples;
        double f = poly_eval(c, x);
        if ((f_prev < 0.0) != (f < 0.0)) {
            double xl = x_prev, xr = x, fl = f_prev;
            for (int it = 0; it < 80; ++it) {
                double xm = 0.5 * (xl + xr);
                double fm = poly_eval(c, xm);
                if ((fl < 0.0) != (fm < 0.0))
                    xr = xm;
                else
                    xl = xm, fl = fm;
            }
            roots.push_back(0.5 * (xl + xr));
        }
        x_prev = x;
        f_prev = f;
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

// Dominant eigenvalue by plain power iteration on A shifted positive.
inline double power_iteration_top(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    const double shift = a.frobenius_norm() + 1.0;
    std::vector<cdouble> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = cdouble(1.0 + static_cast<double>(i), 0.37 * static_cast<double>(i + 1));
    qcorr::vec_normalize(v);
    std::vector<cdouble> w(n);
    for (int it = 0; it < 2000; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            cdouble acc = shift * v[i];
            for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * v[j];
            w[i] = acc;
        }
        qcorr::vec_normalize(w);
        std::swap(v, w);
    }
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rayleigh += (std::conj(v[i]) * a(i, j) * v[j]).real();
    return rayleigh;
}

// Random unitary built by Gram-Schmidt over Gaussian columns; test-local so
// eigenvector assertions never lean on the code they check.
inline ComplexMatrix gs_unitary(std::size_t n, std::uint64_t seed) {
    qcorr::Xoshiro256pp rng(seed);
    std::vector<std::vector<cdouble>> cols(n, std::vector<cdouble>(n));
    for (auto& col : cols)
        for (auto& x : col) x = rng.complex_gaussian();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            cdouble ov = 0.0;
            for (std::size_t i = 0; i < n; ++i) ov += std::conj(cols[j][i]) * cols[k][i];
            for (std::size_t i = 0; i < n; ++i) cols[k][i] -= ov * cols[j][i];
        }
        qcorr::vec_normalize(cols[k]);
    }
    ComplexMatrix u(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) u(i, k) = cols[k][i];
    return u;
}

// Entropy in bits of a Hermitian PSD 2x2 given entries; eigenvalues from
// the closed quadratic formula.
inline double entropy_2x2(cdouble a00, cdouble a01, cdouble a11) {
    double mean = 0.5 * (a00.real() + a11.real());
    double rad = std::sqrt(0.25 * (a00.real() - a11.real()) * (a00.real() - a11.real()) +
                           std::norm(a01));
    double l1 = mean + rad, l2 = mean - rad;
    auto xlx = [](double t) { return t > 1e-15 ? t * std::log2(t) : 0.0; };
    return -xlx(l1) - xlx(l2);
}

inline double top_eigenvalue_2x2(cdouble a00, cdouble a01, cdouble a11) {
    double mean = 0.5 * (a00.real() + a11.real());
    double rad = std::sqrt(0.25 * (a00.real() - a11.real()) * (a00.real() - a11.real()) +
                           std::norm(a01));
    return mean + rad;
}

// Information a projector pair along (theta, phi) on qubit A reveals about
// B, computed from scratch on the raw 4x4 matrix.
inline double holevo_projective(const ComplexMatrix& rho, double theta, double phi) {
    const cdouble e_iphi = std::polar(1.0, phi);
    const cdouble u[2] = {std::cos(theta / 2.0), e_iphi * std::sin(theta / 2.0)};
    const cdouble v[2] = {std::sin(theta / 2.0), -e_iphi * std::cos(theta / 2.0)};

    // B marginal.
    cdouble b00 = rho(0, 0) + rho(2, 2), b01 = rho(0, 1) + rho(2, 3), b11 = rho(1, 1) + rho(3, 3);
    double s_b = entropy_2x2(b00, b01, b11);

    double avg = 0.0;
    for (const cdouble* dir : {u, v}) {
        cdouble x[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
        for (int a1 = 0; a1 < 2; ++a1)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b1 = 0; b1 < 2; ++b1)
                    for (int b2 = 0; b2 < 2; ++b2)
                        x[b1][b2] += std::conj(dir[a1]) * rho(a1 * 2 + b1, a2 * 2 + b2) * dir[a2];
        double prob = x[0][0].real() + x[1][1].real();
        if (prob < 1e-12) continue;
        avg += prob * entropy_2x2(x[0][0] / prob, x[0][1] / prob, x[1][1] / prob);
    }
    return s_b - avg;
}

// Brute-force optimum of holevo_projective: 1-degree grid over the Bloch
// hemisphere, then a shrinking compass walk from the best grid point.
inline double chi_grid_zoom(const ComplexMatrix& rho) {
    const double deg = M_PI / 180.0;
    double best = 0.0, bt = 0.0, bp = 0.0;
    for (int ti = 0; ti <= 90; ++ti) {
        for (int pi_ = 0; pi_ < 360; ++pi_) {
            double val = holevo_projective(rho, ti * deg, pi_ * deg);
            if (val > best) {
                best = val;
                bt = ti * deg;
                bp = pi_ * deg;
            }
        }
    }
    double step = deg;
    while (step > 1e-8) {
        bool moved = false;
        const double cand[4][2] = {{bt + step, bp}, {bt - step, bp}, {bt, bp + step}, {bt, bp - step}};
        for (const auto& c : cand) {
            double val = holevo_projective(rho, c[0], c[1]);
            if (val > best) {
                best = val;
                bt = c[0];
                bp = c[1];
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return best;
}

// Brute-force product maximizer of <a(x)b|g|a(x)b> for 2x2-partite g: grid
// the A-side Bloch angles, solve the B side in closed form, zoom locally.
inline double product_max_grid_zoom(const ComplexMatrix& g) {
    auto value_at = [&](double theta, double phi) {
        const cdouble a[2] = {std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0)};
        cdouble k[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
        for (int a1 = 0; a1 < 2; ++a1)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b1 = 0; b1 < 2; ++b1)
                    for (int b2 = 0; b2 < 2; ++b2)
                        k[b1][b2] += std::conj(a[a1]) * g(a1 * 2 + b1, a2 * 2 + b2) * a[a2];
        return top_eigenvalue_2x2(k[0][0], k[0][1], k[1][1]);
    };

    const double deg = M_PI / 180.0;
    double best = -1e300, bt = 0.0, bp = 0.0;
    for (int ti = 0; ti <= 180; ++ti) {
        for (int pi_ = 0; pi_ < 360; ++pi_) {
            double val = value_at(ti * deg, pi_ * deg);
            if (val > best) {
                best = val;
                bt = ti * deg;
                bp = pi_ * deg;
            }
        }
    }
    double step = deg;
    while (step > 1e-8) {
        bool moved = false;
        const double cand[4][2] = {{bt + step, bp}, {bt - step, bp}, {bt, bp + step}, {bt, bp - step}};
        for (const auto& c : cand) {
            double val = value_at(c[0], c[1]);
            if (val > best) {
                best = val;
                bt = c[0];
                bp = c[1];
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return best;
}

inline double frob_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) acc += std::norm(a(i, j) - b(i, j));
    return std::sqrt(acc);
}

inline ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    qcorr::Xoshiro256pp rng(seed);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.complex_gaussian();
    m.hermitize();
    return m;
}

}  // namespace oracles
