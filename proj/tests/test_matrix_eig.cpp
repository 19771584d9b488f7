#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "qcorr/eig.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/rng.hpp"

using namespace qcorr;

namespace {

ComplexMatrix diag(std::initializer_list<double> d) {
    ComplexMatrix m(d.size(), d.size());
    std::size_t i = 0;
    for (double v : d) m(i, i) = v, ++i;
    return m;
}

}  // namespace

TEST_CASE("identity eigendecomposition") {
    HermitianSpectrum s = hermitian_eig(ComplexMatrix::identity(4));
    for (double lam : s.eigenvalues) CHECK(lam == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("diagonal matrix keeps its entries as eigenvalues") {
    HermitianSpectrum s = hermitian_eig(diag({3.0, 1.0, -2.0}));
    CHECK(s.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.eigenvalues[2] == doctest::Approx(-2.0).epsilon(1e-12));
    // Eigenvectors of a diagonal matrix are basis vectors up to phase.
    for (std::size_t k = 0; k < 3; ++k) {
        double off = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            if ((k == 0 && i != 0) || (k == 1 && i != 1) || (k == 2 && i != 2))
                off += std::norm(s.eigenvectors(i, k));
        CHECK(off < 1e-20);
    }
}

TEST_CASE("random eigenvalues match characteristic polynomial roots") {
    for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
        ComplexMatrix m = oracles::random_hermitian(4, seed);
        HermitianSpectrum s = hermitian_eig(m);
        std::vector<double> roots = oracles::char_poly_eigenvalues(m);
        REQUIRE(roots.size() == 4);
        for (std::size_t k = 0; k < 4; ++k)
            CHECK(s.eigenvalues[k] == doctest::Approx(roots[k]).epsilon(1e-8));
    }
}

TEST_CASE("top eigenvalue agrees with power iteration") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        ComplexMatrix m = oracles::random_hermitian(4, seed);
        HermitianSpectrum s = hermitian_eig(m);
        CHECK(s.eigenvalues[0] == doctest::Approx(oracles::power_iteration_top(m)).epsilon(1e-9));
    }
}

TEST_CASE("constructed spectrum is recovered") {
    // Build V diag(5,2,-1,-3) V' from an independently orthonormalized V and
    // check the solver returns exactly that spectrum and reconstruction.
    const double lam[4] = {5.0, 2.0, -1.0, -3.0};
    ComplexMatrix v = oracles::gs_unitary(4, 99);
    ComplexMatrix m(4, 4);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) += lam[k] * v(i, k) * std::conj(v(j, k));
    m.hermitize();

    HermitianSpectrum s = hermitian_eig(m);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(s.eigenvalues[k] == doctest::Approx(lam[k]).epsilon(1e-10));
}

TEST_CASE("reconstruction and orthonormality bounds") {
    double worst_rebuild = 0.0, worst_ortho = 0.0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        std::size_t n = 2 + (t % 3);
        ComplexMatrix m = oracles::random_hermitian(n, 3000 + t);
        HermitianSpectrum s = hermitian_eig(m);

        ComplexMatrix rebuilt(n, n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    rebuilt(i, j) += s.eigenvalues[k] * s.eigenvectors(i, k) *
                                     std::conj(s.eigenvectors(j, k));
        double scale = std::max(1.0, m.frobenius_norm());
        worst_rebuild = std::max(worst_rebuild, oracles::frob_diff(rebuilt, m) / scale);

        ComplexMatrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
        worst_ortho =
            std::max(worst_ortho, oracles::frob_diff(gram, ComplexMatrix::identity(n)));
    }
    CHECK(worst_rebuild <= 1e-10);
    CHECK(worst_ortho <= 1e-10);
}

TEST_CASE("non-hermitian and non-square inputs are rejected") {
    ComplexMatrix bad(2, 2);
    bad(0, 1) = 1.0;  // asymmetric
    CHECK_THROWS_AS(hermitian_eig(bad), InvalidStateError);
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), InvalidStateError);
}

TEST_CASE("matrix_log2 on simple spectra") {
    HermitianSpectrum quarter = hermitian_eig(0.25 * ComplexMatrix::identity(4));
    ComplexMatrix l = matrix_log2(quarter);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(l(i, j).real() == doctest::Approx(i == j ? -2.0 : 0.0).epsilon(1e-12));

    // Zero eigenvalues contribute nothing.
    ComplexMatrix z = matrix_log2(hermitian_eig(diag({1.0, 0.0})));
    CHECK(z.frobenius_norm() < 1e-12);

    ComplexMatrix d = matrix_log2(hermitian_eig(diag({0.5, 0.25, 0.25, 0.0})));
    CHECK(d(0, 0).real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(d(1, 1).real() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(d(2, 2).real() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(d(3, 3).real() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("trace of rho log2 rho reproduces the eigenvalue entropy") {
    for (std::uint64_t seed : {41u, 42u, 43u, 44u}) {
        // A random density-like PSD matrix with unit trace.
        ComplexMatrix g = oracles::random_hermitian(4, seed);
        ComplexMatrix psd = g * g.adjoint();
        psd *= cdouble(1.0 / psd.trace().real(), 0.0);
        psd.hermitize();

        HermitianSpectrum s = hermitian_eig(psd);
        ComplexMatrix lg = matrix_log2(s);
        ComplexMatrix prod = psd * lg;
        double from_trace = -prod.trace().real();

        double from_evals = 0.0;
        for (double lam : s.eigenvalues)
            if (lam > 1e-12) from_evals -= lam * std::log2(lam);
        CHECK(from_trace == doctest::Approx(from_evals).epsilon(1e-9));
    }
}

TEST_CASE("kron basics and associativity") {
    ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(oracles::frob_diff(kron(i2, i2), ComplexMatrix::identity(4)) == 0.0);

    ComplexMatrix p = diag({1.0, 0.0});
    CHECK(oracles::frob_diff(kron(p, p), diag({1.0, 0.0, 0.0, 0.0})) == 0.0);

    ComplexMatrix half = 0.5 * ComplexMatrix::identity(2);
    CHECK(oracles::frob_diff(kron(p, half), diag({0.5, 0.5, 0.0, 0.0})) == 0.0);

    // Integer matrices associate exactly.
    ComplexMatrix a(2, 2), b(2, 2), c(2, 2);
    a(0, 0) = 1, a(0, 1) = 2, a(1, 0) = 3, a(1, 1) = 4;
    b(0, 0) = 5, b(0, 1) = 6, b(1, 0) = 7, b(1, 1) = 8;
    c(0, 0) = 9, c(0, 1) = 1, c(1, 0) = 2, c(1, 1) = 3;
    CHECK(oracles::frob_diff(kron(kron(a, b), c), kron(a, kron(b, c))) == 0.0);
}

TEST_CASE("jacobi raw interface matches the checked one") {
    ComplexMatrix m = oracles::random_hermitian(4, 77);
    HermitianSpectrum s = hermitian_eig(m);

    std::vector<cdouble> a(m.data(), m.data() + 16), vecs(16);
    std::vector<double> evals(4);
    jacobi_hermitian(4, a.data(), evals.data(), vecs.data());
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(evals[k] == doctest::Approx(s.eigenvalues[k]).epsilon(1e-12));
}
