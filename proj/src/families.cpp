#include "qcorr/families.hpp"

#include <cmath>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

namespace {

std::vector<cdouble> random_unit_vector(std::size_t d, Xoshiro256pp& rng) {
    std::vector<cdouble> v(d);
    for (auto& x : v) x = rng.complex_gaussian();
    vec_normalize(v);
    return v;
}

// Haar-distributed unitary: Gaussian matrix, then modified Gram-Schmidt.
// The R factor this produces has a positive real diagonal, which is
// exactly the phase convention that makes the distribution uniform.
ComplexMatrix haar_unitary(std::size_t d, Xoshiro256pp& rng) {
    ComplexMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();

    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cdouble proj = 0.0;
            for (std::size_t i = 0; i < d; ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (std::size_t i = 0; i < d; ++i) g(i, j) -= proj * g(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < d; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < d; ++i) g(i, j) /= nrm;
    }
    return g;
}

}  // namespace

DensityMatrix werner_state(WernerParam p) {
    if (!(p.gamma >= 0.0 && p.gamma <= 1.0))
        throw InvalidParameterError("werner_state: gamma must lie in [0, 1], got " +
                                    std::to_string(p.gamma));

    ComplexMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = (1.0 - p.gamma) / 4.0;

    // |phi+><phi+| touches the four corners of the |00>,|11> block.
    const double h = p.gamma / 2.0;
    m(0, 0) += h;
    m(0, 3) += h;
    m(3, 0) += h;
    m(3, 3) += h;
    return DensityMatrix::unchecked(std::move(m), {2, 2});
}

DensityMatrix bell_state() { return werner_state({1.0}); }

DensityMatrix classically_correlated() {
    ComplexMatrix m(4, 4);
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    return DensityMatrix::unchecked(std::move(m), {2, 2});
}

DensityMatrix random_density(BipartiteDims dims, std::size_t rank, RandomSeed seed) {
    const std::size_t n = dims.total();
    if (rank < 1 || rank > n)
        throw InvalidParameterError("random_density: rank must lie in [1, " +
                                    std::to_string(n) + "], got " + std::to_string(rank));

    Xoshiro256pp rng(seed.value);
    ComplexMatrix g(n, rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rank; ++j) g(i, j) = rng.complex_gaussian();

    ComplexMatrix m = g * g.adjoint();
    m *= cdouble(1.0 / m.trace().real(), 0.0);
    return DensityMatrix::unchecked(std::move(m), dims);
}

DensityMatrix random_pure_product(BipartiteDims dims, RandomSeed seed) {
    Xoshiro256pp rng(seed.value);
    auto a = random_unit_vector(dims.d_a, rng);
    auto b = random_unit_vector(dims.d_b, rng);
    ComplexMatrix m = kron(outer(a, a), outer(b, b));
    return DensityMatrix::unchecked(std::move(m), dims);
}

std::pair<ComplexMatrix, ComplexMatrix> random_local_unitary(BipartiteDims dims,
                                                             RandomSeed seed) {
    Xoshiro256pp rng(seed.value);
    ComplexMatrix ua = haar_unitary(dims.d_a, rng);
    ComplexMatrix ub = haar_unitary(dims.d_b, rng);
    return {std::move(ua), std::move(ub)};
}

}  // namespace qcorr
