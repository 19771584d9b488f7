#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qcorr/entanglement.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/families.hpp"
#include "qcorr/state.hpp"

using namespace qcorr;

namespace {
const BipartiteDims kTwoQubits{2, 2};
}

TEST_CASE("werner endpoints and spectrum") {
    CHECK(oracles::frob_diff(werner_state({0.0}).matrix(), 0.25 * ComplexMatrix::identity(4)) <
          1e-15);
    CHECK(oracles::frob_diff(werner_state({1.0}).matrix(), bell_state().matrix()) < 1e-15);

    HermitianSpectrum s = hermitian_eig(werner_state({0.5}).matrix());
    CHECK(s.eigenvalues[0] == doctest::Approx(0.625).epsilon(1e-12));
    for (std::size_t k = 1; k < 4; ++k)
        CHECK(s.eigenvalues[k] == doctest::Approx(0.125).epsilon(1e-12));

    CHECK_THROWS_AS(werner_state({-0.1}), InvalidParameterError);
    CHECK_THROWS_AS(werner_state({1.1}), InvalidParameterError);
}

TEST_CASE("bell state is pure and maximally entangled") {
    DensityMatrix bell = bell_state();
    CHECK(std::abs(bell.matrix().trace().real() - 1.0) < 1e-15);
    CHECK(von_neumann_entropy(bell).bits == doctest::Approx(0.0).epsilon(1e-12));
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
        DensityMatrix marg = partial_trace(bell, s);
        CHECK(oracles::frob_diff(marg.matrix(), 0.5 * ComplexMatrix::identity(2)) < 1e-15);
    }
}

TEST_CASE("classically correlated state carries exactly one classical bit") {
    DensityMatrix cc = classically_correlated();
    CHECK(mutual_information(cc).bits == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(is_ppt(cc));
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
        DensityMatrix marg = partial_trace(cc, s);
        CHECK(oracles::frob_diff(marg.matrix(), 0.5 * ComplexMatrix::identity(2)) < 1e-15);
    }
}

TEST_CASE("random density states honor rank and seed") {
    DensityMatrix pure = random_density(kTwoQubits, 1, RandomSeed{31});
    CHECK(von_neumann_entropy(pure).bits == doctest::Approx(0.0).epsilon(1e-9));

    DensityMatrix full = random_density(kTwoQubits, 4, RandomSeed{32});
    HermitianSpectrum s = hermitian_eig(full.matrix());
    for (double lam : s.eigenvalues) CHECK(lam > 1e-6);

    DensityMatrix again = random_density(kTwoQubits, 4, RandomSeed{32});
    CHECK(oracles::frob_diff(full.matrix(), again.matrix()) == 0.0);

    CHECK_THROWS_AS(random_density(kTwoQubits, 0, RandomSeed{1}), InvalidParameterError);
    CHECK_THROWS_AS(random_density(kTwoQubits, 5, RandomSeed{1}), InvalidParameterError);
}

TEST_CASE("random pure products are separable rank-one states") {
    for (std::uint64_t t = 0; t < 10; ++t) {
        DensityMatrix prod = random_pure_product(kTwoQubits, RandomSeed{40 + t});
        CHECK(negativity(prod) < 1e-12);
        CHECK(std::abs(mutual_information(prod).bits) < 1e-10);
        HermitianSpectrum s = hermitian_eig(prod.matrix());
        CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("random local unitaries are unitary and deterministic") {
    auto [ua, ub] = random_local_unitary({2, 3}, RandomSeed{50});
    CHECK(oracles::frob_diff(ua.adjoint() * ua, ComplexMatrix::identity(2)) < 1e-10);
    CHECK(oracles::frob_diff(ub.adjoint() * ub, ComplexMatrix::identity(3)) < 1e-10);

    auto [ua2, ub2] = random_local_unitary({2, 3}, RandomSeed{50});
    CHECK(oracles::frob_diff(ua, ua2) == 0.0);
    CHECK(oracles::frob_diff(ub, ub2) == 0.0);
}

TEST_CASE("werner family is swap invariant with maximally mixed marginals") {
    for (int k = 0; k <= 100; ++k) {
        double gamma = k / 100.0;
        DensityMatrix w = werner_state({gamma});
        CHECK(oracles::frob_diff(swap_subsystems(w).matrix(), w.matrix()) < 1e-15);
        CHECK(oracles::frob_diff(partial_trace(w, Subsystem::B).matrix(),
                                 0.5 * ComplexMatrix::identity(2)) < 1e-15);
    }
}

TEST_CASE("generators produce states that revalidate cleanly") {
    for (std::uint64_t t = 0; t < 20; ++t) {
        DensityMatrix r = random_density(kTwoQubits, 1 + t % 4, RandomSeed{60 + t});
        CHECK_NOTHROW(validate(r.matrix(), r.dims()));
        HermitianSpectrum s = hermitian_eig(r.matrix());
        CHECK(s.eigenvalues.back() > -1e-12);
    }
}
