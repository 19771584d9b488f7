#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/families.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/state.hpp"

using namespace qcorr;

namespace {

const BipartiteDims kTwoQubits{2, 2};

DensityMatrix random_state(std::uint64_t seed, std::size_t rank = 4) {
    return random_density(kTwoQubits, rank, RandomSeed{seed});
}

}  // namespace

TEST_CASE("validate accepts proper states and rejects broken ones") {
    CHECK_NOTHROW(validate(0.25 * ComplexMatrix::identity(4), kTwoQubits));

    ComplexMatrix cc(4, 4);
    cc(0, 0) = 0.5;
    cc(3, 3) = 0.5;
    CHECK_NOTHROW(validate(cc, kTwoQubits));

    CHECK_THROWS_AS(validate(ComplexMatrix::identity(2), BipartiteDims{1, 2}),
                    InvalidStateError);  // trace 2

    ComplexMatrix skew(4, 4);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(validate(skew, kTwoQubits), InvalidStateError);

    ComplexMatrix neg(4, 4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(validate(neg, kTwoQubits), InvalidStateError);

    CHECK_THROWS_AS(validate(ComplexMatrix::identity(4), BipartiteDims{2, 3}), DimensionError);
}

TEST_CASE("partial traces of named states") {
    DensityMatrix half_a = partial_trace(bell_state(), Subsystem::B);
    CHECK(half_a.dim() == 2);
    CHECK(half_a.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(half_a.matrix()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(half_a.matrix()(0, 1)) < 1e-12);

    // Product state reduces to its factors.
    DensityMatrix a = random_density({2, 1}, 2, RandomSeed{5});
    DensityMatrix b = random_density({2, 1}, 2, RandomSeed{6});
    DensityMatrix prod = validate(kron(a.matrix(), b.matrix()), kTwoQubits);
    CHECK(oracles::frob_diff(partial_trace(prod, Subsystem::B).matrix(), a.matrix()) < 1e-12);
    CHECK(oracles::frob_diff(partial_trace(prod, Subsystem::A).matrix(), b.matrix()) < 1e-12);

    DensityMatrix w = werner_state({0.7});
    DensityMatrix wb = partial_trace(w, Subsystem::A);
    CHECK(oracles::frob_diff(wb.matrix(), 0.5 * ComplexMatrix::identity(2)) < 1e-12);
}

TEST_CASE("partial transpose spectrum and involution") {
    // Product states stay positive under partial transposition.
    DensityMatrix prod = random_pure_product(kTwoQubits, RandomSeed{7});
    HermitianSpectrum s = hermitian_eig(partial_transpose(prod, Subsystem::B));
    CHECK(s.eigenvalues.back() > -1e-12);

    HermitianSpectrum bell = hermitian_eig(partial_transpose(bell_state(), Subsystem::B));
    CHECK(bell.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bell.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bell.eigenvalues[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bell.eigenvalues[3] == doctest::Approx(-0.5).epsilon(1e-12));

    DensityMatrix r = random_state(8);
    ComplexMatrix once = partial_transpose(r, Subsystem::B);
    ComplexMatrix twice = partial_transpose(DensityMatrix::unchecked(once, kTwoQubits),
                                            Subsystem::B);
    CHECK(oracles::frob_diff(twice, r.matrix()) == 0.0);
}

TEST_CASE("partial transpose leaves the untouched marginal alone") {
    DensityMatrix r = random_state(9);
    DensityMatrix pt = DensityMatrix::unchecked(partial_transpose(r, Subsystem::B), kTwoQubits);
    CHECK(oracles::frob_diff(partial_trace(pt, Subsystem::B).matrix(),
                             partial_trace(r, Subsystem::B).matrix()) < 1e-12);
}

TEST_CASE("von neumann entropy anchors") {
    CHECK(von_neumann_entropy(validate(0.25 * ComplexMatrix::identity(4), kTwoQubits)).bits ==
          doctest::Approx(2.0).epsilon(1e-12));

    ComplexMatrix pure(4, 4);
    pure(0, 0) = 1.0;
    CHECK(von_neumann_entropy(validate(pure, kTwoQubits)).bits ==
          doctest::Approx(0.0).epsilon(1e-12));

    CHECK(von_neumann_entropy(werner_state({0.5})).bits ==
          doctest::Approx(oracles::werner_entropy(0.5)).epsilon(1e-10));
}

TEST_CASE("relative entropy anchors") {
    DensityMatrix r = random_state(10);
    EntropyValue self = relative_entropy(r, r);
    CHECK(!self.is_infinite);
    CHECK(std::abs(self.bits) < 1e-9);

    EntropyValue bell_vs_mixed =
        relative_entropy(bell_state(), validate(0.25 * ComplexMatrix::identity(4), kTwoQubits));
    CHECK(bell_vs_mixed.bits == doctest::Approx(2.0).epsilon(1e-10));

    ComplexMatrix p0(4, 4), p3(4, 4);
    p0(0, 0) = 1.0;
    p3(3, 3) = 1.0;
    EntropyValue disjoint = relative_entropy(validate(p0, kTwoQubits), validate(p3, kTwoQubits));
    CHECK(disjoint.is_infinite);

    CHECK_THROWS_AS(relative_entropy(r, random_density({2, 3}, 6, RandomSeed{1})),
                    DimensionError);
}

TEST_CASE("relative entropy separates states") {
    // Zero only when the arguments coincide.
    DensityMatrix r = random_state(11);
    DensityMatrix s = random_state(12);
    CHECK(relative_entropy(r, s).bits > 1e-4);
    CHECK(oracles::frob_diff(r.matrix(), s.matrix()) > 1e-4);
}

TEST_CASE("mutual information anchors and formula agreement") {
    CHECK(mutual_information(bell_state()).bits == doctest::Approx(2.0).epsilon(1e-10));

    DensityMatrix prod = random_pure_product(kTwoQubits, RandomSeed{13});
    CHECK(std::abs(mutual_information(prod).bits) < 1e-10);

    CHECK(mutual_information(werner_state({0.5})).bits ==
          doctest::Approx(oracles::werner_mutual_info(0.5)).epsilon(1e-10));

    // Entropy combination vs relative entropy to the marginal product.
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        DensityMatrix rho = random_state(500 + t, 1 + t % 4);
        DensityMatrix marg = validate(kron(partial_trace(rho, Subsystem::B).matrix(),
                                           partial_trace(rho, Subsystem::A).matrix()),
                                      kTwoQubits);
        double alt = relative_entropy(rho, marg).bits;
        worst = std::max(worst, std::abs(mutual_information(rho).bits - alt));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("mutual information bounds on random states") {
    for (std::uint64_t t = 0; t < 200; ++t) {
        DensityMatrix rho = random_state(900 + t, 1 + t % 4);
        double mi = mutual_information(rho).bits;
        CHECK(mi >= -1e-12);
        CHECK(mi <= 2.0 + 1e-9);
    }
}

TEST_CASE("swap exchanges the factors") {
    DensityMatrix a = random_density({2, 1}, 2, RandomSeed{14});
    DensityMatrix b = random_density({2, 1}, 2, RandomSeed{15});
    DensityMatrix ab = validate(kron(a.matrix(), b.matrix()), kTwoQubits);
    DensityMatrix ba = validate(kron(b.matrix(), a.matrix()), kTwoQubits);
    CHECK(oracles::frob_diff(swap_subsystems(ab).matrix(), ba.matrix()) < 1e-12);

    DensityMatrix w = werner_state({0.6});
    CHECK(oracles::frob_diff(swap_subsystems(w).matrix(), w.matrix()) == 0.0);

    DensityMatrix r = random_state(16);
    CHECK(oracles::frob_diff(swap_subsystems(swap_subsystems(r)).matrix(), r.matrix()) == 0.0);
}

TEST_CASE("local unitaries act by conjugation and preserve spectra") {
    DensityMatrix r = random_state(17);
    ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(oracles::frob_diff(apply_local_unitary(r, i2, i2).matrix(), r.matrix()) < 1e-14);

    auto [ua, ub] = random_local_unitary(kTwoQubits, RandomSeed{18});
    DensityMatrix mixed = validate(0.25 * ComplexMatrix::identity(4), kTwoQubits);
    CHECK(oracles::frob_diff(apply_local_unitary(mixed, ua, ub).matrix(), mixed.matrix()) <
          1e-12);

    DensityMatrix w = werner_state({0.6});
    HermitianSpectrum before = hermitian_eig(w.matrix());
    HermitianSpectrum after = hermitian_eig(apply_local_unitary(w, ua, ub).matrix());
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(after.eigenvalues[k] == doctest::Approx(before.eigenvalues[k]).epsilon(1e-10));

    ComplexMatrix not_unitary = 2.0 * ComplexMatrix::identity(2);
    CHECK_THROWS_AS(apply_local_unitary(r, not_unitary, i2), InvalidParameterError);
}

TEST_CASE("bipartite kron regroups the cut") {
    DensityMatrix w = werner_state({0.8});
    DensityMatrix sq = bipartite_kron(w, w);
    CHECK(sq.dims().d_a == 4);
    CHECK(sq.dims().d_b == 4);
    CHECK(std::abs(sq.matrix().trace().real() - 1.0) < 1e-12);
    // Two independent copies carry twice the correlations of one.
    CHECK(mutual_information(sq).bits ==
          doctest::Approx(2.0 * mutual_information(w).bits).epsilon(1e-9));
}
