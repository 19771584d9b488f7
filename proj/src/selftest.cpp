#include "qcorr/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "qcorr/correlations.hpp"
#include "qcorr/eig.hpp"
#include "qcorr/families.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

ComplexMatrix random_hermitian(std::size_t n, Xoshiro256pp& rng) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.complex_gaussian();
    m.hermitize();
    return m;
}

// Reduced solver budget: gap 1e-5 keeps every psi check well inside the
// 2e-4 property tolerances while staying fast.
ReeOptions quick_solver(std::uint64_t seed) {
    ReeOptions o;
    o.tol = 1e-5;
    o.max_iters = 2000;
    o.seed = seed;
    return o;
}

double binary_entropy(double x) {
    auto xlx = [](double t) { return t > 0.0 ? t * std::log2(t) : 0.0; };
    return -xlx(x) - xlx(1.0 - x);
}

using CheckFn = std::function<PropertyResult(const SelftestOptions&)>;

PropertyResult eig_reconstruction(const SelftestOptions& o) {
    double worst = 0.0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        Xoshiro256pp rng(derive_seed(o.seed, 1000 + t));
        std::size_t n = 2 + (t % 3);  // 2, 3, 4
        ComplexMatrix m = random_hermitian(n, rng);
        HermitianSpectrum s = hermitian_eig(m);

        ComplexMatrix rebuilt(n, n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    rebuilt(i, j) += s.eigenvalues[k] * s.eigenvectors(i, k) *
                                     std::conj(s.eigenvectors(j, k));
        rebuilt -= m;
        ComplexMatrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
        gram -= ComplexMatrix::identity(n);
        worst = std::max({worst, rebuilt.frobenius_norm(), gram.frobenius_norm()});
    }
    return {"eig-reconstruction", worst <= 1e-10, "worst residual " + fmt(worst)};
}

PropertyResult entropy_range(const SelftestOptions& o) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        DensityMatrix rho = random_density({2, 2}, 1 + t % 4, {derive_seed(o.seed, 2000 + t)});
        double s = von_neumann_entropy(rho).bits;
        lo = std::min(lo, s);
        hi = std::max(hi, s - 2.0);
    }
    bool ok = lo >= -1e-12 && hi <= 1e-12;
    return {"entropy-range", ok, "range excess " + fmt(std::max(-lo, hi))};
}

PropertyResult mutual_information_consistency(const SelftestOptions& o) {
    double worst = 0.0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        DensityMatrix rho = random_density({2, 2}, 1 + t % 4, {derive_seed(o.seed, 3000 + t)});
        double via_entropies = mutual_information(rho).bits;

        DensityMatrix a = partial_trace(rho, Subsystem::B);
        DensityMatrix b = partial_trace(rho, Subsystem::A);
        DensityMatrix prod = DensityMatrix::unchecked(kron(a.matrix(), b.matrix()), rho.dims());
        double via_divergence = relative_entropy(rho, prod).bits;
        worst = std::max(worst, std::abs(via_entropies - via_divergence));
    }
    return {"mutual-information-consistency", worst <= 1e-8, "worst split " + fmt(worst)};
}

PropertyResult relative_entropy_identity(const SelftestOptions& o) {
    double worst_self = 0.0, worst_pair = 1e300;
    for (std::size_t t = 0; t < o.trials; ++t) {
        DensityMatrix rho = random_density({2, 2}, 4, {derive_seed(o.seed, 4000 + t)});
        DensityMatrix tau = random_density({2, 2}, 4, {derive_seed(o.seed, 4500 + t)});
        worst_self = std::max(worst_self, std::abs(relative_entropy(rho, rho).bits));
        worst_pair = std::min(worst_pair, relative_entropy(rho, tau).bits);
    }
    bool ok = worst_self <= 1e-10 && worst_pair > 1e-9;
    return {"relative-entropy-identity", ok,
            "self " + fmt(worst_self) + ", distinct min " + fmt(worst_pair)};
}

PropertyResult werner_negativity_threshold(const SelftestOptions& o) {
    double worst = 0.0;
    std::size_t n = std::max<std::size_t>(o.trials, 5);
    for (std::size_t k = 0; k <= n; ++k) {
        double gamma = static_cast<double>(k) / static_cast<double>(n);
        double expected = std::max(0.0, (3.0 * gamma - 1.0) / 2.0);
        worst = std::max(worst, std::abs(negativity(werner_state({gamma})) - expected));
    }
    return {"werner-negativity-threshold", worst <= 1e-9, "worst deviation " + fmt(worst)};
}

PropertyResult partial_transpose_marginal(const SelftestOptions& o) {
    double worst = 0.0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        DensityMatrix rho = random_density({2, 3}, 1 + t % 6, {derive_seed(o.seed, 5000 + t)});
        DensityMatrix pt =
            DensityMatrix::unchecked(partial_transpose(rho, Subsystem::B), rho.dims());
        ComplexMatrix diff =
            partial_trace(pt, Subsystem::B).matrix() - partial_trace(rho, Subsystem::B).matrix();
        worst = std::max(worst, diff.frobenius_norm());
    }
    return {"partial-transpose-marginal", worst <= 1e-12, "worst drift " + fmt(worst)};
}

PropertyResult psi_nonnegativity(const SelftestOptions& o) {
    double worst = 0.0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        std::uint64_t s = derive_seed(o.seed, 6000 + t);
        DensityMatrix rho = (t % 4 == 0) ? random_pure_product({2, 2}, {s})
                                         : random_density({2, 2}, 1 + t % 4, {s});
        double value = psi(rho, quick_solver(s)) - o.fault_bias;
        worst = std::min(worst, value);
    }
    return {"psi-nonnegativity", worst >= -2e-4, "most negative " + fmt(worst)};
}

PropertyResult psi_swap_symmetry(const SelftestOptions& o) {
    double worst = 0.0;
    std::size_t n = std::max<std::size_t>(3, o.trials / 2);
    for (std::size_t t = 0; t < n; ++t) {
        std::uint64_t s = derive_seed(o.seed, 7000 + t);
        DensityMatrix rho = random_density({2, 2}, 1 + t % 4, {s});
        double direct = psi(rho, quick_solver(s));
        double swapped = psi(swap_subsystems(rho), quick_solver(s));
        worst = std::max(worst, std::abs(direct - swapped));
    }
    return {"psi-swap-symmetry", worst <= 2e-4, "worst asymmetry " + fmt(worst)};
}

PropertyResult psi_local_unitary_invariance(const SelftestOptions& o) {
    DensityMatrix base = werner_state({0.7});
    double reference = psi(base, quick_solver(derive_seed(o.seed, 8000)));
    double worst = 0.0;
    std::size_t n = std::max<std::size_t>(3, o.trials / 2);
    for (std::size_t t = 0; t < n; ++t) {
        std::uint64_t s = derive_seed(o.seed, 8001 + t);
        auto [ua, ub] = random_local_unitary({2, 2}, {s});
        double rotated = psi(apply_local_unitary(base, ua, ub), quick_solver(s));
        worst = std::max(worst, std::abs(rotated - reference));
    }
    return {"psi-local-unitary-invariance", worst <= 2e-4, "worst shift " + fmt(worst)};
}

PropertyResult psi_product_zero(const SelftestOptions& o) {
    double worst = 0.0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        std::uint64_t s = derive_seed(o.seed, 9000 + t);
        worst = std::max(worst, psi(random_pure_product({2, 2}, {s}), quick_solver(s)));
    }
    double classical = psi(classically_correlated(), quick_solver(derive_seed(o.seed, 9999)));
    bool ok = worst <= 1e-4 && classical > 0.01;
    return {"psi-product-zero", ok,
            "product max " + fmt(worst) + ", classical " + fmt(classical)};
}

PropertyResult chi_holevo_bound(const SelftestOptions& o) {
    double worst = 0.0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        DensityMatrix rho = random_density({2, 2}, 1 + t % 4, {derive_seed(o.seed, 10000 + t)});
        double chi = chi_projective(rho);
        double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::A)).bits;
        worst = std::max({worst, chi - s_b, -chi});
    }
    return {"chi-holevo-bound", worst <= 1e-9, "worst excess " + fmt(worst)};
}

PropertyResult fw_certificate(const SelftestOptions& o) {
    double worst = 0.0;
    for (double gamma : {0.5, 0.8}) {
        ReeOptions opts;
        opts.seed = derive_seed(o.seed, 11000 + static_cast<std::uint64_t>(gamma * 10));
        ReeResult r = ree(werner_state({gamma}), opts);

        double fidelity = (1.0 + 3.0 * gamma) / 4.0;
        double closed_form = 1.0 - binary_entropy(fidelity);
        // value - gap must lower-bound the known optimum, value upper-bound it
        worst = std::max({worst, (r.value - r.gap) - closed_form - 1e-9,
                          closed_form - r.value - 1e-9});

        double reevaluated = relative_entropy(werner_state({gamma}), r.sigma_star).bits;
        worst = std::max(worst, std::abs(reevaluated - r.value) - 1e-9);
    }
    return {"fw-certificate", worst <= 0.0, "worst slack " + fmt(worst)};
}

}  // namespace

std::vector<PropertyResult> run_selftest(const SelftestOptions& opts) {
    const CheckFn checks[] = {
        eig_reconstruction,
        entropy_range,
        mutual_information_consistency,
        relative_entropy_identity,
        werner_negativity_threshold,
        partial_transpose_marginal,
        psi_nonnegativity,
        psi_swap_symmetry,
        psi_local_unitary_invariance,
        psi_product_zero,
        chi_holevo_bound,
        fw_certificate,
    };

    std::vector<PropertyResult> results;
    results.reserve(std::size(checks));
    for (const CheckFn& check : checks) results.push_back(check(opts));
    return results;
}

}  // namespace qcorr
