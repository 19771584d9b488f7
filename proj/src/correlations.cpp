#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "qcorr/eig.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Entropy of mb / p from the unnormalized operator:
// S(M/p) = log2 p - (1/p) sum_k lam_k log2 lam_k.
double normalized_entropy(const std::vector<cdouble>& mb, std::size_t db, double p) {
    double sum = 0.0;
    if (db == 2) {
        double a = mb[0].real(), b = mb[3].real();
        double r = std::sqrt(0.25 * (a - b) * (a - b) + std::norm(mb[1]));
        double mean = 0.5 * (a + b);
        sum = xlog2x(std::max(mean + r, 0.0)) + xlog2x(std::max(mean - r, 0.0));
    } else {
        std::vector<cdouble> work(mb), vecs(db * db);
        std::vector<double> evals(db);
        jacobi_hermitian(db, work.data(), evals.data(), vecs.data());
        for (double lam : evals) sum += xlog2x(std::max(lam, 0.0));
    }
    return std::log2(p) - sum / p;
}

// Unnormalized B operator after A collapses onto direction u; returns its
// trace (the outcome probability).
double conditional_b(const ComplexMatrix& r, std::size_t db, const cdouble u[2],
                     std::vector<cdouble>& mb) {
    for (std::size_t j = 0; j < db; ++j)
        for (std::size_t jp = 0; jp < db; ++jp) {
            cdouble s = 0.0;
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t ip = 0; ip < 2; ++ip)
                    s += std::conj(u[i]) * r(i * db + j, ip * db + jp) * u[ip];
            mb[j * db + jp] = s;
        }
    double p = 0.0;
    for (std::size_t j = 0; j < db; ++j) p += mb[j * db + j].real();
    return p;
}

// chi at one Bloch angle: information about B from the projector pair
// along (theta, phi). Matches holevo_term(rho, projective_pair(...)) but
// without the per-call validation and allocation overhead.
double chi_at_angle(const ComplexMatrix& r, std::size_t db, double s_b, double theta,
                    double phi, std::vector<cdouble>& mb) {
    cdouble u[2] = {std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
    cdouble v[2] = {-std::conj(u[1]), std::conj(u[0])};

    double value = s_b;
    for (const cdouble* dir : {u, v}) {
        double p = conditional_b(r, db, dir, mb);
        if (p >= kProbabilityFloor) value -= p * normalized_entropy(mb, db, p);
    }
    return value;
}

struct ChiOptimum {
    double value = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

ChiOptimum chi_search(const DensityMatrix& rho, const ChiOptions& opts, bool parallel) {
    if (rho.dims().d_a != 2)
        throw UnsupportedDimensionError(
            "chi_projective: projective optimization is implemented for qubit A only");
    if (!(opts.grid_step > 0.0) || opts.grid_step > M_PI / 4.0)
        throw InvalidParameterError("chi_projective: grid_step must lie in (0, pi/4]");

    const ComplexMatrix& r = rho.matrix();
    const std::size_t db = rho.dims().d_b;
    const double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::A)).bits;
    const double step = opts.grid_step;

    // Antipodal directions give the same projector pair, so the theta
    // hemisphere plus full phi covers every measurement once.
    const std::int64_t n_theta = static_cast<std::int64_t>(std::floor(M_PI / 2.0 / step + 1e-9)) + 1;
    const std::int64_t n_phi = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(2.0 * M_PI / step + 1e-9)));
    const std::int64_t total = n_theta * n_phi;

    std::vector<double> vals(total);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::vector<cdouble> mb(db * db);
        double theta = std::min(static_cast<double>(idx / n_phi) * step, M_PI / 2.0);
        double phi = static_cast<double>(idx % n_phi) * step;
        vals[idx] = chi_at_angle(r, db, s_b, theta, phi, mb);
    }

    // Serial argmax, first index wins ties: the result does not depend on
    // how the loop above was scheduled.
    std::int64_t best_idx = 0;
    for (std::int64_t idx = 1; idx < total; ++idx)
        if (vals[idx] > vals[best_idx]) best_idx = idx;

    ChiOptimum best;
    best.theta = std::min(static_cast<double>(best_idx / n_phi) * step, M_PI / 2.0);
    best.phi = static_cast<double>(best_idx % n_phi) * step;
    best.value = vals[best_idx];

    // Compass-step refinement. Steps halve on failure; s^2 below refine_tol
    // means even the quadratic gain bound is exhausted, stop there.
    std::vector<cdouble> mb(db * db);
    double s = step / 2.0;
    while (s >= 1e-7 && s * s >= opts.refine_tol * 1e-2) {
        const double cand[4][2] = {{best.theta + s, best.phi},
                                   {best.theta - s, best.phi},
                                   {best.theta, best.phi + s},
                                   {best.theta, best.phi - s}};
        double improved_val = best.value;
        int improved = -1;
        for (int k = 0; k < 4; ++k) {
            double th = std::clamp(cand[k][0], 0.0, M_PI);
            double ph = cand[k][1];
            double v = chi_at_angle(r, db, s_b, th, ph, mb);
            if (v > improved_val) {
                improved_val = v;
                improved = k;
            }
        }
        if (improved >= 0) {
            best.theta = std::clamp(cand[improved][0], 0.0, M_PI);
            best.phi = cand[improved][1];
            best.value = improved_val;
        } else {
            s *= 0.5;
        }
    }
    return best;
}

// ---- POVM search -----------------------------------------------------

// Raw parameter block per free element: 8 reals for a 2x2 factor plus a
// weight. The element is E = w * F with F the factor's Gram matrix scaled
// to unit operator norm, so E <= w * I by construction.
constexpr std::size_t kBlock = 9;

bool build_elements(const std::vector<double>& raw, std::size_t outcomes,
                    std::vector<ComplexMatrix>& elems) {
    const std::size_t free_elems = outcomes - 1;
    elems.clear();

    ComplexMatrix closure = ComplexMatrix::identity(2);
    for (std::size_t i = 0; i < free_elems; ++i) {
        const double* blk = raw.data() + i * kBlock;
        ComplexMatrix b(2, 2);
        b(0, 0) = {blk[0], blk[1]};
        b(0, 1) = {blk[2], blk[3]};
        b(1, 0) = {blk[4], blk[5]};
        b(1, 1) = {blk[6], blk[7]};
        double w = std::clamp(blk[8], 0.0, 1.0);

        ComplexMatrix h = b.adjoint() * b;
        double a = h(0, 0).real(), d = h(1, 1).real();
        double lam_max = 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h(0, 1)));
        ComplexMatrix e(2, 2);
        if (lam_max > 1e-30) {
            e = h;
            e *= cdouble(w / lam_max, 0.0);
        }
        closure -= e;
        elems.push_back(std::move(e));
    }

    // Closure element completes the set; reject if it left positivity.
    closure.hermitize();
    double a = closure(0, 0).real(), d = closure(1, 1).real();
    double lam_min = 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(closure(0, 1)));
    if (lam_min < -1e-12) return false;
    elems.push_back(std::move(closure));
    return true;
}

// chi for an explicit POVM {E_i} on A (normalization-free evaluation).
double chi_of_elements(const ComplexMatrix& r, std::size_t db, double s_b,
                       const std::vector<ComplexMatrix>& elems, std::vector<cdouble>& mb) {
    double value = s_b;
    for (const ComplexMatrix& e : elems) {
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t jp = 0; jp < db; ++jp) {
                cdouble s = 0.0;
                for (std::size_t a = 0; a < 2; ++a)
                    for (std::size_t k = 0; k < 2; ++k)
                        s += e(a, k) * r(k * db + j, a * db + jp);
                mb[j * db + jp] = s;
            }
        double p = 0.0;
        for (std::size_t j = 0; j < db; ++j) p += mb[j * db + j].real();
        if (p >= kProbabilityFloor) value -= p * normalized_entropy(mb, db, p);
    }
    return value;
}

double povm_trial(const ComplexMatrix& r, std::size_t db, double s_b, std::size_t outcomes,
                  std::uint64_t trial_seed, const std::vector<double>* warm_raw) {
    Xoshiro256pp rng(trial_seed);
    const std::size_t free_elems = outcomes - 1;
    std::vector<double> raw(free_elems * kBlock);
    std::vector<ComplexMatrix> elems;
    std::vector<cdouble> mb(db * db);

    bool valid = false;
    if (warm_raw != nullptr) {
        raw = *warm_raw;
        valid = build_elements(raw, outcomes, elems);
    }
    for (int attempt = 0; !valid && attempt < 200; ++attempt) {
        for (std::size_t i = 0; i < free_elems; ++i) {
            for (std::size_t k = 0; k < 8; ++k) raw[i * kBlock + k] = rng.gaussian();
            raw[i * kBlock + 8] = rng.uniform() * 1.5 / static_cast<double>(free_elems);
        }
        valid = build_elements(raw, outcomes, elems);
    }
    if (!valid) return 0.0;

    double cur = chi_of_elements(r, db, s_b, elems, mb);

    // (1+1) hill climb on the raw parameters; rejected moves shrink the
    // proposal scale, accepted ones grow it back.
    double scale = 0.25;
    std::vector<double> prop(raw.size());
    for (int step = 0; step < 120; ++step) {
        for (std::size_t k = 0; k < raw.size(); ++k) {
            bool is_weight = (k % kBlock) == 8;
            double jitter = rng.gaussian() * scale * (is_weight ? 0.3 : 1.0);
            prop[k] = raw[k] + jitter;
            if (is_weight) prop[k] = std::clamp(prop[k], 0.0, 1.0);
        }
        if (!build_elements(prop, outcomes, elems)) {
            scale = std::max(scale * 0.85, 1e-4);
            continue;
        }
        double val = chi_of_elements(r, db, s_b, elems, mb);
        if (val > cur) {
            cur = val;
            raw.swap(prop);
            scale = std::min(scale * 1.25, 1.0);
        } else {
            scale = std::max(scale * 0.85, 1e-4);
        }
    }
    return cur;
}

DensityMatrix product_of_marginals(const DensityMatrix& rho) {
    DensityMatrix a = partial_trace(rho, Subsystem::B);
    DensityMatrix b = partial_trace(rho, Subsystem::A);
    return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()), rho.dims());
}

// Small negative values inside the solver's noise band are zero in exact
// arithmetic; anything more negative is reported as-is.
double clip_noise(double raw, double tol) { return (raw < 0.0 && raw >= -tol) ? 0.0 : raw; }

double entropy_bits(const EntropyValue& v) {
    return v.is_infinite ? std::numeric_limits<double>::infinity() : v.bits;
}

}  // namespace

double chi_projective(const DensityMatrix& rho, const ChiOptions& opts) {
    return chi_search(rho, opts, opts.parallel).value;
}

double chi_projective_serial(const DensityMatrix& rho, ChiOptions opts) {
    return chi_search(rho, opts, false).value;
}

double chi_povm_search(const DensityMatrix& rho, const PovmOptions& opts) {
    if (rho.dims().d_a != 2)
        throw UnsupportedDimensionError(
            "chi_povm_search: POVM optimization is implemented for qubit A only");
    if (opts.outcomes < 2 || opts.outcomes > 4)
        throw InvalidParameterError("chi_povm_search: outcomes must be 2, 3 or 4");
    if (opts.trials == 0)
        throw InvalidParameterError("chi_povm_search: need at least one trial");

    const ComplexMatrix& r = rho.matrix();
    const std::size_t db = rho.dims().d_b;
    const double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::A)).bits;

    // Seed the first trial at the refined projective optimum: the pair
    // becomes elements 0 and 1 (weight 1), any further slots start empty.
    ChiOptimum proj = chi_search(rho, ChiOptions{}, opts.parallel);
    cdouble u[2] = {std::cos(proj.theta / 2.0), std::polar(std::sin(proj.theta / 2.0), proj.phi)};
    cdouble v[2] = {-std::conj(u[1]), std::conj(u[0])};
    std::vector<double> warm((opts.outcomes - 1) * kBlock, 0.0);
    auto write_projector = [&](std::size_t slot, const cdouble dir[2]) {
        // The factor B = |dir><dir| reproduces itself as B^dag B.
        warm[slot * kBlock + 0] = std::norm(dir[0]);
        warm[slot * kBlock + 1] = 0.0;
        cdouble off = dir[0] * std::conj(dir[1]);
        warm[slot * kBlock + 2] = off.real();
        warm[slot * kBlock + 3] = off.imag();
        warm[slot * kBlock + 4] = std::conj(off).real();
        warm[slot * kBlock + 5] = std::conj(off).imag();
        warm[slot * kBlock + 6] = std::norm(dir[1]);
        warm[slot * kBlock + 7] = 0.0;
        warm[slot * kBlock + 8] = 1.0;
    };
    write_projector(0, u);
    if (opts.outcomes >= 3) write_projector(1, v);

    const std::int64_t trials = static_cast<std::int64_t>(opts.trials);
    std::vector<double> vals(trials);
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (std::int64_t t = 0; t < trials; ++t) {
        vals[t] = povm_trial(r, db, s_b, opts.outcomes, derive_seed(opts.seed, t),
                             t == 0 ? &warm : nullptr);
    }

    double best = vals[0];
    for (std::int64_t t = 1; t < trials; ++t) best = std::max(best, vals[t]);
    return std::max(best, proj.value);
}

double psi(const DensityMatrix& rho, const ReeOptions& opts) {
    double mi = mutual_information(rho).bits;
    ReeResult r = ree(rho, opts);
    return clip_noise(mi - r.value, opts.tol);
}

double c1(const DensityMatrix& rho, const ReeOptions& opts) {
    DensityMatrix sigma = closest_separable_state(rho, opts);
    return entropy_bits(relative_entropy(sigma, product_of_marginals(sigma)));
}

double c2(const DensityMatrix& rho, const ReeOptions& opts) {
    DensityMatrix sigma = closest_separable_state(rho, opts);
    return entropy_bits(relative_entropy(sigma, product_of_marginals(rho)));
}

MeasureReport measure_all(const DensityMatrix& rho, const MeasureOptions& opts) {
    MeasureReport rep;
    rep.mutual_info = mutual_information(rho).bits;

    ReeResult r = ree(rho, opts.ree);
    rep.ree_value = r.value;
    rep.ree_gap = r.gap;
    rep.ree_iterations = r.iterations;
    rep.ree_converged = r.converged;

    rep.psi_raw = rep.mutual_info - r.value;
    rep.psi = clip_noise(rep.psi_raw, opts.ree.tol);

    rep.c1 = entropy_bits(relative_entropy(r.sigma_star, product_of_marginals(r.sigma_star)));
    rep.c2 = entropy_bits(relative_entropy(r.sigma_star, product_of_marginals(rho)));

    if (rho.dims().d_a == 2) {
        rep.chi_projective = chi_projective(rho, opts.chi);
        if (opts.povm_trials > 0) {
            PovmOptions po;
            po.outcomes = opts.povm_outcomes;
            po.trials = opts.povm_trials;
            po.seed = opts.ree.seed;
            po.parallel = opts.chi.parallel;
            rep.chi_povm = chi_povm_search(rho, po);
        }
    }

    rep.negativity = negativity(rho);
    rep.ppt = is_ppt(rho);
    return rep;
}

}  // namespace qcorr
