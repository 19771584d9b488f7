#include "qcorr/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qcorr/eig.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Directions sigma has essentially abandoned carry no rho mass once the
// iterate is anywhere near the optimum, but their near-zero eigenvalues
// would still wreck the divided differences. Lift them to a floor small
// enough to be inert and large enough to keep the gradient finite.
constexpr double kGradientEigFloor = 1e-20;

constexpr double kGoldenXTol = 1e-10;
constexpr std::size_t kMaxAlternations = 200;
constexpr std::size_t kScoutAlternations = 30;
constexpr double kAlternationTol = 1e-12;
constexpr double kLmoTieTol = 1e-12;

struct EigWorkspace {
    std::vector<cdouble> mat;
    std::vector<cdouble> vecs;
    std::vector<double> evals;

    void resize(std::size_t n) {
        mat.resize(n * n);
        vecs.resize(n * n);
        evals.resize(n);
    }
};

void eig_raw(const cdouble* src, std::size_t n, EigWorkspace& ws) {
    std::copy(src, src + n * n, ws.mat.begin());
    jacobi_hermitian(n, ws.mat.data(), ws.evals.data(), ws.vecs.data());
}

void hermitize_raw(cdouble* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = cdouble(a[i * n + i].real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            cdouble avg = 0.5 * (a[i * n + j] + std::conj(a[j * n + i]));
            a[i * n + j] = avg;
            a[j * n + i] = std::conj(avg);
        }
    }
}

// -sum_k <w_k|rho|w_k> log2 mu_k over sigma's spectrum, +inf if rho puts
// more than support_tol of mass where sigma has (numerically) none.
double cross_entropy_term(const ComplexMatrix& rho, std::size_t n, const EigWorkspace& ws,
                          double support_tol) {
    double total = 0.0;
    double kernel_mass = 0.0;
    const cdouble* w = ws.vecs.data();
    for (std::size_t k = 0; k < n; ++k) {
        cdouble acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cdouble row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += rho(i, j) * w[j * n + k];
            acc += std::conj(w[i * n + k]) * row;
        }
        double q = acc.real();
        double mu = ws.evals[k];
        if (mu <= 1e-300)
            kernel_mass += q;
        else
            total -= q * std::log2(mu);
    }
    if (kernel_mass > support_tol) return std::numeric_limits<double>::infinity();
    return total;
}

// Gradient of sigma -> -Tr rho log2 sigma at the point whose spectrum sits
// in ws, negated: m is the Hermitian matrix with m = V (rho~ o L) V^dagger,
// where rho~ = V^dagger rho V and L holds the divided differences of log2.
// Frank-Wolfe then wants the product state maximizing <ab|m|ab>.
void ascent_matrix(const ComplexMatrix& rho, std::size_t n, const EigWorkspace& ws,
                   std::vector<cdouble>& tmp, std::vector<cdouble>& rt, ComplexMatrix& m) {
    const cdouble* v = ws.vecs.data();

    // tmp = rho * V
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            cdouble s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += rho(i, j) * v[j * n + k];
            tmp[i * n + k] = s;
        }
    // rt = V^dagger * tmp
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            cdouble s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += std::conj(v[i * n + k]) * tmp[i * n + l];
            rt[k * n + l] = s;
        }
    // multiply in the divided differences of log2 between eigenvalue pairs
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            double lk = std::max(ws.evals[k], kGradientEigFloor);
            double ll = std::max(ws.evals[l], kGradientEigFloor);
            double dd;
            if (std::abs(lk - ll) <= 1e-6 * std::max(lk, ll))
                dd = 2.0 / ((lk + ll) * kLn2);  // midpoint derivative of log2
            else
                dd = (std::log2(lk) - std::log2(ll)) / (lk - ll);
            rt[k * n + l] *= dd;
        }
    // m = V * rt * V^dagger
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            cdouble s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += v[i * n + k] * rt[k * n + l];
            tmp[i * n + l] = s;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cdouble s = 0.0;
            for (std::size_t l = 0; l < n; ++l) s += tmp[i * n + l] * std::conj(v[j * n + l]);
            m(i, j) = s;
        }
    m.hermitize();
}

// kb[j][j'] = <a|_A g |a>_A restricted to B, i.e. the B-side operator whose
// top eigenvector is the best b for this a. ka is the mirror image.
void contract_a(const ComplexMatrix& g, std::size_t da, std::size_t db,
                const std::vector<cdouble>& a, cdouble* kb) {
    for (std::size_t j = 0; j < db; ++j)
        for (std::size_t jp = 0; jp < db; ++jp) {
            cdouble s = 0.0;
            for (std::size_t i = 0; i < da; ++i)
                for (std::size_t ip = 0; ip < da; ++ip)
                    s += std::conj(a[i]) * g(i * db + j, ip * db + jp) * a[ip];
            kb[j * db + jp] = s;
        }
}

void contract_b(const ComplexMatrix& g, std::size_t da, std::size_t db,
                const std::vector<cdouble>& b, cdouble* ka) {
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t ip = 0; ip < da; ++ip) {
            cdouble s = 0.0;
            for (std::size_t j = 0; j < db; ++j)
                for (std::size_t jp = 0; jp < db; ++jp)
                    s += std::conj(b[j]) * g(i * db + j, ip * db + jp) * b[jp];
            ka[i * da + ip] = s;
        }
}

// Top eigenpair of the contracted operator; closed form for 2x2, Jacobi
// otherwise. The 2x2 path matters: the alternation below runs thousands of
// times per solve and qubit subsystems are the common case.
double top_eigvec(std::size_t d, cdouble* h, EigWorkspace& ws, cdouble* out) {
    if (d == 2) {
        const double alpha = h[0].real();
        const double beta = h[3].real();
        const cdouble c = 0.5 * (h[1] + std::conj(h[2]));
        const double half = 0.5 * (alpha - beta);
        const double rad = std::sqrt(half * half + std::norm(c));
        const double lam = 0.5 * (alpha + beta) + rad;
        if (std::abs(c) > 1e-300) {
            out[0] = c;
            out[1] = lam - alpha;
            double nrm = std::sqrt(std::norm(out[0]) + std::norm(out[1]));
            out[0] /= nrm;
            out[1] /= nrm;
        } else if (alpha >= beta) {
            out[0] = 1.0;
            out[1] = 0.0;
        } else {
            out[0] = 0.0;
            out[1] = 1.0;
        }
        return lam;
    }
    hermitize_raw(h, d);
    jacobi_hermitian(d, h, ws.evals.data(), ws.vecs.data());
    for (std::size_t i = 0; i < d; ++i) out[i] = ws.vecs[i * d + 0];
    return ws.evals[0];
}

ProductVector alternate_from(const ComplexMatrix& g, BipartiteDims dims,
                             std::vector<cdouble> a, EigWorkspace& wsa, EigWorkspace& wsb,
                             std::size_t max_rounds) {
    const std::size_t da = dims.d_a, db = dims.d_b;
    std::vector<cdouble> b(db);
    double value = -std::numeric_limits<double>::infinity();

    for (std::size_t it = 0; it < max_rounds; ++it) {
        contract_a(g, da, db, a, wsb.mat.data());
        double vb = top_eigvec(db, wsb.mat.data(), wsb, b.data());
        (void)vb;

        contract_b(g, da, db, b, wsa.mat.data());
        double next = top_eigvec(da, wsa.mat.data(), wsa, a.data());

        if (next - value < kAlternationTol) {
            value = std::max(value, next);
            break;
        }
        value = next;
    }
    return {std::move(a), std::move(b), value};
}

ProductVector lmo_with_rng(const ComplexMatrix& g, BipartiteDims dims, std::size_t restarts,
                           Xoshiro256pp& rng, const ProductVector* warm_start,
                           EigWorkspace& wsa, EigWorkspace& wsb) {
    ProductVector best;
    bool have_best = false;

    // Scouting pass: every start gets a short alternation budget, enough to
    // fall into its basin and rank against the others. Only the winner is
    // then polished to full precision, which is what the duality gap needs;
    // grinding all starts to convergence costs ~5x more for the same atom.
    auto consider = [&](std::vector<cdouble> a0) {
        ProductVector cand =
            alternate_from(g, dims, std::move(a0), wsa, wsb, kScoutAlternations);
        // Strict improvement beyond the tie tolerance; earlier candidates
        // win ties so the result is insensitive to restart ordering noise.
        if (!have_best || cand.value > best.value + kLmoTieTol) {
            best = std::move(cand);
            have_best = true;
        }
    };

    if (warm_start != nullptr) consider(warm_start->a);
    // Computational-basis starts go ahead of the random ones. When the
    // objective has a whole manifold of tied maximizers (pure target states
    // do this), the first-wins rule then settles on basis-aligned atoms
    // instead of whatever direction the RNG happened to produce, which keeps
    // the solve deterministic and the minimizer sparse.
    for (std::size_t i = 0; i < dims.d_a; ++i) {
        std::vector<cdouble> a0(dims.d_a, cdouble{});
        a0[i] = 1.0;
        consider(std::move(a0));
    }
    for (std::size_t r = 0; r < restarts; ++r) {
        std::vector<cdouble> a0(dims.d_a);
        for (auto& x : a0) x = rng.complex_gaussian();
        vec_normalize(a0);
        consider(std::move(a0));
    }

    ProductVector polished = alternate_from(g, dims, best.a, wsa, wsb, kMaxAlternations);
    return polished.value >= best.value ? polished : best;
}

struct GoldenResult {
    double x;
    double fx;
};

template <typename F>
GoldenResult golden_section_minimize(F&& h, double lo, double hi) {
    const double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = h(x1);
    double f2 = h(x2);
    while (hi - lo > kGoldenXTol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = h(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = h(x2);
        }
    }
    return f1 <= f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

}  // namespace

bool is_ppt(const DensityMatrix& rho) {
    HermitianSpectrum spec = hermitian_eig(partial_transpose(rho, Subsystem::B));
    return spec.eigenvalues.back() >= -kPptTol;
}

double negativity(const DensityMatrix& rho) {
    HermitianSpectrum spec = hermitian_eig(partial_transpose(rho, Subsystem::B));
    double neg = 0.0;
    for (double lam : spec.eigenvalues)
        if (lam < 0.0) neg -= lam;
    return 2.0 * neg;
}

ProductVector product_lmo(const ComplexMatrix& g, BipartiteDims dims, std::size_t restarts,
                          RandomSeed seed, const ProductVector* warm_start) {
    if (!g.square() || g.rows() != dims.total())
        throw DimensionError("product_lmo: matrix shape does not match bipartite dims");
    if (g.hermiticity_defect() > 1e-8)
        throw InvalidParameterError("product_lmo: matrix must be Hermitian");
    if (restarts == 0 && warm_start == nullptr)
        throw InvalidParameterError("product_lmo: need at least one start");

    Xoshiro256pp rng(seed.value);
    EigWorkspace wsa, wsb;
    wsa.resize(dims.d_a);
    wsb.resize(dims.d_b);
    return lmo_with_rng(g, dims, restarts, rng, warm_start, wsa, wsb);
}

namespace {

// One entry of the iterate's explicit convex decomposition. The maximally
// mixed seed is tracked separately since it is not a product state.
struct LedgerAtom {
    std::vector<cdouble> a;
    std::vector<cdouble> b;
    std::vector<cdouble> vec;  // kron(a, b), unit norm
    double weight = 0.0;
};

constexpr double kAtomMergeTol = 1e-12;   // on 1 - |<v|w>|^2
constexpr double kWeightDropTol = 1e-14;  // weights this small are removed

void product_vec(BipartiteDims dims, const std::vector<cdouble>& a, const std::vector<cdouble>& b,
                 std::vector<cdouble>& out) {
    out.resize(dims.total());
    for (std::size_t i = 0; i < dims.d_a; ++i)
        for (std::size_t j = 0; j < dims.d_b; ++j) out[i * dims.d_b + j] = a[i] * b[j];
}

double atom_energy(const ComplexMatrix& m, const std::vector<cdouble>& v) {
    const std::size_t n = v.size();
    cdouble s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cdouble row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += m(i, j) * v[j];
        s += std::conj(v[i]) * row;
    }
    return s.real();
}

void rebuild_sigma(std::size_t n, double seed_weight, const std::vector<LedgerAtom>& atoms,
                   std::vector<cdouble>& sigma) {
    double total = seed_weight;
    for (const LedgerAtom& at : atoms) total += at.weight;
    std::fill(sigma.begin(), sigma.end(), cdouble{});
    const double diag = seed_weight / (total * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) sigma[i * n + i] = diag;
    for (const LedgerAtom& at : atoms) {
        const double w = at.weight / total;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                sigma[i * n + j] += w * at.vec[i] * std::conj(at.vec[j]);
    }
    hermitize_raw(sigma.data(), n);
}

}  // namespace

ReeResult ree(const DensityMatrix& rho, const ReeOptions& opts) {
    if (!(opts.tol > 0.0))
        throw InvalidParameterError("ree: tol must be positive");
    if (opts.max_iters == 0) throw InvalidParameterError("ree: max_iters must be at least 1");
    if (opts.lmo_restarts == 0)
        throw InvalidParameterError("ree: lmo_restarts must be at least 1");

    const BipartiteDims dims = rho.dims();
    const std::size_t n = dims.total();
    const ComplexMatrix& r = rho.matrix();

    // In 2x2 and 2x3 a PPT state is separable outright, so it is its own
    // nearest separable state and the minimum is exactly zero. Solving there
    // iteratively would only produce a blurred copy of rho: the minimizer
    // error scales like the square root of the residual objective, which is
    // far too loose for anything downstream that reads sigma_star.
    const bool ppt_decides = (dims.d_a == 2 && (dims.d_b == 2 || dims.d_b == 3)) ||
                             (dims.d_b == 2 && dims.d_a == 3);
    if (ppt_decides && is_ppt(rho)) return ReeResult{0.0, 0.0, 0, true, rho};

    // sigma starts at the maximally mixed state, the analytic center of the
    // feasible hull, and stays a convex mixture of product states plus a
    // shrinking remnant of that seed. The decomposition is kept explicitly:
    // plain Frank-Wolfe only ever scales old weights by (1-t), so mass parked
    // on early atoms decays too slowly when the optimum sits on a face of the
    // hull. Pairwise steps fix that by moving weight off the worst active
    // atom directly, and can zero it out exactly.
    double seed_weight = 1.0;
    std::vector<LedgerAtom> atoms;

    std::vector<cdouble> sigma(n * n, cdouble{});
    rebuild_sigma(n, seed_weight, atoms, sigma);

    Xoshiro256pp rng(opts.seed);
    EigWorkspace ws, wsa, wsb;
    ws.resize(n);
    wsa.resize(dims.d_a);
    wsb.resize(dims.d_b);
    std::vector<cdouble> tmp(n * n), rt(n * n), p(n * n), q(n * n), st(n * n), fw_vec(n);
    ComplexMatrix m(n, n);
    ComplexMatrix sigma_mat(n, n);

    ProductVector warm;
    bool have_warm = false;
    double gap = std::numeric_limits<double>::infinity();
    bool converged = false;
    std::size_t iterations = 0;

    for (std::size_t it = 0;; ++it) {
        eig_raw(sigma.data(), n, ws);
        ascent_matrix(r, n, ws, tmp, rt, m);

        ProductVector atom = lmo_with_rng(m, dims, opts.lmo_restarts, rng,
                                          have_warm ? &warm : nullptr, wsa, wsb);

        double tr_ms = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                tr_ms += (m(i, j) * sigma[j * n + i]).real();
        gap = atom.value - tr_ms;

        iterations = it;
        if (gap <= opts.tol) {
            converged = true;
            break;
        }
        if (it >= opts.max_iters) break;

        // Scan the active set once: the lowest-energy entry is the donor for
        // a pairwise step, the highest-energy one a potential stand-in for
        // the LMO result. Reusing an active atom whenever it is nearly as
        // good stops the ledger from accumulating a fresh near-duplicate atom
        // every iteration around a degenerate optimum, and a bounded active
        // set is what lets the pairwise steps make steady progress.
        double away_energy = seed_weight > kWeightDropTol
                                 ? m.trace().real() / static_cast<double>(n)
                                 : std::numeric_limits<double>::infinity();
        std::size_t away_index = atoms.size();  // atoms.size() denotes the seed
        double best_active_energy = -std::numeric_limits<double>::infinity();
        std::size_t best_active_index = atoms.size();
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            double e = atom_energy(m, atoms[k].vec);
            if (e < away_energy - kLmoTieTol) {
                away_energy = e;
                away_index = k;
            }
            if (e > best_active_energy) {
                best_active_energy = e;
                best_active_index = k;
            }
        }
        const bool snap_to_active = best_active_index < atoms.size() &&
                                    best_active_energy - tr_ms >= 0.9 * gap;
        const double away_weight = (away_index == atoms.size()) ? seed_weight
                                                                : atoms[away_index].weight;

        // Step target: the LMO atom, unless an active atom matches it.
        double target_energy;
        if (snap_to_active) {
            fw_vec = atoms[best_active_index].vec;
            target_energy = best_active_energy;
        } else {
            product_vec(dims, atom.a, atom.b, fw_vec);
            target_energy = atom.value;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                p[i * n + j] = fw_vec[i] * std::conj(fw_vec[j]);

        // Prefer a pairwise step: move weight from the worst active atom
        // straight onto the target, leaving every other weight alone. The
        // churn of a plain step, which dilutes the whole decomposition by
        // (1-t) and then has to win that mass back, is what makes the plain
        // method crawl once the iterate lives on a face of the hull.
        const bool same_entry = snap_to_active && away_index == best_active_index;
        const bool pairwise = away_weight > kWeightDropTol && !same_entry &&
                              target_energy - away_energy > kLmoTieTol;

        double t_star;
        bool drop = false;
        if (pairwise) {
            if (away_index == atoms.size()) {
                std::fill(q.begin(), q.end(), cdouble{});
                for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0 / static_cast<double>(n);
            } else {
                const std::vector<cdouble>& vv = atoms[away_index].vec;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        q[i * n + j] = vv[i] * std::conj(vv[j]);
            }
            const double t_max = away_weight;
            auto h = [&](double t) {
                for (std::size_t k = 0; k < n * n; ++k)
                    st[k] = sigma[k] + t * (p[k] - q[k]);
                eig_raw(st.data(), n, ws);
                return cross_entropy_term(r, n, ws, kSupportTol);
            };
            GoldenResult g = golden_section_minimize(h, 0.0, t_max);
            const double h_edge = h(t_max);
            drop = std::isfinite(h_edge) && h_edge <= g.fx + 1e-12;
            t_star = drop ? t_max : g.x;

            if (away_index == atoms.size()) {
                seed_weight = drop ? 0.0 : seed_weight - t_star;
            } else {
                atoms[away_index].weight = drop ? 0.0 : atoms[away_index].weight - t_star;
            }
        } else {
            auto h = [&](double t) {
                for (std::size_t k = 0; k < n * n; ++k)
                    st[k] = (1.0 - t) * sigma[k] + t * p[k];
                eig_raw(st.data(), n, ws);
                return cross_entropy_term(r, n, ws, kSupportTol);
            };
            t_star = golden_section_minimize(h, 0.0, 1.0).x;
            seed_weight *= 1.0 - t_star;
            for (LedgerAtom& at : atoms) at.weight *= 1.0 - t_star;
        }

        if (t_star > 0.0) {
            if (snap_to_active) {
                atoms[best_active_index].weight += t_star;
            } else {
                // Fold the new atom into an existing entry when it is the
                // same product state up to numerical noise; first match wins.
                bool merged = false;
                for (LedgerAtom& at : atoms) {
                    cdouble ov = 0.0;
                    for (std::size_t i = 0; i < n; ++i) ov += std::conj(at.vec[i]) * fw_vec[i];
                    if (1.0 - std::norm(ov) <= kAtomMergeTol) {
                        at.weight += t_star;
                        merged = true;
                        break;
                    }
                }
                if (!merged) {
                    LedgerAtom fresh;
                    fresh.a = atom.a;
                    fresh.b = atom.b;
                    fresh.vec = fw_vec;
                    fresh.weight = t_star;
                    atoms.push_back(std::move(fresh));
                }
            }
        }
        if (seed_weight < kWeightDropTol) seed_weight = 0.0;
        atoms.erase(std::remove_if(atoms.begin(), atoms.end(),
                                   [](const LedgerAtom& at) {
                                       return at.weight < kWeightDropTol;
                                   }),
                    atoms.end());
        warm = std::move(atom);
        have_warm = true;

        rebuild_sigma(n, seed_weight, atoms, sigma);
    }

    std::copy(sigma.begin(), sigma.end(), sigma_mat.data());
    DensityMatrix sigma_star = validate(sigma_mat, dims);
    EntropyValue final_value = relative_entropy(rho, sigma_star);
    double value = final_value.is_infinite ? std::numeric_limits<double>::infinity()
                                           : final_value.bits;

    return ReeResult{value, gap, iterations, converged, std::move(sigma_star)};
}

DensityMatrix closest_separable_state(const DensityMatrix& rho, const ReeOptions& opts) {
    return ree(rho, opts).sigma_star;
}

}  // namespace qcorr
