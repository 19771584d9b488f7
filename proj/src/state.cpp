#include "qcorr/state.hpp"

#include <cmath>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

// Entropy contribution of one eigenvalue; zero eigenvalues contribute
// nothing in the limit.
double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void check_dims(const BipartiteDims& dims) {
    if (dims.d_a == 0 || dims.d_b == 0)
        throw DimensionError("bipartite dims must both be at least 1");
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m, BipartiteDims dims)
    : mat_(std::move(m)), dims_(dims) {}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m, BipartiteDims dims) {
    m.hermitize();
    return DensityMatrix(std::move(m), dims);
}

DensityMatrix validate(const ComplexMatrix& m, BipartiteDims dims) {
    check_dims(dims);
    if (!m.square() || m.rows() != dims.total())
        throw DimensionError("state matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " +
                             std::to_string(dims.total()) + " squared");
    if (!m.all_finite()) throw InvalidStateError("state matrix has non-finite entries");

    double defect = m.hermiticity_defect();
    if (defect > kHermitianTol)
        throw InvalidStateError("state matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");

    HermitianSpectrum spec = hermitian_eig(m, kHermitianTol);

    double tr = 0.0;
    for (double lam : spec.eigenvalues) {
        if (lam < -kPsdTol)
            throw InvalidStateError("state matrix is not positive semidefinite (eigenvalue " +
                                    std::to_string(lam) + ")");
        tr += lam;
    }
    if (std::abs(tr - 1.0) > kTraceTol)
        throw InvalidStateError("state matrix trace is " + std::to_string(tr) +
                                ", expected 1 within " + std::to_string(kTraceTol));

    bool clipped = false;
    for (double lam : spec.eigenvalues)
        if (lam < 0.0) clipped = true;

    ComplexMatrix clean = m;
    if (clipped) {
        // Rebuild from the clipped spectrum so the state is exactly PSD.
        std::size_t n = m.rows();
        clean = ComplexMatrix(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            double lam = spec.eigenvalues[k];
            if (lam <= 0.0) continue;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    clean(i, j) += lam * spec.eigenvectors(i, k) *
                                   std::conj(spec.eigenvectors(j, k));
        }
    }

    double clean_tr = clean.trace().real();
    if (clean_tr <= 0.0) throw InvalidStateError("state matrix has non-positive trace");
    clean *= cdouble(1.0 / clean_tr, 0.0);
    return DensityMatrix::unchecked(std::move(clean), dims);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced_out) {
    const auto [da, db] = rho.dims();
    const ComplexMatrix& m = rho.matrix();

    if (traced_out == Subsystem::B) {
        ComplexMatrix out(da, da);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < da; ++j) {
                cdouble s = 0.0;
                for (std::size_t b = 0; b < db; ++b) s += m(i * db + b, j * db + b);
                out(i, j) = s;
            }
        return DensityMatrix::unchecked(std::move(out), {da, 1});
    }

    ComplexMatrix out(db, db);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            cdouble s = 0.0;
            for (std::size_t a = 0; a < da; ++a) s += m(a * db + i, a * db + j);
            out(i, j) = s;
        }
    return DensityMatrix::unchecked(std::move(out), {db, 1});
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
    const auto [da, db] = rho.dims();
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix out(da * db, da * db);

    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t b = 0; b < db; ++b)
            for (std::size_t ap = 0; ap < da; ++ap)
                for (std::size_t bp = 0; bp < db; ++bp) {
                    if (which == Subsystem::B)
                        out(a * db + b, ap * db + bp) = m(a * db + bp, ap * db + b);
                    else
                        out(a * db + b, ap * db + bp) = m(ap * db + b, a * db + bp);
                }
    return out;
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
    HermitianSpectrum spec = hermitian_eig(rho.matrix());
    double s = 0.0;
    for (double lam : spec.eigenvalues) s -= xlog2x(lam);
    return EntropyValue::finite(s);
}

EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                              double support_tol) {
    if (rho.dims() != sigma.dims())
        throw DimensionError("relative_entropy: states live on different bipartite spaces");
    const std::size_t n = rho.dim();

    HermitianSpectrum rs = hermitian_eig(rho.matrix());
    double tr_rho_log_rho = 0.0;
    for (double lam : rs.eigenvalues) tr_rho_log_rho += xlog2x(lam);

    HermitianSpectrum ss = hermitian_eig(sigma.matrix());

    // Probability weight rho puts on each eigenvector of sigma.
    double cross = 0.0;
    double kernel_mass = 0.0;
    const ComplexMatrix& w = ss.eigenvectors;
    const ComplexMatrix& r = rho.matrix();
    for (std::size_t k = 0; k < n; ++k) {
        cdouble acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cdouble row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += r(i, j) * w(j, k);
            acc += std::conj(w(i, k)) * row;
        }
        double q = acc.real();
        double mu = ss.eigenvalues[k];
        if (mu <= support_tol)
            kernel_mass += q;
        else
            cross += q * std::log2(mu);
    }

    if (kernel_mass > support_tol) return EntropyValue::infinite();
    return EntropyValue::finite(tr_rho_log_rho - cross);
}

EntropyValue mutual_information(const DensityMatrix& rho) {
    double sa = von_neumann_entropy(partial_trace(rho, Subsystem::B)).bits;
    double sb = von_neumann_entropy(partial_trace(rho, Subsystem::A)).bits;
    double sab = von_neumann_entropy(rho).bits;
    return EntropyValue::finite(sa + sb - sab);
}

DensityMatrix swap_subsystems(const DensityMatrix& rho) {
    const auto [da, db] = rho.dims();
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix out(da * db, da * db);
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t b = 0; b < db; ++b)
            for (std::size_t ap = 0; ap < da; ++ap)
                for (std::size_t bp = 0; bp < db; ++bp)
                    out(b * da + a, bp * da + ap) = m(a * db + b, ap * db + bp);
    return DensityMatrix::unchecked(std::move(out), {db, da});
}

DensityMatrix apply_local_unitary(const DensityMatrix& rho, const ComplexMatrix& u_a,
                                  const ComplexMatrix& u_b) {
    const auto [da, db] = rho.dims();
    if (u_a.rows() != da || u_a.cols() != da || u_b.rows() != db || u_b.cols() != db)
        throw DimensionError("apply_local_unitary: factor shapes do not match state dims");

    for (const ComplexMatrix* u : {&u_a, &u_b}) {
        ComplexMatrix g = u->adjoint() * (*u);
        g -= ComplexMatrix::identity(g.rows());
        double worst = 0.0;
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) worst = std::max(worst, std::abs(g(i, j)));
        if (worst > 1e-10)
            throw InvalidParameterError("apply_local_unitary: factor is not unitary (defect " +
                                        std::to_string(worst) + ")");
    }

    ComplexMatrix u = kron(u_a, u_b);
    ComplexMatrix out = u * rho.matrix() * u.adjoint();
    return DensityMatrix::unchecked(std::move(out), rho.dims());
}

DensityMatrix bipartite_kron(const DensityMatrix& x, const DensityMatrix& y) {
    const auto [xa, xb] = x.dims();
    const auto [ya, yb] = y.dims();
    const std::size_t da = xa * ya, db = xb * yb;
    ComplexMatrix out(da * db, da * db);

    // Plain kron would interleave the copies as (A1 B1 A2 B2); regroup the
    // indices so both A factors sit on the left of the composite cut.
    for (std::size_t ax = 0; ax < xa; ++ax)
        for (std::size_t ay = 0; ay < ya; ++ay)
            for (std::size_t bx = 0; bx < xb; ++bx)
                for (std::size_t by = 0; by < yb; ++by)
                    for (std::size_t axp = 0; axp < xa; ++axp)
                        for (std::size_t ayp = 0; ayp < ya; ++ayp)
                            for (std::size_t bxp = 0; bxp < xb; ++bxp)
                                for (std::size_t byp = 0; byp < yb; ++byp) {
                                    std::size_t row = (ax * ya + ay) * db + (bx * yb + by);
                                    std::size_t col = (axp * ya + ayp) * db + (bxp * yb + byp);
                                    out(row, col) = x.matrix()(ax * xb + bx, axp * xb + bxp) *
                                                    y.matrix()(ay * yb + by, ayp * yb + byp);
                                }
    return DensityMatrix::unchecked(std::move(out), {da, db});
}

}  // namespace qcorr
