#include "qcorr/measurement.hpp"

#include <cmath>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

MeasurementSet::MeasurementSet(std::vector<ComplexMatrix> kraus_ops) : ops_(std::move(kraus_ops)) {
    if (ops_.empty())
        throw IncompleteMeasurementError("measurement needs at least one Kraus operator");

    dim_ = ops_.front().rows();
    for (const auto& op : ops_) {
        if (!op.square() || op.rows() != dim_)
            throw IncompleteMeasurementError(
                "all Kraus operators must be square with a common dimension");
        if (!op.all_finite())
            throw IncompleteMeasurementError("Kraus operator has non-finite entries");
    }

    ComplexMatrix sum(dim_, dim_);
    for (const auto& op : ops_) sum += op.adjoint() * op;
    sum -= ComplexMatrix::identity(dim_);
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) worst = std::max(worst, std::abs(sum(i, j)));
    if (worst > kCompletenessTol)
        throw IncompleteMeasurementError(
            "Kraus operators violate completeness: |sum A^dag A - I| reaches " +
            std::to_string(worst));
}

MeasurementSet projective_pair(double theta, double phi) {
    cdouble u0 = std::cos(theta / 2.0);
    cdouble u1 = std::polar(std::sin(theta / 2.0), phi);
    std::vector<cdouble> u{u0, u1};
    std::vector<cdouble> v{-std::conj(u1), std::conj(u0)};  // orthogonal complement
    return MeasurementSet({outer(u, u), outer(v, v)});
}

ConditionalEnsemble apply_measurement(const DensityMatrix& rho, const MeasurementSet& m) {
    const auto [da, db] = rho.dims();
    if (m.subsystem_dim() != da)
        throw DimensionError("apply_measurement: operators act on dimension " +
                             std::to_string(m.subsystem_dim()) + ", subsystem A has " +
                             std::to_string(da));

    const ComplexMatrix& r = rho.matrix();
    ConditionalEnsemble out;

    for (std::size_t idx = 0; idx < m.kraus().size(); ++idx) {
        // Only E = A^dagger A touches the B marginal: Tr_A[(A(x)I) rho
        // (A(x)I)^dag] = Tr_A[(E(x)I) rho] by cyclicity under the A-trace.
        ComplexMatrix e = m.kraus()[idx].adjoint() * m.kraus()[idx];

        ComplexMatrix mb(db, db);
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t jp = 0; jp < db; ++jp) {
                cdouble s = 0.0;
                for (std::size_t a = 0; a < da; ++a)
                    for (std::size_t k = 0; k < da; ++k)
                        s += e(a, k) * r(k * db + j, a * db + jp);
                mb(j, jp) = s;
            }

        double p = mb.trace().real();
        if (p < kProbabilityFloor) continue;

        mb *= cdouble(1.0 / p, 0.0);
        out.probabilities.push_back(p);
        out.states_b.push_back(DensityMatrix::unchecked(std::move(mb), {db, 1}));
        out.outcome_index.push_back(idx);
    }
    return out;
}

double holevo_term(const DensityMatrix& rho, const MeasurementSet& m) {
    double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::A)).bits;
    ConditionalEnsemble ens = apply_measurement(rho, m);
    double avg = 0.0;
    for (std::size_t i = 0; i < ens.probabilities.size(); ++i)
        avg += ens.probabilities[i] * von_neumann_entropy(ens.states_b[i]).bits;
    return s_b - avg;
}

}  // namespace qcorr
