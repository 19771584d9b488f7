// measurement.hpp
// Generalized measurements on subsystem A and the classical information
// they reveal about B.
#pragma once

#include <vector>

#include "qcorr/state.hpp"

namespace qcorr {

constexpr double kCompletenessTol = 1e-10;

// Outcomes below this probability are dropped from conditional ensembles:
// their post-measurement states are numerically undefined and they
// contribute nothing to entropy averages.
constexpr double kProbabilityFloor = 1e-12;

// Kraus operators acting on subsystem A. Construction enforces the
// completeness relation sum_i A_i^dagger A_i = I within kCompletenessTol
// and throws IncompleteMeasurementError otherwise.
class MeasurementSet {
  public:
    explicit MeasurementSet(std::vector<ComplexMatrix> kraus_ops);

    const std::vector<ComplexMatrix>& kraus() const { return ops_; }
    std::size_t subsystem_dim() const { return dim_; }

  private:
    std::vector<ComplexMatrix> ops_;
    std::size_t dim_ = 0;
};

// Orthogonal qubit projector pair along the Bloch direction (theta, phi):
// |u> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> and its complement.
MeasurementSet projective_pair(double theta, double phi);

struct ConditionalEnsemble {
    std::vector<double> probabilities;
    std::vector<DensityMatrix> states_b;     // conditional B states, normalized
    std::vector<std::size_t> outcome_index;  // position in the Kraus list
};

// Applies the measurement to A: outcome i occurs with probability
// Tr[(A_i (x) I) rho (A_i (x) I)^dagger] and leaves B in the normalized
// partial trace of that operator. Sub-floor outcomes are excluded.
ConditionalEnsemble apply_measurement(const DensityMatrix& rho, const MeasurementSet& m);

// S(rho_B) - sum_i p_i S(rho_B|i): how much the measurement on A tells us
// about B, in bits. Nonnegative by concavity of entropy.
double holevo_term(const DensityMatrix& rho, const MeasurementSet& m);

}  // namespace qcorr
