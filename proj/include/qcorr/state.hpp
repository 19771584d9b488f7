// state.hpp
// Bipartite density matrices and the entropic quantities built on them.
// All entropies are in bits (base-2 logs throughout).
#pragma once

#include <cstddef>

#include "qcorr/eig.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

// Eigenvalues in [-1e-10, 0) are clipped to zero during validation and the
// trace renormalized; anything more negative is rejected as non-physical.
constexpr double kPsdTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kHermitianTol = 1e-10;

// Support tolerance for relative entropy: sigma eigenvalues at or below
// this count as zero, and rho mass on that kernel makes the result infinite.
constexpr double kSupportTol = 1e-10;

struct BipartiteDims {
    std::size_t d_a = 0;
    std::size_t d_b = 0;

    std::size_t total() const { return d_a * d_b; }
    bool operator==(const BipartiteDims&) const = default;
};

enum class Subsystem { A, B };

// A density matrix together with its tensor factorization. Instances are
// only created through validate() or by internal operations that preserve
// the density-matrix properties by construction, so holding one is proof
// the matrix was checked.
class DensityMatrix {
  public:
    const ComplexMatrix& matrix() const { return mat_; }
    BipartiteDims dims() const { return dims_; }
    std::size_t dim() const { return dims_.total(); }

    // Bypasses validation; for matrices that are density matrices by
    // construction (partial traces, convex mixtures of states, ...).
    static DensityMatrix unchecked(ComplexMatrix m, BipartiteDims dims);

  private:
    DensityMatrix(ComplexMatrix m, BipartiteDims dims);

    ComplexMatrix mat_;
    BipartiteDims dims_;
};

// Checks shape, hermiticity, positivity and unit trace (tolerances above),
// clips eigenvalues in [-kPsdTol, 0) to zero, renormalizes the trace, and
// returns the cleaned state. Throws InvalidStateError or DimensionError.
DensityMatrix validate(const ComplexMatrix& m, BipartiteDims dims);

// Entropy-like quantities can be infinite (relative entropy across
// mismatched supports), so they carry an explicit flag instead of
// smuggling IEEE infinities through arithmetic.
struct EntropyValue {
    double bits = 0.0;
    bool is_infinite = false;

    static EntropyValue finite(double v) { return {v, false}; }
    static EntropyValue infinite() { return {0.0, true}; }
};

// Traced_out names the subsystem that is summed away; the result keeps the
// other one (as its A factor, with d_b = 1).
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced_out);

// Transpose on one tensor factor only. The result is Hermitian but in
// general not positive, which is the point: its negative eigenvalues
// witness entanglement. Returned as a plain matrix for that reason.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which);

EntropyValue von_neumann_entropy(const DensityMatrix& rho);

// S(rho || sigma) = Tr rho (log2 rho - log2 sigma). Infinite when rho has
// more than support_tol of probability mass on sigma's kernel.
EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                              double support_tol = kSupportTol);

// I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB). Also equals the relative
// entropy to the product of marginals; the selftest suite holds the two
// routes together to 1e-8.
EntropyValue mutual_information(const DensityMatrix& rho);

// Exchanges the roles of A and B; dims swap accordingly.
DensityMatrix swap_subsystems(const DensityMatrix& rho);

// (u_a (x) u_b) rho (u_a (x) u_b)^dagger. Throws if either factor is not
// unitary within 1e-10 or the shapes do not match the state's dims.
DensityMatrix apply_local_unitary(const DensityMatrix& rho, const ComplexMatrix& u_a,
                                  const ComplexMatrix& u_b);

// Tensor product of two bipartite states regrouped so the A factors sit
// together: the result is bipartite with d_a = x.d_a * y.d_a and
// d_b = x.d_b * y.d_b. Needed to pose two-copy problems on one cut.
DensityMatrix bipartite_kron(const DensityMatrix& x, const DensityMatrix& y);

}  // namespace qcorr
