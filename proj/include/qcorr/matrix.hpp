// matrix.hpp
// Dense complex matrices, row-major. Sizes in this library stay tiny
// (at most 16x16 for the tensor-squared problems), so everything is a
// flat std::vector with no cleverness about storage or blocking.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qcorr {

using cdouble = std::complex<double>;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cdouble* data() { return data_.data(); }
    const cdouble* data() const { return data_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cdouble s);

    ComplexMatrix adjoint() const;
    cdouble trace() const;
    double frobenius_norm() const;

    // Largest |A - A^dagger| entry; zero for an exactly Hermitian matrix.
    double hermiticity_defect() const;

    // Averages A with its adjoint in place. Used after long accumulation
    // loops to stop rounding drift from leaking into eigensolves.
    void hermitize();

    bool all_finite() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cdouble s, ComplexMatrix m);

// Kronecker product; row index of the result is a*b.rows()+c, i.e. the left
// factor owns the slow index. All bipartite indexing in the library follows
// this convention.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// |u><v| for column vectors u, v.
ComplexMatrix outer(const std::vector<cdouble>& u, const std::vector<cdouble>& v);

std::vector<cdouble> matvec(const ComplexMatrix& m, const std::vector<cdouble>& v);

// <u|M|u> assuming M is Hermitian, hence a real result.
double quadratic_form(const ComplexMatrix& m, const std::vector<cdouble>& u);

double vec_norm(const std::vector<cdouble>& v);
void vec_normalize(std::vector<cdouble>& v);

}  // namespace qcorr
