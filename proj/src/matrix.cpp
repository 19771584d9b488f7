#include "qcorr/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace qcorr {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix addition: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix subtraction: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble s) {
    for (auto& x : data_) x *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

cdouble ComplexMatrix::trace() const {
    cdouble t = 0.0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : data_) s += std::norm(x);
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j) {
            double d = std::abs((*this)(i, j) - std::conj((*this)(j, i)));
            if (d > worst) worst = d;
        }
    return worst;
}

void ComplexMatrix::hermitize() {
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, i) = cdouble((*this)(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < cols_; ++j) {
            cdouble avg = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            (*this)(i, j) = avg;
            (*this)(j, i) = std::conj(avg);
        }
    }
}

bool ComplexMatrix::all_finite() const {
    for (const auto& x : data_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows())
        throw std::invalid_argument("matrix product: inner dimension mismatch");
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            cdouble a = lhs(i, k);
            if (a == cdouble{}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

ComplexMatrix operator*(cdouble s, ComplexMatrix m) { return m *= s; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            cdouble aij = a(i, j);
            if (aij == cdouble{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix outer(const std::vector<cdouble>& u, const std::vector<cdouble>& v) {
    ComplexMatrix out(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
    return out;
}

std::vector<cdouble> matvec(const ComplexMatrix& m, const std::vector<cdouble>& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<cdouble> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cdouble s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double quadratic_form(const ComplexMatrix& m, const std::vector<cdouble>& u) {
    cdouble s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cdouble row = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * u[j];
        s += std::conj(u[i]) * row;
    }
    return s.real();
}

double vec_norm(const std::vector<cdouble>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

void vec_normalize(std::vector<cdouble>& v) {
    double n = vec_norm(v);
    if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
    for (auto& x : v) x /= n;
}

}  // namespace qcorr
