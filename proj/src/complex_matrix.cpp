#include "entrocrit/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "entrocrit/errors.hpp"

namespace entrocrit {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
  if (rows == 0 || cols == 0) {
    throw ParameterRangeError("ComplexMatrix: dimensions must be positive");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& entries) {
  ComplexMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw ParameterRangeError("ComplexMatrix::from_rows: ragged rows");
    }
    std::size_t j = 0;
    for (const Complex& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const Complex& v : entries_) sum += std::norm(v);
  return std::sqrt(sum);
}

double ComplexMatrix::hermiticity_defect() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      sum += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
  return std::sqrt(sum);
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& v : entries_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw ParameterRangeError("ComplexMatrix: shape mismatch in addition");
  }
  for (std::size_t k = 0; k < entries_.size(); ++k)
    entries_[k] += rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw ParameterRangeError("ComplexMatrix: shape mismatch in subtraction");
  }
  for (std::size_t k = 0; k < entries_.size(); ++k)
    entries_[k] -= rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (Complex& v : entries_) v *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) {
    throw ParameterRangeError("ComplexMatrix: shape mismatch in product");
  }
  ComplexMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i) {
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw SizeLimitError("kron: result exceeds maximum matrix dimension");
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex scale = a(i, j);
      if (scale == Complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = scale * b(k, l);
    }
  }
  return out;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ParameterRangeError("frobenius_distance: shape mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      sum += std::norm(a(i, j) - b(i, j));
  return std::sqrt(sum);
}

}  // namespace entrocrit
