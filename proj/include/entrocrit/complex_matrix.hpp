#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "entrocrit/tolerances.hpp"

namespace entrocrit {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Entries are expected to stay finite;
// validation happens at the boundaries (file input, density-matrix
// construction), not on every arithmetic operation.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<double>& entries);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  // ||A - A^dagger||_F; requires a square matrix.
  double hermiticity_defect() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) {
    rhs *= scale;
    return rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) {
    lhs *= scale;
    return lhs;
  }
  friend ComplexMatrix operator*(double scale, ComplexMatrix rhs) {
    rhs *= Complex(scale, 0.0);
    return rhs;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& lhs,
                                 const ComplexMatrix& rhs);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

// Kronecker product; block (i,j) of the result is a(i,j) * b. Throws
// SizeLimitError when a result dimension would exceed max_dim.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim = kMaxMatrixDim);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace entrocrit
