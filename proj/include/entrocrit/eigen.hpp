#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "entrocrit/complex_matrix.hpp"
#include "entrocrit/errors.hpp"
#include "entrocrit/tolerances.hpp"

namespace entrocrit {

// Real eigenvalue list kept sorted in descending order.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double max() const { return values_.front(); }
  double min() const { return values_.back(); }

  double sum() const;
  // Number of eigenvalues strictly above tau_rank.
  std::size_t rank(double tau_rank) const;
  // Distinct values with multiplicities; neighbours within tol are merged.
  std::vector<std::pair<double, std::size_t>> distinct(double tol) const;

 private:
  std::vector<double> values_;
};

struct HermitianEigen {
  Spectrum values;        // descending
  ComplexMatrix vectors;  // column k is the eigenvector for values[k]
};

// Hermitian eigendecomposition via cyclic complex Jacobi rotations.
// Converges when the off-diagonal Frobenius mass drops below
// 1e-13 * ||H||_F; at most 100 sweeps, then NoConvergenceError. The input
// must be Hermitian within 1e-9 * max(1, ||H||_F) or NotHermitianError is
// thrown. Output is deterministic for a fixed input.
HermitianEigen eigh(const ComplexMatrix& h);

double min_eigenvalue(const ComplexMatrix& h);

// Scalar function tag for spectral matrix calculus.
struct MatrixFn {
  enum class Kind { Power, Log, Exp };

  static MatrixFn power(double alpha) { return MatrixFn{Kind::Power, alpha}; }
  static MatrixFn log() { return MatrixFn{Kind::Log, 0.0}; }
  static MatrixFn exp() { return MatrixFn{Kind::Exp, 0.0}; }

  Kind kind;
  double exponent;
};

// V f(Lambda) V^dagger on the eigenbasis of h. Conventions: eigenvalues in
// [-tau_psd, 0) are clipped to 0 for nonnegative powers, 0^0 = 0 so that
// power(0) traces to the rank, log and negative powers require all
// eigenvalues above tau_rank (DomainError otherwise).
ComplexMatrix matrix_function(const ComplexMatrix& h, const MatrixFn& f,
                              const Tolerances& tol = {});

inline ComplexMatrix matrix_power(const ComplexMatrix& h, double alpha,
                                  const Tolerances& tol = {}) {
  return matrix_function(h, MatrixFn::power(alpha), tol);
}
inline ComplexMatrix matrix_log(const ComplexMatrix& h,
                                const Tolerances& tol = {}) {
  return matrix_function(h, MatrixFn::log(), tol);
}
inline ComplexMatrix matrix_exp(const ComplexMatrix& h,
                                const Tolerances& tol = {}) {
  return matrix_function(h, MatrixFn::exp(), tol);
}

// tr(e^a e^b) - tr(e^{a+b}) for Hermitian a, b of equal dimension. The
// trace difference is real; an imaginary part above 1e-10 in magnitude is
// treated as an internal error.
double golden_thompson_gap(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace entrocrit
