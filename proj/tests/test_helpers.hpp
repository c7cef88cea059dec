#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "entrocrit/eigen.hpp"
#include "entrocrit/rng.hpp"
#include "entrocrit/states.hpp"

namespace entrocrit::testing {

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols,
                                   SplitMix64& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.gaussian_complex();
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, SplitMix64& rng,
                                      double scale = 1.0) {
  ComplexMatrix g = random_matrix(n, n, rng);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = 0.5 * scale * (g(i, j) + std::conj(g(j, i)));
  return h;
}

// G G^dagger / n + floor * 1; positive definite with min eigenvalue >= floor.
inline ComplexMatrix random_psd(std::size_t n, SplitMix64& rng,
                                double floor = 0.0) {
  ComplexMatrix g = random_matrix(n, n, rng);
  ComplexMatrix m = g * g.adjoint();
  m *= Complex(1.0 / static_cast<double>(n), 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += floor;
  return m;
}

// Unitary from the spectral phases of a random Hermitian matrix.
inline ComplexMatrix random_unitary(std::size_t n, SplitMix64& rng) {
  const HermitianEigen e = eigh(random_hermitian(n, rng));
  ComplexMatrix u(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase(std::cos(e.values[k]), std::sin(e.values[k]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        u(i, j) += phase * e.vectors(i, k) * std::conj(e.vectors(j, k));
  }
  return u;
}

// |Phi+> = sum_i |ii> / sqrt(d).
inline PureState max_entangled_state(std::size_t d) {
  std::vector<Complex> amp(d * d, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < d; ++i)
    amp[i * d + i] = Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0);
  return make_pure_state(BipartiteDims{d, d}, std::move(amp));
}

inline double max_abs_entry_diff(const ComplexMatrix& a,
                                 const ComplexMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace entrocrit::testing
