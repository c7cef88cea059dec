#include "entrocrit/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entrocrit {

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw ParameterRangeError("Spectrum: non-finite eigenvalue");
    }
  }
  std::sort(values_.begin(), values_.end(), std::greater<double>());
}

double Spectrum::sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

std::size_t Spectrum::rank(double tau_rank) const {
  std::size_t r = 0;
  for (double v : values_) {
    if (v > tau_rank) ++r;
  }
  return r;
}

std::vector<std::pair<double, std::size_t>> Spectrum::distinct(
    double tol) const {
  std::vector<std::pair<double, std::size_t>> out;
  for (double v : values_) {
    if (!out.empty() && out.back().first - v <= tol) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
  double sum = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

HermitianEigen eigh(const ComplexMatrix& h) {
  if (!h.is_square() || h.rows() == 0) {
    throw NotHermitianError("eigh: input must be a nonempty square matrix");
  }
  const std::size_t n = h.rows();
  const double norm = h.frobenius_norm();
  if (h.hermiticity_defect() > 1e-9 * std::max(1.0, norm)) {
    throw NotHermitianError("eigh: matrix is not Hermitian within tolerance");
  }

  // Symmetrized working copy; exact no-op for Hermitian input up to roundoff.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double stop = 1e-13 * norm;
  constexpr int kMaxSweeps = 100;
  bool converged = off_diagonal_mass(a) <= stop;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex w = a(p, q);
        const double aw = std::abs(w);
        if (aw < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (app - aqq) / (2.0 * aw);
        const double sgn = tau >= 0.0 ? 1.0 : -1.0;
        const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        if (t == 0.0) continue;  // angle underflow, rotation is the identity
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const Complex s = (t * c) * std::conj(w / aw);

        // Unitary similarity with R = [[c, -conj(s)], [s, c]] on (p, q):
        // columns of A and V first, then rows of A.
        for (std::size_t i = 0; i < n; ++i) {
          const Complex aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip + s * aiq;
          a(i, q) = -std::conj(s) * aip + c * aiq;
          const Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip + s * viq;
          v(i, q) = -std::conj(s) * vip + c * viq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const Complex apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + std::conj(s) * aqj;
          a(q, j) = -s * apj + c * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
      }
    }
    converged = off_diagonal_mass(a) <= stop;
  }
  if (!converged) {
    throw NoConvergenceError("eigh: Jacobi iteration exceeded sweep budget");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t lhs, std::size_t rhs) {
                     return a(lhs, lhs).real() > a(rhs, rhs).real();
                   });

  std::vector<double> values(n);
  ComplexMatrix vectors(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) vectors(i, k) = v(i, order[k]);
  }
  return HermitianEigen{Spectrum(std::move(values)), std::move(vectors)};
}

double min_eigenvalue(const ComplexMatrix& h) { return eigh(h).values.min(); }

namespace {

bool is_integer(double x) { return std::nearbyint(x) == x; }

std::vector<double> apply_scalar_fn(const std::vector<double>& lam,
                                    const MatrixFn& f, const Tolerances& tol) {
  std::vector<double> out(lam.size());
  switch (f.kind) {
    case MatrixFn::Kind::Exp:
      for (std::size_t i = 0; i < lam.size(); ++i) out[i] = std::exp(lam[i]);
      break;
    case MatrixFn::Kind::Log:
      for (std::size_t i = 0; i < lam.size(); ++i) {
        if (lam[i] <= tol.rank) {
          throw DomainError("matrix_function: log requires a strictly "
                            "positive spectrum");
        }
        out[i] = std::log(lam[i]);
      }
      break;
    case MatrixFn::Kind::Power: {
      const double alpha = f.exponent;
      for (std::size_t i = 0; i < lam.size(); ++i) {
        double v = lam[i];
        if (alpha < 0.0) {
          if (v <= tol.rank) {
            throw DomainError("matrix_function: negative power requires a "
                              "full-rank positive spectrum");
          }
          out[i] = std::pow(v, alpha);
        } else if (alpha == 0.0) {
          out[i] = v > tol.rank ? 1.0 : 0.0;  // 0^0 = 0, trace gives the rank
        } else {
          if (v < -tol.psd && !is_integer(alpha)) {
            throw DomainError("matrix_function: fractional power of a "
                              "negative eigenvalue");
          }
          if (v < 0.0 && v >= -tol.psd) v = 0.0;
          out[i] = std::pow(v, alpha);
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace

ComplexMatrix matrix_function(const ComplexMatrix& h, const MatrixFn& f,
                              const Tolerances& tol) {
  const HermitianEigen e = eigh(h);
  const std::vector<double> flam =
      apply_scalar_fn(e.values.values(), f, tol);
  const std::size_t n = h.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (flam[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex scaled = flam[k] * e.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += scaled * std::conj(e.vectors(j, k));
      }
    }
  }
  return out;
}

double golden_thompson_gap(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw NotHermitianError(
        "golden_thompson_gap: inputs must be square matrices of equal size");
  }
  const ComplexMatrix ea = matrix_exp(a);
  const ComplexMatrix eb = matrix_exp(b);
  const ComplexMatrix eab = matrix_exp(a + b);
  const Complex gap = (ea * eb).trace() - eab.trace();
  if (std::abs(gap.imag()) > 1e-10) {
    throw Error("golden_thompson_gap: trace difference has a nonvanishing "
                "imaginary part");
  }
  return gap.real();
}

}  // namespace entrocrit
