#include "entrocrit/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "entrocrit/errors.hpp"
#include "entrocrit/rng.hpp"

namespace entrocrit {

void validate_dims(const BipartiteDims& dims) {
  if (dims.dA == 0 || dims.dB == 0) {
    throw ValidationError("dims mismatch: subsystem dimensions must be "
                          "positive");
  }
  if (dims.total() > kMaxMatrixDim) {
    throw SizeLimitError("dims out of range: dA*dB exceeds the maximum "
                         "matrix dimension");
  }
}

DensityMatrix DensityMatrix::validated(BipartiteDims dims, ComplexMatrix m,
                                       const Tolerances& tol) {
  validate_dims(dims);
  const std::size_t n = dims.total();
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream msg;
    msg << "dims mismatch: matrix is " << m.rows() << "x" << m.cols()
        << " but dims [" << dims.dA << "," << dims.dB << "] require " << n
        << "x" << n;
    throw ValidationError(msg.str());
  }
  if (!m.all_finite()) {
    throw ValidationError("non-finite entry in density matrix");
  }
  const double norm = m.frobenius_norm();
  if (m.hermiticity_defect() > 1e-9 * std::max(1.0, norm)) {
    throw ValidationError("hermiticity violated: matrix differs from its "
                          "adjoint beyond tolerance");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-9) {
    std::ostringstream msg;
    msg << "trace violated: trace is (" << tr.real() << "," << tr.imag()
        << "), expected 1";
    throw ValidationError(msg.str());
  }
  const double lam_min = min_eigenvalue(m);
  if (lam_min < -tol.psd) {
    std::ostringstream msg;
    msg << "positivity violated: min eigenvalue " << lam_min << " below -"
        << tol.psd;
    throw ValidationError(msg.str());
  }
  return DensityMatrix(dims, std::move(m));
}

PureState make_pure_state(BipartiteDims dims,
                          std::vector<Complex> amplitudes) {
  validate_dims(dims);
  if (amplitudes.size() != dims.total()) {
    throw ValidationError("dims mismatch: amplitude count does not match "
                          "dA*dB");
  }
  double norm2 = 0.0;
  for (const Complex& c : amplitudes) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError("non-finite entry in pure state");
    }
    norm2 += std::norm(c);
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) {
    throw ValidationError("pure state is not normalized within 1e-12");
  }
  return PureState{dims, std::move(amplitudes)};
}

DensityMatrix to_density(const PureState& psi, const Tolerances& tol) {
  const std::size_t n = psi.amplitudes.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
  return DensityMatrix::validated(psi.dims, std::move(m), tol);
}

namespace {

void validate_single_density(const ComplexMatrix& m, const Tolerances& tol,
                             const char* what) {
  if (!m.is_square() || m.rows() == 0) {
    throw ValidationError(std::string(what) + ": factor must be square");
  }
  if (!m.all_finite()) {
    throw ValidationError(std::string(what) + ": non-finite entry");
  }
  if (m.hermiticity_defect() > 1e-9 * std::max(1.0, m.frobenius_norm())) {
    throw ValidationError(std::string(what) + ": hermiticity violated");
  }
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > 1e-9) {
    throw ValidationError(std::string(what) + ": trace violated");
  }
  if (min_eigenvalue(m) < -tol.psd) {
    throw ValidationError(std::string(what) + ": positivity violated");
  }
}

}  // namespace

void validate_ensemble(const SeparableEnsemble& e, const Tolerances& tol) {
  if (e.weights.size() != e.factors.size()) {
    throw ValidationError("ensemble: weight and factor counts differ");
  }
  if (e.weights.empty()) {
    throw ValidationError("ensemble: empty");
  }
  double sum = 0.0;
  for (double w : e.weights) {
    if (!(w >= 0.0)) {
      throw ValidationError("ensemble: negative weight");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("ensemble: weights do not sum to 1 within 1e-12");
  }
  const std::size_t dA = e.factors.front().first.rows();
  const std::size_t dB = e.factors.front().second.rows();
  for (const auto& [fa, fb] : e.factors) {
    validate_single_density(fa, tol, "ensemble factor A");
    validate_single_density(fb, tol, "ensemble factor B");
    if (fa.rows() != dA || fb.rows() != dB) {
      throw ValidationError("ensemble: factor dimensions are inconsistent");
    }
  }
}

DensityMatrix assemble(const SeparableEnsemble& e, const Tolerances& tol) {
  validate_ensemble(e, tol);
  const BipartiteDims dims{e.factors.front().first.rows(),
                           e.factors.front().second.rows()};
  validate_dims(dims);
  ComplexMatrix sum(dims.total(), dims.total());
  for (std::size_t t = 0; t < e.weights.size(); ++t) {
    if (e.weights[t] == 0.0) continue;
    sum += e.weights[t] * kron(e.factors[t].first, e.factors[t].second);
  }
  return DensityMatrix::validated(dims, std::move(sum), tol);
}

ComplexMatrix partial_trace(const DensityMatrix& rho, Subsystem traced_out) {
  const auto [dA, dB] = rho.dims();
  const ComplexMatrix& m = rho.mat();
  if (traced_out == Subsystem::B) {
    ComplexMatrix out(dA, dA);
    for (std::size_t i = 0; i < dA; ++i)
      for (std::size_t j = 0; j < dA; ++j)
        for (std::size_t b = 0; b < dB; ++b)
          out(i, j) += m(i * dB + b, j * dB + b);
    return out;
  }
  ComplexMatrix out(dB, dB);
  for (std::size_t a = 0; a < dB; ++a)
    for (std::size_t b = 0; b < dB; ++b)
      for (std::size_t i = 0; i < dA; ++i)
        out(a, b) += m(i * dB + a, i * dB + b);
  return out;
}

ComplexMatrix reduced_state(const DensityMatrix& rho, Subsystem side) {
  return partial_trace(rho, other(side));
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem side) {
  const auto [dA, dB] = rho.dims();
  const ComplexMatrix& m = rho.mat();
  ComplexMatrix out(dA * dB, dA * dB);
  for (std::size_t k = 0; k < dA; ++k)
    for (std::size_t l = 0; l < dB; ++l)
      for (std::size_t mm = 0; mm < dA; ++mm)
        for (std::size_t nn = 0; nn < dB; ++nn) {
          // <kl| rho^{T_A} |mn> = <ml| rho |kn>; side B swaps l and n.
          if (side == Subsystem::A) {
            out(k * dB + l, mm * dB + nn) = m(mm * dB + l, k * dB + nn);
          } else {
            out(k * dB + l, mm * dB + nn) = m(k * dB + nn, mm * dB + l);
          }
        }
  return out;
}

Spectrum schmidt_spectrum(const PureState& psi) {
  const auto [dA, dB] = psi.dims;
  ComplexMatrix gram(dA, dA);
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t j = 0; j < dA; ++j)
      for (std::size_t b = 0; b < dB; ++b)
        gram(i, j) +=
            psi.amplitudes[i * dB + b] * std::conj(psi.amplitudes[j * dB + b]);
  return eigh(gram).values;
}

PureState max_entangled_basis(std::size_t d, std::size_t j, std::size_t k) {
  if (d < 2) {
    throw ParameterRangeError("max_entangled_basis: d must be at least 2");
  }
  if (j < 1 || j > d || k < 1 || k > d) {
    throw IndexOutOfRangeError(
        "max_entangled_basis: labels j, k must lie in {1, ..., d}");
  }
  std::vector<Complex> amp(d * d, Complex(0.0, 0.0));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t n = 0; n < d; ++n) {
    const double angle = 2.0 * std::numbers::pi *
                         static_cast<double>(j) * static_cast<double>(n) /
                         static_cast<double>(d);
    amp[n * d + (n + k) % d] =
        Complex(scale * std::cos(angle), scale * std::sin(angle));
  }
  return make_pure_state(BipartiteDims{d, d}, std::move(amp));
}

SeparableProjector separable_projector(std::size_t d, std::size_t k) {
  if (d < 2) {
    throw ParameterRangeError("separable_projector: d must be at least 2");
  }
  if (k < 1 || k > d) {
    throw IndexOutOfRangeError(
        "separable_projector: label k must lie in {1, ..., d}");
  }
  ComplexMatrix proj(d * d, d * d);
  SeparableEnsemble ensemble;
  for (std::size_t n = 0; n < d; ++n) {
    const std::size_t partner = (n + k) % d;
    proj(n * d + partner, n * d + partner) = 1.0;
    ComplexMatrix fa(d, d), fb(d, d);
    fa(n, n) = 1.0;
    fb(partner, partner) = 1.0;
    ensemble.weights.push_back(1.0 / static_cast<double>(d));
    ensemble.factors.emplace_back(std::move(fa), std::move(fb));
  }
  return SeparableProjector{std::move(proj), std::move(ensemble)};
}

ComplexMatrix flip_operator(std::size_t d) {
  ComplexMatrix f(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) f(b * d + a, a * d + b) = 1.0;
  return f;
}

DensityMatrix werner(std::size_t d, double p) {
  if (d < 2) {
    throw ParameterRangeError("werner: d must be at least 2");
  }
  if (d * d > kMaxMatrixDim) {
    throw SizeLimitError("werner: d^2 exceeds the maximum matrix dimension");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterRangeError("werner: p must lie in [0, 1]");
  }
  const double dd = static_cast<double>(d);
  const double r_plus = dd * (dd + 1.0) / 2.0;
  const double r_minus = dd * (dd - 1.0) / 2.0;
  const ComplexMatrix f = flip_operator(d);
  const ComplexMatrix id = ComplexMatrix::identity(d * d);
  ComplexMatrix m = ((1.0 - p) / (2.0 * r_plus)) * (id + f) +
                    (p / (2.0 * r_minus)) * (id - f);
  return DensityMatrix::validated(BipartiteDims{d, d}, std::move(m));
}

CertifiedState isospectral_werner(std::size_t d, double p) {
  if (d % 2 == 0) {
    throw EvenDimensionError(
        "isospectral_werner: d must be odd so the eigenvalue multiplicities "
        "split into whole blocks of d");
  }
  if (d < 3) {
    throw ParameterRangeError("isospectral_werner: d must be at least 3");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterRangeError("isospectral_werner: p must lie in [0, 1]");
  }
  const double dd = static_cast<double>(d);
  const double r_plus = dd * (dd + 1.0) / 2.0;
  const double r_minus = dd * (dd - 1.0) / 2.0;
  // The first (d+1)/2 = r+/d projectors carry the symmetric weight, the
  // remaining (d-1)/2 = r-/d the antisymmetric one.
  const std::size_t blocks_plus = (d + 1) / 2;

  ComplexMatrix sum(d * d, d * d);
  SeparableEnsemble ensemble;
  for (std::size_t k = 1; k <= d; ++k) {
    const double weight =
        k <= blocks_plus ? (1.0 - p) / r_plus : p / r_minus;
    SeparableProjector pk = separable_projector(d, k);
    sum += weight * pk.projector;
    for (std::size_t t = 0; t < pk.ensemble.weights.size(); ++t) {
      ensemble.weights.push_back(weight);
      ensemble.factors.push_back(std::move(pk.ensemble.factors[t]));
    }
  }
  return CertifiedState{
      DensityMatrix::validated(BipartiteDims{d, d}, std::move(sum)),
      std::move(ensemble)};
}

CertifiedState isospectral_separable(std::span<const SpectrumBlock> blocks,
                                     std::size_t d) {
  if (d < 2) {
    throw ParameterRangeError("isospectral_separable: d must be at least 2");
  }
  if (d * d > kMaxMatrixDim) {
    throw SizeLimitError(
        "isospectral_separable: d^2 exceeds the maximum matrix dimension");
  }
  std::size_t total_multiplicity = 0;
  double total_weight = 0.0;
  for (const SpectrumBlock& b : blocks) {
    if (b.multiplicity == 0 || b.multiplicity % d != 0) {
      throw MultiplicityNotDivisibleError(
          "isospectral_separable: every multiplicity must be a positive "
          "multiple of d");
    }
    if (!(b.eigenvalue >= 0.0)) {
      throw ParameterRangeError(
          "isospectral_separable: eigenvalues must be nonnegative");
    }
    total_multiplicity += b.multiplicity;
    total_weight += b.eigenvalue * static_cast<double>(b.multiplicity);
  }
  if (total_multiplicity > d * d) {
    throw BudgetExceededError(
        "isospectral_separable: total multiplicity exceeds d^2");
  }
  if (std::abs(total_weight - 1.0) > 1e-10) {
    throw NotNormalizedError(
        "isospectral_separable: eigenvalues weighted by multiplicity must "
        "sum to 1 within 1e-10");
  }

  std::vector<SpectrumBlock> sorted(blocks.begin(), blocks.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SpectrumBlock& lhs, const SpectrumBlock& rhs) {
                     return lhs.eigenvalue > rhs.eigenvalue;
                   });

  ComplexMatrix sum(d * d, d * d);
  SeparableEnsemble ensemble;
  std::size_t next_k = 1;
  for (const SpectrumBlock& b : sorted) {
    for (std::size_t use = 0; use < b.multiplicity / d; ++use) {
      SeparableProjector pk = separable_projector(d, next_k++);
      sum += b.eigenvalue * pk.projector;
      for (std::size_t t = 0; t < pk.ensemble.weights.size(); ++t) {
        ensemble.weights.push_back(b.eigenvalue);
        ensemble.factors.push_back(std::move(pk.ensemble.factors[t]));
      }
    }
  }
  return CertifiedState{
      DensityMatrix::validated(BipartiteDims{d, d}, std::move(sum)),
      std::move(ensemble)};
}

DensityMatrix monotonicity_counterexample() {
  ComplexMatrix m(4, 4);
  m(0, 0) = 0.25;
  m(0, 3) = 0.25;
  m(3, 0) = 0.25;
  m(3, 3) = 0.25;
  m(1, 1) = 0.5;
  return DensityMatrix::validated(BipartiteDims{2, 2}, std::move(m));
}

PureState random_pure(BipartiteDims dims, std::uint64_t seed) {
  validate_dims(dims);
  SplitMix64 rng(seed);
  std::vector<Complex> amp(dims.total());
  double norm2 = 0.0;
  for (Complex& c : amp) {
    c = rng.gaussian_complex();
    norm2 += std::norm(c);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& c : amp) c *= scale;
  return make_pure_state(dims, std::move(amp));
}

DensityMatrix random_mixed(BipartiteDims dims, std::size_t rank,
                           std::uint64_t seed) {
  validate_dims(dims);
  const std::size_t n = dims.total();
  if (rank == 0 || rank > n) {
    throw ParameterRangeError("random_mixed: rank must lie in {1, ..., dA*dB}");
  }
  SplitMix64 rng(seed);
  ComplexMatrix g(n, rank);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < rank; ++r) g(i, r) = rng.gaussian_complex();
  ComplexMatrix m = g * g.adjoint();
  const double tr = m.trace().real();
  m *= Complex(1.0 / tr, 0.0);
  return DensityMatrix::validated(dims, std::move(m));
}

namespace {

ComplexMatrix random_pure_projector(std::size_t d, SplitMix64& rng) {
  std::vector<Complex> amp(d);
  double norm2 = 0.0;
  for (Complex& c : amp) {
    c = rng.gaussian_complex();
    norm2 += std::norm(c);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  ComplexMatrix proj(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      proj(i, j) = (scale * amp[i]) * std::conj(scale * amp[j]);
  return proj;
}

}  // namespace

CertifiedState random_separable(BipartiteDims dims, std::size_t terms,
                                std::uint64_t seed) {
  validate_dims(dims);
  if (terms == 0) {
    throw ParameterRangeError("random_separable: terms must be positive");
  }
  SplitMix64 rng(seed);
  SeparableEnsemble ensemble;
  // Uniform simplex weights: normalized exponentials.
  std::vector<double> raw(terms);
  double sum = 0.0;
  for (double& w : raw) {
    w = -std::log(rng.uniform_open01());
    sum += w;
  }
  for (std::size_t t = 0; t < terms; ++t) {
    ensemble.weights.push_back(raw[t] / sum);
    ComplexMatrix fa = random_pure_projector(dims.dA, rng);
    ComplexMatrix fb = random_pure_projector(dims.dB, rng);
    ensemble.factors.emplace_back(std::move(fa), std::move(fb));
  }
  DensityMatrix rho = assemble(ensemble);
  return CertifiedState{std::move(rho), std::move(ensemble)};
}

}  // namespace entrocrit
