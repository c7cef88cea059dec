#include "entrocrit/entropy.hpp"

#include <cmath>
#include <sstream>

#include "entrocrit/errors.hpp"

namespace entrocrit {

AlphaValue AlphaValue::finite(double value) {
  if (!std::isfinite(value)) {
    throw ParameterRangeError("AlphaValue: finite value required; use "
                              "AlphaValue::infinity() for the limit");
  }
  return AlphaValue(value, false);
}

AlphaValue AlphaValue::infinity() { return AlphaValue(0.0, true); }

double AlphaValue::value() const {
  if (infinite_) {
    throw ParameterRangeError("AlphaValue: no finite value at infinity");
  }
  return value_;
}

bool AlphaValue::is_von_neumann_limit() const {
  return !infinite_ && std::abs(value_ - 1.0) < kAlphaOneBand;
}

std::string AlphaValue::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream out;
  out << value_;
  return out.str();
}

const char* sign_name(Sign s) {
  switch (s) {
    case Sign::Negative: return "negative";
    case Sign::Zero: return "zero";
    case Sign::Positive: return "positive";
  }
  return "?";
}

std::vector<AlphaValue> default_alpha_grid() {
  std::vector<AlphaValue> grid;
  for (double a : {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
    grid.push_back(AlphaValue::finite(a));
  }
  grid.push_back(AlphaValue::infinity());
  return grid;
}

std::vector<AlphaValue> default_negative_alphas() {
  return {AlphaValue::finite(-0.5), AlphaValue::finite(-1.0),
          AlphaValue::finite(-2.0)};
}

std::vector<AlphaValue> full_alpha_grid() {
  std::vector<AlphaValue> grid = default_alpha_grid();
  for (const AlphaValue& a : default_negative_alphas()) grid.push_back(a);
  return grid;
}

bool proven_positivity_range(const AlphaValue& alpha) {
  if (alpha.is_infinite()) return true;
  const double a = alpha.value();
  return a == 0.0 || (a >= 1.0 && a <= 2.0);
}

double trace_power(const Spectrum& s, double alpha, double tau_rank) {
  double sum = 0.0;
  for (double v : s.values()) {
    if (alpha < 0.0) {
      sum += std::pow(v, alpha);
    } else if (v > tau_rank) {
      sum += alpha == 0.0 ? 1.0 : std::pow(v, alpha);
    }
  }
  return sum;
}

double von_neumann_entropy(const Spectrum& s, double tau_rank) {
  double sum = 0.0;
  for (double v : s.values()) {
    if (v > tau_rank) sum -= v * std::log(v);
  }
  return sum;
}

namespace {

void require_full_rank(const Spectrum& s, double tau_rank, const char* what) {
  if (s.min() <= tau_rank) {
    throw NotFullRankError(std::string(what) +
                           ": negative alpha requires a full-rank state");
  }
}

}  // namespace

double renyi_entropy(const Spectrum& s, const AlphaValue& alpha,
                     double tau_rank) {
  if (alpha.is_infinite()) return -std::log(s.max());
  if (alpha.is_von_neumann_limit()) return von_neumann_entropy(s, tau_rank);
  const double a = alpha.value();
  // + 0.0 flushes IEEE negative zero out of reported values.
  return std::log(trace_power(s, a, tau_rank)) / (1.0 - a) + 0.0;
}

double tsallis_entropy(const Spectrum& s, const AlphaValue& alpha,
                       double tau_rank) {
  if (alpha.is_infinite()) return 0.0;  // limit value
  if (alpha.is_von_neumann_limit()) return von_neumann_entropy(s, tau_rank);
  const double a = alpha.value();
  return (1.0 - trace_power(s, a, tau_rank)) / (a - 1.0) + 0.0;
}

EntropyResult conditional_renyi_from(const Spectrum& state,
                                     const Spectrum& reduced,
                                     const AlphaValue& alpha,
                                     Conditioning cond,
                                     const Tolerances& tol) {
  if (alpha.is_negative()) {
    require_full_rank(state, tol.rank, "conditional_renyi");
    require_full_rank(reduced, tol.rank, "conditional_renyi");
  }
  const double value = renyi_entropy(state, alpha, tol.rank) -
                       renyi_entropy(reduced, alpha, tol.rank) + 0.0;
  return EntropyResult{alpha, EntropyKind::Renyi, cond, value,
                       ValueState::Finite, false};
}

EntropyResult conditional_tsallis_from(const Spectrum& state,
                                       const Spectrum& reduced,
                                       const AlphaValue& alpha,
                                       Conditioning cond,
                                       const Tolerances& tol) {
  if (alpha.is_infinite()) {
    // Limit of the ratio form: 0 when ||rho_A|| >= ||rho||, divergent to
    // minus infinity otherwise.
    if (reduced.max() - state.max() >= -kSignDeadBand) {
      return EntropyResult{alpha, EntropyKind::Tsallis, cond, 0.0,
                           ValueState::Finite, true};
    }
    return EntropyResult{alpha, EntropyKind::Tsallis, cond, 0.0,
                         ValueState::NegativeInfinity, true};
  }
  if (alpha.is_von_neumann_limit()) {
    const double value = von_neumann_entropy(state, tol.rank) -
                         von_neumann_entropy(reduced, tol.rank);
    return EntropyResult{alpha, EntropyKind::Tsallis, cond, value,
                         ValueState::Finite, false};
  }
  const double a = alpha.value();
  if (a < 0.0) {
    require_full_rank(state, tol.rank, "conditional_tsallis");
    require_full_rank(reduced, tol.rank, "conditional_tsallis");
  }
  const double tr_reduced = trace_power(reduced, a, tol.rank);
  const double tr_state = trace_power(state, a, tol.rank);
  const double value =
      (tr_reduced - tr_state) / ((a - 1.0) * tr_reduced) + 0.0;
  return EntropyResult{alpha, EntropyKind::Tsallis, cond, value,
                       ValueState::Finite, false};
}

SignResult positivity_sign_from(const Spectrum& state, const Spectrum& reduced,
                                const AlphaValue& alpha,
                                const Tolerances& tol) {
  double margin = 0.0;
  if (alpha.is_infinite()) {
    margin = (reduced.max() - state.max()) /
             std::max(reduced.max(), state.max());
  } else if (alpha.is_von_neumann_limit()) {
    margin = von_neumann_entropy(state, tol.rank) -
             von_neumann_entropy(reduced, tol.rank);
  } else {
    const double a = alpha.value();
    if (a < 0.0) {
      require_full_rank(state, tol.rank, "positivity_sign");
      require_full_rank(reduced, tol.rank, "positivity_sign");
    }
    const double tr_reduced = trace_power(reduced, a, tol.rank);
    const double tr_state = trace_power(state, a, tol.rank);
    const double diff =
        a > 1.0 ? tr_reduced - tr_state : tr_state - tr_reduced;
    margin = diff / std::max(tr_reduced, tr_state) + 0.0;
  }
  Sign sign = Sign::Zero;
  if (margin > kSignDeadBand) sign = Sign::Positive;
  if (margin < -kSignDeadBand) sign = Sign::Negative;
  return SignResult{sign, margin};
}

namespace {

Spectrum state_spectrum(const ComplexMatrix& m) { return eigh(m).values; }

Conditioning conditioning_of(Subsystem side) {
  return side == Subsystem::A ? Conditioning::A : Conditioning::B;
}

}  // namespace

EntropyResult renyi(const ComplexMatrix& state, const AlphaValue& alpha,
                    const Tolerances& tol) {
  const Spectrum s = state_spectrum(state);
  if (alpha.is_negative()) require_full_rank(s, tol.rank, "renyi");
  return EntropyResult{alpha, EntropyKind::Renyi, Conditioning::None,
                       renyi_entropy(s, alpha, tol.rank), ValueState::Finite,
                       false};
}

EntropyResult renyi(const DensityMatrix& rho, const AlphaValue& alpha,
                    const Tolerances& tol) {
  return renyi(rho.mat(), alpha, tol);
}

EntropyResult tsallis(const ComplexMatrix& state, const AlphaValue& alpha,
                      const Tolerances& tol) {
  const Spectrum s = state_spectrum(state);
  if (alpha.is_negative()) require_full_rank(s, tol.rank, "tsallis");
  return EntropyResult{alpha, EntropyKind::Tsallis, Conditioning::None,
                       tsallis_entropy(s, alpha, tol.rank),
                       ValueState::Finite, alpha.is_infinite()};
}

EntropyResult tsallis(const DensityMatrix& rho, const AlphaValue& alpha,
                      const Tolerances& tol) {
  return tsallis(rho.mat(), alpha, tol);
}

EntropyResult von_neumann(const ComplexMatrix& state, const Tolerances& tol) {
  const Spectrum s = state_spectrum(state);
  return EntropyResult{AlphaValue::finite(1.0), EntropyKind::VonNeumann,
                       Conditioning::None, von_neumann_entropy(s, tol.rank),
                       ValueState::Finite, false};
}

EntropyResult von_neumann(const DensityMatrix& rho, const Tolerances& tol) {
  return von_neumann(rho.mat(), tol);
}

EntropyResult conditional_renyi(const DensityMatrix& rho,
                                const AlphaValue& alpha,
                                Subsystem conditioned_on,
                                const Tolerances& tol) {
  const Spectrum s = state_spectrum(rho.mat());
  const Spectrum r = state_spectrum(reduced_state(rho, conditioned_on));
  return conditional_renyi_from(s, r, alpha, conditioning_of(conditioned_on),
                                tol);
}

EntropyResult conditional_tsallis(const DensityMatrix& rho,
                                  const AlphaValue& alpha,
                                  Subsystem conditioned_on,
                                  const Tolerances& tol) {
  const Spectrum s = state_spectrum(rho.mat());
  const Spectrum r = state_spectrum(reduced_state(rho, conditioned_on));
  return conditional_tsallis_from(s, r, alpha,
                                  conditioning_of(conditioned_on), tol);
}

SignResult positivity_sign(const DensityMatrix& rho, const AlphaValue& alpha,
                           Subsystem conditioned_on, const Tolerances& tol) {
  const Spectrum s = state_spectrum(rho.mat());
  const Spectrum r = state_spectrum(reduced_state(rho, conditioned_on));
  return positivity_sign_from(s, r, alpha, tol);
}

SweepTable alpha_sweep(const DensityMatrix& rho,
                       std::span<const AlphaValue> grid, SweepSides sides,
                       const Tolerances& tol) {
  if (grid.empty()) {
    throw ParameterRangeError("alpha_sweep: grid must be nonempty");
  }
  const Spectrum s = state_spectrum(rho.mat());
  std::vector<std::pair<Subsystem, Spectrum>> reductions;
  if (sides == SweepSides::A || sides == SweepSides::Both) {
    reductions.emplace_back(Subsystem::A,
                            state_spectrum(reduced_state(rho, Subsystem::A)));
  }
  if (sides == SweepSides::B || sides == SweepSides::Both) {
    reductions.emplace_back(Subsystem::B,
                            state_spectrum(reduced_state(rho, Subsystem::B)));
  }

  SweepTable table{{}, 0.0, false};
  bool have_margin = false;
  for (const AlphaValue& alpha : grid) {
    for (const auto& [side, r] : reductions) {
      const Conditioning cond = conditioning_of(side);
      SweepRow row{alpha,
                   side,
                   EntropyResult{alpha, EntropyKind::Renyi, Conditioning::None,
                                 0.0, ValueState::Undefined, false},
                   EntropyResult{alpha, EntropyKind::Renyi, Conditioning::None,
                                 0.0, ValueState::Undefined, false},
                   EntropyResult{alpha, EntropyKind::Tsallis,
                                 Conditioning::None, 0.0,
                                 ValueState::Undefined, false},
                   EntropyResult{alpha, EntropyKind::Renyi, cond, 0.0,
                                 ValueState::Undefined, false},
                   EntropyResult{alpha, EntropyKind::Tsallis, cond, 0.0,
                                 ValueState::Undefined, false},
                   std::nullopt,
                   proven_positivity_range(alpha),
                   std::nullopt};
      try {
        row.conditional_renyi = conditional_renyi_from(s, r, alpha, cond, tol);
        row.conditional_tsallis =
            conditional_tsallis_from(s, r, alpha, cond, tol);
        row.sign = positivity_sign_from(s, r, alpha, tol);
        row.renyi_state =
            EntropyResult{alpha, EntropyKind::Renyi, Conditioning::None,
                          renyi_entropy(s, alpha, tol.rank),
                          ValueState::Finite, false};
        row.renyi_reduced =
            EntropyResult{alpha, EntropyKind::Renyi, Conditioning::None,
                          renyi_entropy(r, alpha, tol.rank),
                          ValueState::Finite, false};
        row.tsallis_state =
            EntropyResult{alpha, EntropyKind::Tsallis, Conditioning::None,
                          tsallis_entropy(s, alpha, tol.rank),
                          ValueState::Finite, alpha.is_infinite()};
      } catch (const NotFullRankError&) {
        row.note = "skipped: negative alpha requires a full-rank state";
      }
      if (row.sign) {
        if (!have_margin || row.sign->margin < table.min_sign_margin) {
          table.min_sign_margin = row.sign->margin;
          have_margin = true;
        }
        if (row.sign->sign == Sign::Negative) table.any_negative = true;
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace entrocrit
