#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entrocrit/eigen.hpp"
#include "entrocrit/states.hpp"
#include "entrocrit/tolerances.hpp"

namespace entrocrit {

// Entropic parameter: any finite real or positive infinity. Values within
// kAlphaOneBand of 1 route to the von Neumann limit.
class AlphaValue {
 public:
  static AlphaValue finite(double value);
  static AlphaValue infinity();

  bool is_infinite() const { return infinite_; }
  double value() const;  // finite values only
  bool is_negative() const { return !infinite_ && value_ < 0.0; }
  bool is_von_neumann_limit() const;

  std::string to_string() const;

 private:
  AlphaValue(double value, bool infinite) : value_(value), infinite_(infinite) {}

  double value_ = 0.0;
  bool infinite_ = false;
};

inline constexpr double kAlphaOneBand = 1e-9;
inline constexpr double kSignDeadBand = 1e-12;

// Natural logarithms throughout.
enum class EntropyKind { Renyi, Tsallis, VonNeumann };
enum class Conditioning { None, A, B };
enum class ValueState { Finite, Undefined, NegativeInfinity };

struct EntropyResult {
  AlphaValue alpha;
  EntropyKind kind;
  Conditioning conditional;
  double value = 0.0;           // meaningful only when state == Finite
  ValueState state = ValueState::Finite;
  bool is_limit = false;        // set when an alpha -> infinity limit is used
};

enum class Sign { Negative, Zero, Positive };

const char* sign_name(Sign s);

struct SignResult {
  Sign sign;
  double margin;  // oriented, normalized; positive means entropy >= 0
};

// Default grid: the distinguished points 0, 1, infinity, the proven range
// [1, 2], and probes outside it.
std::vector<AlphaValue> default_alpha_grid();
std::vector<AlphaValue> default_negative_alphas();
// Nonnegative grid followed by the negative probes.
std::vector<AlphaValue> full_alpha_grid();

// True for alpha in {0, infinity} or [1, 2], where positivity of the
// conditional entropies is proven for separable states.
bool proven_positivity_range(const AlphaValue& alpha);

// --- spectrum-level core ------------------------------------------------
// Eigenvalues at or below tau_rank are treated as zero for alpha >= 0
// (dropped from sums, excluded from the rank). Negative alpha assumes a
// full-rank spectrum; callers check.

double trace_power(const Spectrum& s, double alpha, double tau_rank);
double von_neumann_entropy(const Spectrum& s, double tau_rank);
double renyi_entropy(const Spectrum& s, const AlphaValue& alpha,
                     double tau_rank);
double tsallis_entropy(const Spectrum& s, const AlphaValue& alpha,
                       double tau_rank);

EntropyResult conditional_renyi_from(const Spectrum& state,
                                     const Spectrum& reduced,
                                     const AlphaValue& alpha,
                                     Conditioning cond,
                                     const Tolerances& tol = {});
EntropyResult conditional_tsallis_from(const Spectrum& state,
                                       const Spectrum& reduced,
                                       const AlphaValue& alpha,
                                       Conditioning cond,
                                       const Tolerances& tol = {});
SignResult positivity_sign_from(const Spectrum& state, const Spectrum& reduced,
                                const AlphaValue& alpha,
                                const Tolerances& tol = {});

// --- matrix-level operations ---------------------------------------------

EntropyResult renyi(const ComplexMatrix& state, const AlphaValue& alpha,
                    const Tolerances& tol = {});
EntropyResult renyi(const DensityMatrix& rho, const AlphaValue& alpha,
                    const Tolerances& tol = {});
EntropyResult tsallis(const ComplexMatrix& state, const AlphaValue& alpha,
                      const Tolerances& tol = {});
EntropyResult tsallis(const DensityMatrix& rho, const AlphaValue& alpha,
                      const Tolerances& tol = {});
EntropyResult von_neumann(const ComplexMatrix& state,
                          const Tolerances& tol = {});
EntropyResult von_neumann(const DensityMatrix& rho,
                          const Tolerances& tol = {});

// Conditional entropies S(rho) - S(rho_side) and the Tsallis ratio form;
// conditioned_on selects which reduction enters.
EntropyResult conditional_renyi(const DensityMatrix& rho,
                                const AlphaValue& alpha,
                                Subsystem conditioned_on,
                                const Tolerances& tol = {});
EntropyResult conditional_tsallis(const DensityMatrix& rho,
                                  const AlphaValue& alpha,
                                  Subsystem conditioned_on,
                                  const Tolerances& tol = {});

// Sign of the conditional entropies via the equivalent trace comparison:
// tr(rho_A^alpha) >= tr(rho^alpha) for alpha > 1 and the reverse orientation
// for alpha < 1; operator norms at alpha = infinity; the conditional von
// Neumann entropy at alpha = 1. Margin is the oriented difference normalized
// by the larger trace; the sign uses a +-1e-12 dead band.
SignResult positivity_sign(const DensityMatrix& rho, const AlphaValue& alpha,
                           Subsystem conditioned_on,
                           const Tolerances& tol = {});

enum class SweepSides { A, B, Both };

struct SweepRow {
  AlphaValue alpha;
  Subsystem side;
  EntropyResult renyi_state;
  EntropyResult renyi_reduced;
  EntropyResult tsallis_state;
  EntropyResult conditional_renyi;
  EntropyResult conditional_tsallis;
  std::optional<SignResult> sign;  // absent when undefined (negative alpha
                                   // on a rank-deficient state)
  bool proven_range;
  std::optional<std::string> note;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  double min_sign_margin;  // over all rows with a defined sign
  bool any_negative;       // any defined row with a negative sign
};

// One row per (alpha, side). Rows that cannot be evaluated (negative alpha
// without full rank) carry Undefined markers and a note instead of aborting
// the sweep.
SweepTable alpha_sweep(const DensityMatrix& rho,
                       std::span<const AlphaValue> grid, SweepSides sides,
                       const Tolerances& tol = {});

}  // namespace entrocrit
