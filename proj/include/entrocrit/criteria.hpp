#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entrocrit/entropy.hpp"
#include "entrocrit/states.hpp"
#include "entrocrit/tolerances.hpp"

namespace entrocrit {

enum class Criterion {
  Ppt,
  ReductionA,
  ReductionB,
  Rank,
  MajorizationA,
  MajorizationB,
  Entropic,
};

const char* criterion_name(Criterion c);

struct CriterionVerdict {
  Criterion criterion;
  bool holds;
  double margin;
  std::optional<std::string> witness;  // present whenever holds is false
};

// Positivity of the partial transpose; margin is the smallest eigenvalue of
// rho^{T_A} (the two transposition sides share a spectrum, side A is
// canonical).
CriterionVerdict ppt(const DensityMatrix& rho, const Tolerances& tol = {});

// rho_side (x) 1 - rho >= 0 (side A) resp. 1 (x) rho_B - rho >= 0 (side B);
// a violation implies distillability.
CriterionVerdict reduction(const DensityMatrix& rho, Subsystem side,
                           const Tolerances& tol = {});

// max(rank rho_A, rank rho_B) <= rank rho with ranks thresholded at
// tol.rank; margin is the integer difference reported as a float.
CriterionVerdict rank_criterion(const DensityMatrix& rho,
                                const Tolerances& tol = {});

// Spectrum of the chosen reduction majorizes the spectrum of rho.
CriterionVerdict majorization(const DensityMatrix& rho, Subsystem side,
                              const Tolerances& tol = {});

// Holds when the conditional-entropy sign margin stays >= -tol.entropic_margin
// at every grid alpha >= 0 on both conditioning sides.
CriterionVerdict entropic(const DensityMatrix& rho,
                          std::span<const AlphaValue> grid,
                          const Tolerances& tol = {});

// Assembled implication-chain record. consistency_violations must stay
// empty on every valid input; an entry indicates an implementation defect,
// not a physical discovery.
struct ChainReport {
  std::vector<CriterionVerdict> verdicts;
  std::optional<SeparableEnsemble> certificate;
  std::vector<std::string> consistency_violations;
  std::vector<std::string> notes;
};

// Evaluates every criterion and cross-checks each testable implication
// arrow: certificate => all criteria, PPT => reduction (per side),
// both-sided reduction => rank, reduction => entropic (per side,
// alpha >= 0), majorization => entropic (per side, alpha >= 0), full
// rank => entropic at negative alpha. The
// undistillability node has no finite test; notes report how the PPT and
// reduction verdicts bracket it. A supplied certificate must reassemble to
// rho within 1e-9 in Frobenius norm, otherwise CertificateMismatchError.
// An empty grid selects the full default alpha grid.
ChainReport chain_report(const DensityMatrix& rho,
                         const SeparableEnsemble* certificate = nullptr,
                         std::span<const AlphaValue> grid = {},
                         const Tolerances& tol = {});

// Bisection on the PPT margin of werner(d, p) over [lo, hi]; requires a
// sign change on the interval. Returns the crossing within p_tol.
double werner_ppt_boundary(std::size_t d, double lo = 0.0, double hi = 1.0,
                           double p_tol = 1e-6, const Tolerances& tol = {});

// Exploratory sampler: among random full-rank mixed states that pass the
// reduction criterion on both sides, counts majorization failures. Whether
// reduction implies majorization is open; this records evidence and asserts
// nothing.
struct ReductionMajorizationScan {
  std::size_t trials = 0;
  std::size_t reduction_pass = 0;
  std::size_t majorization_fail_given_reduction = 0;
  double min_majorization_margin_given_reduction = 0.0;
};

ReductionMajorizationScan explore_reduction_vs_majorization(
    BipartiteDims dims, std::size_t trials, std::uint64_t seed,
    const Tolerances& tol = {});

}  // namespace entrocrit
