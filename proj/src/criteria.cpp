#include "entrocrit/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "entrocrit/errors.hpp"
#include "entrocrit/majorization.hpp"
#include "entrocrit/rng.hpp"

namespace entrocrit {

const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::Ppt: return "ppt";
    case Criterion::ReductionA: return "reduction_A";
    case Criterion::ReductionB: return "reduction_B";
    case Criterion::Rank: return "rank";
    case Criterion::MajorizationA: return "majorization_A";
    case Criterion::MajorizationB: return "majorization_B";
    case Criterion::Entropic: return "entropic";
  }
  return "?";
}

CriterionVerdict ppt(const DensityMatrix& rho, const Tolerances& tol) {
  const Spectrum spec = eigh(partial_transpose(rho, Subsystem::A)).values;
  const double margin = spec.min();
  const bool holds = margin >= -tol.psd;
  std::optional<std::string> witness;
  if (!holds) {
    std::ostringstream msg;
    msg << "partial transpose eigenvalue " << margin << " at index "
        << spec.size() - 1 << " of the descending spectrum";
    witness = msg.str();
  }
  return CriterionVerdict{Criterion::Ppt, holds, margin, witness};
}

CriterionVerdict reduction(const DensityMatrix& rho, Subsystem side,
                           const Tolerances& tol) {
  const auto [dA, dB] = rho.dims();
  const ComplexMatrix red = reduced_state(rho, side);
  ComplexMatrix op =
      side == Subsystem::A
          ? kron(red, ComplexMatrix::identity(dB))
          : kron(ComplexMatrix::identity(dA), red);
  op -= rho.mat();
  const double margin = min_eigenvalue(op);
  const bool holds = margin >= -tol.psd;
  std::optional<std::string> witness;
  if (!holds) {
    std::ostringstream msg;
    msg << "reduction operator on side " << subsystem_name(side)
        << " has min eigenvalue " << margin;
    witness = msg.str();
  }
  const Criterion c = side == Subsystem::A ? Criterion::ReductionA
                                           : Criterion::ReductionB;
  return CriterionVerdict{c, holds, margin, witness};
}

CriterionVerdict rank_criterion(const DensityMatrix& rho,
                                const Tolerances& tol) {
  const std::size_t rank_state = eigh(rho.mat()).values.rank(tol.rank);
  const std::size_t rank_a =
      eigh(reduced_state(rho, Subsystem::A)).values.rank(tol.rank);
  const std::size_t rank_b =
      eigh(reduced_state(rho, Subsystem::B)).values.rank(tol.rank);
  const std::size_t rank_red = std::max(rank_a, rank_b);
  const double margin = static_cast<double>(rank_state) -
                        static_cast<double>(rank_red);
  const bool holds = margin >= 0.0;
  std::optional<std::string> witness;
  if (!holds) {
    std::ostringstream msg;
    msg << "rank(rho)=" << rank_state << " below max(rank(rho_A)=" << rank_a
        << ", rank(rho_B)=" << rank_b << ")";
    witness = msg.str();
  }
  return CriterionVerdict{Criterion::Rank, holds, margin, witness};
}

CriterionVerdict majorization(const DensityMatrix& rho, Subsystem side,
                              const Tolerances& tol) {
  const Spectrum reduced = eigh(reduced_state(rho, side)).values;
  const Spectrum state = eigh(rho.mat()).values;
  const MajorizationResult res = majorizes(reduced, state, tol);
  std::optional<std::string> witness;
  if (!res.holds) {
    std::ostringstream msg;
    msg << "partial-sum deficit " << res.margin << " at k=" << res.worst_k;
    witness = msg.str();
  }
  const Criterion c = side == Subsystem::A ? Criterion::MajorizationA
                                           : Criterion::MajorizationB;
  return CriterionVerdict{c, res.holds, res.margin, witness};
}

namespace {

// Per-side digest of an alpha sweep, shared by the entropic verdict and
// the chain-report implication checks.
struct EntropicDigest {
  double min_margin_nonneg = std::numeric_limits<double>::infinity();
  double min_margin_nonneg_A = std::numeric_limits<double>::infinity();
  double min_margin_nonneg_B = std::numeric_limits<double>::infinity();
  double min_margin_negative = std::numeric_limits<double>::infinity();
  bool has_nonneg = false;
  bool has_negative = false;
  bool negative_skipped = false;
  AlphaValue worst_alpha = AlphaValue::finite(0.0);
  Subsystem worst_side = Subsystem::A;
};

EntropicDigest digest_sweep(const SweepTable& table) {
  EntropicDigest d;
  for (const SweepRow& row : table.rows) {
    if (!row.sign) {
      if (row.alpha.is_negative()) d.negative_skipped = true;
      continue;
    }
    const double m = row.sign->margin;
    if (row.alpha.is_negative()) {
      d.min_margin_negative = std::min(d.min_margin_negative, m);
      d.has_negative = true;
      continue;
    }
    if (!d.has_nonneg || m < d.min_margin_nonneg) {
      d.min_margin_nonneg = m;
      d.worst_alpha = row.alpha;
      d.worst_side = row.side;
      d.has_nonneg = true;
    }
    double& side_min = row.side == Subsystem::A ? d.min_margin_nonneg_A
                                                : d.min_margin_nonneg_B;
    side_min = std::min(side_min, m);
  }
  return d;
}

CriterionVerdict entropic_verdict(const EntropicDigest& d,
                                  const Tolerances& tol) {
  const double margin = d.has_nonneg ? d.min_margin_nonneg : 0.0;
  const bool holds = margin >= -tol.entropic_margin;
  std::optional<std::string> witness;
  if (!holds) {
    std::ostringstream msg;
    msg << "sign margin " << margin << " at alpha=" << d.worst_alpha.to_string()
        << " on side " << subsystem_name(d.worst_side);
    witness = msg.str();
  }
  return CriterionVerdict{Criterion::Entropic, holds, margin, witness};
}

}  // namespace

CriterionVerdict entropic(const DensityMatrix& rho,
                          std::span<const AlphaValue> grid,
                          const Tolerances& tol) {
  const SweepTable table = alpha_sweep(rho, grid, SweepSides::Both, tol);
  return entropic_verdict(digest_sweep(table), tol);
}

ChainReport chain_report(const DensityMatrix& rho,
                         const SeparableEnsemble* certificate,
                         std::span<const AlphaValue> grid,
                         const Tolerances& tol) {
  const std::vector<AlphaValue> default_grid =
      grid.empty() ? full_alpha_grid() : std::vector<AlphaValue>{};
  if (grid.empty()) grid = default_grid;

  ChainReport report;
  if (certificate != nullptr) {
    const DensityMatrix reassembled = assemble(*certificate, tol);
    const double err = frobenius_distance(reassembled.mat(), rho.mat());
    if (err > 1e-9) {
      std::ostringstream msg;
      msg << "certificate reassembles to a state at Frobenius distance "
          << err << " from rho";
      throw CertificateMismatchError(msg.str());
    }
    report.certificate = *certificate;
    std::ostringstream note;
    note << "separability certificate verified (reassembly error " << err
         << ")";
    report.notes.push_back(note.str());
  }

  const CriterionVerdict v_ppt = ppt(rho, tol);
  const CriterionVerdict v_red_a = reduction(rho, Subsystem::A, tol);
  const CriterionVerdict v_red_b = reduction(rho, Subsystem::B, tol);
  const CriterionVerdict v_rank = rank_criterion(rho, tol);
  const CriterionVerdict v_maj_a = majorization(rho, Subsystem::A, tol);
  const CriterionVerdict v_maj_b = majorization(rho, Subsystem::B, tol);
  const SweepTable sweep = alpha_sweep(rho, grid, SweepSides::Both, tol);
  const EntropicDigest digest = digest_sweep(sweep);
  const CriterionVerdict v_entropic = entropic_verdict(digest, tol);

  report.verdicts = {v_ppt, v_red_a, v_red_b, v_rank,
                     v_maj_a, v_maj_b, v_entropic};

  auto violate = [&report](const std::string& arrow) {
    report.consistency_violations.push_back(arrow);
  };

  if (certificate != nullptr) {
    for (const CriterionVerdict& v : report.verdicts) {
      if (!v.holds) {
        violate(std::string("certificate=>") + criterion_name(v.criterion));
      }
    }
  }
  if (v_ppt.holds && !v_red_a.holds) violate("ppt=>reduction_A");
  if (v_ppt.holds && !v_red_b.holds) violate("ppt=>reduction_B");
  // The rank bound sits below the conjunction of both reduction
  // conditions. A single side does not imply it: on 2x4, an equal mixture
  // of two maximally entangled states on disjoint B-subspaces passes
  // reduction on side A yet has rank(rho_B) = 4 > rank(rho) = 2.
  if (v_red_a.holds && v_red_b.holds && v_rank.margin < 0.0) {
    violate("reduction=>rank");
  }

  const double slack = tol.entropic_margin;
  if (v_red_a.holds && digest.min_margin_nonneg_A < -slack) {
    violate("reduction_A=>entropic_A");
  }
  if (v_red_b.holds && digest.min_margin_nonneg_B < -slack) {
    violate("reduction_B=>entropic_B");
  }
  if (v_maj_a.holds && digest.min_margin_nonneg_A < -slack) {
    violate("majorization_A=>entropic_A");
  }
  if (v_maj_b.holds && digest.min_margin_nonneg_B < -slack) {
    violate("majorization_B=>entropic_B");
  }

  const Spectrum state_spec = eigh(rho.mat()).values;
  const bool full_rank = state_spec.min() > tol.rank;
  if (full_rank && digest.has_negative &&
      digest.min_margin_negative < -slack) {
    violate("full_rank=>entropic_negative");
  }

  // Distillability and the untestable undistillability node.
  if (!v_red_a.holds || !v_red_b.holds) {
    report.notes.push_back("distillable: reduction criterion violated");
    report.notes.push_back(
        "undistillability: ruled out (reduction criterion fails)");
  } else if (v_ppt.holds) {
    report.notes.push_back("undistillability: implied by PPT");
  } else {
    report.notes.push_back(
        "undistillability: undetermined, bracketed between PPT (fails) and "
        "the reduction criterion (holds); no finite test exists");
  }
  if (digest.negative_skipped) {
    report.notes.push_back(
        "negative-alpha rows skipped: state is not full rank");
  }

  const bool spectral_ok = v_red_a.holds && v_red_b.holds && v_rank.holds &&
                           v_maj_a.holds && v_maj_b.holds && v_entropic.holds;
  if (!v_ppt.holds && spectral_ok) {
    report.notes.push_back(
        "spectrally undetectable: PPT fails while every criterion built from "
        "the spectra of rho and its reductions holds");
    // A separable isospectral counterpart exists when the reductions are
    // maximally mixed and every eigenvalue multiplicity is a multiple of d.
    const auto [dA, dB] = rho.dims();
    if (dA == dB) {
      const ComplexMatrix red_a = reduced_state(rho, Subsystem::A);
      const ComplexMatrix red_b = reduced_state(rho, Subsystem::B);
      ComplexMatrix chaotic = ComplexMatrix::identity(dA);
      chaotic *= Complex(1.0 / static_cast<double>(dA), 0.0);
      const bool chaotic_reductions =
          frobenius_distance(red_a, chaotic) <= 1e-6 &&
          frobenius_distance(red_b, chaotic) <= 1e-6;
      bool divisible = true;
      for (const auto& [value, mult] : state_spec.distinct(1e-8)) {
        (void)value;
        if (mult % dA != 0) divisible = false;
      }
      if (chaotic_reductions && divisible) {
        report.notes.push_back(
            "isospectral separable counterpart constructible: reductions are "
            "maximally mixed and eigenvalue multiplicities are multiples of "
            "d");
      }
    }
  }
  return report;
}

double werner_ppt_boundary(std::size_t d, double lo, double hi, double p_tol,
                           const Tolerances& tol) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo < hi) || p_tol <= 0.0) {
    throw ParameterRangeError("werner_ppt_boundary: need 0 <= lo < hi <= 1 "
                              "and a positive tolerance");
  }
  auto margin = [d, &tol](double p) { return ppt(werner(d, p), tol).margin; };
  double m_lo = margin(lo);
  double m_hi = margin(hi);
  if (!(m_lo >= 0.0 && m_hi < 0.0)) {
    throw ParameterRangeError(
        "werner_ppt_boundary: PPT margin does not change sign on the "
        "interval");
  }
  while (hi - lo > p_tol) {
    const double mid = 0.5 * (lo + hi);
    if (margin(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ReductionMajorizationScan explore_reduction_vs_majorization(
    BipartiteDims dims, std::size_t trials, std::uint64_t seed,
    const Tolerances& tol) {
  ReductionMajorizationScan scan;
  scan.trials = trials;
  scan.min_majorization_margin_given_reduction =
      std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const DensityMatrix rho =
        random_mixed(dims, dims.total(), derive_stream(seed, t));
    if (!reduction(rho, Subsystem::A, tol).holds ||
        !reduction(rho, Subsystem::B, tol).holds) {
      continue;
    }
    ++scan.reduction_pass;
    for (Subsystem side : {Subsystem::A, Subsystem::B}) {
      const CriterionVerdict maj = majorization(rho, side, tol);
      scan.min_majorization_margin_given_reduction =
          std::min(scan.min_majorization_margin_given_reduction, maj.margin);
      if (!maj.holds) {
        ++scan.majorization_fail_given_reduction;
      }
    }
  }
  if (scan.reduction_pass == 0) {
    scan.min_majorization_margin_given_reduction = 0.0;
  }
  return scan;
}

}  // namespace entrocrit
