#pragma once

#include <cstddef>

#include "entrocrit/eigen.hpp"
#include "entrocrit/tolerances.hpp"

namespace entrocrit {

struct MajorizationResult {
  bool holds;
  double margin;       // worst partial-sum difference sum(x,k) - sum(y,k)
  std::size_t worst_k; // 1-based index attaining the margin, 0 if vacuous
};

// Tests whether x majorizes y: every leading partial sum of x dominates the
// corresponding partial sum of y. The shorter spectrum is zero-padded.
// Trailing indices at which both spectra have already exhausted their total
// mass (within tol.rank) compare as forced ties and do not enter the margin.
// Entries below -tol.psd raise NegativeEntryError; totals differing by more
// than 1e-8 raise NotNormalizedError.
MajorizationResult majorizes(const Spectrum& x, const Spectrum& y,
                             const Tolerances& tol = {});

}  // namespace entrocrit
