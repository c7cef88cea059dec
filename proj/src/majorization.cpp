#include "entrocrit/majorization.hpp"

#include <algorithm>
#include <cmath>

#include "entrocrit/errors.hpp"

namespace entrocrit {

MajorizationResult majorizes(const Spectrum& x, const Spectrum& y,
                             const Tolerances& tol) {
  for (const Spectrum* s : {&x, &y}) {
    for (double v : s->values()) {
      if (v < -tol.psd) {
        throw NegativeEntryError("majorizes: spectra must be nonnegative");
      }
    }
  }
  const std::size_t n = std::max(x.size(), y.size());
  auto padded = [](const Spectrum& s, std::size_t k) {
    return k < s.size() ? s[k] : 0.0;
  };
  const double tx = x.sum();
  const double ty = y.sum();
  if (std::abs(tx - ty) > 1e-8) {
    throw NotNormalizedError("majorizes: spectra totals differ by more than "
                             "1e-8");
  }

  double sx = 0.0, sy = 0.0;
  double margin = 0.0;
  std::size_t worst_k = 0;
  bool seen = false;
  for (std::size_t k = 0; k < n; ++k) {
    sx += padded(x, k);
    sy += padded(y, k);
    const bool exhausted = (tx - sx <= tol.rank) && (ty - sy <= tol.rank);
    if (exhausted) continue;
    const double diff = sx - sy;
    if (!seen || diff < margin) {
      margin = diff;
      worst_k = k + 1;
      seen = true;
    }
  }
  return MajorizationResult{margin >= -tol.major, margin, worst_k};
}

}  // namespace entrocrit
