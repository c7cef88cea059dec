#pragma once

#include <cstddef>

namespace entrocrit {

// Shared numerical tolerances.
//
// psd            slack allowed below zero for eigenvalues of nominally
//                positive semidefinite operators.
// rank           eigenvalues at or below this value count as zero when
//                ranks and entropic sums are formed.
// major          slack allowed on majorization partial sums.
// entropic_margin  slack on normalized entropic sign margins when they act
//                as a criterion or as the conclusion of an implication.
struct Tolerances {
  double psd = 1e-9;
  double rank = 1e-10;
  double major = 1e-10;
  double entropic_margin = 1e-10;
};

// Hard cap on matrix side length (64 per subsystem).
inline constexpr std::size_t kMaxMatrixDim = 4096;

}  // namespace entrocrit
