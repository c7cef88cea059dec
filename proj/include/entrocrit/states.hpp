#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "entrocrit/complex_matrix.hpp"
#include "entrocrit/eigen.hpp"
#include "entrocrit/tolerances.hpp"

namespace entrocrit {

enum class Subsystem { A, B };

inline Subsystem other(Subsystem s) {
  return s == Subsystem::A ? Subsystem::B : Subsystem::A;
}
inline const char* subsystem_name(Subsystem s) {
  return s == Subsystem::A ? "A" : "B";
}

struct BipartiteDims {
  std::size_t dA = 0;
  std::size_t dB = 0;

  std::size_t total() const { return dA * dB; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

void validate_dims(const BipartiteDims& dims);

// Bipartite density matrix: Hermitian, unit trace, positive semidefinite
// within tolerance. Construct through validated().
class DensityMatrix {
 public:
  // Checks shape against dims, finiteness, Hermiticity within
  // 1e-9 * max(1, ||m||_F), trace within 1e-9 of 1 and min eigenvalue
  // >= -tol.psd; throws ValidationError naming the violated invariant.
  static DensityMatrix validated(BipartiteDims dims, ComplexMatrix m,
                                 const Tolerances& tol = {});

  const BipartiteDims& dims() const { return dims_; }
  const ComplexMatrix& mat() const { return mat_; }

 private:
  DensityMatrix(BipartiteDims dims, ComplexMatrix m)
      : dims_(dims), mat_(std::move(m)) {}

  BipartiteDims dims_;
  ComplexMatrix mat_;
};

struct PureState {
  BipartiteDims dims;
  std::vector<Complex> amplitudes;
};

// Validates unit norm within 1e-12.
PureState make_pure_state(BipartiteDims dims, std::vector<Complex> amplitudes);
DensityMatrix to_density(const PureState& psi, const Tolerances& tol = {});

// Convex combination of product states; the explicit decomposition acts as
// a separability certificate for the assembled state.
struct SeparableEnsemble {
  std::vector<double> weights;
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> factors;
};

void validate_ensemble(const SeparableEnsemble& e, const Tolerances& tol = {});
DensityMatrix assemble(const SeparableEnsemble& e, const Tolerances& tol = {});

struct CertifiedState {
  DensityMatrix state;
  SeparableEnsemble ensemble;
};

// Traces out the given subsystem; the result lives on the other one.
ComplexMatrix partial_trace(const DensityMatrix& rho, Subsystem traced_out);
// Reduced state of the given subsystem (partial trace over the other one).
ComplexMatrix reduced_state(const DensityMatrix& rho, Subsystem side);

// Index transposition on one tensor factor; Hermitian and trace preserving
// but not necessarily positive. An exact involution.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem side);

// Eigenvalues of tr_B |psi><psi|, descending.
Spectrum schmidt_spectrum(const PureState& psi);

// Maximally entangled basis state with 1-based labels j, k in {1, ..., d}:
// amplitude exp(2 pi i j n / d) / sqrt(d) on |n, n + k mod d>.
PureState max_entangled_basis(std::size_t d, std::size_t j, std::size_t k);

struct SeparableProjector {
  ComplexMatrix projector;    // rank-d projector, diagonal in product basis
  SeparableEnsemble ensemble; // certificate for projector / d
};

// Equal-weight combination of the d maximally entangled basis states with
// label k; equals sum_n |n><n| (x) |n+k><n+k| in the product basis.
SeparableProjector separable_projector(std::size_t d, std::size_t k);

// Flip operator F|ab> = |ba> on C^d (x) C^d.
ComplexMatrix flip_operator(std::size_t d);

// Werner state (1-p) P+/r+ + p P-/r- with P+- = (1 +- F)/2 and
// r+- = (d^2 +- d)/2.
DensityMatrix werner(std::size_t d, double p);

// Separable state with the same spectrum and the same maximally mixed
// reductions as werner(d, p); requires odd d so the eigenvalue
// multiplicities split into whole blocks of d.
CertifiedState isospectral_werner(std::size_t d, double p);

struct SpectrumBlock {
  double eigenvalue;
  std::size_t multiplicity;
};

// General constructor: given target eigenvalues whose multiplicities are
// positive multiples of d and sum to at most d^2 (total weight 1), builds a
// separable state with exactly that spectrum and maximally mixed
// reductions. Blocks sorted by descending eigenvalue consume projectors
// P_k in ascending k.
CertifiedState isospectral_separable(std::span<const SpectrumBlock> blocks,
                                     std::size_t d);

// The 2x2 state (|Phi+><Phi+| + |01><01|) / 2 whose conditional Tsallis
// entropy is zero at alpha = 0 and infinity but positive at alpha = 2.
DensityMatrix monotonicity_counterexample();

PureState random_pure(BipartiteDims dims, std::uint64_t seed);
DensityMatrix random_mixed(BipartiteDims dims, std::size_t rank,
                           std::uint64_t seed);
CertifiedState random_separable(BipartiteDims dims, std::size_t terms,
                                std::uint64_t seed);

}  // namespace entrocrit
