#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "entrocrit/entropy.hpp"
#include "entrocrit/errors.hpp"
#include "entrocrit/majorization.hpp"
#include "entrocrit/rng.hpp"
#include "test_helpers.hpp"

using namespace entrocrit;
using namespace entrocrit::testing;

namespace {

DensityMatrix maximally_mixed(std::size_t dA, std::size_t dB) {
  ComplexMatrix m = ComplexMatrix::identity(dA * dB);
  m *= Complex(1.0 / static_cast<double>(dA * dB), 0.0);
  return DensityMatrix::validated(BipartiteDims{dA, dB}, std::move(m));
}

bool signs_conflict(Sign a, Sign b) {
  return (a == Sign::Positive && b == Sign::Negative) ||
         (a == Sign::Negative && b == Sign::Positive);
}

Sign sign_of(double value) {
  if (value > kSignDeadBand) return Sign::Positive;
  if (value < -kSignDeadBand) return Sign::Negative;
  return Sign::Zero;
}

}  // namespace

TEST_CASE("alpha values") {
  CHECK_THROWS_AS(AlphaValue::finite(std::nan("")), ParameterRangeError);
  CHECK(AlphaValue::infinity().is_infinite());
  CHECK(AlphaValue::finite(1.0).is_von_neumann_limit());
  CHECK(AlphaValue::finite(1.0 + 5e-10).is_von_neumann_limit());
  CHECK_FALSE(AlphaValue::finite(1.0 + 1e-6).is_von_neumann_limit());
  CHECK(AlphaValue::finite(-0.5).is_negative());
  CHECK(AlphaValue::infinity().to_string() == "inf");
}

TEST_CASE("renyi entropy on closed-form states") {
  for (std::size_t d : {2, 3}) {
    const DensityMatrix mixed = maximally_mixed(d, d);
    const double expected = std::log(static_cast<double>(d * d));
    for (double a : {0.0, 0.5, 2.0, 7.0}) {
      CHECK(renyi(mixed, AlphaValue::finite(a)).value ==
            doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(renyi(mixed, AlphaValue::infinity()).value ==
          doctest::Approx(expected).epsilon(1e-12));
  }

  const DensityMatrix pure = to_density(max_entangled_state(2));
  CHECK(std::abs(renyi(pure, AlphaValue::finite(2.0)).value) <= 1e-12);

  const ComplexMatrix reduced = ComplexMatrix::diagonal({0.75, 0.25});
  CHECK(renyi(reduced, AlphaValue::finite(2.0)).value ==
        doctest::Approx(std::log(8.0 / 5.0)).epsilon(1e-13));
}

TEST_CASE("renyi limits: rank at alpha=0, operator norm at infinity") {
  for (std::uint64_t t = 0; t < 50; ++t) {
    const std::size_t rank = 1 + t % 4;
    const DensityMatrix rho =
        random_mixed(BipartiteDims{2, 2}, rank, derive_stream(1, t));
    const Spectrum spec = eigh(rho.mat()).values;
    CHECK(renyi(rho, AlphaValue::finite(0.0)).value ==
          doctest::Approx(std::log(static_cast<double>(spec.rank(1e-10))))
              .epsilon(1e-12));
    CHECK(renyi(rho, AlphaValue::infinity()).value ==
          doctest::Approx(-std::log(spec.max())).epsilon(1e-12));
  }
}

TEST_CASE("tsallis entropy values and limits") {
  const DensityMatrix pure = to_density(max_entangled_state(2));
  CHECK(std::abs(tsallis(pure, AlphaValue::finite(2.0)).value) <= 1e-12);

  const ComplexMatrix half = 0.5 * ComplexMatrix::identity(2);
  CHECK(tsallis(half, AlphaValue::finite(2.0)).value ==
        doctest::Approx(0.5).epsilon(1e-13));

  const EntropyResult at_inf = tsallis(pure, AlphaValue::infinity());
  CHECK(at_inf.value == 0.0);
  CHECK(at_inf.is_limit);

  // Nonnegative for alpha > 0 on random states.
  for (std::uint64_t t = 0; t < 100; ++t) {
    const DensityMatrix rho =
        random_mixed(BipartiteDims{2, 2}, 1 + t % 4, derive_stream(2, t));
    for (double a : {0.25, 0.5, 2.0, 5.0}) {
      CHECK(tsallis(rho, AlphaValue::finite(a)).value >= -1e-12);
    }
  }
}

TEST_CASE("tsallis approaches von Neumann near alpha = 1") {
  for (std::uint64_t t = 0; t < 50; ++t) {
    const DensityMatrix rho =
        random_mixed(BipartiteDims{2, 2}, 4, derive_stream(3, t));
    const double s1 = von_neumann(rho).value;
    for (double a : {1.0 - 1e-6, 1.0 + 1e-6}) {
      CHECK(std::abs(tsallis(rho, AlphaValue::finite(a)).value - s1) <= 1e-4);
    }
  }
}

TEST_CASE("von Neumann entropy on closed-form states") {
  const DensityMatrix pure = to_density(max_entangled_state(3));
  CHECK(std::abs(von_neumann(pure).value) <= 1e-12);
  CHECK(von_neumann(maximally_mixed(2, 2)).value ==
        doctest::Approx(std::log(4.0)).epsilon(1e-13));
  const ComplexMatrix reduced = ComplexMatrix::diagonal({0.75, 0.25});
  const double expected = 0.75 * std::log(4.0 / 3.0) + 0.25 * std::log(4.0);
  CHECK(von_neumann(reduced).value ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("conditional renyi on closed-form states") {
  for (std::size_t d : {2, 3}) {
    const DensityMatrix phi = to_density(max_entangled_state(d));
    const double expected = -std::log(static_cast<double>(d));
    for (double a : {0.5, 2.0, 5.0}) {
      CHECK(conditional_renyi(phi, AlphaValue::finite(a), Subsystem::A).value ==
            doctest::Approx(expected).epsilon(1e-12));
    }
    const DensityMatrix mixed = maximally_mixed(d, d);
    CHECK(conditional_renyi(mixed, AlphaValue::finite(2.0), Subsystem::A)
              .value ==
          doctest::Approx(std::log(static_cast<double>(d))).epsilon(1e-12));
  }
  const DensityMatrix cx = monotonicity_counterexample();
  CHECK(std::abs(
            conditional_renyi(cx, AlphaValue::finite(0.0), Subsystem::A)
                .value) <= 1e-12);
}

TEST_CASE("conditional tsallis: counterexample values are exact") {
  const DensityMatrix cx = monotonicity_counterexample();
  const double t2 =
      conditional_tsallis(cx, AlphaValue::finite(2.0), Subsystem::A).value;
  CHECK(std::abs(t2 - 0.2) <= 1e-12);
  const double t0 =
      conditional_tsallis(cx, AlphaValue::finite(0.0), Subsystem::A).value;
  CHECK(std::abs(t0) <= 1e-12);
  const EntropyResult tinf =
      conditional_tsallis(cx, AlphaValue::infinity(), Subsystem::A);
  CHECK(tinf.state == ValueState::Finite);
  CHECK(tinf.value == 0.0);
  CHECK(tinf.is_limit);
}

TEST_CASE("conditional tsallis: maximally entangled state") {
  const DensityMatrix phi = to_density(max_entangled_state(2));
  CHECK(conditional_tsallis(phi, AlphaValue::finite(2.0), Subsystem::A)
            .value == doctest::Approx(-1.0).epsilon(1e-12));
  // ||rho_A|| = 1/2 < ||rho|| = 1, so the alpha -> infinity limit diverges.
  const EntropyResult tinf =
      conditional_tsallis(phi, AlphaValue::infinity(), Subsystem::A);
  CHECK(tinf.state == ValueState::NegativeInfinity);
}

TEST_CASE("non-monotonicity witness: T_2 exceeds T_0 and T_inf") {
  const DensityMatrix cx = monotonicity_counterexample();
  const double t0 =
      conditional_tsallis(cx, AlphaValue::finite(0.0), Subsystem::A).value;
  const double t2 =
      conditional_tsallis(cx, AlphaValue::finite(2.0), Subsystem::A).value;
  const double tinf =
      conditional_tsallis(cx, AlphaValue::infinity(), Subsystem::A).value;
  CHECK(t2 > t0);
  CHECK(t2 > tinf);
}

TEST_CASE("positivity sign on distinguished states") {
  for (std::uint64_t t = 0; t < 30; ++t) {
    const CertifiedState cs =
        random_separable(BipartiteDims{2, 2}, 3, derive_stream(4, t));
    const SignResult s =
        positivity_sign(cs.state, AlphaValue::finite(2.0), Subsystem::A);
    CHECK(s.sign != Sign::Negative);
  }

  const DensityMatrix phi = to_density(max_entangled_state(2));
  for (double a : {0.25, 0.5, 1.0, 2.0, 10.0}) {
    CHECK(positivity_sign(phi, AlphaValue::finite(a), Subsystem::A).sign ==
          Sign::Negative);
  }
  CHECK(positivity_sign(phi, AlphaValue::infinity(), Subsystem::A).sign ==
        Sign::Negative);

  const DensityMatrix cx = monotonicity_counterexample();
  CHECK(positivity_sign(cx, AlphaValue::finite(0.0), Subsystem::A).sign ==
        Sign::Zero);
  CHECK(positivity_sign(cx, AlphaValue::finite(2.0), Subsystem::A).sign ==
        Sign::Positive);
  // At infinity the operator-norm comparison is strictly positive here
  // (3/4 vs 1/2) while the conditional Tsallis value is 0.
  const SignResult at_inf =
      positivity_sign(cx, AlphaValue::infinity(), Subsystem::A);
  CHECK(at_inf.margin >= 0.0);
  CHECK(at_inf.sign != Sign::Negative);
}

TEST_CASE("negative alpha requires full rank") {
  const DensityMatrix pure = to_density(max_entangled_state(2));
  CHECK_THROWS_AS(
      conditional_renyi(pure, AlphaValue::finite(-1.0), Subsystem::A),
      NotFullRankError);
  CHECK_THROWS_AS(
      conditional_tsallis(pure, AlphaValue::finite(-1.0), Subsystem::A),
      NotFullRankError);
  CHECK_THROWS_AS(
      positivity_sign(pure, AlphaValue::finite(-1.0), Subsystem::A),
      NotFullRankError);
  CHECK_THROWS_AS(renyi(pure, AlphaValue::finite(-1.0)), NotFullRankError);
}

TEST_CASE("sign concordance across renyi, tsallis and the sign predicate") {
  const std::vector<AlphaValue> grid = full_alpha_grid();
  for (std::uint64_t t = 0; t < 200; ++t) {
    const std::size_t rank = 1 + t % 4;
    const DensityMatrix rho =
        random_mixed(BipartiteDims{2, 2}, rank, derive_stream(5, t));
    const SweepTable table = alpha_sweep(rho, grid, SweepSides::Both);
    for (const SweepRow& row : table.rows) {
      if (!row.sign) continue;
      if (row.conditional_renyi.state == ValueState::Finite) {
        CHECK_FALSE(signs_conflict(row.sign->sign,
                                   sign_of(row.conditional_renyi.value)));
      }
      if (row.conditional_tsallis.state == ValueState::Finite) {
        CHECK_FALSE(signs_conflict(row.sign->sign,
                                   sign_of(row.conditional_tsallis.value)));
      } else if (row.conditional_tsallis.state ==
                 ValueState::NegativeInfinity) {
        CHECK(row.sign->sign == Sign::Negative);
      }
    }
  }
}

TEST_CASE("majorization by the reduction forces nonnegative signs") {
  const std::vector<AlphaValue> grid = default_alpha_grid();
  std::size_t premise_count = 0;
  for (std::uint64_t t = 0; t < 500; ++t) {
    const std::size_t rank = 1 + t % 4;
    const DensityMatrix rho =
        random_mixed(BipartiteDims{2, 2}, rank, derive_stream(6, t));
    const Spectrum state_spec = eigh(rho.mat()).values;
    for (Subsystem side : {Subsystem::A, Subsystem::B}) {
      const Spectrum reduced_spec = eigh(reduced_state(rho, side)).values;
      if (!majorizes(reduced_spec, state_spec).holds) continue;
      ++premise_count;
      for (const AlphaValue& alpha : grid) {
        const SignResult sign = positivity_sign_from(
            state_spec, reduced_spec, alpha, Tolerances{});
        CHECK(sign.margin >= -1e-10);
      }
    }
  }
  // The premise must fire often enough to make the property meaningful.
  CHECK(premise_count > 100);
}

TEST_CASE("full-rank states have nonnegative signs at negative alpha") {
  std::size_t checked = 0;
  for (std::uint64_t t = 0; t < 500; ++t) {
    const BipartiteDims dims =
        t % 2 == 0 ? BipartiteDims{2, 2} : BipartiteDims{3, 3};
    const DensityMatrix rho =
        random_mixed(dims, dims.total(), derive_stream(7, t));
    const Spectrum state_spec = eigh(rho.mat()).values;
    if (state_spec.min() <= 1e-10) continue;
    ++checked;
    for (Subsystem side : {Subsystem::A, Subsystem::B}) {
      const Spectrum reduced_spec = eigh(reduced_state(rho, side)).values;
      for (double a : {-0.5, -1.0, -2.0}) {
        const SignResult sign = positivity_sign_from(
            state_spec, reduced_spec, AlphaValue::finite(a), Tolerances{});
        CHECK(sign.margin >= -1e-10);
        // Proof inequality: tr(rho_A^alpha) <= tr(rho^alpha) for alpha < 0.
        CHECK(trace_power(reduced_spec, a, 1e-10) <=
              trace_power(state_spec, a, 1e-10) * (1.0 + 1e-9));
      }
    }
  }
  CHECK(checked == 500);
}

TEST_CASE("alpha sweep on distinguished states") {
  const std::vector<AlphaValue> grid = default_alpha_grid();

  const SweepTable mixed_sweep =
      alpha_sweep(maximally_mixed(2, 2), grid, SweepSides::Both);
  for (const SweepRow& row : mixed_sweep.rows) {
    REQUIRE(row.sign.has_value());
    CHECK(row.sign->sign == Sign::Positive);
  }
  CHECK_FALSE(mixed_sweep.any_negative);

  const SweepTable phi_sweep =
      alpha_sweep(to_density(max_entangled_state(2)), grid, SweepSides::Both);
  for (const SweepRow& row : phi_sweep.rows) {
    REQUIRE(row.sign.has_value());
    const bool alpha_positive =
        row.alpha.is_infinite() || row.alpha.value() > 0.0;
    if (alpha_positive) CHECK(row.sign->sign == Sign::Negative);
  }
  CHECK(phi_sweep.any_negative);

  const SweepTable cx_sweep = alpha_sweep(monotonicity_counterexample(), grid,
                                          SweepSides::A);
  for (const SweepRow& row : cx_sweep.rows) {
    REQUIRE(row.sign.has_value());
    if (!row.alpha.is_infinite() && row.alpha.value() == 0.0) {
      CHECK(row.sign->sign == Sign::Zero);
    } else if (!row.alpha.is_infinite()) {
      CHECK(row.sign->sign == Sign::Positive);
    } else {
      CHECK(row.sign->sign != Sign::Negative);
      CHECK(row.conditional_tsallis.value == 0.0);
    }
    CHECK(row.proven_range ==
          (row.alpha.is_infinite() || row.alpha.value() == 0.0 ||
           (row.alpha.value() >= 1.0 && row.alpha.value() <= 2.0)));
  }
  CHECK_FALSE(cx_sweep.any_negative);
  CHECK(cx_sweep.min_sign_margin >= 0.0);
}

TEST_CASE("alpha sweep marks undefined rows instead of aborting") {
  const std::vector<AlphaValue> grid = full_alpha_grid();
  const DensityMatrix low_rank = random_mixed(BipartiteDims{2, 2}, 2, 42);
  const SweepTable table = alpha_sweep(low_rank, grid, SweepSides::Both);
  bool saw_skip = false;
  for (const SweepRow& row : table.rows) {
    if (row.alpha.is_negative()) {
      CHECK_FALSE(row.sign.has_value());
      CHECK(row.note.has_value());
      saw_skip = true;
    } else {
      CHECK(row.sign.has_value());
    }
  }
  CHECK(saw_skip);

  CHECK_THROWS_AS(alpha_sweep(low_rank, {}, SweepSides::Both),
                  ParameterRangeError);
}
