#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "entrocrit/eigen.hpp"
#include "entrocrit/errors.hpp"
#include "entrocrit/majorization.hpp"
#include "entrocrit/rng.hpp"
#include "test_helpers.hpp"

using namespace entrocrit;
using namespace entrocrit::testing;

TEST_CASE("kron identity and diagonal cases") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const ComplexMatrix i4 = kron(i2, i2);
  CHECK(max_abs_entry_diff(i4, ComplexMatrix::identity(4)) == 0.0);

  const ComplexMatrix a = ComplexMatrix::diagonal({1.0, 0.0});
  const ComplexMatrix b = ComplexMatrix::diagonal({0.0, 1.0});
  const ComplexMatrix expected = ComplexMatrix::diagonal({0.0, 1.0, 0.0, 0.0});
  CHECK(max_abs_entry_diff(kron(a, b), expected) == 0.0);
}

TEST_CASE("kron against the elementwise block oracle") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_matrix(2, 2, rng);
    const ComplexMatrix b = random_matrix(3, 3, rng);
    const ComplexMatrix k = kron(a, b);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 6);
    // Oracle: each block computed independently entry by entry.
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t p = 0; p < 3; ++p)
          for (std::size_t q = 0; q < 3; ++q)
            CHECK(std::abs(k(3 * i + p, 3 * j + q) - a(i, j) * b(p, q)) ==
                  0.0);
    const Complex tr_product = a.trace() * b.trace();
    CHECK(std::abs(k.trace() - tr_product) < 1e-13);
  }
}

TEST_CASE("kron enforces the size cap") {
  const ComplexMatrix big(128, 128);
  const ComplexMatrix small(64, 64);
  CHECK_THROWS_AS(kron(big, small), SizeLimitError);
  CHECK_NOTHROW(kron(small, small));
}

TEST_CASE("spectrum helpers: ordering, rank, multiplicity clustering") {
  const Spectrum s(std::vector<double>{0.05, 0.7 / 3, 0.7 / 3, 0.05, 0.7 / 3,
                                       0.05, 0.05, 0.05, 0.05});
  CHECK(s.max() == doctest::Approx(0.7 / 3));
  CHECK(s.min() == doctest::Approx(0.05));
  CHECK(s.rank(1e-10) == 9);
  CHECK(s.rank(0.1) == 3);
  const auto clusters = s.distinct(1e-12);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].second == 3);
  CHECK(clusters[1].second == 6);
  CHECK_THROWS_AS(Spectrum(std::vector<double>{1.0, std::nan("")}),
                  ParameterRangeError);
}

TEST_CASE("derived streams differ across trial indices and seeds") {
  CHECK(derive_stream(1, 0) != derive_stream(1, 1));
  CHECK(derive_stream(1, 0) != derive_stream(2, 0));
  SplitMix64 a(derive_stream(1, 0));
  SplitMix64 b(derive_stream(1, 1));
  int collisions = 0;
  for (int i = 0; i < 100; ++i) {
    if (a.next() == b.next()) ++collisions;
  }
  CHECK(collisions == 0);
}

TEST_CASE("eigh on fixed matrices") {
  const HermitianEigen id3 = eigh(ComplexMatrix::identity(3));
  for (double v : id3.values.values()) CHECK(v == doctest::Approx(1.0));

  const ComplexMatrix pauli_x =
      ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const HermitianEigen x = eigh(pauli_x);
  CHECK(x.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x.values[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("eigh rejects non-Hermitian and non-square input") {
  CHECK_THROWS_AS(eigh(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})),
                  NotHermitianError);
  CHECK_THROWS_AS(eigh(ComplexMatrix(2, 3)), NotHermitianError);
}

TEST_CASE("eigh residual and unitarity over random Hermitian matrices") {
  SplitMix64 rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 15);
    const ComplexMatrix h = random_hermitian(n, rng);
    const HermitianEigen e = eigh(h);

    // Residual check is its own oracle.
    ComplexMatrix recon(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          recon(i, j) +=
              e.values[k] * e.vectors(i, k) * std::conj(e.vectors(j, k));
    const double hnorm = h.frobenius_norm();
    CHECK(frobenius_distance(recon, h) <= 1e-10 * std::max(1.0, hnorm));

    const ComplexMatrix gram = e.vectors.adjoint() * e.vectors;
    CHECK(frobenius_distance(gram, ComplexMatrix::identity(n)) <=
          1e-10 * std::sqrt(static_cast<double>(n)));

    for (std::size_t k = 0; k + 1 < n; ++k)
      CHECK(e.values[k] >= e.values[k + 1]);
  }
}

TEST_CASE("eigh is deterministic") {
  SplitMix64 rng(203);
  const ComplexMatrix h = random_hermitian(7, rng);
  const HermitianEigen a = eigh(h);
  const HermitianEigen b = eigh(h);
  CHECK(a.values.values() == b.values.values());
  CHECK(max_abs_entry_diff(a.vectors, b.vectors) == 0.0);
}

TEST_CASE("matrix_function basics") {
  const ComplexMatrix id4 = ComplexMatrix::identity(4);
  for (double alpha : {-1.0, 0.5, 2.0}) {
    CHECK(max_abs_entry_diff(matrix_power(id4, alpha), id4) < 1e-14);
  }
  const ComplexMatrix d = ComplexMatrix::diagonal({0.25, 0.75});
  const ComplexMatrix squared = matrix_power(d, 2.0);
  CHECK(squared(0, 0).real() == doctest::Approx(1.0 / 16).epsilon(1e-14));
  CHECK(squared(1, 1).real() == doctest::Approx(9.0 / 16).epsilon(1e-14));
}

TEST_CASE("matrix_function power(0) traces to the rank") {
  const ComplexMatrix d = ComplexMatrix::diagonal({0.6, 0.4, 0.0});
  const ComplexMatrix p0 = matrix_power(d, 0.0);
  CHECK(p0.trace().real() == doctest::Approx(2.0));
}

TEST_CASE("matrix_function domain errors") {
  const ComplexMatrix indefinite = ComplexMatrix::diagonal({1.0, -0.5});
  CHECK_THROWS_AS(matrix_log(indefinite), DomainError);
  CHECK_THROWS_AS(matrix_power(indefinite, -1.0), DomainError);
  CHECK_THROWS_AS(matrix_power(indefinite, 0.5), DomainError);
  CHECK_NOTHROW(matrix_power(indefinite, 2.0));  // integer powers are fine
  const ComplexMatrix singular = ComplexMatrix::diagonal({1.0, 0.0});
  CHECK_THROWS_AS(matrix_log(singular), DomainError);
  CHECK_THROWS_AS(matrix_power(singular, -0.5), DomainError);
}

TEST_CASE("exp(log(H)) round trip on random positive definite matrices") {
  SplitMix64 rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 7);
    const ComplexMatrix h = random_psd(n, rng, 0.05);
    const ComplexMatrix round_trip = matrix_exp(matrix_log(h));
    CHECK(frobenius_distance(round_trip, h) <= 1e-9);
  }
}

TEST_CASE("golden-thompson gap: trivial and commuting cases") {
  const ComplexMatrix zero(3, 3);
  CHECK(golden_thompson_gap(zero, zero) == doctest::Approx(0.0));
  const ComplexMatrix a = ComplexMatrix::diagonal({0.3, -0.2, 1.1});
  const ComplexMatrix b = ComplexMatrix::diagonal({-0.5, 0.4, 0.2});
  CHECK(std::abs(golden_thompson_gap(a, b)) < 1e-12);
}

TEST_CASE("golden-thompson inequality over random Hermitian pairs") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 7);
    const ComplexMatrix a = random_hermitian(n, rng, 0.7);
    const ComplexMatrix b = random_hermitian(n, rng, 0.7);
    CHECK(golden_thompson_gap(a, b) >= -1e-9);
  }
}

TEST_CASE("trace-monotone exponential") {
  SplitMix64 rng(505);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 7);
    const ComplexMatrix a = random_hermitian(n, rng, 0.7);
    const ComplexMatrix p = random_psd(n, rng);
    const double base = matrix_exp(a).trace().real();
    for (double eps : {0.1, 1.0}) {
      const double grown = matrix_exp(a + eps * p).trace().real();
      CHECK(grown >= base - 1e-9);
    }
  }
}

TEST_CASE("operator monotonicity of log and operator-decreasing powers") {
  SplitMix64 rng(606);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 7);
    const ComplexMatrix b = random_psd(n, rng, 0.1);
    const ComplexMatrix p = random_psd(n, rng);
    const ComplexMatrix a = b + p;  // a >= b > 0

    CHECK(min_eigenvalue(matrix_log(a) - matrix_log(b)) >= -1e-8);
    for (double r : {-1.0, -0.5}) {
      CHECK(min_eigenvalue(matrix_power(b, r) - matrix_power(a, r)) >= -1e-8);
    }
  }
}

TEST_CASE("majorizes on the worked examples") {
  const Spectrum one_zero(std::vector<double>{1.0, 0.0});
  const MajorizationResult reflexive = majorizes(one_zero, one_zero);
  CHECK(reflexive.holds);
  CHECK(reflexive.margin == 0.0);

  const Spectrum half_half(std::vector<double>{0.5, 0.5});
  const Spectrum pure4(std::vector<double>{1.0, 0.0, 0.0, 0.0});
  const MajorizationResult fails = majorizes(half_half, pure4);
  CHECK_FALSE(fails.holds);
  CHECK(fails.margin == doctest::Approx(-0.5));
  CHECK(fails.worst_k == 1);

  const Spectrum x(std::vector<double>{0.75, 0.25});
  const Spectrum y(std::vector<double>{0.5, 0.5, 0.0, 0.0});
  const MajorizationResult holds = majorizes(x, y);
  CHECK(holds.holds);
  CHECK(holds.margin == doctest::Approx(0.25));
}

TEST_CASE("majorizes input validation") {
  const Spectrum negative(std::vector<double>{1.1, -0.1});
  const Spectrum ok(std::vector<double>{1.0, 0.0});
  CHECK_THROWS_AS(majorizes(negative, ok), NegativeEntryError);
  const Spectrum short_sum(std::vector<double>{0.5, 0.3});
  CHECK_THROWS_AS(majorizes(short_sum, ok), NotNormalizedError);
}

TEST_CASE("majorization implies the convex-sum inequality") {
  SplitMix64 rng(707);
  auto simplex = [&rng](std::size_t n) {
    std::vector<double> v(n);
    double sum = 0.0;
    for (double& x : v) {
      x = -std::log(rng.uniform_open01());
      sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
  };
  using ConvexFn = double (*)(double);
  const ConvexFn convex_fns[] = {
      [](double t) { return t * t; },
      [](double t) { return t * t * t; },
      [](double t) { return std::abs(t - 1.0 / 3.0); }};

  int holding_pairs = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng.next() % 4);
    std::vector<double> xv = simplex(n);
    // Mixing toward uniform is guaranteed to be majorized by the original.
    const double mix = rng.uniform01();
    std::vector<double> yv(n);
    for (std::size_t i = 0; i < n; ++i) {
      yv[i] = (1.0 - mix) * xv[i] + mix / static_cast<double>(n);
    }
    const Spectrum x{std::move(xv)};
    const Spectrum y{std::move(yv)};
    const MajorizationResult res = majorizes(x, y);
    if (!res.holds) continue;
    ++holding_pairs;
    for (const ConvexFn f : convex_fns) {
      double fx = 0.0, fy = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) fx += f(x[i]);
      for (std::size_t i = 0; i < y.size(); ++i) fy += f(y[i]);
      CHECK(fx >= fy - 1e-9);
    }
  }
  CHECK(holding_pairs == 500);
}
