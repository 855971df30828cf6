#include <doctest.h>

#include <cmath>

#include "kendall/distribution.hpp"
#include "kendall/errors.hpp"
#include "kendall/williamson.hpp"

using namespace kendall;

namespace {
const KendallIndex kOne(1.0);
}

TEST_CASE("psi kernel") {
  CHECK(psi(1.0, 0.0, 5.0) == 1.0);
  CHECK(psi(1.0, 5.0, 5.0) == 0.0);
  CHECK(psi(1.0, 7.0, 5.0) == 0.0);
  CHECK(psi(2.0, 1.0, 2.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(psi(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("transform closed forms per family") {
  CHECK(williamson_g(StepDistribution::dirac1(kOne), 2.0) == doctest::Approx(0.5));
  CHECK(williamson_g(StepDistribution::dirac1(kOne), 0.5) == 0.0);
  CHECK(williamson_g(StepDistribution::uniform01(kOne), 1.0) == doctest::Approx(0.5));
  CHECK(williamson_g(StepDistribution::lack_of_memory(kOne), 0.5) ==
        doctest::Approx(0.25));
  CHECK(williamson_g(StepDistribution::stable_limit(kOne, 1.0), 1.0) ==
        doctest::Approx(std::exp(-1.0)));
  // G(0) = 0 by continuity
  for (const auto& d : {StepDistribution::dirac1(kOne), StepDistribution::uniform01(kOne)}) {
    CHECK(williamson_g(d, 0.0) == 0.0);
  }
}

TEST_CASE("quadrature route reproduces the closed-form transform") {
  const StepDistribution ds[] = {
      StepDistribution::dirac1(kOne),
      StepDistribution::uniform01(KendallIndex(0.5)),
      StepDistribution::gamma(KendallIndex(2.0), 2.0, 1.5),
      StepDistribution::pareto_mix(KendallIndex(0.5), 0.5),
  };
  for (const auto& d : ds) {
    for (double t : {0.7, 1.42, 3.9}) {
      const double quad =
          williamson_from_cdf([&](double x) { return d.cdf(x); }, d.alpha(), t, 1e-12);
      CHECK(quad == doctest::Approx(d.transform(t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("transform inversion recovers the cdf") {
  // unit point mass: G(t) = (1 - 1/t)_+, F(2) = 0.5 + 2 * (1/4) = 1
  auto g_dirac = [](double t) { return t > 0.0 ? std::max(0.0, 1.0 - 1.0 / t) : 0.0; };
  CHECK(invert_to_cdf(g_dirac, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
  // fixed-point family: G = e^{-1/t}, F(1) = 2/e
  auto g_stable = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  CHECK(invert_to_cdf(g_stable, 1.0, 1.0) ==
        doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-7));
  // locally constant transform: zero derivative, F = G there
  auto g_flat = [](double) { return 0.25; };
  CHECK(invert_to_cdf(g_flat, 1.0, 3.0) == doctest::Approx(0.25));
  // garbage transform escapes [0,1]
  auto g_bad = [](double t) { return 3.0 * t; };
  CHECK_THROWS_AS(invert_to_cdf(g_bad, 1.0, 2.0), InversionError);
  CHECK_THROWS_AS(invert_to_cdf(g_flat, 1.0, 0.0), std::domain_error);
}

TEST_CASE("round trip invert(transform) = cdf across families") {
  const StepDistribution ds[] = {
      StepDistribution::uniform01(kOne),
      StepDistribution::lack_of_memory(KendallIndex(2.0)),
      StepDistribution::stable_limit(KendallIndex(0.5), 1.3),
      StepDistribution::gamma(kOne, 2.0, 1.5),
  };
  for (const auto& d : ds) {
    auto transform = [&](double x) { return d.transform(x); };
    for (double t = 0.11; t < 8.0; t *= 1.37) {
      CHECK(invert_to_cdf(transform, d.alpha(), t) ==
            doctest::Approx(d.cdf(t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("n-step cdf worked values") {
  CHECK(cdf_n(StepDistribution::dirac1(kOne), 2, 2.0) == doctest::Approx(0.75));
  CHECK(cdf_n(StepDistribution::uniform01(kOne), 2, 2.0) == doctest::Approx(0.9375));
  // two lack-of-memory steps at the unit point: G(1) = 1/2, H(1) = 1/2,
  // so F_2(1) = G (2 H + G) = 3/4; the inversion route agrees
  const auto lom = StepDistribution::lack_of_memory(kOne);
  CHECK(cdf_n(lom, 2, 1.0) == doctest::Approx(0.75));
  auto g2 = [&](double t) { const double g = lom.transform(t); return g * g; };
  CHECK(invert_to_cdf(g2, 1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-6));
  CHECK(cdf_n(lom, 2, 0.5) == doctest::Approx(3.0 * std::pow(0.5, 2.0) / 4.0));
}

TEST_CASE("one-step cdf is the cdf, bitwise") {
  const StepDistribution ds[] = {
      StepDistribution::dirac1(kOne),
      StepDistribution::uniform01(KendallIndex(0.5)),
      StepDistribution::gamma(KendallIndex(2.0), 2.0, 1.5),
      StepDistribution::stable_limit(kOne, 2.0),
  };
  for (const auto& d : ds) {
    for (double t : {0.3, 1.0, 2.7, 19.0}) {
      CHECK(cdf_n(d, 1, t) == d.cdf(t));
    }
  }
}

TEST_CASE("n-step tails") {
  CHECK(tail_n(StepDistribution::dirac1(kOne), 2, 2.0) == doctest::Approx(0.25));
  // n = 1 is the plain survival function
  const auto u = StepDistribution::uniform01(kOne);
  CHECK(tail_n(u, 1, 0.3) == doctest::Approx(0.7));
  const auto st = StepDistribution::stable_limit(kOne, 1.0);
  CHECK(tail_n(st, 3, 10.0) ==
        doctest::Approx(1.0 - 1.3 * std::exp(-0.3)).epsilon(1e-12));
}

TEST_CASE("tail expansion survives deep-tail cancellation") {
  // unit point mass: Fbar_2(t) = t^{-2 alpha} exactly
  const auto d = StepDistribution::dirac1(kOne);
  for (double t : {1e4, 1e6, 1e8}) {
    const double expect = std::pow(t, -2.0);
    CHECK(tail_n(d, 2, t) == doctest::Approx(expect).epsilon(1e-10));
  }
  // three uniform steps far out: Fbar_3 = 3u^2 - 2u^3 with u = 1/(2t)
  const auto un = StepDistribution::uniform01(kOne);
  for (double t : {1e3, 1e6}) {
    const double uu = 0.5 / t;
    CHECK(tail_n(un, 3, t) ==
          doctest::Approx(3.0 * uu * uu - 2.0 * uu * uu * uu).epsilon(1e-12));
  }
  // the series and direct branches agree where both are well conditioned
  const auto gm = StepDistribution::gamma(kOne, 2.0, 1.5);
  for (std::uint64_t n : {2, 5, 20}) {
    for (double t : {5.0, 9.0, 14.0}) {
      const double direct = 1.0 - cdf_n(gm, n, t);
      const double stable = tail_n(gm, n, t);
      CHECK(stable == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("stable family is the rescaling fixed point") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double m : {0.5, 2.0}) {
      const auto base = StepDistribution::stable_limit(KendallIndex(alpha), m);
      for (std::uint64_t n : {2, 10}) {
        const auto n_fold = StepDistribution::stable_limit(KendallIndex(alpha),
                                                           m * static_cast<double>(n));
        for (double t = 0.21; t < 30.0; t *= 2.1) {
          CHECK(cdf_n(base, n, t) == doctest::Approx(n_fold.cdf(t)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("transform multiplicativity via the quadrature route") {
  const auto d = StepDistribution::uniform01(kOne);
  for (std::uint64_t n : {2, 5}) {
    for (double t : {0.8, 1.7, 4.2}) {
      const double recovered = williamson_from_cdf(
          [&](double x) { return cdf_n(d, n, x); }, 1.0, t, 1e-11);
      CHECK(recovered ==
            doctest::Approx(std::pow(d.transform(t), static_cast<double>(n)))
                .epsilon(1e-8));
    }
  }
}

TEST_CASE("n-step inputs are validated") {
  const auto d = StepDistribution::uniform01(kOne);
  CHECK_THROWS_AS(cdf_n(d, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(tail_n(d, 0, 1.0), std::invalid_argument);
  CHECK(cdf_n(d, 3, -2.0) == 0.0);
  CHECK(cdf_n(d, 3, 0.0) == 0.0);
}
