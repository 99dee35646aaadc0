#include <doctest.h>

#include <cmath>
#include <vector>

#include "pairemit/emission.hpp"
#include "pairemit/errors.hpp"
#include "pairemit/oracle.hpp"
#include "pairemit/scenario.hpp"

using namespace pairemit;
using L = StateLabel;

namespace {

const auto kBoson = ExchangeSymmetry::boson();
const auto kFermion = ExchangeSymmetry::fermion();

// tests/oracles/closed_form_chain.py
const double kBosonK = 1.3297433255080496193;
const double kFermionK = 1.3883373023252075823;
const double kBosonGamma = 1.7682173117332068054;
const double kFermionGamma = 1.927480465027634839;
const double kBosonKMix = 1.1708462751360658448;
const double kFermionKMix = 0.79317022132704906536;

}  // namespace

TEST_CASE("RadiativeCoupling") {
  CHECK(RadiativeCoupling{}.gamma0() == 1.0);
  CHECK(RadiativeCoupling{2.5}.gamma0() == 2.5);
  CHECK_THROWS_AS(RadiativeCoupling{0.0}, OutOfRange);
  CHECK_THROWS_AS(RadiativeCoupling{-1.0}, OutOfRange);
  CHECK_THROWS_AS(RadiativeCoupling{std::nan("")}, OutOfRange);
}

TEST_CASE("kernels at the s = 0.7 operating point") {
  const OverlapTable t = fig2_table(0.7);
  CHECK(kernel_superposition(t, kBoson).real() == doctest::Approx(kBosonK).epsilon(1e-13));
  CHECK(kernel_superposition(t, kFermion).real() == doctest::Approx(kFermionK).epsilon(1e-13));
  CHECK(kernel_superposition(t, kBoson).imag() == 0.0);
  CHECK(kernel_mix_psi(t, kBoson).real() == doctest::Approx(kBosonKMix).epsilon(1e-13));
  CHECK(kernel_mix_phi(t, kFermion).real() == doctest::Approx(kFermionKMix).epsilon(1e-13));

  const RadiativeCoupling one;
  CHECK(rates(t, kBoson, one).gamma_sup == doctest::Approx(kBosonGamma).epsilon(1e-13));
  CHECK(rates(t, kFermion, one).gamma_sup == doctest::Approx(kFermionGamma).epsilon(1e-13));
  CHECK(rates(t, kBoson, one).gamma_mix_psi == doctest::Approx(1.370881).epsilon(1e-12));
  CHECK(rates(t, kFermion, one).gamma_mix_phi == doctest::Approx(0.629119).epsilon(1e-12));

  SUBCASE("mixture without exchange term") {
    for (ExchangeSymmetry sym : kBothStatistics) {
      CHECK(kernel_mix_psi(t, sym, MixtureExchange::Off) == cplx(1.0));
      CHECK(kernel_mix_phi(t, sym, MixtureExchange::Off) == cplx(1.0));
      const RateSet r = rates(t, sym, RadiativeCoupling{3.0}, MixtureExchange::Off);
      CHECK(r.gamma_mix_psi == 3.0);
      CHECK(r.gamma_mix_phi == 3.0);
    }
  }
}

TEST_CASE("rates scale linearly with gamma0") {
  const OverlapTable t = oracle::random_psd_table(5);
  for (ExchangeSymmetry sym : kBothStatistics) {
    const RateSet a = rates(t, sym, RadiativeCoupling{1.0});
    const RateSet b = rates(t, sym, RadiativeCoupling{4.0});
    CHECK(b.gamma_sup == doctest::Approx(4.0 * a.gamma_sup).epsilon(1e-15));
    CHECK(b.gamma_mix_psi == doctest::Approx(4.0 * a.gamma_mix_psi).epsilon(1e-15));
    CHECK(b.gamma_mix_phi == doctest::Approx(4.0 * a.gamma_mix_phi).epsilon(1e-15));
  }
}

TEST_CASE("relabeling the atoms swaps the mixture branches and keeps the superposition rate") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const OverlapTable t = oracle::random_psd_table(seed, 0.6);
    const OverlapTable u = t.family_swapped();
    for (ExchangeSymmetry sym : kBothStatistics) {
      CAPTURE(seed);
      CHECK(std::abs(kernel_superposition(u, sym)) ==
            doctest::Approx(std::abs(kernel_superposition(t, sym))).epsilon(1e-12));
      CHECK(std::abs(kernel_mix_psi(u, sym)) ==
            doctest::Approx(std::abs(kernel_mix_phi(t, sym))).epsilon(1e-12));
    }
  }
}

TEST_CASE("without cross-family overlaps the statistics drop out") {
  OverlapTable t;
  t.set(L::PsiSp, L::PsiBar, 0.8);
  t.set(L::PhiSp, L::PhiBar, 0.8);
  t.set(L::PsiStar, L::Psi, 0.9);
  t.set(L::PhiStar, L::Phi, 0.9);
  CHECK(std::abs(kernel_superposition(t, kBoson) - kernel_superposition(t, kFermion)) < 1e-15);
  CHECK(kernel_mix_psi(t, kBoson) == kernel_mix_psi(t, kFermion));
  // N_psi_omega = 1/sqrt(2): the branch kernel is exactly 1.
  CHECK(std::abs(kernel_mix_psi(t, kBoson) - 1.0) < 1e-15);
}

TEST_CASE("time grids") {
  const auto t = uniform_times(5.0, 201);
  CHECK(t.size() == 201);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 5.0);
  CHECK_NOTHROW(check_time_grid(t));
  CHECK_THROWS_AS(uniform_times(5.0, 1), InvalidTimeGrid);
  CHECK_THROWS_AS(uniform_times(0.0, 10), InvalidTimeGrid);
  CHECK_THROWS_AS(check_time_grid(std::vector<double>{}), InvalidTimeGrid);
  CHECK_THROWS_AS(check_time_grid(std::vector<double>{0.0, 1.0, 1.0}), InvalidTimeGrid);
  CHECK_THROWS_AS(check_time_grid(std::vector<double>{-1.0, 1.0}), InvalidTimeGrid);
  CHECK_THROWS_AS(check_time_grid(std::vector<double>{0.0, INFINITY}), InvalidTimeGrid);
}

TEST_CASE("emission curves") {
  const std::vector<double> t{0.0, 1.0};
  CHECK(emission_curve(1.37088, t).values[1] ==
        doctest::Approx(0.74611655621024620362).epsilon(1e-14));
  CHECK(mixture_curve(1.0, 2.0, t).values[1] ==
        doctest::Approx(0.74839263779597249326).epsilon(1e-14));
  CHECK(emission_curve(2.0, t).values[0] == 0.0);
  CHECK(emission_curve(0.0, t).values[1] == 0.0);
  CHECK_THROWS_AS(emission_curve(-1.0, t), OutOfRange);
  CHECK_THROWS_AS(mixture_curve(1.0, -1.0, t), OutOfRange);

  // Tiny Gamma t keeps full relative precision.
  const std::vector<double> tiny{1e-12};
  CHECK(emission_curve(1.0, tiny).values[0] == doctest::Approx(1e-12).epsilon(1e-15));

  const auto grid = uniform_times(10.0, 500);
  const EmissionCurve c = emission_curve(0.8, grid, "x");
  CHECK(c.label == "x");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(c.values[i] > c.values[i - 1]);
    CHECK(c.values[i] < 1.0);
  }
  // Equal branch rates collapse the mixture onto a single exponential.
  CHECK(mixture_curve(0.8, 0.8, grid).values == c.values);
}

TEST_CASE("distinguishable atoms: both hypotheses give the same curve") {
  const auto grid = uniform_times(5.0, 201);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [sup, mix] =
        distinguishable_curves(oracle::random_psd_table(seed), RadiativeCoupling{1.3}, grid);
    CHECK(sup.values == mix.values);
  }
}

TEST_CASE("compare") {
  const auto grid = uniform_times(10.0, 20001);
  const std::vector<EmissionCurve> curves{emission_curve(2.0, grid, "fast"),
                                          emission_curve(1.0, grid, "slow"),
                                          emission_curve(2.0, grid, "fast2")};
  const ComparisonReport r = compare(curves);
  CHECK(r.labels == std::vector<std::string>{"fast", "slow", "fast2"});
  CHECK(r.pairs.size() == 3);
  const PairComparison& p = r.pair(0, 1);
  CHECK(p.first_above_everywhere);
  // e^-t - e^-2t peaks at t = ln 2 with value 1/4.
  CHECK(p.max_abs_diff == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(p.time_of_max == doctest::Approx(std::log(2.0)).epsilon(1e-3));
  // Integral over [0, 10] of e^-t - e^-2t.
  const double exact = (1.0 - std::exp(-10.0)) - 0.5 * (1.0 - std::exp(-20.0));
  CHECK(p.integrated_abs_diff == doctest::Approx(exact).epsilon(1e-7));
  CHECK_FALSE(r.pair(1, 2).first_above_everywhere);
  CHECK(r.pair(0, 2).max_abs_diff == 0.0);
  CHECK_FALSE(r.pair(0, 2).first_above_everywhere);
  CHECK_THROWS_AS(r.pair(1, 0), OutOfRange);

  const std::vector<EmissionCurve> bad{emission_curve(1.0, grid),
                                       emission_curve(1.0, uniform_times(10.0, 11))};
  CHECK_THROWS_AS(compare(bad), GridMismatch);
}
