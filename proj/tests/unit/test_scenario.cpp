#include <doctest.h>

#include <cmath>

#include "pairemit/errors.hpp"
#include "pairemit/scenario.hpp"

using namespace pairemit;
using L = StateLabel;

TEST_CASE("fig2_table") {
  SUBCASE("s = 0.7") {
    const OverlapTable t = fig2_table(0.7);
    CHECK(t(L::Psi, L::Phi).real() == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(t(L::Psi0, L::Phi0).real() == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(t(L::PsiStar, L::PhiStar).real() == doctest::Approx(0.679).epsilon(1e-15));
    CHECK(t(L::PsiSp, L::PhiSp).real() == doctest::Approx(0.6111).epsilon(1e-15));
    CHECK(t(L::PsiSp, L::PhiBar).real() == doctest::Approx(0.609).epsilon(1e-15));
    CHECK(t(L::PhiSp, L::PsiBar).real() == doctest::Approx(0.609).epsilon(1e-15));
    CHECK(t(L::PsiSp, L::Psi).real() == 0.9);
    CHECK(t(L::PhiSp, L::PhiBar).real() == 0.9);
    // Delay zero: the evolved labels coincide with the originals.
    CHECK(t(L::Psi, L::PsiBar).real() == 1.0);
    CHECK(t(L::Psi0, L::Psi).real() == 1.0);
    for (L a : kAllLabels) {
      for (L b : kAllLabels) {
        CHECK(t(a, b).imag() == 0.0);
        CHECK(t(a, b) == t(b, a));
      }
    }
    CHECK(validate(t).ok());
  }
  SUBCASE("s = 0") {
    const OverlapTable t = fig2_table(0.0);
    for (L a : kAllLabels) {
      for (L b : kAllLabels) {
        if ((static_cast<int>(a) % 2) != (static_cast<int>(b) % 2)) CHECK(t(a, b) == 0.0);
      }
    }
    CHECK(t(L::PsiStar, L::Psi).real() == 0.9);
    CHECK(t(L::PhiSp, L::Phi).real() == 0.9);
  }
  SUBCASE("s = 1") {
    const OverlapTable t = fig2_table(1.0);
    CHECK(t(L::PsiStar, L::PhiStar) == 1.0);
    CHECK(t(L::Psi, L::Phi) == 1.0);
  }
  CHECK_THROWS_AS(fig2_table(-0.1), OutOfRange);
  CHECK_THROWS_AS(fig2_table(1.1), OutOfRange);
  CHECK_THROWS_AS(fig2_table(std::nan("")), OutOfRange);
}

TEST_CASE("check_params") {
  CHECK_NOTHROW(check_params(Fig2Params{}));
  CHECK_THROWS_AS(check_params(Fig2Params{.s = 1.0}), OutOfRange);
  CHECK_THROWS_AS(check_params(Fig2Params{.s = -0.2}), OutOfRange);
  CHECK_THROWS_AS(check_params(Fig2Params{.gamma0 = 0.0}), OutOfRange);
  CHECK_THROWS_AS(check_params(Fig2Params{.t_max = 0.0}), InvalidTimeGrid);
  CHECK_THROWS_AS(check_params(Fig2Params{.steps = 1}), InvalidTimeGrid);
}

TEST_CASE("fig2_curves") {
  const Fig2Result r = fig2_curves(Fig2Params{});
  REQUIRE(r.curves.size() == 5);
  const char* labels[] = {"boson_sup", "fermion_sup", "mix_boson", "mix_fermion",
                          "mix_noexchange"};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(r.curves[i].label == labels[i]);
    CHECK(r.curves[i].times.size() == 200);
    CHECK(r.curves[i].values.front() == 0.0);
  }
  CHECK(r.curves[0].times.back() == 5.0);
  CHECK(r.rates[0].gamma_sup == doctest::Approx(1.7682173117332068054).epsilon(1e-13));
  CHECK(r.rates[1].gamma_sup == doctest::Approx(1.927480465027634839).epsilon(1e-13));
  CHECK(r.gamma_noexchange == 1.0);
  CHECK(r.norms[0].n0 == doctest::Approx(0.57928444636349224021).epsilon(1e-14));
  CHECK(r.norms[1].n0 == doctest::Approx(0.99014754297667430915).epsilon(1e-14));

  SUBCASE("exchange term off") {
    const Fig2Result off = fig2_curves(Fig2Params{}, MixtureExchange::Off);
    CHECK(off.curves[2].values == off.curves[3].values);
    CHECK(off.curves[2].values == off.curves[4].values);
    CHECK(off.curves[0].values == r.curves[0].values);
  }
  SUBCASE("exchange term on: the boson mixture emits faster than the fermion one") {
    for (std::size_t i = 1; i < 200; ++i) CHECK(r.curves[2].values[i] > r.curves[3].values[i]);
  }
  CHECK_THROWS_AS(fig2_curves(Fig2Params{.s = 1.0}), OutOfRange);
}

TEST_CASE("the fermion states vanish as s reaches one") {
  CHECK_THROWS_AS(normalizations(fig2_table(1.0), ExchangeSymmetry::fermion()), ZeroNormState);
  CHECK_NOTHROW(normalizations(fig2_table(1.0), ExchangeSymmetry::boson()));
  CHECK_NOTHROW(normalizations(fig2_table(0.999), ExchangeSymmetry::fermion()));
}

TEST_CASE("scan") {
  SUBCASE("grid") {
    const auto g = scan_grid(0.0, 0.9, 10);
    REQUIRE(g.size() == 10);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 0.9);
    CHECK(g[5] == doctest::Approx(0.5));
    CHECK(scan_grid(0.3, 0.3, 7).size() == 1);
    CHECK(scan_grid(0.1, 0.4, 1) == std::vector<double>{0.1});
    CHECK_THROWS_AS(scan_grid(0.0, 1.0, 5), OutOfRange);
    CHECK_THROWS_AS(scan_grid(0.5, 0.4, 5), OutOfRange);
    CHECK_THROWS_AS(scan_grid(0.0, 0.5, 0), OutOfRange);
  }
  SUBCASE("rows") {
    const auto rows = scan(0.0, 0.5, 6);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].s == 0.0);
    CHECK(std::abs(rows[0].boson_sup - rows[0].fermion_sup) < 1e-12);
    // s = 0.5, tests/oracles/closed_form_chain.py
    CHECK(rows[5].boson_sup == doctest::Approx(1.7813131313131313131).epsilon(1e-13));
    CHECK(rows[5].fermion_sup == doctest::Approx(1.8565573770491803279).epsilon(1e-13));
    for (const ScanRow& r : rows) {
      CHECK(r.mix_noexchange == 1.0);
      CHECK(r.mix_boson_psi == r.mix_boson_phi);
      if (r.s > 0.0) {
        CHECK(r.fermion_sup > r.boson_sup);
        CHECK(r.mix_boson_psi > r.mix_fermion_psi);
      }
    }
    const auto off = scan(0.0, 0.5, 6, MixtureExchange::Off, 2.0);
    for (const ScanRow& r : off) {
      CHECK(r.mix_boson_psi == 2.0);
      CHECK(r.mix_fermion_phi == 2.0);
    }
  }
  CHECK_THROWS_AS(scan(0.0, 0.5, 3, MixtureExchange::On, -1.0), OutOfRange);
}
