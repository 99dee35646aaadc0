#include "pairemit/scenario.hpp"

#include <cmath>
#include <exception>
#include <fmt/format.h>

#include "pairemit/errors.hpp"

namespace pairemit {

namespace {

enum class Stage { Base, Absorbed, Emitted };

Stage stage_of(StateLabel l) {
  switch (l) {
    case StateLabel::PsiStar:
    case StateLabel::PhiStar:
      return Stage::Absorbed;
    case StateLabel::PsiSp:
    case StateLabel::PhiSp:
      return Stage::Emitted;
    default:
      return Stage::Base;
  }
}

bool is_psi_family(StateLabel l) { return static_cast<int>(l) % 2 == 0; }

void check_scan_range(double s_from, double s_to, std::size_t n_points) {
  if (!(s_from >= 0.0) || !(s_to >= s_from) || !(s_to < 1.0)) {
    throw OutOfRange(
        fmt::format("scan range must satisfy 0 <= s_from <= s_to < 1 (got {} .. {})", s_from,
                    s_to));
  }
  if (n_points < 1) throw OutOfRange("scan needs at least one point");
}

template <bool Parallel>
std::vector<ScanRow> scan_impl(double s_from, double s_to, std::size_t n_points,
                               MixtureExchange mode, double gamma0) {
  check_scan_range(s_from, s_to, n_points);
  (void)RadiativeCoupling{gamma0};
  const std::vector<double> grid = scan_grid(s_from, s_to, n_points);
  std::vector<ScanRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      rows[k] = scan_point(grid[k], gamma0, mode);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

}  // namespace

void check_params(const Fig2Params& p) {
  if (!(p.s >= 0.0 && p.s < 1.0)) {
    throw OutOfRange(fmt::format(
        "s must lie in [0, 1) (got {}); at s = 1 the fermion states vanish", p.s));
  }
  (void)RadiativeCoupling{p.gamma0};
  if (p.steps < 2) throw InvalidTimeGrid("steps must be >= 2");
  if (!(p.t_max > 0.0) || !std::isfinite(p.t_max)) {
    throw InvalidTimeGrid(fmt::format("t_max must be finite and > 0 (got {})", p.t_max));
  }
}

OverlapTable fig2_table(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw OutOfRange(fmt::format("s must lie in [0, 1] (got {})", s));
  }
  const double absorbed = (0.9 + 0.1 * s) * s;
  const double emitted = 0.9 * absorbed;
  const double mixed = (0.8 + 0.1 * s) * s;
  constexpr double recoil_self = 0.9;

  OverlapTable t;
  for (int i = 0; i < kNumLabels; ++i) {
    for (int j = i + 1; j < kNumLabels; ++j) {
      const auto a = static_cast<StateLabel>(i);
      const auto b = static_cast<StateLabel>(j);
      const Stage sa = stage_of(a);
      const Stage sb = stage_of(b);
      double v;
      if (is_psi_family(a) == is_psi_family(b)) {
        v = sa == sb ? 1.0 : recoil_self;
      } else if (sa != sb) {
        v = mixed;
      } else if (sa == Stage::Base) {
        v = s;
      } else if (sa == Stage::Absorbed) {
        v = absorbed;
      } else {
        v = emitted;
      }
      t.set(a, b, v);
    }
  }
  return t;
}

Fig2Result fig2_curves(const Fig2Params& params, MixtureExchange mode) {
  check_params(params);
  const RadiativeCoupling coupling(params.gamma0);
  const std::vector<double> times = uniform_times(params.t_max, params.steps);

  Fig2Result r;
  r.table = fig2_table(params.s);
  for (std::size_t i = 0; i < kBothStatistics.size(); ++i) {
    r.norms[i] = normalizations(r.table, kBothStatistics[i]);
    r.rates[i] = rates(r.table, kBothStatistics[i], coupling, mode);
  }
  r.gamma_noexchange = rate(
      kernel_mix_psi(r.table, ExchangeSymmetry::boson(), MixtureExchange::Off), coupling);

  r.curves.push_back(emission_curve(r.rates[0].gamma_sup, times, "boson_sup"));
  r.curves.push_back(emission_curve(r.rates[1].gamma_sup, times, "fermion_sup"));
  r.curves.push_back(
      mixture_curve(r.rates[0].gamma_mix_psi, r.rates[0].gamma_mix_phi, times, "mix_boson"));
  r.curves.push_back(
      mixture_curve(r.rates[1].gamma_mix_psi, r.rates[1].gamma_mix_phi, times, "mix_fermion"));
  r.curves.push_back(
      mixture_curve(r.gamma_noexchange, r.gamma_noexchange, times, "mix_noexchange"));
  return r;
}

ScanRow scan_point(double s, double gamma0, MixtureExchange mode) {
  const RadiativeCoupling coupling(gamma0);
  const OverlapTable t = fig2_table(s);
  const RateSet b = rates(t, ExchangeSymmetry::boson(), coupling, mode);
  const RateSet f = rates(t, ExchangeSymmetry::fermion(), coupling, mode);
  return ScanRow{
      .s = s,
      .boson_sup = b.gamma_sup,
      .fermion_sup = f.gamma_sup,
      .mix_boson_psi = b.gamma_mix_psi,
      .mix_boson_phi = b.gamma_mix_phi,
      .mix_fermion_psi = f.gamma_mix_psi,
      .mix_fermion_phi = f.gamma_mix_phi,
      .mix_noexchange =
          rate(kernel_mix_psi(t, ExchangeSymmetry::boson(), MixtureExchange::Off), coupling),
  };
}

std::vector<double> scan_grid(double s_from, double s_to, std::size_t n_points) {
  check_scan_range(s_from, s_to, n_points);
  if (n_points == 1 || s_from == s_to) return {s_from};
  std::vector<double> g(n_points);
  const double last = static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    g[i] = s_from + (s_to - s_from) * (static_cast<double>(i) / last);
  }
  g.back() = s_to;
  return g;
}

std::vector<ScanRow> scan(double s_from, double s_to, std::size_t n_points,
                          MixtureExchange mode, double gamma0) {
  return scan_impl<true>(s_from, s_to, n_points, mode, gamma0);
}

std::vector<ScanRow> scan_serial(double s_from, double s_to, std::size_t n_points,
                                 MixtureExchange mode, double gamma0) {
  return scan_impl<false>(s_from, s_to, n_points, mode, gamma0);
}

}  // namespace pairemit
