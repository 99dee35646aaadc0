#include "pairemit/emission.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "pairemit/errors.hpp"

namespace pairemit {

namespace {

using L = StateLabel;

// One-minus-survival with full precision at small Gamma t.
double emitted_fraction(double gamma, double t) { return -std::expm1(-gamma * t); }

void check_rate(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw OutOfRange(fmt::format("rate must be finite and >= 0 (got {})", gamma));
  }
}

}  // namespace

RadiativeCoupling::RadiativeCoupling(double gamma0) : gamma0_(gamma0) {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    throw OutOfRange(fmt::format("gamma0 must be finite and > 0 (got {})", gamma0));
  }
}

std::string_view to_string(MixtureExchange m) {
  return m == MixtureExchange::On ? "on" : "off";
}

cplx kernel_superposition(const OverlapTable& t, ExchangeSymmetry sym) {
  const NormalizationSet n = normalizations(t, sym);
  const double pm = sym.sign();
  const cplx psi_group = 2.0 + 2.0 * t(L::PsiSp, L::PsiBar) * t(L::PhiBar, L::PhiSp) +
                         pm * 2.0 * std::norm(t(L::PsiSp, L::PhiBar)) +
                         pm * 2.0 * t(L::PsiSp, L::PhiSp) * t(L::PhiBar, L::PsiBar);
  const cplx phi_group = 2.0 + 2.0 * t(L::PsiBar, L::PsiSp) * t(L::PhiSp, L::PhiBar) +
                         pm * 2.0 * std::norm(t(L::PhiSp, L::PsiBar)) +
                         pm * 2.0 * t(L::PhiSp, L::PsiSp) * t(L::PsiBar, L::PhiBar);
  return n.n_abs * n.n_omega_sp / std::numbers::sqrt2 *
         (n.n_psi_omega * psi_group + n.n_phi_omega * phi_group);
}

cplx kernel_mix_psi(const OverlapTable& t, ExchangeSymmetry sym, MixtureExchange mode) {
  require_valid(t);
  if (mode == MixtureExchange::Off) return 1.0;
  const double o2 = std::norm(t(L::PsiSp, L::PhiBar));
  return n_psi_omega(t, sym) / std::numbers::sqrt2 * (2.0 + sym.sign() * 2.0 * o2);
}

cplx kernel_mix_phi(const OverlapTable& t, ExchangeSymmetry sym, MixtureExchange mode) {
  require_valid(t);
  if (mode == MixtureExchange::Off) return 1.0;
  const double o2 = std::norm(t(L::PsiBar, L::PhiSp));
  return n_phi_omega(t, sym) / std::numbers::sqrt2 * (2.0 + sym.sign() * 2.0 * o2);
}

double rate(cplx kernel, const RadiativeCoupling& coupling) {
  return coupling.gamma0() * std::norm(kernel);
}

RateSet rates(const OverlapTable& t, ExchangeSymmetry sym, const RadiativeCoupling& coupling,
              MixtureExchange mode) {
  return RateSet{
      .gamma_sup = rate(kernel_superposition(t, sym), coupling),
      .gamma_mix_psi = rate(kernel_mix_psi(t, sym, mode), coupling),
      .gamma_mix_phi = rate(kernel_mix_phi(t, sym, mode), coupling),
  };
}

void check_time_grid(std::span<const double> times) {
  if (times.empty()) throw InvalidTimeGrid("time grid is empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) {
      throw InvalidTimeGrid(fmt::format("time[{}] = {} is not a finite nonnegative value", i,
                                        times[i]));
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw InvalidTimeGrid(fmt::format("time grid not strictly ascending at index {}", i));
    }
  }
}

std::vector<double> uniform_times(double t_max, std::size_t points) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw InvalidTimeGrid(fmt::format("t_max must be finite and > 0 (got {})", t_max));
  }
  if (points < 2) throw InvalidTimeGrid("a uniform grid needs at least 2 points");
  std::vector<double> t(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) t[i] = t_max * (static_cast<double>(i) / last);
  return t;
}

EmissionCurve emission_curve(double gamma, std::span<const double> times, std::string label) {
  check_rate(gamma);
  check_time_grid(times);
  EmissionCurve c{std::move(label), {times.begin(), times.end()}, {}};
  c.values.reserve(times.size());
  for (double t : times) c.values.push_back(emitted_fraction(gamma, t));
  return c;
}

EmissionCurve mixture_curve(double gamma_psi, double gamma_phi, std::span<const double> times,
                            std::string label) {
  check_rate(gamma_psi);
  check_rate(gamma_phi);
  check_time_grid(times);
  EmissionCurve c{std::move(label), {times.begin(), times.end()}, {}};
  c.values.reserve(times.size());
  for (double t : times) {
    c.values.push_back(-0.5 * (std::expm1(-gamma_psi * t) + std::expm1(-gamma_phi * t)));
  }
  return c;
}

std::pair<EmissionCurve, EmissionCurve> distinguishable_curves(
    const OverlapTable& table, const RadiativeCoupling& coupling,
    std::span<const double> times) {
  // Distinguishable emitters carry no exchange term; the branch kernels do
  // not depend on the statistics.
  const auto sym = ExchangeSymmetry::boson();
  const double g_psi = rate(kernel_mix_psi(table, sym, MixtureExchange::Off), coupling);
  const double g_phi = rate(kernel_mix_phi(table, sym, MixtureExchange::Off), coupling);
  const EmissionCurve c_psi = emission_curve(g_psi, times);
  const EmissionCurve c_phi = emission_curve(g_phi, times);

  EmissionCurve sup{"distinguishable_sup", c_psi.times, {}};
  sup.values.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    sup.values.push_back(0.5 * (c_psi.values[i] + c_phi.values[i]));
  }
  return {std::move(sup), mixture_curve(g_psi, g_phi, times, "distinguishable_mix")};
}

const PairComparison& ComparisonReport::pair(std::size_t i, std::size_t j) const {
  for (const PairComparison& p : pairs) {
    if (p.first == i && p.second == j) return p;
  }
  throw OutOfRange(fmt::format("no comparison for pair ({}, {})", i, j));
}

ComparisonReport compare(std::span<const EmissionCurve> curves) {
  ComparisonReport rep;
  for (const EmissionCurve& c : curves) {
    if (c.times != curves.front().times || c.values.size() != c.times.size()) {
      throw GridMismatch(fmt::format("curve '{}' does not share the common time grid", c.label));
    }
    rep.labels.push_back(c.label);
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      const auto& a = curves[i].values;
      const auto& b = curves[j].values;
      const auto& t = curves[i].times;
      PairComparison p{.first = i, .second = j};
      bool above = true;
      bool any_positive_time = false;
      for (std::size_t k = 0; k < t.size(); ++k) {
        const double d = std::abs(a[k] - b[k]);
        if (d > p.max_abs_diff) {
          p.max_abs_diff = d;
          p.time_of_max = t[k];
        }
        if (k > 0) {
          p.integrated_abs_diff += 0.5 * (t[k] - t[k - 1]) * (d + std::abs(a[k - 1] - b[k - 1]));
        }
        if (t[k] > 0.0) {
          any_positive_time = true;
          above = above && a[k] > b[k];
        }
      }
      p.first_above_everywhere = above && any_positive_time;
      rep.pairs.push_back(p);
    }
  }
  return rep;
}

}  // namespace pairemit
