#pragma once

// First-order emission kernels, golden-rule rates and emitted-photon curves
// for the superposition and mixture hypotheses.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pairemit/state_algebra.hpp"

namespace pairemit {

/// Base rate Gamma_0 = |D|^2 / hbar^2; every dipole constant is folded in.
class RadiativeCoupling {
 public:
  explicit RadiativeCoupling(double gamma0 = 1.0);
  double gamma0() const { return gamma0_; }

 private:
  double gamma0_;
};

/// Whether the mixture-branch kernels keep the exchange term of the
/// symmetrized final state (`On`, statistics dependent) or drop it (`Off`,
/// kernel 1 and rate Gamma_0 for both statistics).
enum class MixtureExchange { On, Off };

std::string_view to_string(MixtureExchange m);

struct RateSet {
  double gamma_sup = 0.0;
  double gamma_mix_psi = 0.0;
  double gamma_mix_phi = 0.0;
};

struct EmissionCurve {
  std::string label;
  std::vector<double> times;
  /// n_emi(t) / n_0 at each time.
  std::vector<double> values;
};

/// Amplitude of the superposition hypothesis with the -i t D / hbar
/// prefactor stripped.
cplx kernel_superposition(const OverlapTable& table, ExchangeSymmetry sym);

cplx kernel_mix_psi(const OverlapTable& table, ExchangeSymmetry sym,
                    MixtureExchange mode = MixtureExchange::On);
cplx kernel_mix_phi(const OverlapTable& table, ExchangeSymmetry sym,
                    MixtureExchange mode = MixtureExchange::On);

/// Golden rule: Gamma = Gamma_0 |kernel|^2.
double rate(cplx kernel, const RadiativeCoupling& coupling);

RateSet rates(const OverlapTable& table, ExchangeSymmetry sym,
              const RadiativeCoupling& coupling, MixtureExchange mode = MixtureExchange::On);

/// Throws InvalidTimeGrid unless times are finite, >= 0 and strictly ascending.
void check_time_grid(std::span<const double> times);

/// `points` uniform samples on [0, t_max].
std::vector<double> uniform_times(double t_max, std::size_t points);

/// 1 - exp(-Gamma t).
EmissionCurve emission_curve(double gamma, std::span<const double> times,
                             std::string label = {});

/// 1 - (exp(-Gamma_psi t) + exp(-Gamma_phi t)) / 2.
EmissionCurve mixture_curve(double gamma_psi, double gamma_phi, std::span<const double> times,
                            std::string label = {});

/// Distinguishable atoms: probabilities add. Returns (superposition pattern,
/// mixture pattern); both use the exchange-free branch rates.
std::pair<EmissionCurve, EmissionCurve> distinguishable_curves(
    const OverlapTable& table, const RadiativeCoupling& coupling,
    std::span<const double> times);

struct PairComparison {
  std::size_t first = 0;
  std::size_t second = 0;
  double max_abs_diff = 0.0;
  double time_of_max = 0.0;
  /// Trapezoidal integral of |first - second| over the grid.
  double integrated_abs_diff = 0.0;
  /// first > second at every sample with t > 0.
  bool first_above_everywhere = false;
};

struct ComparisonReport {
  std::vector<std::string> labels;
  std::vector<PairComparison> pairs;

  const PairComparison& pair(std::size_t i, std::size_t j) const;
};

/// Pairwise comparison; throws GridMismatch if time grids differ.
ComparisonReport compare(std::span<const EmissionCurve> curves);

}  // namespace pairemit
