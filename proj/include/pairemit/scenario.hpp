#pragma once

// The one-parameter operating point family: every scalar product is a fixed
// function of s = <psi|phi>, with small recoils and psi-bar = psi.

#include <array>
#include <cstddef>
#include <vector>

#include "pairemit/emission.hpp"
#include "pairemit/state_algebra.hpp"

namespace pairemit {

struct Fig2Params {
  double s = 0.7;
  double gamma0 = 1.0;
  double t_max = 5.0;
  std::size_t steps = 200;
};

/// Throws OutOfRange / InvalidTimeGrid for invalid parameters, including
/// s = 1. fig2_table itself still accepts s = 1.
void check_params(const Fig2Params& p);

/// Overlap table at free parameter s in [0, 1].
///
/// States are grouped by family (psi or phi) and stage (base: psi0, psi,
/// psi-bar; absorbed: psi*; emitted: psi_sp). Same family, same stage: 1.
/// Same family, different stage: 0.9. Across families: s (base-base),
/// (0.9 + 0.1 s) s (absorbed-absorbed), 0.9 (0.9 + 0.1 s) s
/// (emitted-emitted), (0.8 + 0.1 s) s (mixed stages). The absorbed-base and
/// absorbed-emitted entries are not consumed by any kernel.
OverlapTable fig2_table(double s);

/// Curves in fixed order: boson_sup, fermion_sup, mix_boson, mix_fermion,
/// mix_noexchange. The two mix_* curves use `mode`; mix_noexchange always
/// drops the exchange term.
struct Fig2Result {
  OverlapTable table;
  std::array<NormalizationSet, 2> norms;  // boson, fermion
  std::array<RateSet, 2> rates;           // boson, fermion (under `mode`)
  double gamma_noexchange = 0.0;
  std::vector<EmissionCurve> curves;
};

Fig2Result fig2_curves(const Fig2Params& params, MixtureExchange mode = MixtureExchange::On);

struct ScanRow {
  double s = 0.0;
  double boson_sup = 0.0;
  double fermion_sup = 0.0;
  double mix_boson_psi = 0.0;
  double mix_boson_phi = 0.0;
  double mix_fermion_psi = 0.0;
  double mix_fermion_phi = 0.0;
  double mix_noexchange = 0.0;
};

ScanRow scan_point(double s, double gamma0, MixtureExchange mode);

/// The s grid: one point when s_from == s_to or n_points == 1.
std::vector<double> scan_grid(double s_from, double s_to, std::size_t n_points);

/// Rates over the s grid; rows are computed in parallel.
std::vector<ScanRow> scan(double s_from, double s_to, std::size_t n_points,
                          MixtureExchange mode = MixtureExchange::On, double gamma0 = 1.0);
std::vector<ScanRow> scan_serial(double s_from, double s_to, std::size_t n_points,
                                 MixtureExchange mode = MixtureExchange::On,
                                 double gamma0 = 1.0);

}  // namespace pairemit
