#include <doctest.h>

#include <omp.h>

#include "pairemit/oracle.hpp"
#include "pairemit/scenario.hpp"
#include "pairemit/wavepacket.hpp"

using namespace pairemit;

namespace {

struct Threads {
  int saved = omp_get_max_threads();
  explicit Threads(int n) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
};

bool same_rows(const std::vector<ScanRow>& a, const std::vector<ScanRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const ScanRow& x = a[i];
    const ScanRow& y = b[i];
    if (x.s != y.s || x.boson_sup != y.boson_sup || x.fermion_sup != y.fermion_sup ||
        x.mix_boson_psi != y.mix_boson_psi || x.mix_boson_phi != y.mix_boson_phi ||
        x.mix_fermion_psi != y.mix_fermion_psi || x.mix_fermion_phi != y.mix_fermion_phi ||
        x.mix_noexchange != y.mix_noexchange) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("parallel scan equals the serial scan bit for bit") {
  const Threads t(4);
  CHECK(same_rows(scan(0.0, 0.95, 97), scan_serial(0.0, 0.95, 97)));
  CHECK(same_rows(scan(0.1, 0.9, 33, MixtureExchange::Off, 2.0),
                  scan_serial(0.1, 0.9, 33, MixtureExchange::Off, 2.0)));
}

TEST_CASE("parallel quadrature equals the serial quadrature bit for bit") {
  const Threads t(4);
  const GaussianPacket a{{-0.3, 0.4}, {0.6, -0.1}, 0.9, 0.2, 0.3};
  const GaussianPacket b{{0.5, -0.2}, {-0.2, 0.3}, 0.9, -0.4, 1.1};
  const GridSpec g = auto_grid(a, b);
  CHECK(overlap_quadrature(a, b, g) == overlap_quadrature_serial(a, b, g));
  const GaussianPacket c{{0.1}, {1.0}, 1.2, 0.0, 0.0};
  const GaussianPacket d{{1.1}, {0.2}, 1.2, 0.5, 0.0};
  const GridSpec g1 = auto_grid(c, d);
  CHECK(overlap_quadrature(c, d, g1) == overlap_quadrature_serial(c, d, g1));
}

TEST_CASE("parallel oracle campaign equals the serial campaign") {
  const Threads t(4);
  for (oracle::Spectator sp : {oracle::Spectator::FreeEvolve, oracle::Spectator::Unchanged}) {
    const oracle::CampaignConfig cfg{.first_seed = 7, .seeds = 12, .spectator = sp};
    const oracle::CampaignReport p = oracle::run_campaign(cfg);
    const oracle::CampaignReport s = oracle::run_campaign_serial(cfg);
    CHECK(p.checks == s.checks);
    CHECK(p.max_residual == s.max_residual);
    REQUIRE(p.discrepancies.size() == s.discrepancies.size());
    for (std::size_t i = 0; i < p.discrepancies.size(); ++i) {
      CHECK(p.discrepancies[i].seed == s.discrepancies[i].seed);
      CHECK(p.discrepancies[i].quantity == s.discrepancies[i].quantity);
      CHECK(p.discrepancies[i].oracle == s.discrepancies[i].oracle);
      CHECK(p.discrepancies[i].expansion == s.discrepancies[i].expansion);
    }
  }
}
