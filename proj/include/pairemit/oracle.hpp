#pragma once

// Brute-force ground truth. Two-atom states are written out as explicit
// sums of CM (x) electronic (x) photon-number product terms, the
// first-order dipole action is applied term by term, and every norm and
// kernel is recomputed from raw inner products. Nothing here calls the
// closed-form kernels; only the normalization coefficients are shared, and
// those are independently checked through the self inner products.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pairemit/emission.hpp"
#include "pairemit/state_algebra.hpp"

namespace pairemit::oracle {

enum class Electronic { Ground, Excited };

struct TensorTerm {
  StateLabel cm1 = StateLabel::Psi0;
  StateLabel cm2 = StateLabel::Phi0;
  Electronic el1 = Electronic::Ground;
  Electronic el2 = Electronic::Ground;
  int photons = 0;
  cplx coeff = 1.0;

  bool same_signature(const TensorTerm& o) const {
    return cm1 == o.cm1 && cm2 == o.cm2 && el1 == o.el1 && el2 == o.el2 &&
           photons == o.photons;
  }
};

std::string describe(const TensorTerm& t);

/// Terms whose coefficient magnitude falls below this are dropped.
inline constexpr double kPruneThreshold = 1e-15;

class TensorState {
 public:
  TensorState() = default;
  explicit TensorState(std::vector<TensorTerm> terms);

  const std::vector<TensorTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Merges duplicate signatures, then prunes negligible terms.
  void canonicalize();

  TensorState& operator+=(const TensorState& o);
  friend TensorState operator+(TensorState a, const TensorState& b) { return a += b; }
  friend TensorState operator*(cplx c, TensorState s);

 private:
  std::vector<TensorTerm> terms_;
};

/// The CM overlap table; electronic and photon sectors are orthonormal.
struct GramContext {
  OverlapTable table;
};

enum class StateKind {
  Initial,
  PsiAbs,
  PhiAbs,
  AbsSuperposition,
  PsiOmega,
  PhiOmega,
  OmegaSp,
};

inline constexpr StateKind kAllStateKinds[] = {
    StateKind::Initial,  StateKind::PsiAbs,   StateKind::PhiAbs, StateKind::AbsSuperposition,
    StateKind::PsiOmega, StateKind::PhiOmega, StateKind::OmegaSp};

std::string_view kind_name(StateKind k);

/// Normalized state, using the closed-form coefficients.
TensorState build_state(StateKind kind, const GramContext& ctx, ExchangeSymmetry sym);

/// Same as build_state but without the outermost normalization factor
/// (inner components stay normalized). For PsiAbs / PhiAbs the omitted
/// factor is the fixed 1/sqrt(2).
TensorState build_unnormalized(StateKind kind, const GramContext& ctx, ExchangeSymmetry sym);

/// Normalization recomputed from the raw self inner product.
double oracle_normalization(StateKind kind, const GramContext& ctx, ExchangeSymmetry sym);

/// Sesquilinear <a|b>, antilinear in a.
cplx inner(const TensorState& a, const TensorState& b, const GramContext& ctx);

struct InnerContribution {
  std::size_t bra_term = 0;
  std::size_t ket_term = 0;
  cplx value;
};

/// Nonzero term-pair contributions to <a|b>, in bra-major order.
std::vector<InnerContribution> inner_expansion(const TensorState& a, const TensorState& b,
                                               const GramContext& ctx);

/// What the dipole action does to the atom that does not emit.
enum class Spectator {
  /// psi -> psi-bar, phi -> phi-bar: the evolution operator also carries the
  /// non-emitting atom forward in time.
  FreeEvolve,
  /// Leave the spectator's CM label untouched.
  Unchanged,
};

/// First-order dipole action with the -i t D / hbar prefactor stripped:
/// each excited atom in a zero-photon term decays e -> g, emits one photon,
/// and takes the emission recoil (psi* -> psi_sp, phi* -> phi_sp).
TensorState apply_dipole(const TensorState& state, Spectator spectator = Spectator::FreeEvolve);

/// Exchanges the two atom slots in every term.
TensorState swap_slots(const TensorState& state);

enum class KernelKind { Superposition, MixPsi, MixPhi };

std::string_view kernel_name(KernelKind k);

cplx kernel_bruteforce(KernelKind kind, const GramContext& ctx, ExchangeSymmetry sym,
                       Spectator spectator = Spectator::FreeEvolve);

/// Gram table of ten random unit vectors in C^12, deterministic per seed.
/// `coherence` in [0, 1) mixes a shared direction into every vector, which
/// raises the typical overlap magnitude.
OverlapTable random_psd_table(std::uint64_t seed, double coherence = 0.5);

struct CampaignConfig {
  std::uint64_t first_seed = 0;
  std::size_t seeds = 100;
  double tolerance = 1e-12;
  double coherence = 0.5;
  Spectator spectator = Spectator::FreeEvolve;
};

struct Discrepancy {
  std::uint64_t seed = 0;
  std::string statistics;
  std::string quantity;
  cplx closed_form;
  cplx oracle;
  double residual = 0.0;
  /// Term-by-term expansion of the oracle side.
  std::vector<std::string> expansion;
};

struct CampaignReport {
  CampaignConfig config;
  std::size_t checks = 0;
  /// Largest relative residual per quantity, in a fixed order.
  std::vector<std::pair<std::string, double>> max_residual;
  std::vector<Discrepancy> discrepancies;
  /// Seeds whose states could not be built (zero norm), with the reason.
  std::vector<std::pair<std::uint64_t, std::string>> errors;

  bool passed() const { return discrepancies.empty() && errors.empty(); }
};

/// |a - b| / max(|a|, |b|); zero when both vanish.
double relative_residual(cplx a, cplx b);

/// Seeds are checked in parallel; the report does not depend on thread count.
CampaignReport run_campaign(const CampaignConfig& config);
CampaignReport run_campaign_serial(const CampaignConfig& config);

}  // namespace pairemit::oracle
