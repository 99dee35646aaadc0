#include "pairemit/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <numbers>
#include <random>

#include "pairemit/errors.hpp"

namespace pairemit::oracle {

namespace {

using L = StateLabel;
using E = Electronic;

constexpr std::size_t kEmbeddingDim = 12;

TensorState symmetrized_pair(L a, E ea, L b, E eb, int photons, ExchangeSymmetry sym) {
  return TensorState({
      TensorTerm{a, b, ea, eb, photons, 1.0},
      TensorTerm{b, a, eb, ea, photons, static_cast<double>(sym.sign())},
  });
}

L emission_recoil(L l) {
  switch (l) {
    case L::PsiStar:
      return L::PsiSp;
    case L::PhiStar:
      return L::PhiSp;
    default:
      throw UnsupportedTransition(fmt::format(
          "excited atom in CM state {} has no emission-recoiled descendant", label_name(l)));
  }
}

L free_evolution(L l) {
  switch (l) {
    case L::Psi:
      return L::PsiBar;
    case L::Phi:
      return L::PhiBar;
    default:
      return l;
  }
}

double closed_normalization(StateKind kind, const OverlapTable& t, ExchangeSymmetry sym) {
  switch (kind) {
    case StateKind::Initial:
      return n0(t, sym);
    case StateKind::PsiAbs:
    case StateKind::PhiAbs:
      return 1.0 / std::numbers::sqrt2;
    case StateKind::AbsSuperposition:
      return n_abs(t, sym);
    case StateKind::PsiOmega:
      return n_psi_omega(t, sym);
    case StateKind::PhiOmega:
      return n_phi_omega(t, sym);
    case StateKind::OmegaSp:
      return n_omega_sp(t, sym);
  }
  return 0.0;
}

std::string fmt_cplx(cplx z) { return fmt::format("({:.17g}{:+.17g}i)", z.real(), z.imag()); }

std::vector<std::string> expansion_lines(const TensorState& bra, const TensorState& ket,
                                         const GramContext& ctx) {
  std::vector<std::string> lines;
  for (const InnerContribution& c : inner_expansion(bra, ket, ctx)) {
    lines.push_back(fmt::format("<{}| . |{}> -> {}", describe(bra.terms()[c.bra_term]),
                                describe(ket.terms()[c.ket_term]), fmt_cplx(c.value)));
  }
  return lines;
}

std::pair<TensorState, TensorState> kernel_states(KernelKind kind, const GramContext& ctx,
                                                  ExchangeSymmetry sym, Spectator spectator) {
  switch (kind) {
    case KernelKind::Superposition:
      return {build_state(StateKind::OmegaSp, ctx, sym),
              apply_dipole(build_state(StateKind::AbsSuperposition, ctx, sym), spectator)};
    case KernelKind::MixPsi:
      return {build_state(StateKind::PsiOmega, ctx, sym),
              apply_dipole(build_state(StateKind::PsiAbs, ctx, sym), spectator)};
    case KernelKind::MixPhi:
      return {build_state(StateKind::PhiOmega, ctx, sym),
              apply_dipole(build_state(StateKind::PhiAbs, ctx, sym), spectator)};
  }
  throw OutOfRange("unknown kernel kind");
}

cplx closed_kernel(KernelKind kind, const OverlapTable& t, ExchangeSymmetry sym) {
  switch (kind) {
    case KernelKind::Superposition:
      return kernel_superposition(t, sym);
    case KernelKind::MixPsi:
      return kernel_mix_psi(t, sym, MixtureExchange::On);
    case KernelKind::MixPhi:
      return kernel_mix_phi(t, sym, MixtureExchange::On);
  }
  return 0.0;
}

// Quantity order in the report.
enum Quantity : std::size_t {
  kN0,
  kNAbs,
  kNPsiOmega,
  kNPhiOmega,
  kNOmegaSp,
  kUnitNorm,
  kExchange,
  kKernelSup,
  kKernelMixPsi,
  kKernelMixPhi,
  kNumQuantities
};

constexpr std::array<std::string_view, kNumQuantities> kQuantityNames{
    "n0",        "n_abs",    "n_psi_omega",          "n_phi_omega",    "n_omega_sp",
    "unit_norm", "exchange", "kernel_superposition", "kernel_mix_psi", "kernel_mix_phi"};

struct SeedResult {
  std::array<double, kNumQuantities> max_residual{};
  std::size_t checks = 0;
  std::vector<Discrepancy> discrepancies;
  std::vector<std::string> errors;
};

SeedResult check_seed(std::uint64_t seed, const CampaignConfig& cfg) {
  SeedResult out;
  const GramContext ctx{random_psd_table(seed, cfg.coherence)};

  auto record = [&](Quantity q, ExchangeSymmetry sym, cplx closed, cplx brute, double residual,
                    auto&& expansion) {
    ++out.checks;
    out.max_residual[q] = std::max(out.max_residual[q], residual);
    if (!(residual <= cfg.tolerance)) {
      out.discrepancies.push_back(Discrepancy{seed, std::string(sym.name()),
                                              std::string(kQuantityNames[q]), closed, brute,
                                              residual, expansion()});
    }
  };
  auto no_expansion = [] { return std::vector<std::string>{}; };

  for (ExchangeSymmetry sym : kBothStatistics) {
    try {
      const std::pair<StateKind, Quantity> normalized[] = {
          {StateKind::Initial, kN0},
          {StateKind::AbsSuperposition, kNAbs},
          {StateKind::PsiOmega, kNPsiOmega},
          {StateKind::PhiOmega, kNPhiOmega},
          {StateKind::OmegaSp, kNOmegaSp},
      };
      for (auto [kind, q] : normalized) {
        const double closed = closed_normalization(kind, ctx.table, sym);
        const double brute = oracle_normalization(kind, ctx, sym);
        record(q, sym, closed, brute, relative_residual(closed, brute), no_expansion);
      }
      for (StateKind kind : kAllStateKinds) {
        const TensorState x = build_state(kind, ctx, sym);
        const cplx self = inner(x, x, ctx);
        record(kUnitNorm, sym, 1.0, self, std::abs(self - 1.0), [&] {
          return std::vector<std::string>{fmt::format("state {}", kind_name(kind))};
        });
        TensorState diff = swap_slots(x) + cplx(-sym.sign()) * x;
        diff.canonicalize();
        const double dist = std::sqrt(std::abs(inner(diff, diff, ctx)));
        record(kExchange, sym, 0.0, dist, dist, [&] {
          return std::vector<std::string>{fmt::format("state {}", kind_name(kind))};
        });
      }
      const std::pair<KernelKind, Quantity> kernels[] = {
          {KernelKind::Superposition, kKernelSup},
          {KernelKind::MixPsi, kKernelMixPsi},
          {KernelKind::MixPhi, kKernelMixPhi},
      };
      for (auto [kind, q] : kernels) {
        const cplx closed = closed_kernel(kind, ctx.table, sym);
        const auto [bra, ket] = kernel_states(kind, ctx, sym, cfg.spectator);
        const cplx brute = inner(bra, ket, ctx);
        record(q, sym, closed, brute, relative_residual(closed, brute),
               [&] { return expansion_lines(bra, ket, ctx); });
      }
    } catch (const Error& e) {
      out.errors.push_back(fmt::format("{}: {}", sym.name(), e.what()));
    }
  }
  return out;
}

template <bool Parallel>
CampaignReport campaign_impl(const CampaignConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw OutOfRange("campaign tolerance must be > 0");
  if (!(cfg.coherence >= 0.0 && cfg.coherence < 1.0)) {
    throw OutOfRange("coherence must lie in [0, 1)");
  }
  std::vector<SeedResult> results(cfg.seeds);
  const auto count = static_cast<std::ptrdiff_t>(cfg.seeds);
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    results[static_cast<std::size_t>(i)] =
        check_seed(cfg.first_seed + static_cast<std::uint64_t>(i), cfg);
  }

  CampaignReport rep;
  rep.config = cfg;
  std::array<double, kNumQuantities> max_res{};
  for (std::size_t i = 0; i < results.size(); ++i) {
    SeedResult& r = results[i];
    rep.checks += r.checks;
    for (std::size_t q = 0; q < kNumQuantities; ++q) {
      max_res[q] = std::max(max_res[q], r.max_residual[q]);
    }
    for (Discrepancy& d : r.discrepancies) rep.discrepancies.push_back(std::move(d));
    for (std::string& e : r.errors) rep.errors.emplace_back(cfg.first_seed + i, std::move(e));
  }
  for (std::size_t q = 0; q < kNumQuantities; ++q) {
    rep.max_residual.emplace_back(std::string(kQuantityNames[q]), max_res[q]);
  }
  return rep;
}

}  // namespace

std::string describe(const TensorTerm& t) {
  auto el = [](E e) { return e == E::Ground ? 'g' : 'e'; };
  return fmt::format("{}|{} {}>1|{} {}>2|{}>", fmt_cplx(t.coeff), label_name(t.cm1), el(t.el1),
                     label_name(t.cm2), el(t.el2), t.photons);
}

TensorState::TensorState(std::vector<TensorTerm> terms) : terms_(std::move(terms)) {
  canonicalize();
}

void TensorState::canonicalize() {
  std::vector<TensorTerm> merged;
  merged.reserve(terms_.size());
  for (const TensorTerm& t : terms_) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const TensorTerm& m) { return m.same_signature(t); });
    if (it == merged.end()) {
      merged.push_back(t);
    } else {
      it->coeff += t.coeff;
    }
  }
  std::erase_if(merged, [](const TensorTerm& t) { return std::abs(t.coeff) < kPruneThreshold; });
  terms_ = std::move(merged);
}

TensorState& TensorState::operator+=(const TensorState& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

TensorState operator*(cplx c, TensorState s) {
  for (TensorTerm& t : s.terms_) t.coeff *= c;
  s.canonicalize();
  return s;
}

std::string_view kind_name(StateKind k) {
  switch (k) {
    case StateKind::Initial:
      return "initial";
    case StateKind::PsiAbs:
      return "psi_abs";
    case StateKind::PhiAbs:
      return "phi_abs";
    case StateKind::AbsSuperposition:
      return "abs_superposition";
    case StateKind::PsiOmega:
      return "psi_omega";
    case StateKind::PhiOmega:
      return "phi_omega";
    case StateKind::OmegaSp:
      return "omega_sp";
  }
  return "?";
}

std::string_view kernel_name(KernelKind k) {
  switch (k) {
    case KernelKind::Superposition:
      return "superposition";
    case KernelKind::MixPsi:
      return "mix_psi";
    case KernelKind::MixPhi:
      return "mix_phi";
  }
  return "?";
}

TensorState build_unnormalized(StateKind kind, const GramContext& ctx, ExchangeSymmetry sym) {
  switch (kind) {
    case StateKind::Initial:
      // The incident photon is still present before absorption.
      return symmetrized_pair(L::Psi0, E::Ground, L::Phi0, E::Ground, 1, sym);
    case StateKind::PsiAbs:
      return symmetrized_pair(L::PsiStar, E::Excited, L::Phi, E::Ground, 0, sym);
    case StateKind::PhiAbs:
      return symmetrized_pair(L::Psi, E::Ground, L::PhiStar, E::Excited, 0, sym);
    case StateKind::AbsSuperposition:
      return build_state(StateKind::PsiAbs, ctx, sym) + build_state(StateKind::PhiAbs, ctx, sym);
    case StateKind::PsiOmega:
      return symmetrized_pair(L::PsiSp, E::Ground, L::PhiBar, E::Ground, 1, sym);
    case StateKind::PhiOmega:
      return symmetrized_pair(L::PsiBar, E::Ground, L::PhiSp, E::Ground, 1, sym);
    case StateKind::OmegaSp:
      return build_state(StateKind::PsiOmega, ctx, sym) +
             build_state(StateKind::PhiOmega, ctx, sym);
  }
  throw OutOfRange("unknown state kind");
}

TensorState build_state(StateKind kind, const GramContext& ctx, ExchangeSymmetry sym) {
  return closed_normalization(kind, ctx.table, sym) * build_unnormalized(kind, ctx, sym);
}

double oracle_normalization(StateKind kind, const GramContext& ctx, ExchangeSymmetry sym) {
  const TensorState raw = build_unnormalized(kind, ctx, sym);
  const double norm2 = inner(raw, raw, ctx).real();
  if (!(norm2 > 0.0)) {
    throw ZeroNormState(fmt::format("oracle: state {} has zero norm", kind_name(kind)));
  }
  return 1.0 / std::sqrt(norm2);
}

cplx inner(const TensorState& a, const TensorState& b, const GramContext& ctx) {
  cplx sum = 0.0;
  for (const InnerContribution& c : inner_expansion(a, b, ctx)) sum += c.value;
  return sum;
}

std::vector<InnerContribution> inner_expansion(const TensorState& a, const TensorState& b,
                                               const GramContext& ctx) {
  std::vector<InnerContribution> out;
  for (std::size_t i = 0; i < a.terms().size(); ++i) {
    const TensorTerm& x = a.terms()[i];
    for (std::size_t j = 0; j < b.terms().size(); ++j) {
      const TensorTerm& y = b.terms()[j];
      if (x.el1 != y.el1 || x.el2 != y.el2 || x.photons != y.photons) continue;
      const cplx v = std::conj(x.coeff) * y.coeff * ctx.table(x.cm1, y.cm1) *
                     ctx.table(x.cm2, y.cm2);
      out.push_back(InnerContribution{i, j, v});
    }
  }
  return out;
}

TensorState apply_dipole(const TensorState& state, Spectator spectator) {
  std::vector<TensorTerm> out;
  bool any_excited = false;
  for (const TensorTerm& t : state.terms()) {
    if (t.photons != 0) continue;
    for (int slot = 0; slot < 2; ++slot) {
      const E el = slot == 0 ? t.el1 : t.el2;
      if (el != E::Excited) continue;
      any_excited = true;
      TensorTerm n = t;
      L& emitter = slot == 0 ? n.cm1 : n.cm2;
      L& other = slot == 0 ? n.cm2 : n.cm1;
      (slot == 0 ? n.el1 : n.el2) = E::Ground;
      emitter = emission_recoil(emitter);
      if (spectator == Spectator::FreeEvolve) other = free_evolution(other);
      n.photons = 1;
      out.push_back(n);
    }
  }
  if (!any_excited) {
    throw NoExcitedComponent("dipole action: no zero-photon term has an excited atom");
  }
  return TensorState(std::move(out));
}

TensorState swap_slots(const TensorState& state) {
  std::vector<TensorTerm> out;
  out.reserve(state.terms().size());
  for (TensorTerm t : state.terms()) {
    std::swap(t.cm1, t.cm2);
    std::swap(t.el1, t.el2);
    out.push_back(t);
  }
  return TensorState(std::move(out));
}

cplx kernel_bruteforce(KernelKind kind, const GramContext& ctx, ExchangeSymmetry sym,
                       Spectator spectator) {
  const auto [bra, ket] = kernel_states(kind, ctx, sym, spectator);
  return inner(bra, ket, ctx);
}

OverlapTable random_psd_table(std::uint64_t seed, double coherence) {
  if (!(coherence >= 0.0 && coherence < 1.0)) {
    throw OutOfRange(fmt::format("coherence must lie in [0, 1) (got {})", coherence));
  }
  using Vec = std::array<cplx, kEmbeddingDim>;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw_unit = [&] {
    Vec v;
    double n2 = 0.0;
    for (cplx& z : v) {
      const double re = normal(rng);
      const double im = normal(rng);
      z = {re, im};
      n2 += std::norm(z);
    }
    for (cplx& z : v) z /= std::sqrt(n2);
    return v;
  };

  const Vec shared = draw_unit();
  std::array<Vec, kNumLabels> vecs;
  for (Vec& v : vecs) {
    const Vec own = draw_unit();
    double n2 = 0.0;
    for (std::size_t k = 0; k < kEmbeddingDim; ++k) {
      v[k] = std::sqrt(coherence) * shared[k] + std::sqrt(1.0 - coherence) * own[k];
      n2 += std::norm(v[k]);
    }
    for (cplx& z : v) z /= std::sqrt(n2);
  }

  OverlapTable t;
  for (int a = 0; a < kNumLabels; ++a) {
    for (int b = a + 1; b < kNumLabels; ++b) {
      cplx g = 0.0;
      for (std::size_t k = 0; k < kEmbeddingDim; ++k) g += std::conj(vecs[a][k]) * vecs[b][k];
      t.set(static_cast<L>(a), static_cast<L>(b), g);
    }
  }
  return t;
}

double relative_residual(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

CampaignReport run_campaign(const CampaignConfig& config) { return campaign_impl<true>(config); }

CampaignReport run_campaign_serial(const CampaignConfig& config) {
  return campaign_impl<false>(config);
}

}  // namespace pairemit::oracle
