#include "pairemit/state_algebra.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fmt/format.h>

#include "pairemit/errors.hpp"

namespace pairemit {

namespace {

constexpr std::array<std::string_view, kNumLabels> kNames{
    "psi0", "phi0", "psi", "phi", "psi_star",
    "phi_star", "psi_bar", "phi_bar", "psi_sp", "phi_sp"};

// (2 + delta)^(-1/2) with the zero-norm guard applied relative to the
// magnitude of the summands.
double inverse_sqrt_norm(double delta, const char* what) {
  const double radicand = 2.0 + delta;
  const double scale = 2.0 + std::abs(delta);
  if (!std::isfinite(radicand)) {
    throw InvalidTable(fmt::format("{}: non-finite normalization radicand", what));
  }
  if (radicand <= kNormEpsilon * scale) {
    throw ZeroNormState(fmt::format(
        "{}: normalization radicand {:.3e} vanishes (zero-norm two-particle state)",
        what, radicand));
  }
  return 1.0 / std::sqrt(radicand);
}

}  // namespace

std::string_view label_name(StateLabel l) { return kNames[static_cast<int>(l)]; }

std::optional<StateLabel> label_from_name(std::string_view name) {
  for (StateLabel l : kAllLabels) {
    if (label_name(l) == name) return l;
  }
  return std::nullopt;
}

StateLabel partner_label(StateLabel l) {
  // Labels are laid out in (psi, phi) pairs.
  const int i = static_cast<int>(l);
  return static_cast<StateLabel>(i % 2 == 0 ? i + 1 : i - 1);
}

OverlapTable::OverlapTable() {
  for (StateLabel l : kAllLabels) cells_[index(l, l)] = 1.0;
}

void OverlapTable::set(StateLabel bra, StateLabel ket, cplx value) {
  if (bra == ket) {
    cells_[index(bra, ket)] = value;
    return;
  }
  cells_[index(bra, ket)] = value;
  cells_[index(ket, bra)] = std::conj(value);
}

void OverlapTable::set_raw(StateLabel bra, StateLabel ket, cplx value) {
  cells_[index(bra, ket)] = value;
}

OverlapTable OverlapTable::conjugated() const {
  OverlapTable out;
  for (std::size_t i = 0; i < cells_.size(); ++i) out.cells_[i] = std::conj(cells_[i]);
  return out;
}

OverlapTable OverlapTable::family_swapped() const {
  OverlapTable out;
  for (StateLabel a : kAllLabels) {
    for (StateLabel b : kAllLabels) {
      out.cells_[index(partner_label(a), partner_label(b))] = cells_[index(a, b)];
    }
  }
  return out;
}

double n0(const OverlapTable& t, ExchangeSymmetry sym) {
  require_valid(t);
  const double o = std::norm(t(StateLabel::Psi0, StateLabel::Phi0));
  return inverse_sqrt_norm(sym.sign() * 2.0 * o, "N0");
}

double n_abs(const OverlapTable& t, ExchangeSymmetry sym) {
  require_valid(t);
  // <phi|psi> is the conjugate of the stored (Psi, Phi) cell.
  const cplx prod = t(StateLabel::PsiStar, StateLabel::PhiStar) *
                    t(StateLabel::Phi, StateLabel::Psi);
  return inverse_sqrt_norm(sym.sign() * 2.0 * prod.real(), "N_abs");
}

double n_psi_omega(const OverlapTable& t, ExchangeSymmetry sym) {
  require_valid(t);
  const double o = std::norm(t(StateLabel::PsiSp, StateLabel::PhiBar));
  return inverse_sqrt_norm(sym.sign() * 2.0 * o, "N_psi_omega");
}

double n_phi_omega(const OverlapTable& t, ExchangeSymmetry sym) {
  require_valid(t);
  const double o = std::norm(t(StateLabel::PhiSp, StateLabel::PsiBar));
  return inverse_sqrt_norm(sym.sign() * 2.0 * o, "N_phi_omega");
}

double n_omega_sp(const OverlapTable& t, ExchangeSymmetry sym) {
  const double a = n_psi_omega(t, sym);
  const double b = n_phi_omega(t, sym);
  const cplx direct = t(StateLabel::PsiSp, StateLabel::PsiBar) *
                      t(StateLabel::PhiBar, StateLabel::PhiSp);
  const cplx exchange = t(StateLabel::PsiSp, StateLabel::PhiSp) *
                        t(StateLabel::PhiBar, StateLabel::PsiBar);
  const double cross = (direct + static_cast<double>(sym.sign()) * exchange).real();
  return inverse_sqrt_norm(4.0 * a * b * cross, "N_omega_sp");
}

NormalizationSet normalizations(const OverlapTable& t, ExchangeSymmetry sym) {
  return NormalizationSet{
      .n0 = n0(t, sym),
      .n_abs = n_abs(t, sym),
      .n_psi_omega = n_psi_omega(t, sym),
      .n_phi_omega = n_phi_omega(t, sym),
      .n_omega_sp = n_omega_sp(t, sym),
  };
}

ValidationReport validate(const OverlapTable& t, bool strict) {
  ValidationReport rep;
  rep.strict = strict;
  for (StateLabel a : kAllLabels) {
    for (StateLabel b : kAllLabels) {
      const cplx z = t(a, b);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        rep.finite = false;
        rep.violations.push_back(
            fmt::format("non-finite entry <{}|{}>", label_name(a), label_name(b)));
        continue;
      }
      if (std::abs(z) > 1.0 + kEntryTolerance) {
        rep.bounded = false;
        rep.violations.push_back(fmt::format("|<{}|{}>| = {:.17g} exceeds 1",
                                             label_name(a), label_name(b), std::abs(z)));
      }
      if (a == b) {
        if (std::abs(z - 1.0) > kEntryTolerance) {
          rep.unit_diagonal = false;
          rep.violations.push_back(
              fmt::format("<{0}|{0}> = ({1:.17g},{2:.17g}) is not 1", label_name(a),
                          z.real(), z.imag()));
        }
      } else if (static_cast<int>(a) < static_cast<int>(b) && z != std::conj(t(b, a))) {
        rep.hermitian = false;
        rep.violations.push_back(fmt::format("<{0}|{1}> != conj(<{1}|{0}>)",
                                             label_name(a), label_name(b)));
      }
    }
  }
  if (strict && rep.finite) {
    Eigen::Matrix<cplx, kNumLabels, kNumLabels> gram;
    for (StateLabel a : kAllLabels) {
      for (StateLabel b : kAllLabels) {
        gram(static_cast<int>(a), static_cast<int>(b)) = t(a, b);
      }
    }
    // The solver reads the lower triangle only; symmetrize so a
    // non-Hermitian table is judged on its Hermitian part.
    const Eigen::Matrix<cplx, kNumLabels, kNumLabels> herm =
        0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cplx, kNumLabels, kNumLabels>> solver(
        herm, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = solver.eigenvalues().minCoeff();
    if (!rep.psd()) {
      rep.violations.push_back(
          fmt::format("Gram matrix not PSD: minimum eigenvalue {:.3e}", *rep.min_eigenvalue));
    }
  }
  return rep;
}

void require_valid(const OverlapTable& t) {
  const ValidationReport rep = validate(t, false);
  if (!rep.ok()) throw InvalidTable("invalid overlap table: " + rep.violations.front());
}

}  // namespace pairemit
