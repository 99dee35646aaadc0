#pragma once

// Labeled one-particle CM states, their overlap table, exchange statistics,
// and the closed-form normalization coefficients of the two-atom states.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pairemit {

using cplx = std::complex<double>;

/// Boson (+1) or fermion (-1) exchange sign. Only the two named values exist.
class ExchangeSymmetry {
 public:
  static constexpr ExchangeSymmetry boson() { return ExchangeSymmetry(1); }
  static constexpr ExchangeSymmetry fermion() { return ExchangeSymmetry(-1); }

  constexpr int sign() const { return sign_; }
  constexpr bool is_boson() const { return sign_ > 0; }
  std::string_view name() const { return is_boson() ? "boson" : "fermion"; }

  friend constexpr bool operator==(ExchangeSymmetry, ExchangeSymmetry) = default;

 private:
  explicit constexpr ExchangeSymmetry(int s) : sign_(s) {}
  int sign_;
};

inline constexpr std::array<ExchangeSymmetry, 2> kBothStatistics{
    ExchangeSymmetry::boson(), ExchangeSymmetry::fermion()};

/// psi_0, phi_0 (initial); psi, phi (non-absorbing, interaction picture);
/// psi*, phi* (absorption recoil); psi-bar, phi-bar (free evolution);
/// psi_sp, phi_sp (emission recoil along the postselected direction).
enum class StateLabel : int {
  Psi0 = 0,
  Phi0,
  Psi,
  Phi,
  PsiStar,
  PhiStar,
  PsiBar,
  PhiBar,
  PsiSp,
  PhiSp,
};

inline constexpr int kNumLabels = 10;

inline constexpr std::array<StateLabel, kNumLabels> kAllLabels{
    StateLabel::Psi0,    StateLabel::Phi0,    StateLabel::Psi,
    StateLabel::Phi,     StateLabel::PsiStar, StateLabel::PhiStar,
    StateLabel::PsiBar,  StateLabel::PhiBar,  StateLabel::PsiSp,
    StateLabel::PhiSp};

std::string_view label_name(StateLabel l);
std::optional<StateLabel> label_from_name(std::string_view name);

/// The label obtained by exchanging the psi and phi families.
StateLabel partner_label(StateLabel l);

/// Table of inner products <a|b> over the ten labels.
///
/// `set` writes (a,b) and its conjugate partner (b,a), so tables assembled
/// through it are Hermitian by construction. `set_raw` writes a single cell
/// and exists for importing external data, which `validate` then checks.
class OverlapTable {
 public:
  /// Orthonormal labels: unit diagonal, zero elsewhere.
  OverlapTable();

  cplx operator()(StateLabel bra, StateLabel ket) const {
    return cells_[index(bra, ket)];
  }

  void set(StateLabel bra, StateLabel ket, cplx value);
  void set_raw(StateLabel bra, StateLabel ket, cplx value);

  /// Table with every entry replaced by its complex conjugate.
  OverlapTable conjugated() const;
  /// Table with the psi and phi families relabeled into each other.
  OverlapTable family_swapped() const;

 private:
  static constexpr int index(StateLabel a, StateLabel b) {
    return static_cast<int>(a) * kNumLabels + static_cast<int>(b);
  }
  std::array<cplx, kNumLabels * kNumLabels> cells_{};
};

struct NormalizationSet {
  double n0 = 0.0;
  double n_abs = 0.0;
  double n_psi_omega = 0.0;
  double n_phi_omega = 0.0;
  double n_omega_sp = 0.0;
};

/// Relative threshold below which a normalization radicand counts as zero.
inline constexpr double kNormEpsilon = 1e-12;
/// Slack on the |entry| <= 1 and unit-diagonal checks.
inline constexpr double kEntryTolerance = 1e-12;
/// Minimum eigenvalue accepted by strict (Gram) validation.
inline constexpr double kPsdTolerance = -1e-10;

double n0(const OverlapTable& table, ExchangeSymmetry sym);
double n_abs(const OverlapTable& table, ExchangeSymmetry sym);
double n_psi_omega(const OverlapTable& table, ExchangeSymmetry sym);
double n_phi_omega(const OverlapTable& table, ExchangeSymmetry sym);
double n_omega_sp(const OverlapTable& table, ExchangeSymmetry sym);
NormalizationSet normalizations(const OverlapTable& table, ExchangeSymmetry sym);

struct ValidationReport {
  bool hermitian = true;
  bool unit_diagonal = true;
  bool bounded = true;
  bool finite = true;
  bool strict = false;
  /// Set only in strict mode.
  std::optional<double> min_eigenvalue;
  std::vector<std::string> violations;

  bool psd() const {
    return !min_eigenvalue || *min_eigenvalue >= kPsdTolerance;
  }
  bool ok() const { return hermitian && unit_diagonal && bounded && finite && psd(); }
};

ValidationReport validate(const OverlapTable& table, bool strict = false);

/// Throws InvalidTable when the non-strict validation fails.
void require_valid(const OverlapTable& table);

}  // namespace pairemit
