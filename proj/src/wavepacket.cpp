#include "pairemit/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "pairemit/errors.hpp"

namespace pairemit {

namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// exp(-a (x - c)^2) width coefficient for one axis.
cplx width_coefficient(const GaussianPacket& g) {
  return 1.0 / (4.0 * g.sigma * g.sigma * cplx(1.0, g.chirp));
}

// Per-axis normalization (2 pi sigma^2)^(-1/4) (1 + i tau)^(-1/2).
cplx axis_norm(const GaussianPacket& g) {
  return std::pow(2.0 * pi * g.sigma * g.sigma, -0.25) / std::sqrt(cplx(1.0, g.chirp));
}

cplx axis_factor(const GaussianPacket& g, std::size_t k, double x) {
  const double u = x - g.center[k];
  return axis_norm(g) * std::exp(-width_coefficient(g) * (u * u) + kI * (g.momentum[k] * x));
}

void check_same_family(const GaussianPacket& g1, const GaussianPacket& g2) {
  check_packet(g1);
  check_packet(g2);
  if (g1.dim() != g2.dim()) {
    throw DimensionMismatch(
        fmt::format("packet dimensions differ: {} vs {}", g1.dim(), g2.dim()));
  }
  if (std::abs(g1.sigma - g2.sigma) > 1e-12 * std::max(g1.sigma, g2.sigma)) {
    throw UnequalWidths(fmt::format("packet widths differ: {} vs {}", g1.sigma, g2.sigma));
  }
}

// Largest local wavenumber of the packet inside its coverage window.
double max_wavenumber(const GaussianPacket& g, std::size_t k, double window) {
  const double tau = g.chirp;
  const double chirp_k = window * std::abs(tau) / (2.0 * g.sigma * g.sigma * (1.0 + tau * tau));
  return std::abs(g.momentum[k]) + chirp_k;
}

template <bool Parallel>
cplx axis_integral(const GaussianPacket& g1, const GaussianPacket& g2, std::size_t k,
                   const GridAxis& axis) {
  const std::size_t n = axis.points;
  const double h = axis.spacing();
  std::vector<cplx> vals(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const double x = axis.lo + h * static_cast<double>(i);
    vals[static_cast<std::size_t>(i)] = std::conj(axis_factor(g1, k, x)) * axis_factor(g2, k, x);
  }
  cplx sum = 0.5 * (vals.front() + vals.back());
  for (std::size_t i = 1; i + 1 < n; ++i) sum += vals[i];
  return h * sum;
}

template <bool Parallel>
cplx quadrature_impl(const GaussianPacket& g1, const GaussianPacket& g2,
                     const GridSpec& grid) {
  check_grid(g1, g2, grid);
  // The integrand factorizes over axes, so the tensor-product trapezoid rule
  // is the product of one-dimensional rules.
  cplx total = std::exp(kI * (g2.phase - g1.phase));
  for (std::size_t k = 0; k < g1.dim(); ++k) {
    total *= axis_integral<Parallel>(g1, g2, k, grid.axes[k]);
  }
  return total;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

double GaussianPacket::effective_width() const {
  return sigma * std::sqrt(1.0 + chirp * chirp);
}

GaussianPacket make_packet(std::vector<double> center, double sigma) {
  GaussianPacket g;
  g.momentum.assign(center.size(), 0.0);
  g.center = std::move(center);
  g.sigma = sigma;
  return g;
}

void check_packet(const GaussianPacket& g) {
  if (g.dim() < 1 || g.dim() > 3) {
    throw InvalidScene(fmt::format("packet dimension must be 1, 2 or 3 (got {})", g.dim()));
  }
  if (g.momentum.size() != g.dim()) {
    throw DimensionMismatch(fmt::format("momentum has length {} but center has length {}",
                                        g.momentum.size(), g.dim()));
  }
  if (!(g.sigma > 0.0) || !std::isfinite(g.sigma)) {
    throw InvalidScene(fmt::format("packet sigma must be positive (got {})", g.sigma));
  }
}

cplx overlap(const GaussianPacket& g1, const GaussianPacket& g2) {
  check_same_family(g1, g2);
  const cplx a1 = std::conj(width_coefficient(g1));
  const cplx a2 = width_coefficient(g2);
  const cplx a = a1 + a2;
  const cplx prefactor = std::conj(axis_norm(g1)) * axis_norm(g2) * std::sqrt(pi / a);
  cplx exponent = kI * (g2.phase - g1.phase);
  cplx result = 1.0;
  for (std::size_t k = 0; k < g1.dim(); ++k) {
    const double dc = g2.center[k] - g1.center[k];
    const double dp = g2.momentum[k] - g1.momentum[k];
    // Gaussian integral in u = x - c1, arranged so the large terms cancel
    // analytically rather than in floating point.
    exponent += -a1 * a2 * (dc * dc) / a + kI * a2 * (dc * dp) / a - (dp * dp) / (4.0 * a) +
                kI * (dp * g1.center[k]);
    result *= prefactor;
  }
  return result * std::exp(exponent);
}

GaussianPacket apply_recoil(const GaussianPacket& g, const std::vector<double>& k) {
  check_packet(g);
  if (k.size() != g.dim()) {
    throw DimensionMismatch(
        fmt::format("recoil has length {} but packet has dimension {}", k.size(), g.dim()));
  }
  GaussianPacket out = g;
  for (std::size_t i = 0; i < k.size(); ++i) out.momentum[i] += k[i];
  return out;
}

GaussianPacket free_evolve(const GaussianPacket& g, double t, double mass) {
  check_packet(g);
  if (!(t >= 0.0)) throw OutOfRange(fmt::format("evolution time must be >= 0 (got {})", t));
  if (!(mass > 0.0)) throw OutOfRange(fmt::format("mass must be > 0 (got {})", mass));
  GaussianPacket out = g;
  double p2 = 0.0;
  for (std::size_t k = 0; k < g.dim(); ++k) {
    out.center[k] += g.momentum[k] * t / mass;
    p2 += g.momentum[k] * g.momentum[k];
  }
  out.chirp += t / (2.0 * mass * g.sigma * g.sigma);
  out.phase -= p2 * t / (2.0 * mass);
  return out;
}

cplx amplitude(const GaussianPacket& g, const std::vector<double>& x) {
  check_packet(g);
  if (x.size() != g.dim()) throw DimensionMismatch("point dimension does not match packet");
  cplx v = std::exp(kI * g.phase);
  for (std::size_t k = 0; k < g.dim(); ++k) v *= axis_factor(g, k, x[k]);
  return v;
}

GridSpec auto_grid(const GaussianPacket& g1, const GaussianPacket& g2) {
  check_same_family(g1, g2);
  GridSpec grid;
  const double margin = 10.0;
  const double w1 = margin * g1.effective_width();
  const double w2 = margin * g2.effective_width();
  for (std::size_t k = 0; k < g1.dim(); ++k) {
    GridAxis axis;
    axis.lo = std::min(g1.center[k] - w1, g2.center[k] - w2);
    axis.hi = std::max(g1.center[k] + w1, g2.center[k] + w2);
    const double kmax = std::max(max_wavenumber(g1, k, axis.hi - axis.lo),
                                 max_wavenumber(g2, k, axis.hi - axis.lo));
    double h = g1.sigma / 32.0;
    if (kmax > 0.0) h = std::min(h, pi / (8.0 * kmax));
    axis.points = static_cast<std::size_t>(std::ceil((axis.hi - axis.lo) / h)) + 1;
    grid.axes.push_back(axis);
  }
  return grid;
}

void check_grid(const GaussianPacket& g1, const GaussianPacket& g2, const GridSpec& grid) {
  check_same_family(g1, g2);
  if (grid.axes.size() != g1.dim()) {
    throw DimensionMismatch(fmt::format("grid has {} axes for {}-dimensional packets",
                                        grid.axes.size(), g1.dim()));
  }
  for (std::size_t k = 0; k < grid.axes.size(); ++k) {
    const GridAxis& axis = grid.axes[k];
    if (axis.points < 2 || !(axis.hi > axis.lo)) {
      throw GridTooCoarse(fmt::format("axis {}: degenerate grid", k));
    }
    const double h = axis.spacing();
    if (h > kQuadratureMaxSpacing * g1.sigma) {
      throw GridTooCoarse(
          fmt::format("axis {}: spacing {} exceeds sigma/16 = {}", k, h, g1.sigma / 16.0));
    }
    for (const GaussianPacket* g : {&g1, &g2}) {
      const double w = kQuadratureCoverage * g->effective_width();
      if (axis.lo > g->center[k] - w || axis.hi < g->center[k] + w) {
        throw GridTooCoarse(fmt::format(
            "axis {}: [{}, {}] does not cover 8 widths around center {}", k, axis.lo,
            axis.hi, g->center[k]));
      }
      // At least eight samples per local wavelength.
      const double kmax = max_wavenumber(*g, k, axis.hi - axis.lo);
      if (h * kmax > pi / 4.0) {
        throw GridTooCoarse(
            fmt::format("axis {}: spacing {} cannot resolve wavenumber {}", k, h, kmax));
      }
    }
  }
}

cplx overlap_quadrature(const GaussianPacket& g1, const GaussianPacket& g2,
                        const GridSpec& grid) {
  return quadrature_impl<true>(g1, g2, grid);
}

cplx overlap_quadrature_serial(const GaussianPacket& g1, const GaussianPacket& g2,
                               const GridSpec& grid) {
  return quadrature_impl<false>(g1, g2, grid);
}

Scene make_scene(std::size_t dim, double sigma, double separation, double k_abs,
                 std::vector<double> beam_axis, std::vector<double> omega_dir, double mass,
                 double delay) {
  std::vector<double> c_psi(dim, 0.0);
  std::vector<double> c_phi(dim, 0.0);
  if (dim > 0) {
    c_psi[0] = -0.5 * separation;
    c_phi[0] = 0.5 * separation;
  }
  if (beam_axis.empty()) {
    beam_axis.assign(dim, 0.0);
    if (dim > 0) beam_axis[0] = 1.0;
  }
  Scene s;
  s.packet_psi = make_packet(std::move(c_psi), sigma);
  s.packet_phi = make_packet(std::move(c_phi), sigma);
  s.k_abs = k_abs;
  s.beam_axis = std::move(beam_axis);
  s.omega_dir = std::move(omega_dir);
  s.mass = mass;
  s.delay = delay;
  return s;
}

void check_scene(const Scene& s) {
  check_same_family(s.packet_psi, s.packet_phi);
  const std::size_t d = s.dim();
  if (s.beam_axis.size() != d || s.omega_dir.size() != d) {
    throw DimensionMismatch(fmt::format(
        "beam axis (length {}) and emission direction (length {}) must have length {}",
        s.beam_axis.size(), s.omega_dir.size(), d));
  }
  if (std::abs(norm2(s.beam_axis) - 1.0) > 1e-12) {
    throw InvalidScene("beam axis must be a unit vector");
  }
  if (std::abs(norm2(s.omega_dir) - 1.0) > 1e-12) {
    throw InvalidScene("emission direction must be a unit vector");
  }
  if (!(s.k_abs >= 0.0) || !std::isfinite(s.k_abs)) {
    throw InvalidScene(fmt::format("k_abs must be >= 0 (got {})", s.k_abs));
  }
  if (!(s.mass > 0.0)) throw InvalidScene(fmt::format("mass must be > 0 (got {})", s.mass));
  if (!(s.delay >= 0.0)) throw InvalidScene(fmt::format("delay must be >= 0 (got {})", s.delay));
}

std::vector<GaussianPacket> scene_states(const Scene& s) {
  check_scene(s);
  const std::size_t d = s.dim();
  std::vector<double> k_in(d), k_out(d);
  for (std::size_t i = 0; i < d; ++i) {
    k_in[i] = s.k_abs * s.beam_axis[i];
    k_out[i] = -s.k_abs * s.omega_dir[i];
  }
  std::vector<GaussianPacket> states(kNumLabels);
  auto at = [&](StateLabel l) -> GaussianPacket& { return states[static_cast<int>(l)]; };
  at(StateLabel::Psi0) = s.packet_psi;
  at(StateLabel::Phi0) = s.packet_phi;
  at(StateLabel::Psi) = s.packet_psi;
  at(StateLabel::Phi) = s.packet_phi;
  at(StateLabel::PsiStar) = apply_recoil(s.packet_psi, k_in);
  at(StateLabel::PhiStar) = apply_recoil(s.packet_phi, k_in);
  at(StateLabel::PsiBar) = free_evolve(s.packet_psi, s.delay, s.mass);
  at(StateLabel::PhiBar) = free_evolve(s.packet_phi, s.delay, s.mass);
  at(StateLabel::PsiSp) = free_evolve(apply_recoil(at(StateLabel::PsiStar), k_out), s.delay, s.mass);
  at(StateLabel::PhiSp) = free_evolve(apply_recoil(at(StateLabel::PhiStar), k_out), s.delay, s.mass);
  return states;
}

OverlapTable build_overlap_table(const Scene& s) {
  const std::vector<GaussianPacket> states = scene_states(s);
  OverlapTable table;
  for (int a = 0; a < kNumLabels; ++a) {
    for (int b = a + 1; b < kNumLabels; ++b) {
      table.set(static_cast<StateLabel>(a), static_cast<StateLabel>(b),
                overlap(states[a], states[b]));
    }
  }
  return table;
}

}  // namespace pairemit
