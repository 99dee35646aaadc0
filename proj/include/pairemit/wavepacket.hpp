#pragma once

// Gaussian center-of-mass wavepackets and the overlap tables they generate.
//
// Convention (hbar = 1), per Cartesian axis and isotropic in d dimensions:
//
//   psi(x) = (2 pi sigma^2)^(-d/4) (1 + i tau)^(-d/2)
//            * exp(-|x - c|^2 / (4 sigma^2 (1 + i tau)) + i p.x + i theta)
//
// `sigma` is the waist width (position standard deviation at tau = 0) and
// `chirp` tau tracks free spreading: the density has standard deviation
// sigma * sqrt(1 + tau^2). The plane-wave factor is exp(i p.x), so a momentum
// kick is multiplication by exp(i k.x) and a common kick leaves every inner
// product unchanged.

#include <complex>
#include <cstddef>
#include <vector>

#include "pairemit/state_algebra.hpp"

namespace pairemit {

struct GaussianPacket {
  std::vector<double> center;
  std::vector<double> momentum;
  double sigma = 1.0;
  double chirp = 0.0;
  double phase = 0.0;

  std::size_t dim() const { return center.size(); }
  /// Position standard deviation of the density.
  double effective_width() const;
};

/// Packet at rest at `center` with the given waist.
GaussianPacket make_packet(std::vector<double> center, double sigma);

/// Throws InvalidScene / DimensionMismatch for malformed packets.
void check_packet(const GaussianPacket& g);

/// Closed-form <g1|g2>. Requires equal dimension and equal sigma.
cplx overlap(const GaussianPacket& g1, const GaussianPacket& g2);

GaussianPacket apply_recoil(const GaussianPacket& g, const std::vector<double>& k);

/// Free Schrodinger evolution for time t >= 0 of a particle of mass `mass`.
GaussianPacket free_evolve(const GaussianPacket& g, double t, double mass);

/// Pointwise wavefunction value; x has length dim.
cplx amplitude(const GaussianPacket& g, const std::vector<double>& x);

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;

  double spacing() const { return (hi - lo) / static_cast<double>(points - 1); }
};

/// Tensor-product grid; one axis per spatial dimension.
struct GridSpec {
  std::vector<GridAxis> axes;
};

/// Minimum coverage around each center, in effective widths.
inline constexpr double kQuadratureCoverage = 8.0;
/// Maximum spacing, as a fraction of sigma.
inline constexpr double kQuadratureMaxSpacing = 1.0 / 16.0;

/// A grid that satisfies the quadrature preconditions with margin.
GridSpec auto_grid(const GaussianPacket& g1, const GaussianPacket& g2);

/// Throws GridTooCoarse if the grid cannot resolve both packets.
void check_grid(const GaussianPacket& g1, const GaussianPacket& g2, const GridSpec& grid);

/// Trapezoidal-rule <g1|g2> from sampled wavefunctions. Test oracle for
/// `overlap`; the integrand is evaluated in parallel and summed in a fixed
/// order, so the result is bitwise identical to the serial reference.
cplx overlap_quadrature(const GaussianPacket& g1, const GaussianPacket& g2,
                        const GridSpec& grid);
cplx overlap_quadrature_serial(const GaussianPacket& g1, const GaussianPacket& g2,
                               const GridSpec& grid);

struct Scene {
  GaussianPacket packet_psi;
  GaussianPacket packet_phi;
  /// Photon wavenumber; absorption and emission recoils both have this size.
  double k_abs = 0.0;
  std::vector<double> beam_axis;
  std::vector<double> omega_dir;
  double mass = 1.0;
  /// Time between absorption and the onset of emission.
  double delay = 0.0;

  std::size_t dim() const { return packet_psi.dim(); }
};

/// Two packets at rest, separated by `separation` along the first axis and
/// centered on the origin. Empty `beam_axis` defaults to the first axis.
Scene make_scene(std::size_t dim, double sigma, double separation, double k_abs,
                 std::vector<double> beam_axis, std::vector<double> omega_dir,
                 double mass = 1.0, double delay = 0.0);

void check_scene(const Scene& scene);

/// All ten labeled states of a scene.
std::vector<GaussianPacket> scene_states(const Scene& scene);

/// Pairwise overlaps of the ten scene states; passes strict validation.
OverlapTable build_overlap_table(const Scene& scene);

}  // namespace pairemit
