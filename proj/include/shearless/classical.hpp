// classical.hpp - classical image dynamics H(x,p,t) = J cos p + B0 F(t) cos(2 pi x / N).
//
// Sinusoidal drive is integrated with kick-drift-kick Strang substeps (field
// evaluated at the substep midpoint) composed into fourth-order steps. The
// kicked drive uses the exact one-period map (kick first, then free drift).

#pragma once

#include <cstdint>
#include <vector>

#include "shearless/model.hpp"

namespace shearless::classical {

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

/// Maps x into (0, N] and p into (-pi, pi].
PhasePoint canonicalize(PhasePoint z, int n_sites);

struct OrbitSample {
  double t;
  double x;  // unwrapped
  double p;  // unwrapped
};

/// Stroboscopic samples of a trajectory tracked on the real line.
struct LiftedOrbit {
  std::vector<OrbitSample> samples;
};

/// Per-seed stroboscopic points at t = nT, n = 0..n_periods, canonicalized.
struct SOSResult {
  std::vector<std::vector<PhasePoint>> orbits;
};

double energy(const ValidatedParams& params, PhasePoint z, double t);

/// One kick-drift-kick substep of length dt starting at time t.
/// Throws NonPositiveStep for dt <= 0 and KickedDriveNotSampleable for kicked drives.
PhasePoint step(const ValidatedParams& params, PhasePoint z, double t, double dt);

/// One period of the kicked Harper map: p += (2pi/N) K sin(2pi x/N), then
/// x -= J sin(p) T, with K = params.kick_strength().
PhasePoint map_kicked(const ValidatedParams& params, PhasePoint z);

/// Advances one drive period from t = n T (either drive), without wrapping.
PhasePoint period_map(const ValidatedParams& params, PhasePoint z, double t0 = 0.0);

/// Integrates from t0 to t1 with the configured substep density. Backward
/// integration (t1 < t0) runs the reversed step sequence. Sinusoidal only.
PhasePoint integrate(const ValidatedParams& params, PhasePoint z, double t0, double t1);

/// Lifted stroboscopic orbit over n_periods periods (n_periods + 1 samples).
LiftedOrbit lifted_orbit(const ValidatedParams& params, PhasePoint seed, int n_periods);

SOSResult surface_of_section(const ValidatedParams& params,
                             const std::vector<PhasePoint>& seeds, int n_periods);

struct RotationNumber {
  double nu;
  double convergence_error;  // |nu_n - nu_{n/2}|
};

/// Winding in cells per period, nu = (x_n - x_0) / (n N). Requires n >= 100.
RotationNumber rotation_number(const ValidatedParams& params, PhasePoint seed,
                               int n_iterations);

struct RotationScan {
  std::vector<double> p0;
  std::vector<double> nu;
  std::vector<double> convergence_error;
};

/// nu(p0) at fixed x0 for p0 sampled at bin midpoints of [p_min, p_max].
RotationScan rotation_scan(const ValidatedParams& params, double x0, double p_min,
                           double p_max, int resolution, int n_iterations);

/// Interior extremum of a sampled profile refined with a 3-point parabola.
/// Throws NotFound when neither the max nor the min is interior.
double locate_extremum(const std::vector<double>& xs, const std::vector<double>& ys);

/// Location of the rotation-number extremum over p0 in [p_min, p_max].
double find_shearless(const ValidatedParams& params, double x0, double p_min,
                      double p_max, int resolution = 400, int n_iterations = 200);

/// Circular variance of x (sites^2) of a Gaussian cloud matched to the
/// quantum packet, sampled at t = nT for n = 0..n_periods.
std::vector<double> ensemble_spread(const ValidatedParams& params,
                                    const PacketSpec& packet, int n_samples,
                                    int n_periods, std::uint64_t rng_seed);

}  // namespace shearless::classical
