#include "shearless/classical.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "shearless/parallel.hpp"
#include "shearless/splitting.hpp"

namespace shearless::classical {

namespace {

// Kick-drift-kick with the field frozen at t_mid.
PhasePoint kdk(const ValidatedParams& params, PhasePoint z, double t_mid, double h) {
  const double q = kTwoPi / params.N();
  const double force = q * params.B0() * std::sin(params.omega() * t_mid);
  z.p += force * std::sin(q * z.x) * (0.5 * h);
  z.x -= params.J() * std::sin(z.p) * h;
  z.p += force * std::sin(q * z.x) * (0.5 * h);
  return z;
}

// n composite fourth-order steps from t0 to t1 (t1 < t0 runs backward).
// Consecutive half-kicks act at the same x and are merged into one.
PhasePoint integrate_substeps(const ValidatedParams& params, PhasePoint z,
                              double t0, double t1, long n) {
  const double q = kTwoPi / params.N();
  const double amplitude = q * params.B0();
  const double omega = params.omega();
  const double J = params.J();
  double pending = 0.0;
  splitting::for_each_substep(t0, t1, n, false, [&](double t_mid, double tau) {
    const double half_kick = amplitude * std::sin(omega * t_mid) * (0.5 * tau);
    z.p += (pending + half_kick) * std::sin(q * z.x);
    z.x -= J * std::sin(z.p) * tau;
    pending = half_kick;
  });
  z.p += pending * std::sin(q * z.x);
  return z;
}

long substeps_for(const ValidatedParams& params, double t0, double t1) {
  const double periods = std::abs(t1 - t0) / params.period();
  return std::max(1L, std::lround(periods * params.classical_substeps()));
}

}  // namespace

PhasePoint canonicalize(PhasePoint z, int n_sites) {
  const double n = static_cast<double>(n_sites);
  double x = std::fmod(z.x, n);
  if (x <= 0.0) x += n;
  double p = std::fmod(z.p, kTwoPi);
  if (p > kPi) p -= kTwoPi;
  if (p <= -kPi) p += kTwoPi;
  return {x, p};
}

double energy(const ValidatedParams& params, PhasePoint z, double t) {
  const double field = params.drive() == Drive::Sinusoidal ? drive_value(params, t) : 0.0;
  return params.J() * std::cos(z.p) +
         params.B0() * field * std::cos(kTwoPi * z.x / params.N());
}

PhasePoint step(const ValidatedParams& params, PhasePoint z, double t, double dt) {
  if (!(dt > 0.0)) throw Error(Errc::NonPositiveStep, "step size must be positive");
  if (params.drive() == Drive::Kicked) {
    throw Error(Errc::KickedDriveNotSampleable, "use map_kicked for the kicked drive");
  }
  return kdk(params, z, t + 0.5 * dt, dt);
}

PhasePoint map_kicked(const ValidatedParams& params, PhasePoint z) {
  const double q = kTwoPi / params.N();
  z.p += q * params.kick_strength() * std::sin(q * z.x);
  z.x -= params.J() * std::sin(z.p) * params.period();
  return z;
}

PhasePoint period_map(const ValidatedParams& params, PhasePoint z, double t0) {
  if (params.drive() == Drive::Kicked) return map_kicked(params, z);
  return integrate_substeps(params, z, t0, t0 + params.period(),
                            params.classical_substeps());
}

PhasePoint integrate(const ValidatedParams& params, PhasePoint z, double t0, double t1) {
  if (params.drive() == Drive::Kicked) {
    throw Error(Errc::KickedDriveNotSampleable,
                "continuous integration needs the sinusoidal drive");
  }
  if (t1 == t0) return z;
  return integrate_substeps(params, z, t0, t1, substeps_for(params, t0, t1));
}

LiftedOrbit lifted_orbit(const ValidatedParams& params, PhasePoint seed, int n_periods) {
  LiftedOrbit orbit;
  orbit.samples.reserve(static_cast<std::size_t>(std::max(n_periods, 0)) + 1);
  orbit.samples.push_back({0.0, seed.x, seed.p});
  PhasePoint z = seed;
  for (int n = 0; n < n_periods; ++n) {
    // Stroboscopic times are n T; F(nT) = 0 for the sine drive.
    z = period_map(params, z, n * params.period());
    orbit.samples.push_back({(n + 1) * params.period(), z.x, z.p});
  }
  return orbit;
}

SOSResult surface_of_section(const ValidatedParams& params,
                             const std::vector<PhasePoint>& seeds, int n_periods) {
  SOSResult result;
  result.orbits.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    const LiftedOrbit orbit = lifted_orbit(params, seeds[i], n_periods);
    auto& out = result.orbits[i];
    out.reserve(orbit.samples.size());
    for (const auto& s : orbit.samples) {
      out.push_back(canonicalize({s.x, s.p}, params.N()));
    }
  });
  return result;
}

RotationNumber rotation_number(const ValidatedParams& params, PhasePoint seed,
                               int n_iterations) {
  if (n_iterations < 100) {
    throw Error(Errc::InvalidArgument, "rotation number needs at least 100 iterations");
  }
  const LiftedOrbit orbit = lifted_orbit(params, seed, n_iterations);
  const double cells = static_cast<double>(params.N());
  const auto winding = [&](int n) {
    return (orbit.samples[static_cast<std::size_t>(n)].x - orbit.samples.front().x) /
           (n * cells);
  };
  const double nu = winding(n_iterations);
  const double nu_half = winding(n_iterations / 2);
  return {nu, std::abs(nu - nu_half)};
}

RotationScan rotation_scan(const ValidatedParams& params, double x0, double p_min,
                           double p_max, int resolution, int n_iterations) {
  if (resolution < 3) throw Error(Errc::InvalidArgument, "resolution must be >= 3");
  if (!(p_max > p_min)) throw Error(Errc::InvalidArgument, "empty momentum range");
  RotationScan scan;
  const auto n = static_cast<std::size_t>(resolution);
  scan.p0.resize(n);
  scan.nu.resize(n);
  scan.convergence_error.resize(n);
  const double width = (p_max - p_min) / resolution;
  for (std::size_t i = 0; i < n; ++i) {
    scan.p0[i] = p_min + (static_cast<double>(i) + 0.5) * width;
  }
  parallel_for(n, [&](std::size_t i) {
    const RotationNumber r = rotation_number(params, {x0, scan.p0[i]}, n_iterations);
    scan.nu[i] = r.nu;
    scan.convergence_error[i] = r.convergence_error;
  });
  return scan;
}

double locate_extremum(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 3) {
    throw Error(Errc::InvalidArgument, "extremum search needs >= 3 samples");
  }
  const auto last = ys.size() - 1;
  const auto imax = static_cast<std::size_t>(
      std::distance(ys.begin(), std::max_element(ys.begin(), ys.end())));
  const auto imin = static_cast<std::size_t>(
      std::distance(ys.begin(), std::min_element(ys.begin(), ys.end())));
  const bool max_inside = imax > 0 && imax < last;
  const bool min_inside = imin > 0 && imin < last;
  if (!max_inside && !min_inside) {
    throw Error(Errc::NotFound, "profile is monotone over the scanned range");
  }
  std::size_t i = max_inside ? imax : imin;
  if (max_inside && min_inside) {
    // Both interior: keep the one standing out further from the end values.
    const double ends = 0.5 * (ys.front() + ys.back());
    i = std::abs(ys[imax] - ends) >= std::abs(ys[imin] - ends) ? imax : imin;
  }
  const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
  const double y0 = ys[i - 1], y1 = ys[i], y2 = ys[i + 1];
  const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  if (a == 0.0) return x1;
  const double vertex = -b / (2.0 * a);
  // A flat-topped triple can push the vertex out; stay within the bracket.
  return std::clamp(vertex, x0, x2);
}

double find_shearless(const ValidatedParams& params, double x0, double p_min,
                      double p_max, int resolution, int n_iterations) {
  if (p_min <= -kPi || p_max > kPi) {
    throw Error(Errc::InvalidArgument, "scan range must lie within (-pi, pi]");
  }
  const RotationScan scan =
      rotation_scan(params, x0, p_min, p_max, resolution, n_iterations);
  return locate_extremum(scan.p0, scan.nu);
}

std::vector<double> ensemble_spread(const ValidatedParams& params,
                                    const PacketSpec& packet, int n_samples,
                                    int n_periods, std::uint64_t rng_seed) {
  validate_packet(params, packet);
  if (n_samples < 1) throw Error(Errc::InvalidArgument, "need at least one sample");
  if (n_periods < 0) throw Error(Errc::InvalidArgument, "negative period count");

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gx(packet.j0, packet.delta_j);
  std::normal_distribution<double> gp(packet.k0, 1.0 / (2.0 * packet.delta_j));
  std::vector<PhasePoint> cloud(static_cast<std::size_t>(n_samples));
  for (auto& z : cloud) {
    z.x = gx(rng);
    z.p = gp(rng);
  }

  const auto periods = static_cast<std::size_t>(n_periods);
  // positions[n][s]: x of sample s after n periods.
  std::vector<std::vector<double>> positions(periods + 1,
                                             std::vector<double>(cloud.size()));
  parallel_for(cloud.size(), [&](std::size_t s) {
    PhasePoint z = cloud[s];
    positions[0][s] = z.x;
    for (std::size_t n = 0; n < periods; ++n) {
      z = period_map(params, z, static_cast<double>(n) * params.period());
      positions[n + 1][s] = z.x;
    }
  });

  const double scale = params.N() / kTwoPi;
  std::vector<double> variance(periods + 1, 0.0);
  if (n_samples == 1) return variance;
  for (std::size_t n = 0; n <= periods; ++n) {
    double c = 0.0, s = 0.0;
    for (double x : positions[n]) {
      const double theta = x / scale;
      c += std::cos(theta);
      s += std::sin(theta);
    }
    const double r = std::min(1.0, std::hypot(c, s) / static_cast<double>(n_samples));
    // Circular variance expressed in sites^2.
    variance[n] = r >= 1.0 ? 0.0 : -2.0 * std::log(r) * scale * scale;
  }
  return variance;
}

}  // namespace shearless::classical
