#include "shearless/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "shearless/splitting.hpp"

namespace shearless::quantum {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

long substeps_for(const ValidatedParams& params, double duration) {
  const double periods = duration / params.period();
  return std::max(1L, std::lround(periods * params.quantum_substeps()));
}

}  // namespace

struct Propagator::Fft {
  fftw_complex* data = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  int n = 0;
  int columns = 0;

  Fft(int n_sites, int n_columns) : n(n_sites), columns(n_columns) {
    std::lock_guard lock(planner_mutex());
    data = fftw_alloc_complex(static_cast<std::size_t>(n) * columns);
    int dims[] = {n};
    forward = fftw_plan_many_dft(1, dims, columns, data, nullptr, 1, n, data, nullptr,
                                 1, n, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_many_dft(1, dims, columns, data, nullptr, 1, n, data, nullptr,
                                  1, n, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(data);
  }
  cplx* begin() { return reinterpret_cast<cplx*>(data); }
};

WaveFunction gaussian_packet(const ValidatedParams& params, const PacketSpec& spec) {
  validate_packet(params, spec);
  const int n = params.N();
  double k0 = spec.k0;
  if (spec.snap_k0) k0 = kTwoPi * std::round(k0 * n / kTwoPi) / n;
  WaveFunction psi{Eigen::VectorXcd(n)};
  const double two_delta2 = 2.0 * spec.delta_j * spec.delta_j;
  for (int j = 1; j <= n; ++j) {
    const double d = ring_distance(j, spec.j0, n);
    psi.amps(j - 1) = std::exp(-d * d / two_delta2) * std::polar(1.0, k0 * j);
  }
  psi.amps /= psi.amps.norm();
  return psi;
}

WaveFunction basis_state(int n, int j) {
  if (j < 1 || j > n) throw Error(Errc::IndexOutOfRange, "basis site out of range");
  WaveFunction psi{Eigen::VectorXcd::Zero(n)};
  psi.amps(j - 1) = 1.0;
  return psi;
}

WaveFunction plane_wave(int n, int m) {
  WaveFunction psi{Eigen::VectorXcd(n)};
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 1; j <= n; ++j) {
    psi.amps(j - 1) = std::polar(norm, kTwoPi * m * j / n);
  }
  return psi;
}

double field_factor(const ValidatedParams& params, double t) {
  return params.drive() == Drive::Sinusoidal ? drive_value(params, t) : 0.0;
}

Eigen::VectorXcd apply_hamiltonian(const ValidatedParams& params,
                                   const Eigen::VectorXcd& psi, double t) {
  const int n = params.N();
  if (psi.size() != n) throw Error(Errc::InvalidArgument, "state size does not match N");
  const double hop = 0.5 * params.J();
  const double field = params.B0() * field_factor(params, t);
  Eigen::VectorXcd out(n);
  for (int i = 0; i < n; ++i) {
    const int left = (i + n - 1) % n;
    const int right = (i + 1) % n;
    out(i) = hop * (psi(left) + psi(right)) +
             field * std::cos(kTwoPi * (i + 1) / n) * psi(i);
  }
  return out;
}

double energy_expectation(const ValidatedParams& params, const WaveFunction& psi,
                          double t) {
  return psi.amps.dot(apply_hamiltonian(params, psi.amps, t)).real();
}

Propagator::Propagator(const ValidatedParams& params, int columns)
    : params_(params), columns_(columns) {
  if (columns < 1) throw Error(Errc::InvalidArgument, "need at least one column");
  const int n = params.N();
  fft_ = std::make_unique<Fft>(n, columns);
  cos_site_.resize(static_cast<std::size_t>(n));
  cos_mode_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cos_site_[static_cast<std::size_t>(i)] = std::cos(kTwoPi * (i + 1) / n);
    cos_mode_[static_cast<std::size_t>(i)] = std::cos(kTwoPi * i / n);
  }
  site_phase_.resize(static_cast<std::size_t>(n));
  mode_phase_.resize(static_cast<std::size_t>(n));
}

Propagator::~Propagator() = default;

// Multiplies every column by exp(-/+ i strength cos(2 pi j / N)).
void Propagator::potential_phase(double strength, bool conj) {
  const double sign = conj ? 1.0 : -1.0;
  const int n = params_.N();
  for (int i = 0; i < n; ++i) {
    site_phase_[static_cast<std::size_t>(i)] =
        std::polar(1.0, sign * strength * cos_site_[static_cast<std::size_t>(i)]);
  }
  cplx* data = fft_->begin();
  for (int c = 0; c < columns_; ++c) {
    cplx* col = data + static_cast<std::ptrdiff_t>(c) * n;
    for (int i = 0; i < n; ++i) col[i] *= site_phase_[static_cast<std::size_t>(i)];
  }
}

// Exact hopping evolution exp(-/+ i H_hop duration) via forward/backward DFT.
void Propagator::hopping(double duration, bool conj) {
  const double sign = conj ? 1.0 : -1.0;
  const int n = params_.N();
  const double scale = 1.0 / n;
  for (int m = 0; m < n; ++m) {
    mode_phase_[static_cast<std::size_t>(m)] = std::polar(
        scale, sign * params_.J() * cos_mode_[static_cast<std::size_t>(m)] * duration);
  }
  fftw_execute(fft_->forward);
  cplx* data = fft_->begin();
  for (int c = 0; c < columns_; ++c) {
    cplx* col = data + static_cast<std::ptrdiff_t>(c) * n;
    for (int m = 0; m < n; ++m) col[m] *= mode_phase_[static_cast<std::size_t>(m)];
  }
  fftw_execute(fft_->backward);
}

void Propagator::advance(Eigen::MatrixXcd& block, double t0, double t1) {
  run(block, t0, t1, false);
}

void Propagator::advance_adjoint(Eigen::MatrixXcd& block, double t0, double t1) {
  run(block, t0, t1, true);
}

void Propagator::run(Eigen::MatrixXcd& block, double t0, double t1, bool adjoint) {
  if (!(t1 > t0)) throw Error(Errc::BadTimeOrder, "propagation requires t1 > t0");
  const int n = params_.N();
  if (block.rows() != n || block.cols() != columns_) {
    throw Error(Errc::InvalidArgument, "block shape does not match propagator");
  }
  std::copy(block.data(), block.data() + block.size(), fft_->begin());

  if (params_.drive() == Drive::Sinusoidal) {
    const long steps = substeps_for(params_, t1 - t0);
    const double amplitude = params_.B0();
    const double omega = params_.omega();
    // Adjacent diagonal half-steps commute and are merged. The adjoint walks
    // the substeps in reverse with conjugate phases.
    double pending = 0.0;
    splitting::for_each_substep(t0, t1, steps, adjoint, [&](double t_mid, double tau) {
      const double half = amplitude * std::sin(omega * t_mid) * 0.5 * tau;
      potential_phase(pending + half, adjoint);
      hopping(tau, adjoint);
      pending = half;
    });
    potential_phase(pending, adjoint);
  } else {
    // Impulses at t = nT with t0 <= nT < t1, free hopping in between.
    const double period = params_.period();
    const double tol = 1e-9 * period;
    struct Op { bool kick; double free; };
    std::vector<Op> ops;
    double current = t0;
    for (double k = std::ceil((t0 - tol) / period); k * period < t1 - tol; k += 1.0) {
      const double tk = std::max(k * period, t0);
      if (tk - current > tol) ops.push_back({false, tk - current});
      ops.push_back({true, 0.0});
      current = tk;
    }
    if (t1 - current > 0.0) ops.push_back({false, t1 - current});
    const double strength = params_.kick_strength();
    const auto apply = [&](const Op& op) {
      if (op.kick) {
        potential_phase(strength, adjoint);
      } else {
        hopping(op.free, adjoint);
      }
    };
    if (adjoint) {
      std::for_each(ops.rbegin(), ops.rend(), apply);
    } else {
      std::for_each(ops.begin(), ops.end(), apply);
    }
  }

  std::copy(fft_->begin(), fft_->begin() + block.size(), block.data());
}

WaveFunction propagate(const ValidatedParams& params, const WaveFunction& psi,
                       double t0, double t1) {
  Propagator prop(params);
  Eigen::MatrixXcd block = psi.amps;
  prop.advance(block, t0, t1);
  return WaveFunction{block.col(0)};
}

WaveFunction propagate_adjoint(const ValidatedParams& params, const WaveFunction& psi,
                               double t0, double t1) {
  Propagator prop(params);
  Eigen::MatrixXcd block = psi.amps;
  prop.advance_adjoint(block, t0, t1);
  return WaveFunction{block.col(0)};
}

std::vector<WaveFunction> evolve_sampled(const ValidatedParams& params,
                                         const WaveFunction& psi0, int n_periods,
                                         int samples_per_period) {
  if (n_periods < 0 || samples_per_period < 1) {
    throw Error(Errc::InvalidArgument, "bad sampling request");
  }
  Propagator prop(params);
  Eigen::MatrixXcd block = psi0.amps;
  const long total = static_cast<long>(n_periods) * samples_per_period;
  std::vector<WaveFunction> out;
  out.reserve(static_cast<std::size_t>(total) + 1);
  out.push_back(psi0);
  const double dt = params.period() / samples_per_period;
  for (long k = 0; k < total; ++k) {
    prop.advance(block, static_cast<double>(k) * dt, static_cast<double>(k + 1) * dt);
    out.push_back(WaveFunction{block.col(0)});
  }
  return out;
}

SpinDistribution spin_distribution(const WaveFunction& psi) {
  SpinDistribution dist;
  dist.values.resize(static_cast<std::size_t>(psi.size()));
  for (int i = 0; i < psi.size(); ++i) {
    dist.values[static_cast<std::size_t>(i)] = std::norm(psi.amps(i));
  }
  return dist;
}

PacketDiagnostics packet_diagnostics(const SpinDistribution& dist) {
  const auto n = dist.values.size();
  if (n == 0) throw Error(Errc::InvalidArgument, "empty distribution");
  double c = 0.0, s = 0.0, total = 0.0, ipr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pj = dist.values[i];
    const double theta = kTwoPi * static_cast<double>(i + 1) / static_cast<double>(n);
    c += pj * std::cos(theta);
    s += pj * std::sin(theta);
    total += pj;
    ipr += pj * pj;
  }
  const double scale = static_cast<double>(n) / kTwoPi;
  double center = std::atan2(s, c) * scale;
  if (center <= 0.0) center += static_cast<double>(n);
  const double r = std::hypot(c, s) / total;
  // Mean resultant length within round-off of 1 means a single occupied site.
  const double width = r >= 1.0 - 1e-14 ? 0.0 : std::sqrt(-2.0 * std::log(r)) * scale;
  return {center, width, ipr};
}

}  // namespace shearless::quantum
