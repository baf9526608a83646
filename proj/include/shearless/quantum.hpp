// quantum.hpp - one-down-spin sector of the driven Heisenberg chain.
//
// Basis state |j> (j = 1..N) has the j-th spin down. In this sector the chain
// is a tight-binding ring,
//   H(t) = (J/2) sum_j (|j><j+1| + h.c.) + B0 F(t) sum_j cos(2 pi j / N) |j><j|,
// propagated with Strang substeps (half potential step, exact hopping step in
// the discrete Fourier basis, half potential step, field frozen at the substep
// midpoint) composed into fourth-order steps, see splitting.hpp.
//
// DFT convention: psi_hat(m) = N^{-1/2} sum_j exp(-2 pi i m j / N) psi(j), so
// the plane wave exp(i k j) with k = 2 pi m / N has hopping energy J cos k.

#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "shearless/model.hpp"

namespace shearless::quantum {

using cplx = std::complex<double>;

struct WaveFunction {
  /// amps(i) is the amplitude of external site i + 1.
  Eigen::VectorXcd amps;

  int size() const { return static_cast<int>(amps.size()); }
  double norm_squared() const { return amps.squaredNorm(); }
  /// Amplitude of external site j (1-based).
  cplx at(int j) const { return amps(j - 1); }
};

struct SpinDistribution {
  std::vector<double> values;  // values[i] = P(i + 1)
};

struct PacketDiagnostics {
  double center;  // circular mean site in (0, N]
  double width;   // circular standard deviation, sites
  double ipr;     // sum_j P(j)^2
};

/// Amplitude-Gaussian exp(-d^2 / (2 delta^2)) exp(i k0 j), d the ring distance to j0.
WaveFunction gaussian_packet(const ValidatedParams& params, const PacketSpec& spec);

/// |j> for external site j in [1, n].
WaveFunction basis_state(int n, int j);

/// Normalized plane wave exp(2 pi i m j / N) / sqrt(N).
WaveFunction plane_wave(int n, int m);

/// Field factor used by H(t): sin(omega t) for the sine drive, 0 between kicks.
double field_factor(const ValidatedParams& params, double t);

Eigen::VectorXcd apply_hamiltonian(const ValidatedParams& params,
                                   const Eigen::VectorXcd& psi, double t);

/// <psi|H(t)|psi>, real part.
double energy_expectation(const ValidatedParams& params, const WaveFunction& psi, double t);

/// Split-operator propagator acting in place on a block of column states.
/// Owns FFTW plans sized for `columns` vectors of length N; reusable across
/// calls. Not shareable between threads, but independent instances are.
class Propagator {
 public:
  Propagator(const ValidatedParams& params, int columns = 1);
  ~Propagator();
  Propagator(const Propagator&) = delete;
  Propagator& operator=(const Propagator&) = delete;

  /// block <- U(t1, t0) block. Throws BadTimeOrder unless t1 > t0.
  void advance(Eigen::MatrixXcd& block, double t0, double t1);
  /// block <- U(t1, t0)^dagger block, i.e. evolution from t1 back to t0.
  void advance_adjoint(Eigen::MatrixXcd& block, double t0, double t1);

  int columns() const noexcept { return columns_; }

 private:
  struct Fft;
  void run(Eigen::MatrixXcd& block, double t0, double t1, bool adjoint);
  void potential_phase(double strength, bool conj);
  void hopping(double duration, bool conj);

  ValidatedParams params_;
  int columns_;
  std::unique_ptr<Fft> fft_;
  std::vector<double> cos_site_;     // cos(2 pi j / N), external j
  std::vector<double> cos_mode_;     // cos(2 pi m / N)
  std::vector<cplx> site_phase_;
  std::vector<cplx> mode_phase_;
};

WaveFunction propagate(const ValidatedParams& params, const WaveFunction& psi,
                       double t0, double t1);

/// Applies U(t1, t0)^dagger: undoes propagate(params, psi, t0, t1).
WaveFunction propagate_adjoint(const ValidatedParams& params, const WaveFunction& psi,
                               double t0, double t1);

/// Snapshots at t = k T / samples_per_period for k = 0..n_periods*samples_per_period.
std::vector<WaveFunction> evolve_sampled(const ValidatedParams& params,
                                         const WaveFunction& psi0, int n_periods,
                                         int samples_per_period);

SpinDistribution spin_distribution(const WaveFunction& psi);

PacketDiagnostics packet_diagnostics(const SpinDistribution& dist);

}  // namespace shearless::quantum
