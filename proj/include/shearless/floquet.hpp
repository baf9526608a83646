// floquet.hpp - one-period propagator, Floquet modes and local quasienergy spectra.
//
// Convention: U(T) phi_m = exp(-i eps_m) phi_m with eps_m in (-pi, pi], so the
// undriven chain gives eps = J cos(k) T (mod 2 pi).

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "shearless/model.hpp"
#include "shearless/quantum.hpp"

namespace shearless::floquet {

struct MonodromyOperator {
  Eigen::MatrixXcd U;  // column j = U(T, 0) |j + 1>
};

struct FloquetDecomposition {
  std::vector<double> eigenphases;  // ascending, in (-pi, pi]
  Eigen::MatrixXcd modes;           // column m pairs with eigenphases[m]
};

struct SpectrumEntry {
  double eigenphase;
  double weight;  // |<phi_m|psi0>|^2
};

struct LocalSpectrum {
  std::vector<SpectrumEntry> entries;  // one per Floquet mode, ascending phase

  double total_weight() const;
  /// Entries with weight above threshold after merging eigenphases that agree
  /// within cluster_tol (degenerate eigenspaces carry basis-dependent weights).
  std::vector<SpectrumEntry> filtered(double threshold = 1e-3,
                                      double cluster_tol = 1e-8) const;
};

struct SmoothedSpectrum {
  std::vector<double> grid;     // uniform on (-pi, pi]
  std::vector<double> density;  // S(eps)
  double sigma;

  double spacing() const;
  double integral() const;
};

struct Peak {
  double eigenphase;
  double height;
  double prominence;
};

struct PeakReport {
  std::vector<Peak> peaks;  // ascending phase
  std::vector<double> gaps;  // circular consecutive gaps, sum = 2 pi
};

MonodromyOperator monodromy(const ValidatedParams& params);

/// max |(U^dagger U - I)_{ab}|
double unitarity_residual(const Eigen::MatrixXcd& U);

/// Full eigendecomposition of a unitary matrix via complex Schur form; the
/// Schur vectors of a normal matrix are orthonormal eigenvectors, which also
/// covers degenerate eigenspaces.
/// Throws NotUnitary when unitarity_residual(U) > unitary_tol, NoConvergence
/// when the Schur iteration fails.
FloquetDecomposition floquet_decompose(const Eigen::MatrixXcd& U,
                                       double unitary_tol = 1e-6);

/// max_m || U phi_m - exp(-i eps_m) phi_m ||
double eigen_residual(const Eigen::MatrixXcd& U, const FloquetDecomposition& decomp);

LocalSpectrum local_spectrum(const FloquetDecomposition& decomp,
                             const quantum::WaveFunction& psi0);

/// Density sum_m w_m G_sigma(eps - eps_m) with a wrapped Gaussian kernel.
/// Throws NonPositiveSigma.
SmoothedSpectrum smooth_spectrum(const LocalSpectrum& spectrum, double sigma,
                                 int grid_points = 4096);

/// Local maxima whose topographic prominence is at least
/// min_prominence * max(S), with circular gaps between consecutive peaks.
/// Throws NoPeaks.
PeakReport peak_spacings(const SmoothedSpectrum& smoothed, double min_prominence = 0.1);

double mean(const std::vector<double>& xs);
/// Sample standard deviation divided by the mean.
double relative_std(const std::vector<double>& xs);

/// Gaps of a ladder that does not wrap the circle: the circular gaps with
/// the single largest one (the span outside the ladder) removed.
std::vector<double> ladder_gaps(const std::vector<double>& circular_gaps);

}  // namespace shearless::floquet
