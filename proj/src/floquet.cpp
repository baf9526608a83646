#include "shearless/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace shearless::floquet {

namespace {

// Reduces an angle into (-pi, pi].
double wrap_phase(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

// Normalized wrapped Gaussian on the circle.
double wrapped_gaussian(double d, double sigma) {
  if (sigma <= 2.0) {
    const int images = static_cast<int>(std::ceil(8.0 * sigma / kTwoPi)) + 1;
    const double norm = 1.0 / (sigma * std::sqrt(kTwoPi));
    double acc = 0.0;
    for (int k = -images; k <= images; ++k) {
      const double u = (d + k * kTwoPi) / sigma;
      acc += std::exp(-0.5 * u * u);
    }
    return acc * norm;
  }
  // Fourier series converges fast for wide kernels.
  double acc = 1.0;
  for (int n = 1;; ++n) {
    const double c = std::exp(-0.5 * n * n * sigma * sigma);
    if (c < 1e-18) break;
    acc += 2.0 * c * std::cos(n * d);
  }
  return acc / kTwoPi;
}

}  // namespace

double LocalSpectrum::total_weight() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.weight;
  return s;
}

std::vector<SpectrumEntry> LocalSpectrum::filtered(double threshold,
                                                   double cluster_tol) const {
  std::vector<SpectrumEntry> sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.eigenphase < b.eigenphase; });
  std::vector<SpectrumEntry> merged;
  for (const auto& e : sorted) {
    if (!merged.empty() && e.eigenphase - merged.back().eigenphase <= cluster_tol) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }
  // Clusters straddling the +-pi seam.
  if (merged.size() > 1 &&
      merged.front().eigenphase + kTwoPi - merged.back().eigenphase <= cluster_tol) {
    merged.back().weight += merged.front().weight;
    merged.erase(merged.begin());
  }
  std::vector<SpectrumEntry> out;
  std::copy_if(merged.begin(), merged.end(), std::back_inserter(out),
               [&](const auto& e) { return e.weight > threshold; });
  return out;
}

double SmoothedSpectrum::spacing() const {
  return kTwoPi / static_cast<double>(grid.size());
}

double SmoothedSpectrum::integral() const {
  return std::accumulate(density.begin(), density.end(), 0.0) * spacing();
}

MonodromyOperator monodromy(const ValidatedParams& params) {
  const int n = params.N();
  quantum::Propagator prop(params, n);
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Identity(n, n);
  prop.advance(block, 0.0, params.period());
  return {std::move(block)};
}

double unitarity_residual(const Eigen::MatrixXcd& U) {
  const Eigen::MatrixXcd g = U.adjoint() * U - Eigen::MatrixXcd::Identity(U.rows(), U.cols());
  return g.cwiseAbs().maxCoeff();
}

FloquetDecomposition floquet_decompose(const Eigen::MatrixXcd& U, double unitary_tol) {
  if (U.rows() != U.cols() || U.rows() == 0) {
    throw Error(Errc::NotUnitary, "monodromy operator must be a non-empty square matrix");
  }
  const double residual = unitarity_residual(U);
  if (!(residual <= unitary_tol)) {
    throw Error(Errc::NotUnitary,
                "matrix is not unitary: max|U^+U - I| = " + std::to_string(residual));
  }
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(U, true);
  if (schur.info() != Eigen::Success) {
    throw Error(Errc::NoConvergence, "complex Schur iteration did not converge");
  }
  const Eigen::MatrixXcd& tri = schur.matrixT();
  const Eigen::MatrixXcd& vecs = schur.matrixU();
  const auto n = static_cast<std::size_t>(U.rows());

  std::vector<double> phases(n);
  for (std::size_t m = 0; m < n; ++m) {
    phases[m] = wrap_phase(-std::arg(tri(static_cast<Eigen::Index>(m),
                                         static_cast<Eigen::Index>(m))));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return phases[a] < phases[b]; });

  FloquetDecomposition out;
  out.eigenphases.resize(n);
  out.modes.resize(U.rows(), U.cols());
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenphases[i] = phases[order[i]];
    out.modes.col(static_cast<Eigen::Index>(i)) =
        vecs.col(static_cast<Eigen::Index>(order[i]));
  }
  return out;
}

double eigen_residual(const Eigen::MatrixXcd& U, const FloquetDecomposition& decomp) {
  double worst = 0.0;
  for (Eigen::Index m = 0; m < decomp.modes.cols(); ++m) {
    const auto phi = decomp.modes.col(m);
    const std::complex<double> lambda =
        std::polar(1.0, -decomp.eigenphases[static_cast<std::size_t>(m)]);
    worst = std::max(worst, (U * phi - lambda * phi).norm());
  }
  return worst;
}

LocalSpectrum local_spectrum(const FloquetDecomposition& decomp,
                             const quantum::WaveFunction& psi0) {
  if (psi0.amps.size() != decomp.modes.rows()) {
    throw Error(Errc::InvalidArgument, "state size does not match the Floquet basis");
  }
  const Eigen::VectorXcd overlaps = decomp.modes.adjoint() * psi0.amps;
  LocalSpectrum spectrum;
  spectrum.entries.reserve(decomp.eigenphases.size());
  for (std::size_t m = 0; m < decomp.eigenphases.size(); ++m) {
    spectrum.entries.push_back(
        {decomp.eigenphases[m], std::norm(overlaps(static_cast<Eigen::Index>(m)))});
  }
  return spectrum;
}

SmoothedSpectrum smooth_spectrum(const LocalSpectrum& spectrum, double sigma,
                                 int grid_points) {
  if (!(sigma > 0.0)) throw Error(Errc::NonPositiveSigma, "sigma must be positive");
  if (grid_points < 8) throw Error(Errc::InvalidArgument, "grid too coarse");
  SmoothedSpectrum out;
  out.sigma = sigma;
  const auto g = static_cast<std::size_t>(grid_points);
  out.grid.resize(g);
  out.density.assign(g, 0.0);
  const double h = kTwoPi / grid_points;
  for (std::size_t i = 0; i < g; ++i) out.grid[i] = -kPi + static_cast<double>(i + 1) * h;
  for (const auto& e : spectrum.entries) {
    if (e.weight <= 0.0) continue;
    for (std::size_t i = 0; i < g; ++i) {
      out.density[i] += e.weight * wrapped_gaussian(out.grid[i] - e.eigenphase, sigma);
    }
  }
  return out;
}

PeakReport peak_spacings(const SmoothedSpectrum& smoothed, double min_prominence) {
  const auto& s = smoothed.density;
  const std::size_t n = s.size();
  if (n < 3) throw Error(Errc::NoPeaks, "spectrum grid too small");
  const double top = *std::max_element(s.begin(), s.end());
  const double bottom = *std::min_element(s.begin(), s.end());
  const double cutoff = min_prominence * top;
  const auto at = [&](std::ptrdiff_t i) {
    const auto nn = static_cast<std::ptrdiff_t>(n);
    return s[static_cast<std::size_t>(((i % nn) + nn) % nn)];
  };

  PeakReport report;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<std::ptrdiff_t>(i);
    const double h = s[i];
    // Strict rise on the left, non-strict fall on the right: one index per plateau.
    if (!(h > at(ii - 1) && h >= at(ii + 1))) continue;
    double prominence = h - bottom;
    double left_min = h, right_min = h;
    bool higher_found = false;
    for (std::ptrdiff_t k = 1; k < static_cast<std::ptrdiff_t>(n); ++k) {
      const double v = at(ii - k);
      if (v > h) { higher_found = true; break; }
      left_min = std::min(left_min, v);
    }
    for (std::ptrdiff_t k = 1; k < static_cast<std::ptrdiff_t>(n); ++k) {
      const double v = at(ii + k);
      if (v > h) break;
      right_min = std::min(right_min, v);
    }
    if (higher_found) prominence = h - std::max(left_min, right_min);
    if (prominence >= cutoff && prominence > 0.0) {
      report.peaks.push_back({smoothed.grid[i], h, prominence});
    }
  }
  if (report.peaks.empty()) throw Error(Errc::NoPeaks, "no peak above the prominence threshold");

  const std::size_t count = report.peaks.size();
  for (std::size_t i = 0; i < count; ++i) {
    const double a = report.peaks[i].eigenphase;
    const double b = report.peaks[(i + 1) % count].eigenphase;
    double gap = b - a;
    if (gap <= 0.0) gap += kTwoPi;
    report.gaps.push_back(gap);
  }
  return report;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw Error(Errc::InvalidArgument, "mean of empty set");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double relative_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1)) / mu;
}

std::vector<double> ladder_gaps(const std::vector<double>& circular_gaps) {
  std::vector<double> out = circular_gaps;
  if (out.size() > 1) out.erase(std::max_element(out.begin(), out.end()));
  return out;
}

}  // namespace shearless::floquet
