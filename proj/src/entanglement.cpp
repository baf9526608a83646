#include "shearless/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace shearless::entanglement {

namespace {

constexpr int kUpUp = 0;
constexpr int kUpDown = 1;
constexpr int kDownUp = 2;
constexpr int kDownDown = 3;

void check_pair(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) {
    throw Error(Errc::IndexOutOfRange, "site index outside [1, N]");
  }
  if (i == j) throw Error(Errc::SameSite, "concurrence needs two distinct sites");
}

// sigma_y (x) sigma_y in the {uu, ud, du, dd} basis.
Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

}  // namespace

std::vector<SitePair> default_pairs(int n_sites) {
  const int q = n_sites / 4;
  return {{q, q + 1}, {2 * q, 2 * q + 1}, {3 * q, 3 * q + 1}, {n_sites, 1}};
}

TwoSiteDensity reduce_two_site(const quantum::WaveFunction& psi, int i, int j) {
  check_pair(psi.size(), i, j);
  const auto ai = psi.at(i);
  const auto aj = psi.at(j);
  const double pi = std::norm(ai);
  const double pj = std::norm(aj);
  TwoSiteDensity out{Eigen::Matrix4cd::Zero()};
  // Every other site carrying the down spin leaves (i, j) in |uu>.
  out.rho(kUpUp, kUpUp) = psi.norm_squared() - pi - pj;
  out.rho(kDownUp, kDownUp) = pi;
  out.rho(kUpDown, kUpDown) = pj;
  out.rho(kDownUp, kUpDown) = ai * std::conj(aj);
  out.rho(kUpDown, kDownUp) = std::conj(ai) * aj;
  out.rho(kDownDown, kDownDown) = 0.0;
  return out;
}

double concurrence_wootters(const TwoSiteDensity& state) {
  const Eigen::Matrix4cd& rho = state.rho;
  constexpr double tol = 1e-12;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw Error(Errc::NotADensityMatrix, "density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > tol) {
    throw Error(Errc::NotADensityMatrix, "density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho);
  Eigen::Vector4d w = eig.eigenvalues();
  if (w.minCoeff() < -tol) {
    throw Error(Errc::NotADensityMatrix, "density matrix has a negative eigenvalue");
  }
  // Round-off zeros would otherwise turn into sqrt(1e-17) ~ 3e-9 noise.
  for (int k = 0; k < 4; ++k) w(k) = w(k) < 1e-13 ? 0.0 : std::sqrt(w(k));
  const Eigen::Matrix4cd& v = eig.eigenvectors();
  const Eigen::Matrix4cd root = v * w.asDiagonal() * v.adjoint();
  const Eigen::Matrix4cd y = spin_flip();
  const Eigen::Matrix4cd root_flipped = y * root.conjugate() * y;
  // Singular values of sqrt(rho) sqrt(rho~) are the square roots of the
  // eigenvalues of rho rho~.
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(root * root_flipped);
  const Eigen::Vector4d l = svd.singularValues();  // decreasing
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

double concurrence_one_excitation(const quantum::WaveFunction& psi, int i, int j) {
  check_pair(psi.size(), i, j);
  return 2.0 * std::abs(psi.at(i)) * std::abs(psi.at(j));
}

ConcurrenceSeries concurrence_series(const ValidatedParams& params,
                                     const PacketSpec& packet,
                                     const std::vector<SitePair>& pairs, int n_periods,
                                     int samples_per_period) {
  for (const auto& [i, j] : pairs) check_pair(params.N(), i, j);
  const auto psi0 = quantum::gaussian_packet(params, packet);
  const auto states = quantum::evolve_sampled(params, psi0, n_periods, samples_per_period);
  ConcurrenceSeries series;
  series.pairs = pairs;
  series.samples_per_period = samples_per_period;
  series.times.reserve(states.size());
  series.values.reserve(states.size());
  const double dt = params.period() / samples_per_period;
  for (std::size_t k = 0; k < states.size(); ++k) {
    series.times.push_back(static_cast<double>(k) * dt);
    std::vector<double> row;
    row.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
      row.push_back(concurrence_one_excitation(states[k], i, j));
    }
    series.values.push_back(std::move(row));
  }
  return series;
}

}  // namespace shearless::entanglement
