// entanglement.hpp - pairwise concurrence of sites in one-down-spin states.
//
// Two-site reduced states use the product basis {|uu>, |ud>, |du>, |dd>} with
// the first slot for site i (u = up, d = down).

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "shearless/model.hpp"
#include "shearless/quantum.hpp"

namespace shearless::entanglement {

struct TwoSiteDensity {
  Eigen::Matrix4cd rho;
};

using SitePair = std::pair<int, int>;

struct ConcurrenceSeries {
  std::vector<SitePair> pairs;
  std::vector<double> times;
  /// values[k][p]: concurrence of pairs[p] at times[k].
  std::vector<std::vector<double>> values;
  int samples_per_period;
};

/// The four nearest-neighbour pairs tracked by default, including the
/// periodic-boundary pair (N, 1).
std::vector<SitePair> default_pairs(int n_sites);

/// Throws SameSite or IndexOutOfRange.
TwoSiteDensity reduce_two_site(const quantum::WaveFunction& psi, int i, int j);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of an arbitrary two-qubit
/// state. Throws NotADensityMatrix.
double concurrence_wootters(const TwoSiteDensity& rho);

/// Closed form 2 |a_i| |a_j| valid in the one-excitation sector.
double concurrence_one_excitation(const quantum::WaveFunction& psi, int i, int j);

/// Evolves the packet and samples the closed-form concurrence of each pair at
/// t = k T / samples_per_period.
ConcurrenceSeries concurrence_series(const ValidatedParams& params,
                                     const PacketSpec& packet,
                                     const std::vector<SitePair>& pairs, int n_periods,
                                     int samples_per_period = 20);

}  // namespace shearless::entanglement
