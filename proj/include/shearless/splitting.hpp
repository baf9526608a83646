// splitting.hpp - fourth-order symmetric composition of second-order substeps.
//
// One composite step of length h is three Strang substeps of lengths
// w1 h, w0 h, w1 h (w0 < 0). Each substep freezes the drive at its own
// midpoint, so the composite stays symmetric, symplectic (classical) or
// unitary (quantum), and fourth-order accurate in h.

#pragma once

#include <array>
#include <cmath>

namespace shearless::splitting {

struct Substep {
  double offset;  // start of the substep, in units of h
  double weight;  // length of the substep, in units of h
};

inline const std::array<Substep, 3>& triple_jump() {
  static const std::array<Substep, 3> steps = [] {
    const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2);
    const double w0 = -cbrt2 / (2.0 - cbrt2);
    return std::array<Substep, 3>{{{0.0, w1}, {w1, w0}, {w1 + w0, w1}}};
  }();
  return steps;
}

/// Calls visit(t_mid, tau) for every Strang substep of n composite steps
/// covering [t0, t1], in chronological order, or reversed when `reverse`.
template <typename Visit>
void for_each_substep(double t0, double t1, long n, bool reverse, Visit&& visit) {
  const double h = (t1 - t0) / static_cast<double>(n);
  const auto& stages = triple_jump();
  for (long s = 0; s < n; ++s) {
    const long k = reverse ? n - 1 - s : s;
    const double start = t0 + static_cast<double>(k) * h;
    for (int i = 0; i < 3; ++i) {
      const auto& st = stages[static_cast<std::size_t>(reverse ? 2 - i : i)];
      const double tau = st.weight * h;
      visit(start + st.offset * h + 0.5 * tau, tau);
    }
  }
}

}  // namespace shearless::splitting
