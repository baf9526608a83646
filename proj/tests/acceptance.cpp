// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.
// Each check recomputes its quantities from the library with the reference
// parameters (J = -1, B0 = 2, N = 100, j0 = 25, delta_j = 5).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "shearless/classical.hpp"
#include "shearless/entanglement.hpp"
#include "shearless/floquet.hpp"
#include "shearless/quantum.hpp"

using namespace shearless;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ValidatedParams params(double omega, double B0 = 2.0, int qsub = 1000, int csub = 2000) {
  SimParams sp;
  sp.omega = omega;
  sp.B0 = B0;
  sp.quantum_substeps = qsub;
  sp.classical_substeps = csub;
  return validate(sp);
}

PacketSpec packet(double k0 = 0.0) {
  PacketSpec p;
  p.k0 = k0;
  return p;
}

quantum::PacketDiagnostics diag_at(const ValidatedParams& p, const PacketSpec& spec, double t) {
  const auto psi0 = quantum::gaussian_packet(p, spec);
  const auto psi = t > 0.0 ? quantum::propagate(p, psi0, 0.0, t) : psi0;
  return quantum::packet_diagnostics(quantum::spin_distribution(psi));
}

double circ_dist(double a, double b, double n) {
  double d = std::fmod(std::abs(a - b), n);
  return std::min(d, n - d);
}

floquet::PeakReport peaks(const ValidatedParams& p, const PacketSpec& spec, double sigma) {
  const auto U = floquet::monodromy(p).U;
  const auto d = floquet::floquet_decompose(U);
  const auto s = floquet::local_spectrum(d, quantum::gaussian_packet(p, spec));
  return floquet::peak_spacings(floquet::smooth_spectrum(s, sigma), 0.1);
}

Outcome initial_concurrence() {
  const auto p = params(0.12);
  const auto psi = quantum::gaussian_packet(p, packet());
  const double c = entanglement::concurrence_wootters(entanglement::reduce_two_site(psi, 25, 26));
  return {std::abs(c - 0.22) <= 0.01, fmt("C_25_26(0) = %.4f, want 0.22 +- 0.01", c)};
}

Outcome floquet_peak_spacing() {
  const auto p = params(0.12);
  const auto U = floquet::monodromy(p).U;
  const auto d = floquet::floquet_decompose(U);
  const auto s = floquet::local_spectrum(d, quantum::gaussian_packet(p, packet()));
  const double target = kTwoPi / 5;
  bool ok = true;
  std::string detail;
  for (double sigma : {0.03, 0.05, 0.075, 0.1}) {
    const auto r = floquet::peak_spacings(floquet::smooth_spectrum(s, sigma), 0.1);
    const double g = floquet::mean(r.gaps);
    const bool good = std::abs(g - target) <= 0.1 * target;
    ok = ok && good;
    detail += fmt("sigma=%.3f: %zu peaks, mean gap %.4f%s; ", sigma, r.peaks.size(), g,
                  good ? "" : " (off)");
  }
  return {ok, detail + fmt("want %.4f +- 10%%", target)};
}

Outcome five_cycle_return() {
  const auto p = params(0.12);
  const auto d = diag_at(p, packet(), 5 * p.period());
  const double dist = circ_dist(d.center, 25.0, 100.0);
  return {dist <= 10.0, fmt("centre at 5T = %.2f, distance %.2f sites, want <= 10", d.center, dist)};
}

Outcome dispersion_contrast() {
  const auto slow = params(0.12);
  const auto fast = params(0.20);
  const double w0 = diag_at(slow, packet(), 0.0).width;
  const auto a = diag_at(slow, packet(), 10 * slow.period());
  const auto b = diag_at(fast, packet(), 10 * fast.period());
  const double ratio = a.ipr / b.ipr;
  const bool ok = ratio >= 3.0 && a.width <= 3.0 * w0 && b.width > 20.0;
  return {ok, fmt("IPR ratio %.2f (want >= 3); width(0.12) %.2f vs limit %.2f; "
                  "width(0.20) %.2f (want > 20)",
                  ratio, a.width, 3.0 * w0, b.width)};
}

Outcome ladder_regularity() {
  const double sigma = 0.1;
  const auto ladder = peaks(params(1.0), packet(kPi / 2), sigma);
  const double rsd1 = floquet::relative_std(floquet::ladder_gaps(ladder.gaps));
  const auto slow = peaks(params(0.12), packet(), sigma);
  const auto fast = peaks(params(0.20), packet(), sigma);
  const double rs = floquet::relative_std(slow.gaps);
  const double rf = floquet::relative_std(fast.gaps);
  const bool ok = rsd1 <= 0.05 && rf >= 3.0 * rs;
  const double ls = floquet::relative_std(floquet::ladder_gaps(slow.gaps));
  const double lf = floquet::relative_std(floquet::ladder_gaps(fast.gaps));
  return {ok, fmt("omega=1.0 ladder gap RSD %.4f (want <= 0.05, %zu peaks); "
                  "gap RSD omega=0.20 %.4f vs omega=0.12 %.4f, ratio %.2f (want >= 3; "
                  "ladder-gap variant ratio %.2f)",
                  rsd1, ladder.peaks.size(), rf, rs, rf / rs, lf / ls)};
}

Outcome integrable_limit() {
  const auto p = params(0.12, 0.0);
  const auto d = floquet::floquet_decompose(floquet::monodromy(p).U);
  std::vector<bool> used(100, false);
  double worst = 0.0;
  for (int m = 0; m < 100; ++m) {
    const double expect = -p.J() * std::cos(kTwoPi * m / 100) * p.period();
    std::size_t best = 0;
    double bd = 1e9;
    for (std::size_t i = 0; i < 100; ++i) {
      const double dd = std::abs(std::remainder(d.eigenphases[i] + expect, kTwoPi));
      if (!used[i] && dd < bd) {
        bd = dd;
        best = i;
      }
    }
    used[best] = true;
    worst = std::max(worst, bd);
  }
  // The multiset {-J cos k T} is matched against {-eps}; both conventions
  // coincide for even N since k -> k + pi flips the sign of cos k.

  // Packet centre as the first moment of P(j) in ring coordinates relative to
  // j0; by Ehrenfest this moves exactly at the mean group velocity. The
  // circular mean is reported alongside.
  const double k0 = 1.0;
  const double t = 20.0;
  const auto psi0 = quantum::gaussian_packet(p, packet(k0));
  const auto p0 = quantum::spin_distribution(psi0);
  const auto p1 = quantum::spin_distribution(quantum::propagate(p, psi0, 0.0, t));
  auto moment = [](const quantum::SpinDistribution& d) {
    double m = 0.0;
    for (int j = 1; j <= 100; ++j) {
      double off = std::remainder(static_cast<double>(j - 25), 100.0);
      m += d.values[static_cast<std::size_t>(j - 1)] * off;
    }
    return m;
  };
  const double v = (moment(p1) - moment(p0)) / t;
  double shift = quantum::packet_diagnostics(p1).center - quantum::packet_diagnostics(p0).center;
  shift -= 100.0 * std::round(shift / 100.0);
  const double v_circ = shift / t;
  const double expect = -p.J() * std::sin(k0);
  const double rel = std::abs(v - expect) / std::abs(expect);
  return {worst <= 1e-6 && rel <= 0.01,
          fmt("eigenphase mismatch %.2e (want <= 1e-6); drift velocity %.5f vs %.5f, "
              "rel. error %.5f (want <= 0.01; circular-mean estimate %.5f)",
              worst, v, expect, rel, v_circ)};
}

Outcome numerical_contracts() {
  const auto p = params(0.12);
  const auto snaps = quantum::evolve_sampled(p, quantum::gaussian_packet(p, packet()), 20, 1);
  double drift = 0.0;
  for (const auto& s : snaps) drift = std::max(drift, std::abs(s.norm_squared() - 1.0));

  const double unitarity = floquet::unitarity_residual(floquet::monodromy(p).U);

  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ux(0.0, 100.0), up(-kPi, kPi);
  double det_err = 0.0;
  const double h = 1e-3;
  for (int i = 0; i < 100; ++i) {
    const classical::PhasePoint z{ux(rng), up(rng)};
    auto dcol = [&](double dx, double dp) {
      auto f = [&](double s) { return classical::period_map(p, {z.x + s * dx, z.p + s * dp}); };
      const auto a = f(h), b = f(-h), c = f(2 * h), e = f(-2 * h);
      return classical::PhasePoint{(8 * (a.x - b.x) - (c.x - e.x)) / (12 * h),
                                   (8 * (a.p - b.p) - (c.p - e.p)) / (12 * h)};
    };
    const auto cx = dcol(1, 0), cp = dcol(0, 1);
    det_err = std::max(det_err, std::abs(cx.x * cp.p - cp.x * cx.p - 1.0));
  }

  const auto fine = params(0.12, 2.0, 2000, 4000);
  const auto psi0 = quantum::gaussian_packet(p, packet());
  const double qhalf = (quantum::propagate(p, psi0, 0.0, 10 * p.period()).amps -
                        quantum::propagate(fine, psi0, 0.0, 10 * p.period()).amps)
                           .norm();

  // Regular orbits: near-integrable omega = 0.20 and the omega = 0.12 channel.
  double chalf = 0.0;
  const std::vector<std::pair<double, classical::PhasePoint>> seeds = {
      {0.20, {25.0, 0.0}}, {0.20, {50.0, 2.0}}, {0.20, {75.0, -1.5}}, {0.12, {25.0, 0.0}}};
  for (const auto& [omega, z] : seeds) {
    const auto a = classical::lifted_orbit(params(omega), z, 10).samples;
    const auto b = classical::lifted_orbit(params(omega, 2.0, 1000, 4000), z, 10).samples;
    for (std::size_t n = 0; n < a.size(); ++n) {
      chalf = std::max(chalf, std::hypot(a[n].x - b[n].x, a[n].p - b[n].p));
    }
  }

  const bool ok = drift <= 1e-10 && unitarity <= 1e-8 && det_err <= 1e-8 && qhalf <= 1e-6 &&
                  chalf <= 1e-6;
  return {ok, fmt("norm drift %.1e; unitarity %.1e; |det-1| %.1e; quantum halving %.1e; "
                  "classical halving %.1e (limits 1e-10, 1e-8, 1e-8, 1e-6, 1e-6)",
                  drift, unitarity, det_err, qhalf, chalf)};
}

Outcome concurrence_oracle() {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXcd a(100);
    for (int i = 0; i < 100; ++i) a(i) = {g(rng), g(rng)};
    a.normalize();
    const quantum::WaveFunction psi{a};
    const int i = 1 + static_cast<int>(rng() % 100);
    int j = 1 + static_cast<int>(rng() % 99);
    if (j >= i) ++j;
    const double closed = 2.0 * std::abs(a(i - 1)) * std::abs(a(j - 1));
    const double w = entanglement::concurrence_wootters(entanglement::reduce_two_site(psi, i, j));
    worst = std::max(worst, std::abs(closed - w));
  }
  return {worst <= 1e-10, fmt("max |closed form - Wootters| = %.2e over 1000 states", worst)};
}

Outcome rotation_extremum() {
  const auto p = params(0.12, 0.01);
  const double pstar = classical::find_shearless(p, 25.0, 0.0, kPi, 100, 200);
  const auto free = params(0.12, 0.0);
  const auto scan = classical::rotation_scan(free, 25.0, -3.0, 3.0, 40, 100);
  double worst = 0.0;
  for (std::size_t i = 0; i < scan.p0.size(); ++i) {
    worst = std::max(worst, std::abs(scan.nu[i] - std::sin(scan.p0[i]) * free.period() / 100.0));
  }
  const double err = std::abs(pstar - kPi / 2);
  return {err <= 0.05 && worst <= 1e-8,
          fmt("B0=0.01: p* = %.4f (|p*-pi/2| = %.4f, want <= 0.05); B0=0 scan error %.1e",
              pstar, err, worst)};
}

Outcome concurrence_peaks() {
  auto max_of = [](const entanglement::ConcurrenceSeries& s, std::size_t pair) {
    double m = 0.0;
    for (const auto& row : s.values) m = std::max(m, row[pair]);
    return m;
  };
  const auto pairs = entanglement::default_pairs(100);
  const auto slow = entanglement::concurrence_series(params(0.12), packet(), pairs, 20, 20);
  const auto fast = entanglement::concurrence_series(params(0.20), packet(), pairs, 20, 20);
  double top = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) top = std::max(top, max_of(slow, k));
  const double c50s = max_of(slow, 1), c50f = max_of(fast, 1);
  return {top > 0.25 && c50s > c50f,
          fmt("max C (omega=0.12) = %.4f (want > 0.25); max C_50_51: %.4f (0.12) vs %.4f (0.20)",
              top, c50s, c50f)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"initial concurrence", initial_concurrence},
      {"Floquet peak spacing", floquet_peak_spacing},
      {"five-cycle return", five_cycle_return},
      {"dispersion contrast", dispersion_contrast},
      {"shearless-ladder regularity", ladder_regularity},
      {"analytic integrable limit", integrable_limit},
      {"numerical contracts", numerical_contracts},
      {"concurrence oracle", concurrence_oracle},
      {"rotation-number extremum", rotation_extremum},
      {"concurrence peaks", concurrence_peaks},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
