#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "shearless/quantum.hpp"

using namespace shearless;
using namespace shearless::quantum;

namespace {

ValidatedParams make(double omega, double B0 = 2.0, int N = 100, int M = 1000) {
  SimParams sp;
  sp.omega = omega;
  sp.B0 = B0;
  sp.N = N;
  sp.quantum_substeps = M;
  return validate(sp);
}

// Dense H(t) built directly from the lattice definition.
Eigen::MatrixXcd dense_h(const ValidatedParams& p, double t) {
  const int n = p.N();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, (i + 1) % n) += p.J() / 2;
    h((i + 1) % n, i) += p.J() / 2;
    h(i, i) = p.B0() * std::sin(p.omega() * t) * std::cos(kTwoPi * (i + 1) / n);
  }
  return h;
}

// Classic RK4 on i psi' = H(t) psi with a fine step.
Eigen::VectorXcd rk4(const ValidatedParams& p, Eigen::VectorXcd psi, double t0, double t1,
                     int steps) {
  const cplx mi(0.0, -1.0);
  const double h = (t1 - t0) / steps;
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    const Eigen::VectorXcd k1 = mi * (dense_h(p, t) * psi);
    const Eigen::VectorXcd k2 = mi * (dense_h(p, t + h / 2) * (psi + h / 2 * k1));
    const Eigen::VectorXcd k3 = mi * (dense_h(p, t + h / 2) * (psi + h / 2 * k2));
    const Eigen::VectorXcd k4 = mi * (dense_h(p, t + h) * (psi + h * k3));
    psi += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

Eigen::VectorXcd random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

}  // namespace

TEST_CASE("gaussian packet") {
  const auto p = make(0.12);
  PacketSpec spec;
  spec.k0 = 0.7;
  const auto psi = gaussian_packet(p, spec);
  REQUIRE(psi.size() == 100);
  CHECK(psi.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::arg(psi.at(26) / psi.at(25)) == doctest::Approx(0.7));
  CHECK(std::abs(psi.at(25)) > std::abs(psi.at(24)));
  CHECK(std::abs(psi.at(30)) / std::abs(psi.at(25)) == doctest::Approx(std::exp(-0.5)));
  // Wraps around the ring: site 100 is 25 sites from j0 = 25, same as site 50.
  CHECK(std::abs(psi.at(100)) == doctest::Approx(std::abs(psi.at(50))));

  spec.k0 = 1.0;
  spec.snap_k0 = true;
  const auto snapped = gaussian_packet(p, spec);
  CHECK(std::arg(snapped.at(26) / snapped.at(25)) == doctest::Approx(kTwoPi * 16 / 100));

  spec.delta_j = -1.0;
  CHECK_THROWS_AS(gaussian_packet(p, spec), Error);
}

TEST_CASE("basis and plane waves") {
  const auto b = basis_state(10, 10);
  CHECK(b.at(10) == cplx(1.0));
  CHECK(b.norm_squared() == 1.0);
  CHECK_THROWS_AS(basis_state(10, 0), Error);
  CHECK_THROWS_AS(basis_state(10, 11), Error);
  const auto w = plane_wave(10, 3);
  CHECK(w.norm_squared() == doctest::Approx(1.0));
  CHECK(std::arg(w.at(2) / w.at(1)) == doctest::Approx(kTwoPi * 3 / 10));
}

TEST_CASE("hamiltonian matches the dense lattice matrix and is hermitian") {
  const auto p = make(0.2, 2.0, 12);
  std::mt19937_64 rng(3);
  for (double t : {0.0, 1.7, 9.1}) {
    const auto psi = random_state(12, rng);
    const auto phi = random_state(12, rng);
    CHECK((apply_hamiltonian(p, psi, t) - dense_h(p, t) * psi).norm() < 1e-13);
    const cplx lhs = phi.dot(apply_hamiltonian(p, psi, t));
    const cplx rhs = apply_hamiltonian(p, phi, t).dot(psi);
    CHECK(std::abs(lhs - rhs) < 1e-13);
  }
}

TEST_CASE("plane waves are stationary without drive") {
  const auto p = make(0.3, 0.0, 16);
  for (int m : {0, 1, 5, 8}) {
    const auto w = plane_wave(16, m);
    const double e = p.J() * std::cos(kTwoPi * m / 16);
    CHECK(energy_expectation(p, w, 0.0) == doctest::Approx(e));
    const double t = 7.3;
    const auto out = propagate(p, w, 0.0, t);
    CHECK((out.amps - std::exp(cplx(0.0, -e * t)) * w.amps).norm() < 1e-10);
  }
}

TEST_CASE("driven propagation agrees with an RK4 reference") {
  const auto p = make(0.5, 2.0, 8);
  std::mt19937_64 rng(9);
  const WaveFunction psi{random_state(8, rng)};
  const double T = p.period();
  const auto split = propagate(p, psi, 0.0, T);
  const auto ref = rk4(p, psi.amps, 0.0, T, 40000);
  CHECK((split.amps - ref).norm() < 1e-8);
}

TEST_CASE("kicked propagation is kick then free evolution") {
  SimParams sp;
  sp.omega = 0.5;
  sp.N = 8;
  sp.drive = Drive::Kicked;
  sp.kick_strength = 1.3;
  const auto p = validate(sp);
  std::mt19937_64 rng(2);
  const WaveFunction psi{random_state(8, rng)};

  Eigen::VectorXcd kicked = psi.amps;
  for (int j = 1; j <= 8; ++j) {
    kicked(j - 1) *= std::exp(cplx(0.0, -1.3 * std::cos(kTwoPi * j / 8)));
  }
  SimParams free = sp;
  free.drive = Drive::Sinusoidal;
  free.B0 = 0.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_h(validate(free), 0.0));
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<cplx>() * cplx(0.0, -p.period())).array().exp().matrix();
  const Eigen::VectorXcd expect =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * kicked;

  CHECK((propagate(p, psi, 0.0, p.period()).amps - expect).norm() < 1e-12);
  CHECK(field_factor(p, 0.3) == 0.0);
  // Mid-period windows contain no kick.
  const auto mid = propagate(p, psi, 0.25 * p.period(), 0.75 * p.period());
  CHECK(mid.norm_squared() == doctest::Approx(1.0));
}

TEST_CASE("adjoint undoes forward propagation") {
  const auto p = make(0.12);
  std::mt19937_64 rng(4);
  const WaveFunction psi{random_state(100, rng)};
  const auto fwd = propagate(p, psi, 0.3, 2.0 * p.period());
  const auto back = propagate_adjoint(p, fwd, 0.3, 2.0 * p.period());
  CHECK((back.amps - psi.amps).norm() < 1e-11);
}

TEST_CASE("propagation composes across period boundaries") {
  const auto p = make(0.2);
  const auto psi = gaussian_packet(p, PacketSpec{});
  const double T = p.period();
  const auto once = propagate(p, psi, 0.0, 2 * T);
  const auto twice = propagate(p, propagate(p, psi, 0.0, T), T, 2 * T);
  CHECK((once.amps - twice.amps).norm() < 1e-12);
}

TEST_CASE("time order is enforced") {
  const auto p = make(0.12);
  const auto psi = basis_state(100, 1);
  CHECK_THROWS_AS(propagate(p, psi, 1.0, 1.0), Error);
  try {
    propagate(p, psi, 2.0, 1.0);
    FAIL("expected BadTimeOrder");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadTimeOrder);
  }
}

TEST_CASE("norm is conserved over twenty periods") {
  const auto p = make(0.12);
  const auto snaps = evolve_sampled(p, gaussian_packet(p, PacketSpec{}), 20, 1);
  REQUIRE(snaps.size() == 21);
  for (const auto& s : snaps) CHECK(std::abs(s.norm_squared() - 1.0) <= 1e-10);
}

TEST_CASE("step halving changes psi(10T) by less than 1e-6") {
  for (double omega : {0.12, 0.20}) {
    const auto coarse = make(omega, 2.0, 100, 1000);
    const auto fine = make(omega, 2.0, 100, 2000);
    const auto psi = gaussian_packet(coarse, PacketSpec{});
    const double t = 10 * coarse.period();
    const auto a = propagate(coarse, psi, 0.0, t);
    const auto b = propagate(fine, psi, 0.0, t);
    CAPTURE(omega);
    CHECK((a.amps - b.amps).norm() <= 1e-6);
  }
}

TEST_CASE("sampled evolution") {
  const auto p = make(0.2);
  const auto psi0 = gaussian_packet(p, PacketSpec{});
  const auto snaps = evolve_sampled(p, psi0, 2, 4);
  REQUIRE(snaps.size() == 9);
  CHECK((snaps[0].amps - psi0.amps).norm() == 0.0);
  const auto direct = propagate(p, psi0, 0.0, 0.75 * p.period());
  CHECK((snaps[3].amps - direct.amps).norm() < 1e-11);
}

TEST_CASE("packet diagnostics") {
  const auto single = packet_diagnostics(spin_distribution(basis_state(100, 40)));
  CHECK(single.center == doctest::Approx(40.0));
  CHECK(single.width == 0.0);
  CHECK(single.ipr == 1.0);

  const auto uniform = packet_diagnostics(spin_distribution(plane_wave(100, 3)));
  CHECK(uniform.ipr == doctest::Approx(0.01));

  const auto p = make(0.12);
  const auto g = packet_diagnostics(spin_distribution(gaussian_packet(p, PacketSpec{})));
  CHECK(g.center == doctest::Approx(25.0));
  // |psi|^2 is a Gaussian of standard deviation delta_j / sqrt(2).
  CHECK(g.width == doctest::Approx(5.0 / std::sqrt(2.0)).epsilon(1e-3));

  // Packet straddling the seam keeps its centre near site N.
  PacketSpec seam;
  seam.j0 = 100;
  const auto s = packet_diagnostics(spin_distribution(gaussian_packet(p, seam)));
  CHECK(ring_distance(static_cast<int>(std::lround(s.center)), 100, 100) == 0);
}
