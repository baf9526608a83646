// model.hpp - shared parameters, drive function and error type for the
// driven-Harper / one-down-spin Heisenberg chain toolkit.
//
// Units: hbar = 1, energies in units of |J|. Sites are numbered 1..N in every
// public interface.

#pragma once

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shearless {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Errc {
  NonPositiveOmega,
  BadSiteCount,
  ZeroSubsteps,
  BadPacket,
  KickedDriveNotSampleable,
  NonPositiveStep,
  BadTimeOrder,
  NotFound,
  NotUnitary,
  NoConvergence,
  NonPositiveSigma,
  NoPeaks,
  SameSite,
  IndexOutOfRange,
  NotADensityMatrix,
  InvalidArgument,
  SyntaxError,
  UnknownKey,
  InvalidValue,
  UnknownFigureKind,
  ContractViolation,
  IoError,
};

std::string_view to_string(Errc code);

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

enum class Drive { Sinusoidal, Kicked };

std::string_view to_string(Drive drive);
std::optional<Drive> parse_drive(std::string_view text);

struct SimParams {
  double J = -1.0;
  double B0 = 2.0;
  int N = 100;
  double omega = 0.12;
  Drive drive = Drive::Sinusoidal;
  /// Substeps per drive period for the split-operator propagator.
  int quantum_substeps = 1000;
  /// Substeps per drive period for the classical kick-drift-kick integrator.
  int classical_substeps = 2000;
  /// Impulse strength of the kicked drive; defaults to B0 * T when unset.
  std::optional<double> kick_strength;
};

/// Parameters that passed validate(). Construction is only possible through
/// validate(), so every consumer can rely on the invariants.
class ValidatedParams {
 public:
  double J() const noexcept { return p_.J; }
  double B0() const noexcept { return p_.B0; }
  int N() const noexcept { return p_.N; }
  double omega() const noexcept { return p_.omega; }
  Drive drive() const noexcept { return p_.drive; }
  double period() const noexcept { return period_; }
  int quantum_substeps() const noexcept { return p_.quantum_substeps; }
  int classical_substeps() const noexcept { return p_.classical_substeps; }
  /// Integrated impulse per kick, B0 * T unless overridden.
  double kick_strength() const noexcept {
    return p_.kick_strength.value_or(p_.B0 * period_);
  }
  const SimParams& raw() const noexcept { return p_; }

 private:
  friend ValidatedParams validate(const SimParams& params);
  explicit ValidatedParams(const SimParams& p);

  SimParams p_;
  double period_;
};

/// Checks the field invariants and derives T = 2*pi/omega.
/// Throws Error{NonPositiveOmega | BadSiteCount | ZeroSubsteps | InvalidArgument}.
/// A non-negative J only produces a warning on stderr.
ValidatedParams validate(const SimParams& params);

/// F(t) = sin(omega t). Kicked drives are impulses and cannot be sampled.
double drive_value(const ValidatedParams& params, double t);

struct PacketSpec {
  int j0 = 25;
  double k0 = 0.0;
  double delta_j = 5.0;
  /// Snap k0 to the nearest ring momentum 2*pi*m/N before use.
  bool snap_k0 = false;
};

/// Throws Error{BadPacket} when delta_j <= 0 or j0 is outside [1, N].
void validate_packet(const ValidatedParams& params, const PacketSpec& spec);

/// Minimal-image distance between sites a and b on a ring of n sites.
inline int ring_distance(int a, int b, int n) {
  int d = (a - b) % n;
  if (d < 0) d += n;
  return d <= n / 2 ? d : n - d;
}

}  // namespace shearless
