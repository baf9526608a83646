#include "shearless/model.hpp"

#include <cmath>
#include <iostream>

namespace shearless {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NonPositiveOmega: return "NonPositiveOmega";
    case Errc::BadSiteCount: return "BadSiteCount";
    case Errc::ZeroSubsteps: return "ZeroSubsteps";
    case Errc::BadPacket: return "BadPacket";
    case Errc::KickedDriveNotSampleable: return "KickedDriveNotSampleable";
    case Errc::NonPositiveStep: return "NonPositiveStep";
    case Errc::BadTimeOrder: return "BadTimeOrder";
    case Errc::NotFound: return "NotFound";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NonPositiveSigma: return "NonPositiveSigma";
    case Errc::NoPeaks: return "NoPeaks";
    case Errc::SameSite: return "SameSite";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotADensityMatrix: return "NotADensityMatrix";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownKey: return "UnknownKey";
    case Errc::InvalidValue: return "InvalidValue";
    case Errc::UnknownFigureKind: return "UnknownFigureKind";
    case Errc::ContractViolation: return "ContractViolation";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(Drive drive) {
  return drive == Drive::Sinusoidal ? "sinusoidal" : "kicked";
}

std::optional<Drive> parse_drive(std::string_view text) {
  if (text == "sinusoidal" || text == "sin") return Drive::Sinusoidal;
  if (text == "kicked") return Drive::Kicked;
  return std::nullopt;
}

ValidatedParams::ValidatedParams(const SimParams& p)
    : p_(p), period_(kTwoPi / p.omega) {}

ValidatedParams validate(const SimParams& params) {
  if (!(params.omega > 0.0) || !std::isfinite(params.omega)) {
    throw Error(Errc::NonPositiveOmega,
                "omega must be a positive finite number, got " +
                    std::to_string(params.omega));
  }
  if (params.N < 4 || params.N % 2 != 0) {
    throw Error(Errc::BadSiteCount,
                "N must be even and >= 4, got " + std::to_string(params.N));
  }
  if (params.quantum_substeps < 1 || params.classical_substeps < 1) {
    throw Error(Errc::ZeroSubsteps, "substeps per period must be >= 1");
  }
  if (!std::isfinite(params.J) || params.J == 0.0) {
    throw Error(Errc::InvalidArgument, "J must be finite and nonzero");
  }
  if (!std::isfinite(params.B0)) {
    throw Error(Errc::InvalidArgument, "B0 must be finite");
  }
  if (params.kick_strength && !std::isfinite(*params.kick_strength)) {
    throw Error(Errc::InvalidArgument, "kick_strength must be finite");
  }
  if (params.J > 0.0) {
    std::cerr << "warning: J > 0 describes an antiferromagnetic chain; "
                 "ferromagnetic runs use J < 0\n";
  }
  return ValidatedParams(params);
}

double drive_value(const ValidatedParams& params, double t) {
  if (params.drive() == Drive::Kicked) {
    throw Error(Errc::KickedDriveNotSampleable,
                "kicked drive is a train of impulses and has no pointwise value");
  }
  return std::sin(params.omega() * t);
}

void validate_packet(const ValidatedParams& params, const PacketSpec& spec) {
  if (!(spec.delta_j > 0.0) || !std::isfinite(spec.delta_j)) {
    throw Error(Errc::BadPacket, "delta_j must be positive");
  }
  if (spec.j0 < 1 || spec.j0 > params.N()) {
    throw Error(Errc::BadPacket, "j0 must lie in [1, N]");
  }
  if (!std::isfinite(spec.k0)) {
    throw Error(Errc::BadPacket, "k0 must be finite");
  }
}

}  // namespace shearless
