// experiments.hpp - one runner per figure-style experiment. Runners compute
// tables only; write_tables puts them on disk.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "shearless/config.hpp"
#include "shearless/output.hpp"

namespace shearless::experiments {

using Tables = std::vector<io::OutputTable>;

/// Stroboscopic orbits of the configured seed grid: seed_id, n, x, p.
/// Seeds sit at cell centres of a seeds_x by seeds_p grid over (0,N] x (-pi,pi].
Tables run_sos(const config::ExperimentConfig& cfg);

/// P(j,t) snapshots (t, j, P) and per-snapshot diagnostics
/// (t, center, width, ipr, norm). Throws ContractViolation when the norm
/// drifts by more than 1e-10.
Tables run_evolve(const config::ExperimentConfig& cfg);

/// Floquet modes (m, eigenphase, weight), the filtered local spectrum, the
/// smoothed density and the peak list. Throws ContractViolation when the
/// unitarity or eigenvector residual exceeds 1e-8 or the weights do not sum
/// to 1 within 1e-10.
Tables run_floquet(const config::ExperimentConfig& cfg);

/// Concurrence series: t, C_i_j for every configured pair.
Tables run_concurrence(const config::ExperimentConfig& cfg);

/// Rotation scan (p0, nu, convergence_error) with p_star in the header, left
/// empty with a note when the profile has no interior extremum.
Tables run_rotation(const config::ExperimentConfig& cfg);

/// Classical cloud spread: n, t, variance.
Tables run_ensemble(const config::ExperimentConfig& cfg);

/// Runner by subcommand name (sos, evolve, floquet, concurrence, rotation,
/// ensemble). Throws InvalidArgument for anything else.
Tables run_named(const std::string& name, const config::ExperimentConfig& cfg);

/// Writes every table and, where a figure kind is set, its plot script.
std::vector<std::filesystem::path> write_tables(const Tables& tables,
                                                const std::filesystem::path& dir);

struct Job {
  std::string subdir;
  std::string experiment;
  config::ExperimentConfig cfg;
};

/// The panel set of the reference figures, built from a base config:
/// phase portraits at omega = 0.20, 0.16, 0.12; packet evolution for
/// (omega, k0) = (0.20, 1.0), (0.20, 0), (0.12, 0); local spectra at
/// omega = 1.0 (k0 = pi/2), 0.12 and 0.20; concurrence at 0.20 and 0.12;
/// rotation profile across the omega = 0.12 channel (p0 in [-0.5, 0.5]) and
/// classical spread at 0.12.
std::vector<Job> paper_jobs(const config::ExperimentConfig& base);

/// Runs paper_jobs (concurrently where cores allow), each into
/// <out_dir>/<subdir>. Returns the written paths.
std::vector<std::filesystem::path> reproduce_paper(const config::ExperimentConfig& base);

}  // namespace shearless::experiments
