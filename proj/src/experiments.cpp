#include "shearless/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "shearless/classical.hpp"
#include "shearless/entanglement.hpp"
#include "shearless/floquet.hpp"
#include "shearless/parallel.hpp"
#include "shearless/quantum.hpp"

namespace shearless::experiments {

namespace {

using config::format_number;

constexpr double kNormDriftTol = 1e-10;
constexpr double kUnitarityTol = 1e-8;
constexpr double kEigenTol = 1e-8;
constexpr double kCompletenessTol = 1e-10;

io::OutputTable table(std::string name, std::vector<std::string> columns,
                      const config::ExperimentConfig& cfg, const ValidatedParams& params) {
  auto t = io::make_table(std::move(name), std::move(columns), cfg);
  t.note("omega", format_number(params.omega()));
  t.note("period", format_number(params.period()));
  return t;
}

// Config-level failures (bad omega, packet off the ring) surface as
// InvalidValue so the CLI reports them as configuration errors.
ValidatedParams checked_params(const config::ExperimentConfig& cfg) {
  try {
    auto params = validate(cfg.params);
    validate_packet(params, cfg.packet);
    return params;
  } catch (const Error& e) {
    throw Error(Errc::InvalidValue, e.what());
  }
}

}  // namespace

Tables run_sos(const config::ExperimentConfig& cfg) {
  const auto params = checked_params(cfg);
  const int nx = cfg.sos.seeds_x;
  const int np = cfg.sos.seeds_p;
  std::vector<classical::PhasePoint> seeds;
  seeds.reserve(static_cast<std::size_t>(nx) * np);
  for (int i = 0; i < nx; ++i) {
    for (int k = 0; k < np; ++k) {
      seeds.push_back({(i + 0.5) * params.N() / nx, -kPi + (k + 0.5) * kTwoPi / np});
    }
  }
  const auto sos = classical::surface_of_section(params, seeds, cfg.sos.periods);

  auto t = table("sos", {"seed_id", "n", "x", "p"}, cfg, params);
  t.figure = "sos";
  t.note("seeds", std::to_string(seeds.size()));
  for (std::size_t s = 0; s < sos.orbits.size(); ++s) {
    const auto& orbit = sos.orbits[s];
    for (std::size_t n = 0; n < orbit.size(); ++n) {
      t.add_row({static_cast<double>(s), static_cast<double>(n), orbit[n].x, orbit[n].p});
    }
  }
  return {std::move(t)};
}

Tables run_evolve(const config::ExperimentConfig& cfg) {
  const auto params = checked_params(cfg);
  const auto psi0 = quantum::gaussian_packet(params, cfg.packet);
  const int stride = cfg.evolve.samples_per_period;
  const auto snaps = quantum::evolve_sampled(params, psi0, cfg.evolve.periods, stride);

  auto dist = table("evolve", {"t", "j", "P"}, cfg, params);
  dist.figure = "heatmap";
  auto diag = table("diagnostics", {"t", "center", "width", "ipr", "norm"}, cfg, params);
  diag.figure = "series";

  const double norm0 = psi0.norm_squared();
  double drift = 0.0;
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const double t = static_cast<double>(k) * params.period() / stride;
    const auto p = quantum::spin_distribution(snaps[k]);
    for (int j = 1; j <= params.N(); ++j) {
      dist.add_row({t, static_cast<double>(j), p.values[static_cast<std::size_t>(j - 1)]});
    }
    const auto d = quantum::packet_diagnostics(p);
    const double norm = snaps[k].norm_squared();
    drift = std::max(drift, std::abs(norm - norm0));
    diag.add_row({t, d.center, d.width, d.ipr, norm});
  }
  diag.note("max_norm_drift", format_number(drift));
  if (drift > kNormDriftTol) {
    throw Error(Errc::ContractViolation,
                "norm drift " + format_number(drift) + " exceeds " + format_number(kNormDriftTol));
  }
  return {std::move(dist), std::move(diag)};
}

Tables run_floquet(const config::ExperimentConfig& cfg) {
  const auto params = checked_params(cfg);
  const auto U = floquet::monodromy(params).U;
  const double unitarity = floquet::unitarity_residual(U);
  if (unitarity > kUnitarityTol) {
    throw Error(Errc::ContractViolation, "unitarity residual " + format_number(unitarity) +
                                             " exceeds " + format_number(kUnitarityTol));
  }
  const auto decomp = floquet::floquet_decompose(U);
  const double eig = floquet::eigen_residual(U, decomp);
  if (eig > kEigenTol) {
    throw Error(Errc::ContractViolation, "eigenvector residual " + format_number(eig) +
                                             " exceeds " + format_number(kEigenTol));
  }
  const auto psi0 = quantum::gaussian_packet(params, cfg.packet);
  const auto spectrum = floquet::local_spectrum(decomp, psi0);
  const double total = spectrum.total_weight();
  if (std::abs(total - 1.0) > kCompletenessTol) {
    throw Error(Errc::ContractViolation,
                "local spectrum weights sum to " + format_number(total));
  }
  const auto smoothed = floquet::smooth_spectrum(spectrum, cfg.floquet.sigma, cfg.floquet.grid);
  const auto report = floquet::peak_spacings(smoothed, cfg.floquet.prominence);

  auto add_common = [&](io::OutputTable& t) {
    t.note("sigma", format_number(cfg.floquet.sigma));
    t.note("prominence", format_number(cfg.floquet.prominence));
    t.note("unitarity_residual", format_number(unitarity));
    t.note("eigen_residual", format_number(eig));
  };

  auto modes = table("floquet_modes", {"m", "eigenphase", "weight"}, cfg, params);
  add_common(modes);
  modes.note("total_weight", format_number(total));
  for (std::size_t m = 0; m < spectrum.entries.size(); ++m) {
    modes.add_row({static_cast<double>(m), spectrum.entries[m].eigenphase,
                   spectrum.entries[m].weight});
  }

  auto filtered = table("floquet_spectrum", {"eigenphase", "weight"}, cfg, params);
  filtered.figure = "spectrum";
  add_common(filtered);
  filtered.note("threshold", format_number(cfg.floquet.threshold));
  for (const auto& e : spectrum.filtered(cfg.floquet.threshold)) {
    filtered.add_row({e.eigenphase, e.weight});
  }

  auto smooth = table("floquet_smoothed", {"eigenphase", "density"}, cfg, params);
  smooth.figure = "spectrum";
  add_common(smooth);
  for (std::size_t i = 0; i < smoothed.grid.size(); ++i) {
    smooth.add_row({smoothed.grid[i], smoothed.density[i]});
  }

  auto peaks = table("floquet_peaks", {"eigenphase", "height", "prominence", "gap"}, cfg, params);
  add_common(peaks);
  for (std::size_t i = 0; i < report.peaks.size(); ++i) {
    const auto& p = report.peaks[i];
    peaks.add_row({p.eigenphase, p.height, p.prominence, report.gaps[i]});
  }
  const auto ladder = floquet::ladder_gaps(report.gaps);
  peaks.note("peak_count", std::to_string(report.peaks.size()));
  peaks.note("mean_gap", format_number(floquet::mean(report.gaps)));
  peaks.note("gap_rsd", report.gaps.size() > 1 ? format_number(floquet::relative_std(report.gaps))
                                                : std::string());
  peaks.note("ladder_gap_rsd",
             ladder.size() > 1 ? format_number(floquet::relative_std(ladder)) : std::string());

  return {std::move(modes), std::move(filtered), std::move(smooth), std::move(peaks)};
}

Tables run_concurrence(const config::ExperimentConfig& cfg) {
  const auto params = checked_params(cfg);
  const auto series = entanglement::concurrence_series(
      params, cfg.packet, cfg.concurrence.pairs, cfg.concurrence.periods,
      cfg.concurrence.samples_per_period);

  std::vector<std::string> columns{"t"};
  for (const auto& [i, j] : series.pairs) {
    columns.push_back("C_" + std::to_string(i) + "_" + std::to_string(j));
  }
  auto t = table("concurrence", columns, cfg, params);
  t.figure = "concurrence";
  std::vector<double> peak(series.pairs.size(), 0.0);
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    std::vector<double> row{series.times[k]};
    for (std::size_t p = 0; p < series.pairs.size(); ++p) {
      row.push_back(series.values[k][p]);
      peak[p] = std::max(peak[p], series.values[k][p]);
    }
    t.add_row(std::move(row));
  }
  for (std::size_t p = 0; p < peak.size(); ++p) t.note("max_" + columns[p + 1], format_number(peak[p]));
  return {std::move(t)};
}

Tables run_rotation(const config::ExperimentConfig& cfg) {
  const auto params = checked_params(cfg);
  const auto& rc = cfg.rotation;
  const auto scan =
      classical::rotation_scan(params, rc.x0, rc.p_min, rc.p_max, rc.resolution, rc.iterations);
  auto t = table("rotation", {"p0", "nu", "convergence_error"}, cfg, params);
  t.figure = "rotation";
  for (std::size_t i = 0; i < scan.p0.size(); ++i) {
    t.add_row({scan.p0[i], scan.nu[i], scan.convergence_error[i]});
  }
  try {
    t.note("p_star", format_number(classical::locate_extremum(scan.p0, scan.nu)));
  } catch (const Error& e) {
    if (e.code() != Errc::NotFound) throw;
    t.note("p_star", "");
    t.note("p_star_note", "no interior extremum in the scanned range; profile is monotone");
  }
  return {std::move(t)};
}

Tables run_ensemble(const config::ExperimentConfig& cfg) {
  const auto params = checked_params(cfg);
  const auto var = classical::ensemble_spread(params, cfg.packet, cfg.ensemble.samples,
                                              cfg.ensemble.periods, cfg.ensemble.rng_seed);
  auto t = table("ensemble", {"n", "t", "variance"}, cfg, params);
  t.figure = "series";
  for (std::size_t n = 0; n < var.size(); ++n) {
    t.add_row({static_cast<double>(n), static_cast<double>(n) * params.period(), var[n]});
  }
  return {std::move(t)};
}

Tables run_named(const std::string& name, const config::ExperimentConfig& cfg) {
  if (name == "sos") return run_sos(cfg);
  if (name == "evolve") return run_evolve(cfg);
  if (name == "floquet") return run_floquet(cfg);
  if (name == "concurrence") return run_concurrence(cfg);
  if (name == "rotation") return run_rotation(cfg);
  if (name == "ensemble") return run_ensemble(cfg);
  throw Error(Errc::InvalidArgument, "unknown experiment '" + name + "'");
}

std::vector<std::filesystem::path> write_tables(const Tables& tables,
                                                const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  for (const auto& t : tables) {
    written.push_back(io::write_table(t, dir));
    if (!t.figure.empty()) written.push_back(io::emit_plot_script(t, t.figure, dir));
  }
  return written;
}

std::vector<Job> paper_jobs(const config::ExperimentConfig& base) {
  std::vector<Job> jobs;
  auto add = [&](std::string subdir, std::string experiment, double omega, double k0) {
    Job job{std::move(subdir), std::move(experiment), base};
    job.cfg.params.omega = omega;
    job.cfg.packet.k0 = k0;
    jobs.push_back(std::move(job));
  };
  const double k0 = base.packet.k0;
  add("fig1a_sos_omega0.20", "sos", 0.20, k0);
  add("fig1b_sos_omega0.16", "sos", 0.16, k0);
  add("fig1c_sos_omega0.12", "sos", 0.12, k0);
  add("fig2a_evolve_omega0.20_k1.0", "evolve", 0.20, 1.0);
  add("fig2b_evolve_omega0.20_k0", "evolve", 0.20, 0.0);
  add("fig2c_evolve_omega0.12_k0", "evolve", 0.12, 0.0);
  add("fig3a_floquet_omega1.0", "floquet", 1.0, kPi / 2.0);
  add("fig3b_floquet_omega0.12", "floquet", 0.12, 0.0);
  add("fig3c_floquet_omega0.20", "floquet", 0.20, 0.0);
  add("fig4a_concurrence_omega0.20", "concurrence", 0.20, 0.0);
  add("fig4b_concurrence_omega0.12", "concurrence", 0.12, 0.0);
  add("rotation_omega0.12", "rotation", 0.12, k0);
  add("ensemble_omega0.12", "ensemble", 0.12, 0.0);
  // The omega = 0.12 regular channel crosses x0 = 25 near p = 0; elsewhere the
  // profile is chaotic noise.
  jobs[11].cfg.rotation.p_min = -0.5;
  jobs[11].cfg.rotation.p_max = 0.5;
  for (auto& job : jobs) {
    job.cfg.out_dir = (std::filesystem::path(base.out_dir) / job.subdir).string();
  }
  return jobs;
}

std::vector<std::filesystem::path> reproduce_paper(const config::ExperimentConfig& base) {
  const auto jobs = paper_jobs(base);
  std::vector<std::vector<std::filesystem::path>> written(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const auto& job = jobs[i];
    written[i] = write_tables(run_named(job.experiment, job.cfg), job.cfg.out_dir);
  });
  std::vector<std::filesystem::path> all;
  for (auto& w : written) all.insert(all.end(), w.begin(), w.end());
  return all;
}

}  // namespace shearless::experiments
