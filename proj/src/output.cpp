#include "shearless/output.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <system_error>

namespace shearless::io {

namespace {

constexpr std::array<std::string_view, 6> kKinds = {"sos",         "heatmap",  "spectrum",
                                                     "concurrence", "rotation", "series"};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + path.parent_path().string());
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
}

// Shared by every script: CSV loader that skips the '#' header and returns
// columns by name, plus the header results as strings.
constexpr std::string_view kPreamble = R"py(import csv
import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

HERE = pathlib.Path(__file__).resolve().parent


def load(stem):
    results = {}
    body = []
    with open(HERE / (stem + ".csv"), newline="") as f:
        for line in f:
            if line.startswith("# result "):
                key, _, value = line[len("# result "):].partition(" = ")
                results[key.strip()] = value.strip()
            elif not line.startswith("#"):
                body.append(line)
    reader = csv.reader(body)
    names = next(reader)
    data = np.array([[float(v) for v in row] for row in reader], dtype=float)
    data = data.reshape(-1, len(names))
    return {n: data[:, i] for i, n in enumerate(names)}, names, results


def period(results):
    return float(results.get("period", "1"))


def omega(results):
    return "%g" % float(results.get("omega", "nan"))

)py";

std::string body_for(std::string_view kind) {
  if (kind == "sos") {
    return R"py(cols, names, results = load(STEM)
fig, ax = plt.subplots(figsize=(6, 5))
ax.scatter(cols["x"], cols["p"], s=0.3, c="k", linewidths=0)
ax.set_xlabel("x (site)")
ax.set_ylabel("p")
ax.set_ylim(-np.pi, np.pi)
ax.set_title("surface of section, omega = " + omega(results))
)py";
  }
  if (kind == "heatmap") {
    return R"py(cols, names, results = load(STEM)
ts = np.unique(cols["t"])
js = np.unique(cols["j"])
grid = cols["P"].reshape(len(ts), len(js))
fig, ax = plt.subplots(figsize=(6, 5))
mesh = ax.pcolormesh(js, ts / period(results), grid, shading="nearest", cmap="viridis")
fig.colorbar(mesh, ax=ax, label="P(j, t)")
ax.set_xlabel("site j")
ax.set_ylabel("t / T")
ax.set_title("down-spin probability, omega = " + omega(results))
)py";
  }
  if (kind == "spectrum") {
    return R"py(cols, names, results = load(STEM)
fig, ax = plt.subplots(figsize=(6, 4))
if "weight" in cols:
    ax.vlines(cols["eigenphase"], 0.0, cols["weight"], colors="k")
    ax.set_ylabel("weight")
else:
    ax.plot(cols["eigenphase"], cols["density"], "k-")
    ax.set_ylabel("smoothed density")
ax.set_xlim(-np.pi, np.pi)
ax.set_xlabel("quasienergy")
ax.set_title("local spectrum, omega = " + omega(results))
)py";
  }
  if (kind == "concurrence") {
    return R"py(cols, names, results = load(STEM)
fig, ax = plt.subplots(figsize=(7, 4))
tau = cols["t"] / period(results)
for name in names[1:]:
    ax.plot(tau, cols[name], lw=0.8, label=name)
ax.set_xlabel("t / T")
ax.set_ylabel("concurrence")
ax.set_ylim(0.0, 1.0)
ax.legend(fontsize="small")
ax.set_title("pairwise concurrence, omega = " + omega(results))
)py";
  }
  if (kind == "rotation") {
    return R"py(cols, names, results = load(STEM)
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(cols["p0"], cols["nu"], "k.-", ms=2)
if results.get("p_star"):
    ax.axvline(float(results["p_star"]), color="r", ls="--", label="p*")
    ax.legend()
ax.set_xlabel("p0")
ax.set_ylabel("rotation number")
ax.set_title("rotation profile, omega = " + omega(results))
)py";
  }
  return R"py(cols, names, results = load(STEM)
fig, ax = plt.subplots(figsize=(6, 4))
for name in names[1:]:
    ax.plot(cols[names[0]], cols[name], label=name)
ax.set_xlabel(names[0])
ax.legend()
)py";
}

}  // namespace

void OutputTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw Error(Errc::InvalidArgument, "row width does not match table '" + name + "'");
  }
  rows.push_back(std::move(row));
}

void OutputTable::note(std::string key, std::string value) {
  notes.emplace_back(std::move(key), std::move(value));
}

const std::string* OutputTable::find_note(std::string_view key) const {
  for (const auto& [k, v] : notes) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string OutputTable::to_csv() const {
  std::string out;
  out += "# shearless " + std::string(kVersion) + "\n";
  out += "# table " + name + "\n";
  for (const auto& [k, v] : header) out += "# config " + k + " = " + v + "\n";
  for (const auto& [k, v] : notes) out += "# result " + k + " = " + v + "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += config::format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

OutputTable make_table(std::string name, std::vector<std::string> columns,
                       const config::ExperimentConfig& cfg) {
  OutputTable t;
  t.name = std::move(name);
  t.columns = std::move(columns);
  t.header = config::resolved_entries(cfg);
  return t;
}

std::filesystem::path write_table(const OutputTable& table, const std::filesystem::path& dir) {
  const auto path = dir / (table.name + ".csv");
  write_file(path, table.to_csv());
  return path;
}

bool is_figure_kind(std::string_view kind) {
  return std::find(kKinds.begin(), kKinds.end(), kind) != kKinds.end();
}

std::string plot_script(const OutputTable& table, std::string_view figure_kind) {
  if (!is_figure_kind(figure_kind)) {
    throw Error(Errc::UnknownFigureKind,
                "unknown figure kind '" + std::string(figure_kind) + "'");
  }
  std::string script = "#!/usr/bin/env python3\n# " + std::string(figure_kind) +
                       " plot of " + table.name + ".csv, written by shearless " +
                       std::string(kVersion) + "\n";
  script += kPreamble;
  script += "STEM = \"" + table.name + "\"\n";
  script += body_for(figure_kind);
  script += "fig.tight_layout()\nfig.savefig(HERE / (STEM + \".png\"), dpi=150)\n";
  return script;
}

std::filesystem::path emit_plot_script(const OutputTable& table, std::string_view figure_kind,
                                       const std::filesystem::path& dir) {
  const std::string text = plot_script(table, figure_kind);
  const auto path = dir / (table.name + ".py");
  write_file(path, text);
  return path;
}

}  // namespace shearless::io
