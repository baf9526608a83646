#include "shearless/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace shearless::config {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Context {
  std::string key;  // section.key
  int line;
};

[[noreturn]] void invalid(const Context& ctx, const std::string& why) {
  const std::string where =
      ctx.line > 0 ? " (line " + std::to_string(ctx.line) + ")" : std::string();
  throw Error(Errc::InvalidValue, "invalid value for '" + ctx.key + "'" + where + ": " + why);
}

double to_double(std::string_view v, const Context& ctx) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    invalid(ctx, "expected a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

long long to_integer(std::string_view v, const Context& ctx) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    invalid(ctx, "expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

int to_int(std::string_view v, const Context& ctx, long long lo, long long hi) {
  const long long x = to_integer(v, ctx);
  if (x < lo || x > hi) {
    invalid(ctx, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

double positive(std::string_view v, const Context& ctx) {
  const double x = to_double(v, ctx);
  if (!(x > 0.0)) invalid(ctx, "must be positive");
  return x;
}

bool to_bool(std::string_view v, const Context& ctx) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  invalid(ctx, "expected true or false");
}

std::vector<entanglement::SitePair> to_pairs(std::string_view v, const Context& ctx) {
  std::vector<entanglement::SitePair> pairs;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const auto comma = v.find(',', pos);
    const auto item = trim(v.substr(pos, comma == std::string_view::npos ? v.npos : comma - pos));
    const auto dash = item.find('-');
    if (item.empty() || dash == std::string_view::npos) {
      invalid(ctx, "expected pairs like '25-26, 100-1'");
    }
    const int i = to_int(trim(item.substr(0, dash)), ctx, 1, 1'000'000);
    const int j = to_int(trim(item.substr(dash + 1)), ctx, 1, 1'000'000);
    if (i == j) invalid(ctx, "pair members must differ");
    pairs.emplace_back(i, j);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return pairs;
}

std::string pairs_text(const std::vector<entanglement::SitePair>& pairs) {
  std::string out;
  for (const auto& [i, j] : pairs) {
    if (!out.empty()) out += ", ";
    out += std::to_string(i) + "-" + std::to_string(j);
  }
  return out;
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(ExperimentConfig&, std::string_view, const Context&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<Field>& schema() {
  constexpr long long kBig = 100'000'000;
  static const std::vector<Field> fields = {
      {"model", "J",
       [](auto& c, auto v, auto& ctx) {
         c.params.J = to_double(v, ctx);
         if (c.params.J == 0.0) invalid(ctx, "must be nonzero");
       },
       [](auto& c) { return format_number(c.params.J); }},
      {"model", "B0", [](auto& c, auto v, auto& ctx) { c.params.B0 = to_double(v, ctx); },
       [](auto& c) { return format_number(c.params.B0); }},
      {"model", "N",
       [](auto& c, auto v, auto& ctx) {
         c.params.N = to_int(v, ctx, 4, 100000);
         if (c.params.N % 2 != 0) invalid(ctx, "must be even");
       },
       [](auto& c) { return std::to_string(c.params.N); }},
      {"model", "omega", [](auto& c, auto v, auto& ctx) { c.params.omega = positive(v, ctx); },
       [](auto& c) { return format_number(c.params.omega); }},
      {"model", "drive",
       [](auto& c, auto v, auto& ctx) {
         const auto d = parse_drive(v);
         if (!d) invalid(ctx, "expected 'sinusoidal' or 'kicked'");
         c.params.drive = *d;
       },
       [](auto& c) { return std::string(to_string(c.params.drive)); }},
      {"model", "kick_strength",
       [](auto& c, auto v, auto& ctx) {
         if (v == "auto") {
           c.params.kick_strength.reset();
         } else {
           c.params.kick_strength = to_double(v, ctx);
         }
       },
       [](auto& c) {
         return c.params.kick_strength ? format_number(*c.params.kick_strength)
                                       : std::string("auto");
       }},
      {"model", "quantum_substeps",
       [](auto& c, auto v, auto& ctx) { c.params.quantum_substeps = to_int(v, ctx, 1, kBig); },
       [](auto& c) { return std::to_string(c.params.quantum_substeps); }},
      {"model", "classical_substeps",
       [](auto& c, auto v, auto& ctx) { c.params.classical_substeps = to_int(v, ctx, 1, kBig); },
       [](auto& c) { return std::to_string(c.params.classical_substeps); }},

      {"packet", "j0", [](auto& c, auto v, auto& ctx) { c.packet.j0 = to_int(v, ctx, 1, 100000); },
       [](auto& c) { return std::to_string(c.packet.j0); }},
      {"packet", "k0", [](auto& c, auto v, auto& ctx) { c.packet.k0 = to_double(v, ctx); },
       [](auto& c) { return format_number(c.packet.k0); }},
      {"packet", "delta_j", [](auto& c, auto v, auto& ctx) { c.packet.delta_j = positive(v, ctx); },
       [](auto& c) { return format_number(c.packet.delta_j); }},
      {"packet", "snap_k0", [](auto& c, auto v, auto& ctx) { c.packet.snap_k0 = to_bool(v, ctx); },
       [](auto& c) { return std::string(c.packet.snap_k0 ? "true" : "false"); }},

      {"sos", "seeds_x", [](auto& c, auto v, auto& ctx) { c.sos.seeds_x = to_int(v, ctx, 1, 10000); },
       [](auto& c) { return std::to_string(c.sos.seeds_x); }},
      {"sos", "seeds_p", [](auto& c, auto v, auto& ctx) { c.sos.seeds_p = to_int(v, ctx, 1, 10000); },
       [](auto& c) { return std::to_string(c.sos.seeds_p); }},
      {"sos", "periods", [](auto& c, auto v, auto& ctx) { c.sos.periods = to_int(v, ctx, 0, kBig); },
       [](auto& c) { return std::to_string(c.sos.periods); }},

      {"rotation", "x0", [](auto& c, auto v, auto& ctx) { c.rotation.x0 = to_double(v, ctx); },
       [](auto& c) { return format_number(c.rotation.x0); }},
      {"rotation", "p_min", [](auto& c, auto v, auto& ctx) { c.rotation.p_min = to_double(v, ctx); },
       [](auto& c) { return format_number(c.rotation.p_min); }},
      {"rotation", "p_max", [](auto& c, auto v, auto& ctx) { c.rotation.p_max = to_double(v, ctx); },
       [](auto& c) { return format_number(c.rotation.p_max); }},
      {"rotation", "resolution",
       [](auto& c, auto v, auto& ctx) { c.rotation.resolution = to_int(v, ctx, 3, 1000000); },
       [](auto& c) { return std::to_string(c.rotation.resolution); }},
      {"rotation", "iterations",
       [](auto& c, auto v, auto& ctx) { c.rotation.iterations = to_int(v, ctx, 100, kBig); },
       [](auto& c) { return std::to_string(c.rotation.iterations); }},

      {"evolve", "periods", [](auto& c, auto v, auto& ctx) { c.evolve.periods = to_int(v, ctx, 0, kBig); },
       [](auto& c) { return std::to_string(c.evolve.periods); }},
      {"evolve", "samples_per_period",
       [](auto& c, auto v, auto& ctx) { c.evolve.samples_per_period = to_int(v, ctx, 1, 100000); },
       [](auto& c) { return std::to_string(c.evolve.samples_per_period); }},

      {"floquet", "sigma", [](auto& c, auto v, auto& ctx) { c.floquet.sigma = positive(v, ctx); },
       [](auto& c) { return format_number(c.floquet.sigma); }},
      {"floquet", "prominence",
       [](auto& c, auto v, auto& ctx) {
         c.floquet.prominence = to_double(v, ctx);
         if (c.floquet.prominence < 0.0 || c.floquet.prominence > 1.0) invalid(ctx, "must lie in [0, 1]");
       },
       [](auto& c) { return format_number(c.floquet.prominence); }},
      {"floquet", "grid", [](auto& c, auto v, auto& ctx) { c.floquet.grid = to_int(v, ctx, 8, 10'000'000); },
       [](auto& c) { return std::to_string(c.floquet.grid); }},
      {"floquet", "threshold",
       [](auto& c, auto v, auto& ctx) {
         c.floquet.threshold = to_double(v, ctx);
         if (c.floquet.threshold < 0.0) invalid(ctx, "must be non-negative");
       },
       [](auto& c) { return format_number(c.floquet.threshold); }},

      {"concurrence", "pairs", [](auto& c, auto v, auto& ctx) { c.concurrence.pairs = to_pairs(v, ctx); },
       [](auto& c) { return pairs_text(c.concurrence.pairs); }},
      {"concurrence", "periods",
       [](auto& c, auto v, auto& ctx) { c.concurrence.periods = to_int(v, ctx, 0, kBig); },
       [](auto& c) { return std::to_string(c.concurrence.periods); }},
      {"concurrence", "samples_per_period",
       [](auto& c, auto v, auto& ctx) { c.concurrence.samples_per_period = to_int(v, ctx, 1, 100000); },
       [](auto& c) { return std::to_string(c.concurrence.samples_per_period); }},

      {"ensemble", "samples", [](auto& c, auto v, auto& ctx) { c.ensemble.samples = to_int(v, ctx, 1, kBig); },
       [](auto& c) { return std::to_string(c.ensemble.samples); }},
      {"ensemble", "periods", [](auto& c, auto v, auto& ctx) { c.ensemble.periods = to_int(v, ctx, 0, kBig); },
       [](auto& c) { return std::to_string(c.ensemble.periods); }},
      {"ensemble", "rng_seed",
       [](auto& c, auto v, auto& ctx) {
         c.ensemble.rng_seed = static_cast<std::uint64_t>(to_int(v, ctx, 0, 2'147'483'647));
       },
       [](auto& c) { return std::to_string(c.ensemble.rng_seed); }},

      {"output", "dir",
       [](auto& c, auto v, auto& ctx) {
         if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
         if (v.empty()) invalid(ctx, "must not be empty");
         c.out_dir = std::string(v);
       },
       [](auto& c) { return c.out_dir; }},
  };
  return fields;
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  const auto& fields = schema();
  std::set<std::string> sections;
  for (const auto& f : fields) sections.insert(f.section);

  std::string section = "model";
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    const auto hash = raw.find_first_of("#;");
    std::string_view line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(Errc::SyntaxError,
                    "unterminated section header on line " + std::to_string(line_no));
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!sections.contains(section)) {
        throw Error(Errc::UnknownKey,
                    "unknown section [" + section + "] on line " + std::to_string(line_no));
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::SyntaxError, "expected 'key = value' on line " +
                                         std::to_string(line_no) + ": '" +
                                         std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw Error(Errc::SyntaxError, "missing key on line " + std::to_string(line_no));
    }
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const Field& f) {
      return f.section == section && f.key == key;
    });
    const Context ctx{section + "." + key, line_no};
    if (it == fields.end()) {
      throw Error(Errc::UnknownKey, "unknown key '" + key + "' in [" + section + "] on line " +
                                        std::to_string(line_no));
    }
    if (!seen.insert(ctx.key).second) invalid(ctx, "duplicate key");
    if (value.empty()) invalid(ctx, "missing value");
    it->set(cfg, value, ctx);
  }
  check_consistency(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  if (path.empty()) return ExperimentConfig{};
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void check_consistency(const ExperimentConfig& cfg) {
  const Context packet{"packet.j0", 0};
  if (cfg.packet.j0 > cfg.params.N) invalid(packet, "must not exceed model.N");
  for (const auto& [i, j] : cfg.concurrence.pairs) {
    if (i > cfg.params.N || j > cfg.params.N) {
      invalid({"concurrence.pairs", 0}, "site index exceeds model.N");
    }
  }
  if (!(cfg.rotation.p_max > cfg.rotation.p_min) || cfg.rotation.p_min <= -kPi ||
      cfg.rotation.p_max > kPi) {
    invalid({"rotation.p_min", 0}, "need -pi < p_min < p_max <= pi");
  }
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : schema()) out.emplace_back(f.section + "." + f.key, f.get(cfg));
  return out;
}

void set_entry(ExperimentConfig& cfg, std::string_view dotted_key, std::string_view value) {
  const auto& fields = schema();
  const auto it = std::find_if(fields.begin(), fields.end(), [&](const Field& f) {
    return f.section + "." + f.key == dotted_key;
  });
  if (it == fields.end()) {
    throw Error(Errc::UnknownKey, "unknown key '" + std::string(dotted_key) + "'");
  }
  const Context ctx{std::string(dotted_key), 0};
  value = trim(value);
  if (value.empty()) invalid(ctx, "missing value");
  it->set(cfg, value, ctx);
}

std::string to_text(const ExperimentConfig& cfg) {
  std::string out;
  std::string section;
  for (const auto& f : schema()) {
    if (f.section != section) {
      section = f.section;
      out += "[" + section + "]\n";
    }
    out += f.key + " = " + f.get(cfg) + "\n";
  }
  return out;
}

}  // namespace shearless::config
