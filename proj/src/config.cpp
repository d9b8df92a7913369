#include "ptssh/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ptssh/csv.hpp"
#include "ptssh/errors.hpp"

namespace ptssh {

namespace {

constexpr std::array<std::string_view, 6> kCommandNames = {
    "spectrum-sweep", "ep-find", "ep-sweep", "bulk-phase", "ansatz-profile", "wavefunction-compare",
};

constexpr std::array<std::string_view, 22> kKeys = {
    "command",   "M",          "w",          "u",         "v",          "profile",
    "profile_file", "seed",    "gamma",      "gamma_min", "gamma_max",  "gamma_points",
    "refine_points", "refine_lo", "refine_hi", "M_list",  "u_list",     "tol",
    "imag_threshold", "Nk",    "state",      "output",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw ConfigError("key '" + std::string(key) + "': cannot parse '" + std::string(value) +
                    "' as " + std::string(want));
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double x = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(x)) {
    bad_value(key, text, "a finite real number");
  }
  return x;
}

template <class Int>
Int parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  Int x{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc{} || end != text.data() + text.size()) bad_value(key, text, "an integer");
  return x;
}

std::vector<std::string_view> split(std::string_view text) {
  std::vector<std::string_view> parts;
  text = trim(text);
  if (text.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::vector<int> parse_sites_list(std::string_view key, std::string_view text) {
  std::vector<int> out;
  for (std::string_view item : split(text)) {
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      int lo = parse_integer<int>(key, item.substr(0, dots));
      const int hi = parse_integer<int>(key, item.substr(dots + 2));
      if (lo % 2 != 0) ++lo;
      for (int m = lo; m <= hi; m += 2) out.push_back(m);
    } else {
      out.push_back(parse_integer<int>(key, item));
    }
  }
  return out;
}

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + csv::format_shortest(xs[i]);
  return s;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

void require_sites(int m, std::string_view key) {
  require(m >= 4 && m % 2 == 0,
          std::string(key) + " must be an even site count >= 4, got " + std::to_string(m));
}

}  // namespace

std::string_view to_string(Command c) { return kCommandNames[static_cast<std::size_t>(c)]; }

Command parse_command(std::string_view name) {
  for (std::size_t i = 0; i < kCommandNames.size(); ++i) {
    if (kCommandNames[i] == name) return static_cast<Command>(i);
  }
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

std::span<const std::string_view> command_names() { return kCommandNames; }

std::span<const std::string_view> config_keys() { return kKeys; }

double ExperimentConfig::ratio() const {
  if (u) return *u;
  if (v) return w / *v;
  throw ConfigError("either u or v must be set");
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (key == "command") {
    c.command = parse_command(value);
  } else if (key == "M") {
    c.M = parse_integer<int>(key, value);
  } else if (key == "w") {
    c.w = parse_double(key, value);
  } else if (key == "u") {
    c.u = parse_double(key, value);
  } else if (key == "v") {
    c.v = parse_double(key, value);
  } else if (key == "profile") {
    try {
      c.profile = parse_profile_kind(value);
    } catch (const ConstructionError& e) {
      throw ConfigError("key 'profile': " + std::string(e.what()));
    }
  } else if (key == "profile_file") {
    c.profile_file = std::string(value);
  } else if (key == "seed") {
    c.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "gamma") {
    c.gamma = parse_double(key, value);
  } else if (key == "gamma_min") {
    c.gamma_min = parse_double(key, value);
  } else if (key == "gamma_max") {
    c.gamma_max = parse_double(key, value);
  } else if (key == "gamma_points") {
    c.gamma_points = parse_integer<int>(key, value);
  } else if (key == "refine_points") {
    c.refine_points = parse_integer<int>(key, value);
  } else if (key == "refine_lo") {
    c.refine_lo = parse_double(key, value);
  } else if (key == "refine_hi") {
    c.refine_hi = parse_double(key, value);
  } else if (key == "M_list") {
    c.M_list = parse_sites_list(key, value);
  } else if (key == "u_list") {
    c.u_list.clear();
    for (std::string_view item : split(value)) c.u_list.push_back(parse_double(key, item));
  } else if (key == "tol") {
    c.tol = parse_double(key, value);
  } else if (key == "imag_threshold") {
    c.imag_threshold = parse_double(key, value);
  } else if (key == "Nk") {
    c.Nk = parse_integer<int>(key, value);
  } else if (key == "state") {
    c.state = std::string(value);
  } else if (key == "output") {
    c.output = std::string(value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::istream& in, std::string_view source, ExperimentConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    try {
      apply_setting(base, trim(text.substr(0, eq)), text.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return base;
}

ExperimentConfig parse_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path, std::move(base));
}

std::string emit_config(const ExperimentConfig& c, bool include_output) {
  std::ostringstream out;
  auto line = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto number = [](double x) { return csv::format_shortest(x); };
  line("command", std::string(to_string(c.command)));
  line("M", std::to_string(c.M));
  line("w", number(c.w));
  if (c.u) line("u", number(*c.u));
  if (c.v) line("v", number(*c.v));
  line("profile", std::string(to_string(c.profile)));
  if (!c.profile_file.empty()) line("profile_file", c.profile_file);
  line("seed", std::to_string(c.seed));
  if (c.gamma) line("gamma", number(*c.gamma));
  line("gamma_min", number(c.gamma_min));
  line("gamma_max", number(c.gamma_max));
  line("gamma_points", std::to_string(c.gamma_points));
  line("refine_points", std::to_string(c.refine_points));
  line("refine_lo", number(c.refine_lo));
  line("refine_hi", number(c.refine_hi));
  line("M_list", join(c.M_list));
  line("u_list", join(c.u_list));
  line("tol", number(c.tol));
  line("imag_threshold", number(c.imag_threshold));
  line("Nk", std::to_string(c.Nk));
  line("state", c.state);
  if (include_output && !c.output.empty()) line("output", c.output);
  return out.str();
}

void validate(const ExperimentConfig& c) {
  require(c.w > 0.0, "w must be positive");
  require(c.tol > 0.0, "tol must be positive");
  require(c.imag_threshold > 0.0, "imag_threshold must be positive");
  if (c.u) require(*c.u > 0.0, "u must be positive");
  if (c.v) require(*c.v > 0.0, "v must be positive");
  if (c.u && c.v) {
    require(std::abs(c.w / *c.v - *c.u) <= 1e-12 * *c.u, "u and v given but u != w/v");
  }
  if (c.profile == ProfileKind::custom) {
    require(!c.profile_file.empty(), "profile = custom needs profile_file");
    require(std::filesystem::exists(c.profile_file),
            "profile_file '" + c.profile_file + "' does not exist");
  }

  auto require_grid = [&] {
    require(c.gamma_points >= 0, "gamma_points must be >= 0");
    require(c.gamma_min >= 0.0, "gamma_min must be >= 0");
    require(c.gamma_min <= c.gamma_max, "gamma_min must not exceed gamma_max");
  };
  auto require_chain = [&](bool topological) {
    require_sites(c.M, "M");
    require(c.u || c.v, "either u or v must be set");
    if (topological) {
      require(c.ratio() > 1.0, "u = w/v must exceed 1 (edge states exist only for u > 1)");
    }
  };

  switch (c.command) {
    case Command::spectrum_sweep:
      require_chain(false);
      require_grid();
      require(c.refine_points >= 0, "refine_points must be >= 0");
      if (c.refine_points > 0) {
        require(c.ratio() > 1.0, "refine window needs u > 1 (analytic critical point)");
        require(0.0 < c.refine_lo && c.refine_lo <= c.refine_hi,
                "refine window must satisfy 0 < refine_lo <= refine_hi");
      }
      break;
    case Command::ep_find:
      require_chain(true);
      break;
    case Command::ep_sweep:
      require(c.profile != ProfileKind::custom, "ep-sweep does not support custom profiles");
      for (int m : c.M_list) require_sites(m, "M_list entry");
      for (double u : c.u_list) require(u > 1.0, "u_list entries must exceed 1");
      break;
    case Command::bulk_phase:
      require_grid();
      require(c.Nk >= 64, "Nk must be >= 64");
      for (double u : c.u_list) require(u > 0.0, "u_list entries must be positive");
      break;
    case Command::ansatz_profile:
      require_chain(true);
      break;
    case Command::wavefunction_compare:
      require_chain(true);
      require(c.gamma.has_value(), "wavefunction-compare needs gamma");
      require(*c.gamma >= 0.0, "gamma must be >= 0");
      require(c.state == "plus" || c.state == "minus", "state must be 'plus' or 'minus'");
      break;
  }
}

}  // namespace ptssh
