#include "pxp/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "pxp/basis.hpp"
#include "pxp/errors.hpp"
#include "pxp/parallel.hpp"
#include "pxp/states.hpp"
#include "pxp/sweep.hpp"

namespace pxp {

namespace {

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "command", "L",       "state",   "omega_d",    "h",          "n",
      "n_max",   "steps",   "eta",     "fit_window", "output",     "workers",
      "min_height", "min_separation", "plot_script"};
  return keys;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw UsageError("malformed number for " + what + ": '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text, const std::string& what) {
  const std::string t = trim(text);
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw UsageError("malformed integer for " + what + ": '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw UsageError("malformed boolean for " + what + ": '" + t + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(trim(s.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::vector<int> parse_n_values(std::string_view text) {
  std::vector<int> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("malformed n range '" + std::string(text) + "'");
    const int a = parse_int(parts[0], "n");
    const int b = parse_int(parts[1], "n");
    const int s = parts.size() == 3 ? parse_int(parts[2], "n") : 1;
    if (s <= 0) throw UsageError("n range step must be positive");
    if (b < a) throw UsageError("n range stop precedes start");
    for (int v = a; v <= b; v += s) out.push_back(v);
  } else {
    for (const auto& p : split(text, ',')) out.push_back(parse_int(p, "n"));
  }
  for (int v : out) {
    if (v < 0) throw UsageError("stroboscopic steps must be >= 0");
  }
  return out;
}

}  // namespace

ValueRange ValueRange::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return scalar(parse_double(parts[0], "value"));
  if (parts.size() != 3) {
    throw UsageError("malformed range '" + std::string(text) + "' (expected start:stop:step)");
  }
  ValueRange r{parse_double(parts[0], "range start"), parse_double(parts[1], "range stop"),
               parse_double(parts[2], "range step")};
  if (!(r.step > 0.0)) throw UsageError("range step must be positive in '" + std::string(text) + "'");
  if (r.stop < r.start) throw UsageError("range stop precedes start in '" + std::string(text) + "'");
  return r;
}

std::vector<double> ValueRange::values() const {
  if (is_scalar()) return {start};
  return linear_grid(start, stop, step);
}

std::string ValueRange::render() const {
  if (is_scalar()) return format_double(start);
  return format_double(start) + ":" + format_double(stop) + ":" + format_double(step);
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
      throw UsageError("unknown config key '" + key + "'");
    }
    if (out.count(key)) throw UsageError("config key '" + key + "' given twice");
    out[key] = value;
  }
  return out;
}

RunConfig resolve_config(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  const auto get = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  RunConfig c;
  c.workers = default_workers();
  if (auto v = get("command")) {
    c.command = *v;
    const auto& names = known_commands();
    if (std::find(names.begin(), names.end(), c.command) == names.end()) {
      throw UsageError("unknown command '" + c.command + "'");
    }
  }
  if (auto v = get("L")) {
    c.sites = parse_int(*v, "L");
  } else {
    throw UsageError("missing required parameter L (--L)");
  }
  const int cap = c.command == "basis" ? kMaxSites : kMaxDynamicSites;
  if (c.sites < 1 || c.sites > cap) {
    throw UsageError("L must lie in [1, " + std::to_string(cap) + "]");
  }
  if (auto v = get("state")) {
    c.state = *v;
    validate_state_spec(c.state);
  }
  if (auto v = get("omega_d")) c.omega_d = ValueRange::parse(*v);
  if (!(c.omega_d.start > 0.0)) throw UsageError("omega_d must be positive");
  if (auto v = get("h")) {
    c.h = ValueRange::parse(*v);
    if (c.h->start < 0.0) throw UsageError("h must be >= 0");
  }
  if (auto v = get("n")) c.n_values = parse_n_values(*v);
  if (auto v = get("n_max")) {
    c.n_max = parse_int(*v, "n_max");
    if (*c.n_max < 0) throw UsageError("n_max must be >= 0");
  }
  if (c.n_values && c.n_max) throw UsageError("--n and --n-max are mutually exclusive");
  if (auto v = get("steps")) c.steps = parse_int(*v, "steps");
  if (c.steps < 16) throw UsageError("steps must be >= 16");
  if (auto v = get("eta")) c.eta = parse_double(*v, "eta");
  if (!(c.eta > 0.0 && c.eta < 1.0)) throw UsageError("eta must lie in (0, 1)");
  if (auto v = get("fit_window")) {
    const auto parts = split(*v, ':');
    if (parts.size() != 2) throw UsageError("fit_window must be 'h_min:ratio_max'");
    c.fit_window.h_min = parse_double(parts[0], "fit_window");
    c.fit_window.ratio_max = parse_double(parts[1], "fit_window");
    if (!(c.fit_window.ratio_max > 0.0)) throw UsageError("fit_window ratio must be positive");
  }
  if (auto v = get("output")) {
    c.output = *v;
    if (c.output.empty()) throw UsageError("output path is empty");
  }
  if (auto v = get("workers")) c.workers = parse_int(*v, "workers");
  if (c.workers < 1) throw UsageError("workers must be >= 1");
  if (auto v = get("min_height")) c.min_height = parse_double(*v, "min_height");
  if (auto v = get("min_separation")) c.min_separation = parse_int(*v, "min_separation");
  if (c.min_separation < 1) throw UsageError("min_separation must be >= 1");
  if (auto v = get("plot_script")) c.plot_script = parse_bool(*v, "plot_script");
  return c;
}

KeyValues config_key_values(const RunConfig& c) {
  KeyValues kv;
  if (!c.command.empty()) kv["command"] = c.command;
  kv["L"] = std::to_string(c.sites);
  kv["state"] = c.state;
  kv["omega_d"] = c.omega_d.render();
  if (c.h) kv["h"] = c.h->render();
  if (c.n_values) {
    std::string s;
    for (std::size_t i = 0; i < c.n_values->size(); ++i) {
      if (i) s += ",";
      s += std::to_string((*c.n_values)[i]);
    }
    kv["n"] = s;
  }
  if (c.n_max) kv["n_max"] = std::to_string(*c.n_max);
  kv["steps"] = std::to_string(c.steps);
  kv["eta"] = format_double(c.eta);
  kv["fit_window"] = format_double(c.fit_window.h_min) + ":" + format_double(c.fit_window.ratio_max);
  kv["output"] = c.output;
  kv["workers"] = std::to_string(c.workers);
  kv["min_height"] = format_double(c.min_height);
  kv["min_separation"] = std::to_string(c.min_separation);
  kv["plot_script"] = c.plot_script ? "true" : "false";
  return kv;
}

std::string render_config(const RunConfig& c) {
  std::string out;
  for (const auto& key : known_keys()) {
    const auto kv = config_key_values(c);
    auto it = kv.find(key);
    if (it != kv.end()) out += key + " = " + it->second + "\n";
  }
  return out;
}

RunConfig parse_config_text(std::string_view text) {
  return resolve_config(parse_key_values(text));
}

RunConfig parse_config(int argc, const char* const* argv) {
  CLI::App app{"Periodically driven PXP chain: Floquet spectra, revivals and thermalization"};
  // --h is the drive amplitude, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(0, 1);  // a config file may name the command
  app.fallthrough();
  std::vector<CLI::App*> commands;
  const std::map<std::string, std::string> blurbs{
      {"spectrum", "Floquet quasi-energies and overlaps with the initial state"},
      {"fidelity-sweep", "Stroboscopic fidelity over an (h, omega_d) grid"},
      {"nrev-fit", "Revival index from the Floquet spectrum and its J0 fit"},
      {"thermalize", "Single-site Bloch vectors and trace distances over time"},
      {"peaks", "Fidelity crests along h for each n"},
      {"basis", "Dump the blockaded basis"}};
  for (const auto& name : known_commands()) commands.push_back(app.add_subcommand(name, blurbs.at(name)));

  // flag name -> config key
  const std::vector<std::pair<std::string, std::string>> flags{
      {"--L", "L"},
      {"--state", "state"},
      {"--omega-d", "omega_d"},
      {"--h", "h"},
      {"--n", "n"},
      {"--n-max", "n_max"},
      {"--steps", "steps"},
      {"--eta", "eta"},
      {"--fit-window", "fit_window"},
      {"--output,-o", "output"},
      {"--workers", "workers"},
      {"--min-height", "min_height"},
      {"--min-separation", "min_separation"}};
  std::map<std::string, std::string> given;
  std::map<std::string, CLI::Option*> options;
  for (const auto& [flag, key] : flags) {
    options[key] = app.add_option(flag, given[key], "config key '" + key + "'");
  }
  bool plot = false;
  auto* plot_flag = app.add_flag("--plot-script", plot, "Also write a gnuplot script");
  std::string config_path;
  app.add_option("--config", config_path, "Flat key = value configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  KeyValues kv;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("cannot read config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    kv = parse_key_values(buf.str());
  }
  for (const auto& [key, opt] : options) {
    if (opt->count() > 0) kv[key] = given[key];
  }
  if (plot_flag->count() > 0) kv["plot_script"] = "true";
  // A flag given for n overrides n_max from a file and vice versa.
  if (options["n"]->count() > 0 && options["n_max"]->count() == 0) kv.erase("n_max");
  if (options["n_max"]->count() > 0 && options["n"]->count() == 0) kv.erase("n");
  for (auto* cmd : commands) {
    if (cmd->parsed()) kv["command"] = cmd->get_name();
  }
  if (!kv.contains("command")) throw UsageError("a subcommand is required");
  return resolve_config(kv);
}

std::vector<int> effective_n_values(const RunConfig& config) {
  if (config.n_values) return *config.n_values;
  std::vector<int> out;
  const int top = config.n_max.value_or(15);
  for (int n = 1; n <= top; ++n) out.push_back(n);
  return out;
}

}  // namespace pxp
