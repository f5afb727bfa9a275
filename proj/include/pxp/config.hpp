#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pxp/fit.hpp"

namespace pxp {

/// Dense propagators are stored in full, which bounds the chain length for
/// every command except `basis`.
inline constexpr int kMaxDynamicSites = 18;

/// A scalar ("5") or an inclusive range ("start:stop:step").
struct ValueRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;  // 0 for a scalar

  static ValueRange scalar(double v) { return {v, v, 0.0}; }
  /// Throws UsageError on malformed text, non-positive step or stop < start.
  static ValueRange parse(std::string_view text);

  bool is_scalar() const { return step == 0.0; }
  std::vector<double> values() const;
  std::string render() const;
  bool operator==(const ValueRange&) const = default;
};

/// Fully resolved run configuration. Fields whose default depends on the
/// subcommand stay empty here and are filled in when the command runs.
struct RunConfig {
  std::string command;
  int sites = 0;
  std::string state = "neel";
  ValueRange omega_d = ValueRange::scalar(5.0);
  std::optional<ValueRange> h;
  std::optional<std::vector<int>> n_values;
  std::optional<int> n_max;
  int steps = 512;
  double eta = 0.25;
  FitWindow fit_window;
  std::string output = ".";
  int workers = 1;
  double min_height = 0.1;
  int min_separation = 2;
  bool plot_script = false;

  bool operator==(const RunConfig&) const = default;
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names{"spectrum", "fidelity-sweep", "nrev-fit",
                                              "thermalize", "peaks", "basis"};
  return names;
}

using KeyValues = std::map<std::string, std::string>;

/// Flat "key = value" lines; '#' starts a comment; blank lines ignored.
KeyValues parse_key_values(std::string_view text);

/// Validates keys and values and applies defaults. Throws UsageError.
RunConfig resolve_config(const KeyValues& values);

/// Inverse of parse_config_text: every set field as a "key = value" line.
std::string render_config(const RunConfig& config);

KeyValues config_key_values(const RunConfig& config);

RunConfig parse_config_text(std::string_view text);

/// Thrown by parse_config when --help is requested; carries the help text.
struct HelpRequested {
  std::string text;
};

/// Command line: `<command> [--config FILE] [--L ...] ...`. Values from the
/// config file are overridden by flags given on the command line.
RunConfig parse_config(int argc, const char* const* argv);

/// n values a command should record: explicit list, 1..n_max, or 1..15.
std::vector<int> effective_n_values(const RunConfig& config);

}  // namespace pxp
