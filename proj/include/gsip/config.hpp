#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsip/families.hpp"
#include "gsip/verify.hpp"

namespace gsip {

enum class Command { Generate, Verify, Sweep, Tabulate };

std::string_view command_name(Command command);
std::optional<Command> parse_command(std::string_view name);

struct ProfileConfig {
  std::string kind = "constant";
  std::optional<double> value;  // constant U0
  std::optional<double> c;      // inverse-linear U = c/x
  std::optional<double> scale;  // linear U = s x

  friend bool operator==(const ProfileConfig&, const ProfileConfig&) = default;
};

struct FamilyConfig {
  std::string name;
  std::optional<double> a, alpha, R0, u0, C1, b;

  friend bool operator==(const FamilyConfig&, const FamilyConfig&) = default;
};

struct GridConfig {
  std::optional<double> x_lo, x_hi;
  std::int64_t n = 4000;
  std::optional<bool> auto_box;

  /// auto_box when set, else true unless both edges are given.
  bool use_auto_box() const { return auto_box.value_or(!(x_lo && x_hi)); }
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct SweepConfig {
  bool canonical = false;
  std::optional<std::string> param;
  std::vector<double> values;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Everything a CLI invocation needs, read from the [profile], [family],
/// [grid], [run] and [sweep] sections.
struct RunConfig {
  std::optional<Command> command;
  ProfileConfig profile;
  std::optional<FamilyConfig> family;
  GridConfig grid;
  std::string id = "case";
  std::int64_t k = 4;
  std::string out = ".";
  bool richardson = true;
  std::int64_t ladder_levels = 3;
  Tolerances tolerances;
  SweepConfig sweep;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses a `key = value` document with [section] headers, applies
/// `overrides` ("section.key=value"), then validates. `command`, when
/// given, replaces [run] command. Throws ConfigError with the line and
/// column of syntax errors or the offending field name.
RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {},
                       std::optional<Command> command = std::nullopt);

/// Writes a document parse_config reads back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

/// Field-level checks: required family parameters, n >= 64 for verify and
/// sweep, finite numbers.
void validate(const RunConfig& config);

MassProfile build_profile(const ProfileConfig& config);
FamilySpec build_family_spec(const RunConfig& config);

}  // namespace gsip
