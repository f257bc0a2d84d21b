#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsip/families.hpp"
#include "gsip/grid.hpp"

namespace gsip {

/// Pass thresholds. Overlap entries are deficits: overlap > 1 - value.
struct Tolerances {
  double spectrum_rel = 1e-3;
  double ground_overlap = 1e-6;
  double shape_invariance = 1e-9;
  double annihilation = 1e-5;
  double ladder_overlap = 1e-3;
  double ladder_rayleigh = 1e-3;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct LevelRow {
  std::size_t n = 0;
  double e_analytic = 0.0;
  double e_numeric = 0.0;
  double abs_error = 0.0;
  /// |dE| / max(|E_n|, E_1 - E_0).
  double rel_error = 0.0;
};

struct LadderRow {
  std::size_t n = 0;
  double overlap = 0.0;
  double rayleigh = 0.0;
  double rel_error = 0.0;
};

struct Criterion {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  /// "<" or ">": how value must compare to threshold.
  std::string comparison;
  bool pass = false;
};

/// Sampled states kept for CSV export.
struct CaseStates {
  Vector<double> x;
  Vector<double> psi_analytic;
  std::vector<Vector<double>> psi_numeric;
};

struct VerificationReport {
  std::string id;
  FamilySpec spec;
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::ptrdiff_t nodes = 0;
  double spacing = 0.0;
  bool richardson = true;

  bool normalizable = false;
  std::string normalizability_diagnostic;
  bool finite_spectrum = false;
  std::size_t declared_bound_levels = 0;
  std::vector<LevelRow> levels;
  double shape_invariance_residual = 0.0;
  double ground_overlap = 0.0;
  double ground_annihilation = 0.0;
  std::vector<LadderRow> ladder;
  bool node_counts_ok = false;
  std::vector<Criterion> criteria;
  bool pass = false;
  /// Set when the case threw; the other fields are then partial.
  std::optional<std::string> error;
  std::optional<CaseStates> states;
};

struct RunOptions {
  std::size_t levels = 4;
  std::size_t ladder_levels = 3;
  bool richardson = true;
  Tolerances tolerances;
  bool keep_states = false;
};

/// Grid on default_box(spec, levels) with `nodes` interior nodes.
Grid<double> auto_grid(const FamilySpec& spec, std::size_t levels, std::ptrdiff_t nodes);

/// Cross-checks one family instance against the eigensolver. Throws
/// ParameterError / NormalizabilityError before any numerics when the spec
/// is rejected.
VerificationReport run_case(const std::string& id, const FamilySpec& spec, const Grid<double>& grid,
                            const RunOptions& options = {});

struct SweepItem {
  std::string id;
  FamilySpec spec;
  /// Explicit grid; the sweep policy builds one otherwise.
  std::optional<Grid<double>> grid;
};

struct GridPolicy {
  std::ptrdiff_t nodes = 4000;
  RunOptions options;
  /// Worker count; 0 reads GSIP_THREADS and falls back to 1.
  unsigned threads = 0;
};

/// One report per item in input order. A throwing case yields a failed
/// report carrying the error message.
std::vector<VerificationReport> sweep(const std::vector<SweepItem>& items, const GridPolicy& policy);

nlohmann::json to_json(const VerificationReport& report);
/// {"schema": "gsip-report/1", "reports": [...]}
nlohmann::json sweep_to_json(const std::vector<VerificationReport>& reports);

/// x, psi_analytic, psi_numeric_0..k-1 with 17 significant digits.
std::string states_csv(const CaseStates& states);

/// Worker count from GSIP_THREADS (>= 1).
unsigned threads_from_environment();

}  // namespace gsip
