#include "gsip/commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "gsip/errors.hpp"
#include "gsip/verify.hpp"

namespace gsip {

namespace {

namespace fs = std::filesystem;

std::string format17(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string format12(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

std::string file_safe(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.' || c == '=';
    if (!ok) c = '_';
  }
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path.string() + "' for writing");
  file << content;
  if (!file) throw Error("failed writing '" + path.string() + "'");
}

Grid<double> configured_grid(const RunConfig& config, const FamilySpec& spec, std::size_t levels) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(config.grid.n);
  if (config.grid.use_auto_box()) return auto_grid(spec, levels, n);
  return Grid<double>(*config.grid.x_lo, *config.grid.x_hi, n);
}

RunOptions options_of(const RunConfig& config) {
  RunOptions options;
  options.levels = static_cast<std::size_t>(config.k);
  options.ladder_levels = static_cast<std::size_t>(config.ladder_levels);
  options.richardson = config.richardson;
  options.tolerances = config.tolerances;
  options.keep_states = true;
  return options;
}

// E_0..E_k, cut at the first level the family no longer binds.
std::vector<double> bound_prefix(const FamilySpec& spec, std::size_t k) {
  std::vector<double> energies;
  const std::size_t count = bound_level_count(spec, k + 1);
  for (std::size_t n = 0; n < count; ++n) energies.push_back(spectrum_of(spec, n));
  return energies;
}

void set_parameter(FamilySpec& spec, const std::string& name, double value) {
  if (name == "a") spec.a = value;
  else if (name == "alpha") spec.alpha = value;
  else if (name == "R0") spec.R0 = value;
  else if (name == "u0") spec.u0 = value;
  else if (name == "C1") spec.C1 = value;
  else if (name == "b") spec.b = value;
  else throw ConfigError("unknown sweep parameter '" + name + "'", 0, 0, "param");
}

void summarize(const VerificationReport& r, std::ostream& log) {
  if (r.error) {
    log << r.id << ": ERROR " << *r.error << '\n';
    return;
  }
  log << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.levels.size() << " levels";
  for (const auto& c : r.criteria) {
    if (!c.pass) log << "; " << c.name << " = " << format12(c.value) << " not " << c.comparison << ' ' << c.threshold;
  }
  log << ")\n";
}

void write_reports(const std::vector<VerificationReport>& reports, const fs::path& out_dir) {
  write_file(out_dir / "report.json", sweep_to_json(reports).dump(2) + "\n");
  for (const auto& r : reports) {
    if (r.states) write_file(out_dir / ("case-" + file_safe(r.id) + ".csv"), states_csv(*r.states));
  }
}

}  // namespace

int cmd_generate(const RunConfig& config, const fs::path& out_dir, std::ostream& log) {
  const FamilySpec spec = build_family_spec(config);
  validate(spec);
  const std::size_t k = static_cast<std::size_t>(config.k);
  const Grid<double> grid = configured_grid(config, spec, k + 1);
  const Superpotential w = make_superpotential(spec);
  const GridFunction<double> psi0 = ground_state_on_grid(w, spec.a, grid);

  std::string csv = "x,m,U,Y,W,V1,V2,psi0_analytic\n";
  for (std::ptrdiff_t i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i);
    const double row[] = {x,
                          eval_mass(spec.profile, x),
                          spec.profile.u(x),
                          eval_Y(spec.profile, x),
                          superpotential_of(spec, x),
                          potential_of(spec, x),
                          V2_from_W(w, spec.a, x),
                          psi0.values[i]};
    for (std::size_t j = 0; j < std::size(row); ++j) csv += (j ? "," : "") + format17(row[j]);
    csv += '\n';
  }
  const std::string stem = "case-" + file_safe(config.id);
  write_file(out_dir / (stem + ".csv"), csv);

  const std::vector<double> energies = bound_prefix(spec, k);
  nlohmann::json sidecar;
  sidecar["schema"] = "gsip-spectrum/1";
  sidecar["id"] = config.id;
  sidecar["family"] = std::string(family_name(spec.family));
  sidecar["k"] = k;
  sidecar["spectrum"] = energies;
  sidecar["finite_spectrum"] = has_finite_spectrum(spec);
  sidecar["unbound_from"] = energies.size() <= k ? nlohmann::json(energies.size()) : nlohmann::json(nullptr);
  write_file(out_dir / (stem + ".spectrum.json"), sidecar.dump(2) + "\n");

  log << "wrote " << (out_dir / (stem + ".csv")).string() << " (" << grid.size() << " rows)\n";
  return kExitPass;
}

int cmd_tabulate(const RunConfig& config, std::ostream& out) {
  const FamilySpec spec = build_family_spec(config);
  validate(spec);
  const std::size_t k = static_cast<std::size_t>(config.k);
  const std::vector<double> energies = bound_prefix(spec, k);
  out << "# " << family_name(spec.family) << ", profile " << spec.profile.name() << '\n';
  out << "n\tE_n\tdE_n\n";
  for (std::size_t n = 0; n < energies.size(); ++n) {
    out << n << '\t' << format12(energies[n]) << '\t' << (n ? format12(energies[n] - energies[n - 1]) : "-") << '\n';
  }
  if (energies.size() <= k) out << "# levels n >= " << energies.size() << " are not bound\n";
  return kExitPass;
}

int cmd_verify(const RunConfig& config, const fs::path& out_dir, std::ostream& log) {
  const FamilySpec spec = build_family_spec(config);
  const RunOptions options = options_of(config);
  const Grid<double> grid = configured_grid(config, spec, options.levels);
  const VerificationReport report = run_case(config.id, spec, grid, options);
  write_reports({report}, out_dir);
  summarize(report, log);
  return report.pass ? kExitPass : kExitVerificationFailure;
}

int cmd_sweep(const RunConfig& config, const fs::path& out_dir, std::ostream& log) {
  std::vector<SweepItem> items;
  if (config.sweep.canonical) {
    for (const auto& c : canonical_cases()) items.push_back({c.id, c.spec, std::nullopt});
  }
  if (config.family) {
    const FamilySpec base = build_family_spec(config);
    std::optional<Grid<double>> grid;
    if (!config.grid.use_auto_box()) {
      grid = Grid<double>(*config.grid.x_lo, *config.grid.x_hi, static_cast<std::ptrdiff_t>(config.grid.n));
    }
    if (config.sweep.param) {
      for (double v : config.sweep.values) {
        FamilySpec spec = base;
        set_parameter(spec, *config.sweep.param, v);
        items.push_back({config.id + "-" + *config.sweep.param + "=" + format12(v), spec, grid});
      }
    } else {
      items.push_back({config.id, base, grid});
    }
  }

  GridPolicy policy;
  policy.nodes = static_cast<std::ptrdiff_t>(config.grid.n);
  policy.options = options_of(config);
  const std::vector<VerificationReport> reports = sweep(items, policy);
  write_reports(reports, out_dir);
  bool all_pass = true;
  for (const auto& r : reports) {
    summarize(r, log);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitPass : kExitVerificationFailure;
}

int dispatch(const RunConfig& config, const fs::path& out_dir, std::ostream& out) {
  switch (config.command.value_or(Command::Verify)) {
    case Command::Generate: return cmd_generate(config, out_dir, out);
    case Command::Verify: return cmd_verify(config, out_dir, out);
    case Command::Sweep: return cmd_sweep(config, out_dir, out);
    case Command::Tabulate: return cmd_tabulate(config, out);
  }
  return kExitConfigError;
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error) || dynamic_cast<const ParameterError*>(&error) ||
      dynamic_cast<const NormalizabilityError*>(&error) || dynamic_cast<const DomainError*>(&error)) {
    return kExitConfigError;
  }
  return kExitNumericalError;
}

}  // namespace gsip
