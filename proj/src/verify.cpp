#include "gsip/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "gsip/errors.hpp"
#include "gsip/tridiagonal.hpp"

namespace gsip {

namespace {

constexpr std::ptrdiff_t kResidualNodes = 1000;

Criterion below(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, "<", value < threshold};
}

Criterion above(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, ">", value > threshold};
}

std::string format17(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

}  // namespace

Grid<double> auto_grid(const FamilySpec& spec, std::size_t levels, std::ptrdiff_t nodes) {
  const Interval box = default_box(spec, levels);
  return Grid<double>(box.lo, box.hi, nodes);
}

VerificationReport run_case(const std::string& id, const FamilySpec& spec, const Grid<double>& grid,
                            const RunOptions& options) {
  validate(spec);
  const Superpotential w = make_superpotential(spec);
  const NormalizabilityResult gate = check_normalizability(w, spec.a);
  if (!gate.normalizable) {
    throw NormalizabilityError(id + ": ground state not normalizable: " + gate.diagnostic);
  }

  VerificationReport report;
  report.id = id;
  report.spec = spec;
  report.x_lo = grid.x_lo();
  report.x_hi = grid.x_hi();
  report.nodes = grid.size();
  report.spacing = grid.spacing();
  report.richardson = options.richardson;
  report.normalizable = true;
  report.normalizability_diagnostic = gate.diagnostic;
  report.finite_spectrum = has_finite_spectrum(spec);

  const Tolerances& tol = options.tolerances;
  const std::size_t k = std::max<std::size_t>(options.levels, 1);
  report.declared_bound_levels = bound_level_count(spec, k);

  report.shape_invariance_residual =
      shape_invariance_residual(w, spec.a, Grid<double>(grid.x_lo(), grid.x_hi(), kResidualNodes));

  const MassProfile& profile = spec.profile;
  const auto mass = [&](double x) { return eval_mass(profile, x); };
  const auto potential = [&](double x) { return potential_of(spec, x); };
  const auto op = discretize(mass, potential, grid);
  const auto pairs = lowest_eigenpairs(op, static_cast<std::ptrdiff_t>(k));
  Vector<double> energies(static_cast<std::ptrdiff_t>(k));
  for (std::size_t j = 0; j < k; ++j) energies[j] = pairs[j].energy;
  if (options.richardson) {
    const auto fine = lowest_eigenvalues(discretize(mass, potential, grid.refined()), static_cast<std::ptrdiff_t>(k));
    energies = (4.0 * fine - energies) / 3.0;
  }

  report.node_counts_ok = true;
  for (std::size_t j = 0; j < k; ++j) {
    if (count_nodes(pairs[j].state) != static_cast<std::ptrdiff_t>(j)) report.node_counts_ok = false;
  }

  // Box continuum: states above the lower edge potential are box artifacts.
  const double edge_potential = std::min(potential(grid.node(0)), potential(grid.node(grid.size() - 1)));
  const double gap = report.declared_bound_levels > 1 ? spectrum_of(spec, 1) : 1.0;
  for (std::size_t n = 0; n < report.declared_bound_levels; ++n) {
    if (!(energies[n] < edge_potential)) break;
    LevelRow row;
    row.n = n;
    row.e_analytic = spectrum_of(spec, n);
    row.e_numeric = energies[n];
    row.abs_error = std::abs(row.e_numeric - row.e_analytic);
    row.rel_error = row.abs_error / std::max(std::abs(row.e_analytic), gap);
    report.levels.push_back(row);
  }

  const GridFunction<double> psi0 = ground_state_on_grid(w, spec.a, grid);
  report.ground_overlap = overlap(psi0, pairs[0].state);
  report.ground_annihilation = norm(apply_A(w, spec.a, psi0)) / norm(psi0);

  const std::size_t ladder_top =
      std::min(options.ladder_levels, report.levels.empty() ? std::size_t{0} : report.levels.size() - 1);
  for (std::size_t n = 1; n <= ladder_top; ++n) {
    const GridFunction<double> psi = ladder_excited_state(w, spec.a, n, grid);
    LadderRow row;
    row.n = n;
    row.overlap = overlap(psi, pairs[n].state);
    row.rayleigh = op.rayleigh_quotient(psi.values);
    const double exact = spectrum_of(spec, n);
    row.rel_error = std::abs(row.rayleigh - exact) / std::max(std::abs(exact), gap);
    report.ladder.push_back(row);
  }

  double worst_spectrum = 0.0;
  for (const auto& row : report.levels) worst_spectrum = std::max(worst_spectrum, row.rel_error);
  report.criteria.push_back(above("bound_levels_verified", double(report.levels.size()), 0.0));
  report.criteria.push_back(below("spectrum_rel_error", worst_spectrum, tol.spectrum_rel));
  report.criteria.push_back(above("ground_overlap", report.ground_overlap, 1.0 - tol.ground_overlap));
  report.criteria.push_back(below("ground_annihilation", report.ground_annihilation, tol.annihilation));
  report.criteria.push_back(below("shape_invariance_residual", report.shape_invariance_residual, tol.shape_invariance));
  if (!report.ladder.empty()) {
    double worst_overlap = 1.0;
    double worst_rayleigh = 0.0;
    for (const auto& row : report.ladder) {
      worst_overlap = std::min(worst_overlap, row.overlap);
      worst_rayleigh = std::max(worst_rayleigh, row.rel_error);
    }
    report.criteria.push_back(above("ladder_overlap", worst_overlap, 1.0 - tol.ladder_overlap));
    report.criteria.push_back(below("ladder_rayleigh_rel_error", worst_rayleigh, tol.ladder_rayleigh));
  }
  report.criteria.push_back(above("node_counts", report.node_counts_ok ? 1.0 : 0.0, 0.5));
  report.pass = std::all_of(report.criteria.begin(), report.criteria.end(), [](const Criterion& c) { return c.pass; });

  if (options.keep_states) {
    CaseStates states;
    states.x = grid.nodes();
    states.psi_analytic = psi0.values;
    for (const auto& p : pairs) states.psi_numeric.push_back(p.state.values);
    report.states = std::move(states);
  }
  return report;
}

unsigned threads_from_environment() {
  if (const char* env = std::getenv("GSIP_THREADS")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value >= 1) return static_cast<unsigned>(value);
  }
  return 1;
}

std::vector<VerificationReport> sweep(const std::vector<SweepItem>& items, const GridPolicy& policy) {
  std::vector<VerificationReport> reports(items.size());
  auto run_one = [&](std::size_t i) {
    const SweepItem& item = items[i];
    try {
      const Grid<double> grid =
          item.grid ? *item.grid : auto_grid(item.spec, policy.options.levels, policy.nodes);
      reports[i] = run_case(item.id, item.spec, grid, policy.options);
    } catch (const std::exception& e) {
      VerificationReport failed;
      failed.id = item.id;
      failed.spec = item.spec;
      failed.error = e.what();
      failed.pass = false;
      reports[i] = std::move(failed);
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(policy.threads ? policy.threads : threads_from_environment(),
                                                           static_cast<unsigned>(std::max<std::size_t>(items.size(), 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) run_one(i);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < items.size(); i = next++) run_one(i);
    });
  }
  for (auto& worker : workers) worker.join();
  return reports;
}

nlohmann::json to_json(const VerificationReport& r) {
  using nlohmann::json;
  const FamilySpec& s = r.spec;
  json j;
  j["id"] = r.id;
  j["family"] = std::string(family_name(s.family));
  j["parameters"] = {{"a", s.a}, {"alpha", s.alpha}, {"R0", s.R0}, {"u0", s.u0}, {"C1", s.C1}, {"b", s.b}};
  j["profile"] = {{"kind", std::string(s.profile.name())}, {"parameter", s.profile.parameter()}};
  j["grid"] = {{"x_lo", r.x_lo}, {"x_hi", r.x_hi}, {"n", r.nodes}, {"h", r.spacing}, {"richardson", r.richardson}};
  j["normalizable"] = r.normalizable;
  j["normalizability_diagnostic"] = r.normalizability_diagnostic;
  j["finite_spectrum"] = r.finite_spectrum;
  j["declared_bound_levels"] = r.declared_bound_levels;
  j["levels"] = json::array();
  for (const auto& row : r.levels) {
    j["levels"].push_back({{"n", row.n},
                           {"E_analytic", row.e_analytic},
                           {"E_numeric", row.e_numeric},
                           {"abs_error", row.abs_error},
                           {"rel_error", row.rel_error}});
  }
  j["shape_invariance_residual"] = r.shape_invariance_residual;
  j["ground_overlap"] = r.ground_overlap;
  j["ground_annihilation"] = r.ground_annihilation;
  j["ladder"] = json::array();
  for (const auto& row : r.ladder) {
    j["ladder"].push_back(
        {{"n", row.n}, {"overlap", row.overlap}, {"rayleigh", row.rayleigh}, {"rel_error", row.rel_error}});
  }
  j["node_counts_ok"] = r.node_counts_ok;
  j["criteria"] = json::array();
  for (const auto& c : r.criteria) {
    j["criteria"].push_back(
        {{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"comparison", c.comparison}, {"pass", c.pass}});
  }
  j["pass"] = r.pass;
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  return j;
}

nlohmann::json sweep_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json j;
  j["schema"] = "gsip-report/1";
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) j["reports"].push_back(to_json(r));
  return j;
}

std::string states_csv(const CaseStates& states) {
  std::ostringstream out;
  out << "x,psi_analytic";
  for (std::size_t k = 0; k < states.psi_numeric.size(); ++k) out << ",psi_numeric_" << k;
  out << '\n';
  for (std::ptrdiff_t i = 0; i < states.x.size(); ++i) {
    out << format17(states.x[i]) << ',' << format17(states.psi_analytic[i]);
    for (const auto& v : states.psi_numeric) out << ',' << format17(v[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace gsip
