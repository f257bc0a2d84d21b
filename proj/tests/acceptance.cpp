// Acceptance run: prints one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail N]...
//
// Exit status is non-zero when a criterion fails that was not listed with
// --expect-fail, or when a listed one unexpectedly passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "gsip/errors.hpp"
#include "gsip/families.hpp"
#include "gsip/tridiagonal.hpp"
#include "gsip/verify.hpp"

using namespace gsip;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, v);
  return buffer;
}

MassProfile unit_mass() { return MassProfile::constant(1.0 / std::sqrt(2.0)); }

FamilySpec harmonic() {
  FamilySpec s;
  s.family = Family::OscShift;
  s.R0 = 2.0;
  s.a = 0.0;
  s.profile = unit_mass();
  return s;
}

FamilySpec scarf1() {
  FamilySpec s;
  s.family = Family::Trigonometric;
  s.alpha = 1.0;
  s.a = -3.0;
  s.b = 0.5;
  s.profile = unit_mass();
  return s;
}

FamilySpec scarf2() {
  FamilySpec s;
  s.family = Family::Hyperbolic;
  s.alpha = 1.0;
  s.a = 3.0;
  s.b = 0.5;
  s.profile = unit_mass();
  return s;
}

// Node-count results from every eigensolve below, consumed by criterion 11.
std::vector<std::pair<std::string, bool>> g_node_checks;

VerificationReport verified(const std::string& id, const FamilySpec& spec, const Grid<double>& grid,
                            std::size_t levels, std::size_t ladder = 3) {
  RunOptions options;
  options.levels = levels;
  options.ladder_levels = ladder;
  VerificationReport r = run_case(id, spec, grid, options);
  g_node_checks.emplace_back(id, r.node_counts_ok);
  return r;
}

double worst_rel(const VerificationReport& r, std::size_t count) {
  double worst = 0.0;
  for (std::size_t n = 0; n < count && n < r.levels.size(); ++n) worst = std::max(worst, r.levels[n].rel_error);
  return worst;
}

// The nontrivial profile paired with each family in the residual check.
// Inverse-linear puts V0 ~ 1/x^4 ~ 1e12 at the x = 1e-3 box edge, where the
// absolute residual is at the double-precision floor, so only the oscillator
// family uses it here.
MassProfile nontrivial_profile(Family f) {
  switch (f) {
    case Family::OscShift: return MassProfile::inverse_linear(0.5);
    case Family::Exponential:
    case Family::Hyperbolic: return MassProfile::linear_scaled(1.0);
    case Family::OscLinearG:
    case Family::OscInverseG:
    case Family::Trigonometric: return MassProfile::sech_like();
  }
  return MassProfile::sech_like();
}

Outcome criterion_1() {
  double worst = 0.0;
  std::string where;
  for (const auto& c : canonical_cases()) {
    for (int variant = 0; variant < 2; ++variant) {
      FamilySpec spec = c.spec;
      if (variant == 1) spec.profile = nontrivial_profile(spec.family);
      const Interval box = default_box(spec, 4);
      const double r = shape_invariance_residual(make_superpotential(spec), spec.a, Grid<double>(box.lo, box.hi, 1000));
      if (!(r <= worst)) {
        worst = r;
        where = c.id + "/" + std::string(spec.profile.name());
      }
    }
  }
  return {worst < 1e-9, "max residual " + fmt("%.3g", worst) + " (" + where + "), 12 cases"};
}

Outcome criterion_2() {
  const VerificationReport r = verified("c2-harmonic", harmonic(), Grid<double>(-8.0, 8.0, 4000), 6);
  const double worst = worst_rel(r, 6);
  return {r.levels.size() == 6 && worst < 1e-4,
          std::to_string(r.levels.size()) + " levels, max rel error " + fmt("%.3g", worst)};
}

Outcome criterion_3() {
  FamilySpec spec = harmonic();
  spec.a = 1.0;
  spec.profile = MassProfile::inverse_linear(0.5);
  const Grid<double> grid(1e-3, 20.0, 8000);
  const auto mass = [&](double x) { return eval_mass(spec.profile, x); };
  const auto potential = [&](double x) { return potential_of(spec, x); };
  const auto op = discretize(mass, potential, grid);
  const Vector<double> e = richardson_refine(mass, potential, grid, 6);
  const auto pairs = lowest_eigenpairs(op, 6);
  bool nodes_ok = true;
  for (std::ptrdiff_t j = 0; j < 6; ++j) nodes_ok = nodes_ok && count_nodes(pairs[j].state) == j;
  g_node_checks.emplace_back("c3-inverse-linear", nodes_ok);

  double worst = 0.0;
  std::string spacings;
  for (int n = 1; n <= 5; ++n) {
    const double d = e[n] - e[n - 1];
    worst = std::max(worst, std::abs(d - spec.R0) / spec.R0);
    spacings += (n > 1 ? ", " : "") + fmt("%.4f", d);
  }
  return {worst < 1e-3, "spacings " + spacings + " vs 2, max rel deviation " + fmt("%.3g", worst)};
}

Outcome criterion_4() {
  FamilySpec spec = harmonic();
  spec.profile = MassProfile::sech_like();
  const VerificationReport r = verified("c4-sech", spec, auto_grid(spec, 4, 4000), 4);
  const double worst = worst_rel(r, 4);
  return {r.levels.size() == 4 && worst < 1e-3,
          std::to_string(r.levels.size()) + " levels, max rel error " + fmt("%.3g", worst)};
}

Outcome criterion_5() {
  FamilySpec spec;
  spec.family = Family::Exponential;
  spec.alpha = 1.0;
  spec.a = 3.5;
  spec.u0 = 1.0;
  spec.profile = unit_mass();
  const bool normalizable = check_normalizability(make_superpotential(spec), spec.a).normalizable;
  const std::size_t bound = bound_level_count(spec, 20);
  const VerificationReport r = verified("c5-morse", spec, auto_grid(spec, 4, 4000), 4);
  const double worst = worst_rel(r, 4);
  const bool pass = normalizable && bound == 4 && has_finite_spectrum(spec) && r.levels.size() == 4 && worst < 1e-3;
  return {pass, "normalizable " + std::to_string(normalizable) + ", closed-form prefix " + std::to_string(bound) +
                    " levels, " + std::to_string(r.levels.size()) + " verified, max rel error " + fmt("%.3g", worst)};
}

// Lowest `count` Richardson-refined eigenvalues against the closed form,
// taken literally: no level is dropped for sitting at a continuum edge.
double spectrum_mismatch(const FamilySpec& spec, const Grid<double>& grid, std::size_t count, std::string& values) {
  const auto mass = [&](double x) { return eval_mass(spec.profile, x); };
  const auto potential = [&](double x) { return potential_of(spec, x); };
  const Vector<double> e = richardson_refine(mass, potential, grid, static_cast<std::ptrdiff_t>(count));
  const double gap = spectrum_of(spec, 1);
  double worst = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    const double exact = spectrum_of(spec, n);
    worst = std::max(worst, std::abs(e[static_cast<std::ptrdiff_t>(n)] - exact) / std::max(std::abs(exact), gap));
    values += (n ? " " : "") + fmt("%.5f", e[static_cast<std::ptrdiff_t>(n)]);
  }
  return worst;
}

Outcome criterion_6() {
  bool pass = true;
  std::string detail;
  for (const FamilySpec& spec : {scarf1(), scarf2()}) {
    const Grid<double> grid = auto_grid(spec, 4, 4000);
    std::string values;
    const double worst = spectrum_mismatch(spec, grid, 4, values);
    pass = pass && worst < 1e-3;
    detail += (detail.empty() ? "" : "; ") + std::string(family_name(spec.family)) + " E = " + values +
              " max rel " + fmt("%.3g", worst);
  }
  // The hyperbolic E_3 = 9 equals the limit of V1 at large |x|; the
  // eigenvalue matched there is the lowest box state above that edge.
  return {pass, detail};
}

Outcome criterion_7() {
  bool pass = true;
  double worst_overlap = 1.0;
  double worst_annihilation = 0.0;
  for (const auto& c : canonical_cases()) {
    const VerificationReport r = verified("c7-" + c.id, c.spec, auto_grid(c.spec, 4, 4000), 4);
    worst_overlap = std::min(worst_overlap, r.ground_overlap);
    worst_annihilation = std::max(worst_annihilation, r.ground_annihilation);
    pass = pass && r.ground_overlap > 1.0 - 1e-6 && r.ground_annihilation < 1e-5;
  }
  return {pass, "min overlap 1-" + fmt("%.3g", 1.0 - worst_overlap) + ", max |A psi0|/|psi0| " +
                    fmt("%.3g", worst_annihilation)};
}

Outcome criterion_8() {
  struct Case {
    std::string id;
    FamilySpec spec;
    Grid<double> grid;
  };
  const FamilySpec trig = scarf1();
  const FamilySpec hyp = scarf2();
  const std::vector<Case> cases = {{"harmonic", harmonic(), Grid<double>(-8.0, 8.0, 4000)},
                                   {"scarf1", trig, auto_grid(trig, 4, 4000)},
                                   {"scarf2", hyp, auto_grid(hyp, 4, 4000)}};
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const Superpotential w = make_superpotential(c.spec);
    const auto mass = [&](double x) { return eval_mass(c.spec.profile, x); };
    const auto potential = [&](double x) { return potential_of(c.spec, x); };
    const auto op = discretize(mass, potential, c.grid);
    const auto pairs = lowest_eigenpairs(op, 4);
    const double gap = spectrum_of(c.spec, 1);
    double worst_overlap = 1.0;
    double worst_rayleigh = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
      const GridFunction<double> psi = ladder_excited_state(w, c.spec.a, n, c.grid);
      const double ov = overlap(psi, pairs[n].state);
      const double exact = spectrum_of(c.spec, n);
      const double rel = std::abs(op.rayleigh_quotient(psi.values) - exact) / std::max(std::abs(exact), gap);
      worst_overlap = std::min(worst_overlap, ov);
      worst_rayleigh = std::max(worst_rayleigh, rel);
      pass = pass && ov > 0.999 && rel < 1e-3;
    }
    detail += (detail.empty() ? "" : "; ") + c.id + " min overlap " + fmt("%.6f", worst_overlap) + " max rel " +
              fmt("%.3g", worst_rayleigh);
  }
  return {pass, detail};
}

Outcome criterion_9() {
  const FamilySpec spec = harmonic();
  const Superpotential w = make_superpotential(spec);
  const Grid<double> grid(-8.0, 8.0, 4000);
  const auto mass = [&](double x) { return eval_mass(spec.profile, x); };
  const Vector<double> e1 = richardson_refine(mass, [&](double x) { return V1_from_W(w, spec.a, x); }, grid, 5);
  const Vector<double> e2 = richardson_refine(mass, [&](double x) { return V2_from_W(w, spec.a, x); }, grid, 4);
  const double gap = spectrum_of(spec, 1);
  double worst = 0.0;
  for (int k = 0; k <= 3; ++k) {
    worst = std::max(worst, std::abs(e2[k] - e1[k + 1]) / std::max(std::abs(e1[k + 1]), gap));
  }
  return {worst < 1e-3, "max rel |E_k(V2) - E_k+1(V1)| " + fmt("%.3g", worst)};
}

Outcome criterion_10() {
  bool canonical_ok = true;
  for (const auto& c : canonical_cases()) {
    canonical_ok = canonical_ok && check_normalizability(make_superpotential(c.spec), c.spec.a).normalizable;
  }
  FamilySpec bad;
  bad.family = Family::Exponential;
  bad.alpha = 1.0;
  bad.u0 = 1.0;
  bad.profile = unit_mass();
  bool negative_rejected = true;
  bool run_case_rejects = true;
  for (double a : {-0.5, -2.0, -5.0}) {
    bad.a = a;
    negative_rejected = negative_rejected && !check_normalizability(make_superpotential(bad), a).normalizable;
    try {
      run_case("c10-bad", bad, Grid<double>(-10.0, 10.0, 200));
      run_case_rejects = false;
    } catch (const NormalizabilityError&) {
    }
  }
  return {canonical_ok && negative_rejected && run_case_rejects,
          std::string("canonical ") + (canonical_ok ? "all true" : "some false") + ", a<0 " +
              (negative_rejected ? "false" : "true") + ", run_case " +
              (run_case_rejects ? "throws NormalizabilityError" : "accepted")};
}

Outcome criterion_11() {
  const double length = 2.0;
  const Grid<double> grid(0.0, length, 2000);
  const auto mass = [](double) { return 1.0; };
  const auto zero = [](double) { return 0.0; };
  const Vector<double> e = richardson_refine(mass, zero, grid, 5);
  double worst = 0.0;
  for (int j = 1; j <= 5; ++j) {
    const double exact = std::pow(j * std::numbers::pi / length, 2) / 2.0;
    worst = std::max(worst, std::abs(e[j - 1] - exact) / exact);
  }
  const auto pairs = lowest_eigenpairs(discretize(mass, zero, grid), 5);
  bool box_nodes = true;
  for (std::ptrdiff_t j = 0; j < 5; ++j) box_nodes = box_nodes && count_nodes(pairs[j].state) == j;

  std::size_t bad = 0;
  std::string bad_ids;
  for (const auto& [id, ok] : g_node_checks) {
    if (!ok) {
      ++bad;
      bad_ids += " " + id;
    }
  }
  return {worst < 1e-8 && box_nodes && bad == 0,
          "box max rel error " + fmt("%.3g", worst) + ", node counts wrong in " + std::to_string(bad) + " of " +
              std::to_string(g_node_checks.size()) + " solves" + bad_ids};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      expected_failures.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail N]...\n", argv[0]);
      return 2;
    }
  }

  const std::vector<std::function<Outcome()>> criteria = {criterion_1, criterion_2, criterion_3,  criterion_4,
                                                          criterion_5, criterion_6, criterion_7,  criterion_8,
                                                          criterion_9, criterion_10, criterion_11};
  int passed = 0;
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i]();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool expected = expected_failures.count(number) > 0;
    std::printf("criterion %2d: %s  %s (%.1fs)%s\n", number, outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(),
                seconds, expected ? (outcome.pass ? "  [listed as expected failure]" : "  [expected failure]") : "");
    if (outcome.pass) ++passed;
    if (outcome.pass == expected) ++unexpected;
  }
  std::printf("%d/%zu criteria pass\n", passed, criteria.size());
  return unexpected == 0 ? 0 : 1;
}
