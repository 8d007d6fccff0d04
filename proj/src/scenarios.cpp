#include "qca/scenarios.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include "qca/electrostatics.hpp"
#include "qca/errors.hpp"
#include "qca/hamiltonian.hpp"
#include "qca/model.hpp"

namespace qca {

namespace {

constexpr double kCellLength = 1.0;       // a, nm
constexpr double kTransSpacing = 1.0;     // side-by-side center spacing, nm
constexpr double kLongSpacing = 2.0;      // head-to-tail center spacing, nm
constexpr double kElectrodeGap = 10.0;    // d, nm

std::string label_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double reference_field_default() {
  return reference_field<double>(kCellLength, kTransSpacing);
}

SweepResult sweep_ey(const Circuit<double>& circuit, double from, double to, Index steps,
                     const SolverOptions& solver,
                     const FieldSpec<double>& tpl = FieldSpec<double>::uniform({0, 0})) {
  SweepSpec spec{SweepParameter::ey, from, to, steps, circuit, tpl};
  spec.solver = solver;
  return run_sweep(spec);
}

// Electrode-gap region around the longitudinal section of the standard
// 8-cell input circuit: x in [-1, 0.5] nm so the transverse row at x >= 1
// stays outside, y spanning the gap centered on the array.
FieldSpec<double> electrode_region_field(Index n_long) {
  FieldRegion<double> r;
  const double y_center = 0.5 * double(n_long - 1) * kLongSpacing;
  r.rect.lo = {-1.0, y_center - kElectrodeGap / 2};
  r.rect.hi = {0.5, y_center + kElectrodeGap / 2};
  r.field = {0, 0};
  return FieldSpec<double>::regions({r}, {0, 0});
}

ScenarioResult scenario_fig5(const SolverOptions& solver) {
  ScenarioResult out;
  out.description = "single-cell response P(P_drv) beside one driver, for several field strengths";
  Cell<double> cell;
  DriverCell<double> driver;
  driver.center = {kTransSpacing, 0};
  Circuit<double> circuit({cell}, {driver});
  for (const double e_y : {0.0, 0.1, 0.2, 0.42, 0.5}) {
    SweepSpec spec{SweepParameter::pdrv, -1.0, 1.0, 51, circuit,
                   FieldSpec<double>::uniform({0, e_y})};
    spec.solver = solver;
    out.series.push_back({"Ey=" + label_number(e_y), run_sweep(spec)});
  }
  return out;
}

ScenarioResult scenario_fig6(const SolverOptions& solver) {
  ScenarioResult out;
  out.description = "two-cell longitudinal array switched by a weak field, +-E_o/100";
  const double eo = reference_field_default();
  out.series.push_back(
      {"", sweep_ey(longitudinal_array<double>(2, kLongSpacing, kCellLength, 0.001),
                    -eo / 100, eo / 100, 2, solver)});
  return out;
}

ScenarioResult scenario_fig7(const SolverOptions& solver) {
  ScenarioResult out;
  out.description = "two-cell transverse array versus field strength";
  const double eo = reference_field_default();
  out.series.push_back(
      {"", sweep_ey(transverse_array<double>(2, kTransSpacing, kCellLength, 0.001), 0.0,
                    1.5 * eo, 31, solver)});
  return out;
}

ScenarioResult scenario_fig8(const SolverOptions&) {
  ScenarioResult out;
  out.description = "classical energy levels of the two-cell transverse array versus field";
  const double eo = reference_field_default();
  const Index steps = 41;
  for (Index i = 0; i < steps; ++i) {
    const double e_y = 2.0 * eo * double(i) / double(steps - 1);
    const auto lv = classical_levels_n2<double>(kCellLength, kTransSpacing, e_y);
    out.levels.push_back({e_y, lv.e00, lv.e01, lv.e10, lv.e11});
  }
  return out;
}

ScenarioResult scenario_fig9(const SolverOptions& solver) {
  ScenarioResult out;
  out.description = "three-cell transverse array versus field strength";
  const double eo = reference_field_default();
  out.series.push_back(
      {"", sweep_ey(transverse_array<double>(3, kTransSpacing, kCellLength, 0.010), 0.0,
                    2.5 * eo, 51, solver)});
  return out;
}

ScenarioResult scenario_input_n8(const SolverOptions& solver) {
  ScenarioResult out;
  out.description = "8-cell field-input circuit under a weak uniform field";
  const double eo = reference_field_default();
  out.series.push_back(
      {"", sweep_ey(field_input_circuit<double>(3, 5, kLongSpacing, kTransSpacing, kCellLength,
                                                0.010),
                    -0.25 * eo, 0.25 * eo, 11, solver)});
  return out;
}

ScenarioResult scenario_nvaried(const SolverOptions& solver) {
  ScenarioResult out;
  out.description = "field-input circuit with transverse length 1..5 under a weak uniform field";
  const double eo = reference_field_default();
  for (Index n = 1; n <= 5; ++n)
    out.series.push_back(
        {"Ntrans=" + std::to_string(n),
         sweep_ey(field_input_circuit<double>(3, n, kLongSpacing, kTransSpacing, kCellLength,
                                              0.010),
                  -0.25 * eo, 0.25 * eo, 2, solver)});
  return out;
}

ScenarioResult scenario_failure(const SolverOptions& solver) {
  ScenarioResult out;
  out.description = "8-cell field-input circuit swept into the uniform-field failure regime";
  const double eo = reference_field_default();
  out.series.push_back(
      {"", sweep_ey(field_input_circuit<double>(3, 5, kLongSpacing, kTransSpacing, kCellLength,
                                                0.010),
                    0.0, eo, 21, solver)});
  return out;
}

ScenarioResult scenario_ideal(const SolverOptions& solver) {
  ScenarioResult out;
  out.description =
      "8-cell field-input circuit driven through electrode-gap voltage, region field versus "
      "uniform field";
  const auto circuit =
      field_input_circuit<double>(3, 5, kLongSpacing, kTransSpacing, kCellLength, 0.050);
  {
    SweepSpec spec{SweepParameter::vin, -5.0, 5.0, 101, circuit, electrode_region_field(3)};
    spec.electrode_gap = kElectrodeGap;
    spec.solver = solver;
    out.series.push_back({"regions", run_sweep(spec)});
  }
  {
    SweepSpec spec{SweepParameter::vin, -5.0, 5.0, 101, circuit,
                   FieldSpec<double>::uniform({0, 0})};
    spec.electrode_gap = kElectrodeGap;
    spec.solver = solver;
    out.series.push_back({"uniform", run_sweep(spec)});
  }
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "fig5",           "fig6_longitudinal", "fig7_transverse_n2",
      "fig8_levels",    "fig9_transverse_n3", "fig_input_n8",
      "fig_nvaried",    "fig_failure",        "fig_ideal",
  };
  return names;
}

ScenarioResult scenario(const std::string& name, SolverOptions solver) {
  ScenarioResult out;
  if (name == "fig5")
    out = scenario_fig5(solver);
  else if (name == "fig6_longitudinal")
    out = scenario_fig6(solver);
  else if (name == "fig7_transverse_n2")
    out = scenario_fig7(solver);
  else if (name == "fig8_levels")
    out = scenario_fig8(solver);
  else if (name == "fig9_transverse_n3")
    out = scenario_fig9(solver);
  else if (name == "fig_input_n8")
    out = scenario_input_n8(solver);
  else if (name == "fig_nvaried")
    out = scenario_nvaried(solver);
  else if (name == "fig_failure")
    out = scenario_failure(solver);
  else if (name == "fig_ideal")
    out = scenario_ideal(solver);
  else {
    std::string names;
    for (const auto& n : scenario_names()) names += (names.empty() ? "" : ", ") + n;
    throw validation_error("unknown scenario '" + name + "'; valid names: " + names);
  }
  out.name = name;
  return out;
}

}  // namespace qca
