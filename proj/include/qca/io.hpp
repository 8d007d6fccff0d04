#pragma once

#include <iosfwd>
#include <string>

#include "qca/model.hpp"
#include "qca/scenarios.hpp"
#include "qca/sweep.hpp"

namespace qca::io {

struct ParsedCircuit {
  Circuit<double> circuit;
  FieldSpec<double> field;
};

/// Parse a JSON circuit document. Applies the documented defaults
/// (epsilon_r 1, axis [0,1], a 1, gamma 0.001, uniform zero field) and
/// validates everything; syntax errors carry line/column, semantic errors
/// name the offending cell or driver.
ParsedCircuit parse_circuit(const std::string& text);

/// Inverse of parse_circuit up to formatting; parse(render(c)) reproduces
/// every numeric field exactly.
std::string render_circuit(const Circuit<double>& circuit, const FieldSpec<double>& field);

/// Fixed CSV float rendering: 12 significant digits, '.' decimal point.
std::string csv_number(double v);

/// Header `param,P_1,...,P_N,energy_eV,gap_eV,degenerate`, one row per step,
/// '\n' line ends. Byte-for-byte deterministic for identical inputs.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// One CSV block per series; blocks after the first are introduced by a
/// `# series: <label>` comment line (as is the first when it has a label).
/// Level scenarios emit `param,E_00_eV,E_01_eV,E_10_eV,E_11_eV` instead.
void write_scenario_csv(std::ostream& out, const ScenarioResult& result);

}  // namespace qca::io
