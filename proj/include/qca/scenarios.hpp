#pragma once

#include <string>
#include <vector>

#include "qca/solver.hpp"
#include "qca/sweep.hpp"

namespace qca {

struct ScenarioSeries {
  std::string label;
  SweepResult sweep;
};

struct LevelsRow {
  double param = 0;  // E_y, V/nm
  double e00 = 0, e01 = 0, e10 = 0, e11 = 0;
};

struct ScenarioResult {
  std::string name;
  std::string description;
  std::vector<ScenarioSeries> series;  // polarization sweeps
  std::vector<LevelsRow> levels;       // used by fig8_levels instead of series
};

const std::vector<std::string>& scenario_names();

/// Preconfigured experiment by name; throws validation_error listing the
/// valid names for an unknown one.
ScenarioResult scenario(const std::string& name, SolverOptions solver = {});

}  // namespace qca
