#pragma once

#include <string>
#include <vector>

#include "qca/model.hpp"
#include "qca/solver.hpp"
#include "qca/types.hpp"

namespace qca {

enum class SweepParameter { ey, ex, vin, pdrv };

std::string to_string(SweepParameter p);

/// Field obtained from the template with the swept parameter substituted:
/// ey/ex replace that component of the uniform field or of every region
/// field (the default field outside regions is left alone); vin behaves as
/// ey with value / electrode_gap; pdrv leaves the field untouched.
FieldSpec<double> apply_parameter(const FieldSpec<double>& field_template, SweepParameter p,
                                  double value, double electrode_gap);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::ey;
  double from = 0;
  double to = 0;
  Index steps = 0;               // >= 2, endpoints included
  Circuit<double> circuit;
  FieldSpec<double> field_template;
  double electrode_gap = 10;     // d in nm, used by vin
  SolverOptions solver;
  BuildOptions build;
};

struct SweepRow {
  double param = 0;
  VecX<double> polarizations;
  double energy = 0;
  double gap = 0;
  bool degenerate = false;
};

struct SweepResult {
  Index n_cells = 0;
  std::vector<SweepRow> rows;
};

/// One ground-state solve per step. Steps run concurrently (capped by the
/// QCA_MAX_THREADS environment variable when set); results are assembled in
/// parameter order and are deterministic.
SweepResult run_sweep(const SweepSpec& spec);

/// Bisection for the field strength E_y at which the observable cell's
/// polarization crosses `level`, between lo and hi (V/nm). The crossing
/// level defaults to 0 (a polarization sign change); transitions between a
/// depolarized and a polarized branch need an intermediate level such as 0.5.
/// observable_cell is 1-based.
double threshold_find(const Circuit<double>& circuit, const FieldSpec<double>& field_template,
                      Index observable_cell, double lo, double hi, double tol,
                      double level = 0.0, SolverOptions solver = {}, BuildOptions build = {});

}  // namespace qca
