#include "qca/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qca/errors.hpp"
#include "qca/hamiltonian.hpp"

namespace qca {

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::ey: return "Ey";
    case SweepParameter::ex: return "Ex";
    case SweepParameter::vin: return "vin";
    case SweepParameter::pdrv: return "Pdrv";
  }
  return "?";
}

FieldSpec<double> apply_parameter(const FieldSpec<double>& field_template, SweepParameter p,
                                  double value, double electrode_gap) {
  if (p == SweepParameter::pdrv) return field_template;
  if (p == SweepParameter::vin) {
    if (!(electrode_gap > 0))
      throw validation_error("sweep: electrode gap d must be positive for a vin sweep");
    value /= electrode_gap;  // E_y = v_in / d
  }
  const auto substitute = [&](Vec2<double> e) {
    if (p == SweepParameter::ex)
      e.x() = value;
    else
      e.y() = value;
    return e;
  };
  if (field_template.is_uniform())
    return FieldSpec<double>::uniform(substitute(field_template.default_field()));
  auto regions = field_template.field_regions();
  for (auto& r : regions) r.field = substitute(r.field);
  return FieldSpec<double>::regions(std::move(regions), field_template.default_field());
}

namespace {

Index thread_budget(Index jobs) {
  Index n = static_cast<Index>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* cap = std::getenv("QCA_MAX_THREADS")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v >= 1 && v < n) n = static_cast<Index>(v);
  }
  return std::min(n, jobs);
}

SweepRow solve_row(const SweepSpec& spec, double value) {
  const FieldSpec<double> field =
      apply_parameter(spec.field_template, spec.parameter, value, spec.electrode_gap);
  std::optional<Circuit<double>> adjusted;
  if (spec.parameter == SweepParameter::pdrv)
    adjusted = spec.circuit.with_driver_polarization(value);
  const Circuit<double>& circuit = adjusted ? *adjusted : spec.circuit;
  const auto rep = build(circuit, field, spec.build);
  const auto gs = ground_state(rep, spec.solver);
  SweepRow row;
  row.param = value;
  row.polarizations = gs.polarizations;
  row.energy = gs.energy;
  row.gap = gs.gap;
  row.degenerate = gs.degenerate;
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.steps < 2) throw validation_error("sweep: needs at least 2 steps");
  if (!(spec.from != spec.to)) throw validation_error("sweep: from and to must differ");
  if (spec.parameter == SweepParameter::pdrv && spec.circuit.drivers().empty())
    throw validation_error("sweep: a Pdrv sweep needs at least one driver cell");

  const Index steps = spec.steps;
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (Index i = 0; i < steps; ++i)
    grid[static_cast<std::size_t>(i)] =
        spec.from + (spec.to - spec.from) * (double(i) / double(steps - 1));

  SweepResult result;
  result.n_cells = spec.circuit.n_cells();
  result.rows.resize(static_cast<std::size_t>(steps));

  struct Failure {
    bool is_solver = false;
    std::string message;
  };
  std::vector<std::optional<Failure>> failures(static_cast<std::size_t>(steps));
  std::atomic<Index> next{0};
  auto worker = [&] {
    for (Index i; (i = next.fetch_add(1)) < steps;) {
      const auto s = static_cast<std::size_t>(i);
      try {
        result.rows[s] = solve_row(spec, grid[s]);
      } catch (const solver_error& e) {
        failures[s] = Failure{true, e.what()};
      } catch (const std::exception& e) {
        failures[s] = Failure{false, e.what()};
      }
    }
  };

  const Index n_threads = thread_budget(steps);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (Index t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (Index i = 0; i < steps; ++i) {
    const auto s = static_cast<std::size_t>(i);
    if (failures[s]) {
      const std::string annotated = "sweep row " + std::to_string(i + 1) + " (" +
                                    to_string(spec.parameter) + " = " +
                                    std::to_string(grid[s]) + "): " + failures[s]->message;
      if (failures[s]->is_solver) throw solver_error(annotated);
      throw validation_error(annotated);
    }
  }
  return result;
}

double threshold_find(const Circuit<double>& circuit, const FieldSpec<double>& field_template,
                      Index observable_cell, double lo, double hi, double tol, double level,
                      SolverOptions solver, BuildOptions build_opts) {
  if (observable_cell < 1 || observable_cell > circuit.n_cells())
    throw validation_error("threshold_find: observable cell index out of range");
  if (!(tol > 0)) throw validation_error("threshold_find: tolerance must be positive");
  if (!(lo < hi)) std::swap(lo, hi);

  const auto observe = [&](double e_y) {
    const auto field = apply_parameter(field_template, SweepParameter::ey, e_y, 1.0);
    const auto gs = ground_state(build(circuit, field, build_opts), solver);
    return gs.polarizations(observable_cell - 1) - level;
  };

  double flo = observe(lo);
  const double fhi = observe(hi);
  if ((flo > 0) == (fhi > 0))
    throw validation_error("threshold_find: no sign change across the bracket (P = " +
                           std::to_string(flo + level) + " at lo, P = " +
                           std::to_string(fhi + level) + " at hi, level = " +
                           std::to_string(level) + ")");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = observe(mid);
    if ((fmid > 0) == (flo > 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qca
