#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qca/electrostatics.hpp"
#include "qca/errors.hpp"
#include "qca/model.hpp"
#include "qca/types.hpp"

namespace qca {

/// Classical (gamma = 0) configuration energies, enumerated directly from
/// point charges. Kept deliberately independent of the Hamiltonian assembly:
/// no pair tables or detunings are shared with it.
template <typename Scalar>
struct ClassicalSpectrum {
  VecX<Scalar> energies;          // indexed by basis label p
  Index argmin = 0;               // lowest-index minimizer
  std::vector<Index> argmin_all;  // every p within 1e-12 eV of the minimum
  bool min_degenerate = false;
};

namespace detail {

// Local Coulomb loop over explicit charge lists (the 3x3 path, including the
// self-cancelling neutralizer terms).
template <typename Scalar, typename A, typename B>
Scalar oracle_coulomb(const A& qa, const B& qb, const PhysicalConstants<Scalar>& constants) {
  Scalar sum = 0;
  for (const auto& a : qa)
    for (const auto& b : qb) {
      const Scalar d = (a.position - b.position).norm();
      if (!(d > Scalar(kMinChargeSeparation)))
        throw validation_error("classical_enumerate: coincident point charges");
      sum += a.charge * b.charge / d;
    }
  return constants.coulomb_energy_scale * sum;
}

// Energy of the cell's charges in the field sampled at the cell center. The
// cell is net-neutral, so the potential's reference point drops out.
template <typename Scalar>
Scalar oracle_field_energy(const Cell<Scalar>& cell, int m, const FieldSpec<Scalar>& field,
                           const PhysicalConstants<Scalar>& constants) {
  const Vec2<Scalar> e = field.at(cell.center);
  Scalar sum = 0;
  for (const auto& q : cell_charges(cell, m, constants)) sum -= q.charge * e.dot(q.position);
  return sum;
}

}  // namespace detail

template <typename Scalar>
ClassicalSpectrum<Scalar> classical_enumerate(const Circuit<Scalar>& circuit,
                                              const FieldSpec<Scalar>& field) {
  const Index n = circuit.n_cells();
  if (n > 20)
    throw validation_error("classical_enumerate: " + std::to_string(n) +
                           " cells exceed the enumeration limit of 20");
  const auto& cells = circuit.cells();
  const auto& constants = circuit.constants();

  // Per-cell occupation energies and pair energies, each from the raw charges.
  std::vector<std::array<Scalar, 2>> occupation(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k)
    for (int m = 0; m < 2; ++m) {
      Scalar u = detail::oracle_field_energy(cells[k], m, field, constants);
      const auto qk = cell_charges(cells[k], m, constants);
      for (const auto& drv : circuit.drivers())
        u += detail::oracle_coulomb<Scalar>(qk, driver_charges(drv, constants), constants);
      occupation[static_cast<std::size_t>(k)][m] = u;
    }
  std::vector<std::array<std::array<Scalar, 2>, 2>> pair(
      static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index j = 1, slot = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i, ++slot)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          pair[static_cast<std::size_t>(slot)][a][b] = detail::oracle_coulomb<Scalar>(
              cell_charges(cells[i], a, constants), cell_charges(cells[j], b, constants),
              constants);

  ClassicalSpectrum<Scalar> spec;
  const Index dim = Index(1) << n;
  spec.energies.resize(dim);
  for (Index p = 0; p < dim; ++p) {
    Scalar e = 0;
    for (Index k = 0; k < n; ++k) e += occupation[static_cast<std::size_t>(k)][(p >> k) & 1];
    for (Index j = 1, slot = 0; j < n; ++j)
      for (Index i = 0; i < j; ++i, ++slot)
        e += pair[static_cast<std::size_t>(slot)][(p >> i) & 1][(p >> j) & 1];
    spec.energies(p) = e;
  }

  Scalar emin = spec.energies(0);
  spec.argmin = 0;
  for (Index p = 1; p < dim; ++p)
    if (spec.energies(p) < emin) {
      emin = spec.energies(p);
      spec.argmin = p;
    }
  for (Index p = 0; p < dim; ++p)
    if (spec.energies(p) - emin <= Scalar(1e-12)) spec.argmin_all.push_back(p);
  spec.min_degenerate = spec.argmin_all.size() > 1;
  return spec;
}

template <typename Scalar>
struct TwoLevelSolution {
  Scalar energy;        // eV
  Scalar polarization;  // dimensionless
};

/// Closed-form ground state of the single-cell block with total detuning
/// delta and tunneling gamma: energy = -sqrt((delta/2)^2 + gamma^2),
/// P = -delta / sqrt(delta^2 + 4 gamma^2) (zero when both vanish).
template <typename Scalar>
TwoLevelSolution<Scalar> two_level_analytic(Scalar delta_total, Scalar gamma) {
  if (!(gamma >= Scalar(0)))
    throw validation_error("two_level_analytic: gamma must be non-negative");
  const Scalar energy = -std::hypot(delta_total / 2, gamma);
  const Scalar denom = std::hypot(delta_total, 2 * gamma);
  const Scalar p = denom == Scalar(0) ? Scalar(0) : -delta_total / denom;
  return {energy, p};
}

}  // namespace qca
