#pragma once

#include <array>
#include <cmath>
#include <span>

#include "qca/errors.hpp"
#include "qca/model.hpp"
#include "qca/types.hpp"

namespace qca {

template <typename Scalar>
struct PointCharge {
  Vec2<Scalar> position;  // nm
  Scalar charge;          // units of q_e
};

// Charge pairs closer than this are rejected as coincident.
inline constexpr double kMinChargeSeparation = 1e-9;  // nm

/// Coulomb energy between two charge groups, one charge from each group per
/// term. Throws if any pair sits closer than kMinChargeSeparation.
template <typename Scalar>
Scalar coulomb_energy(std::span<const PointCharge<Scalar>> a,
                      std::span<const PointCharge<Scalar>> b,
                      const PhysicalConstants<Scalar>& constants) {
  Scalar sum = 0;
  for (const auto& qa : a)
    for (const auto& qb : b) {
      const Scalar d = (qa.position - qb.position).norm();
      if (!(d > Scalar(kMinChargeSeparation)))
        throw validation_error("coincident point charges: separation below 1e-9 nm");
      sum += qa.charge * qb.charge / d;
    }
  return constants.coulomb_energy_scale * sum;
}

/// Charges of a cell in basis state m: the mobile electron (-q_e) at dot m
/// plus one +q_e/2 neutralizing charge at each dot. Net charge is zero.
template <typename Scalar>
std::array<PointCharge<Scalar>, 3> cell_charges(const Cell<Scalar>& cell, int m,
                                                const PhysicalConstants<Scalar>& constants = {}) {
  if (m != 0 && m != 1) throw validation_error("cell_charges: state must be 0 or 1");
  const Scalar q = constants.elementary_charge;
  return {{{cell.dot(m), -q}, {cell.dot0(), q / 2}, {cell.dot1(), q / 2}}};
}

/// As a charge distribution the three charges of cell_charges reduce to net
/// dipole charges -+q_e/2 on the dots: +q_e/2 on dot 0 for m = 1, sign
/// flipped for m = 0.
template <typename Scalar>
std::array<PointCharge<Scalar>, 2> cell_dipole_charges(
    const Cell<Scalar>& cell, int m, const PhysicalConstants<Scalar>& constants = {}) {
  if (m != 0 && m != 1) throw validation_error("cell_dipole_charges: state must be 0 or 1");
  const Scalar s = (m == 1) ? Scalar(1) : Scalar(-1);
  const Scalar q = constants.elementary_charge;
  return {{{cell.dot0(), s * q / 2}, {cell.dot1(), -s * q / 2}}};
}

/// Driver charges: +q_e*P/2 on dot 0, -q_e*P/2 on dot 1.
template <typename Scalar>
std::array<PointCharge<Scalar>, 2> driver_charges(
    const DriverCell<Scalar>& driver, const PhysicalConstants<Scalar>& constants = {}) {
  const Scalar q = constants.elementary_charge * driver.polarization;
  return {{{driver.dot0(), q / 2}, {driver.dot1(), -q / 2}}};
}

/// Electrostatic interaction energy (eV) of cell_i in state m_i with cell_j
/// in state m_j. Symmetric under exchanging the two cells.
template <typename Scalar>
Scalar pair_interaction(const Cell<Scalar>& cell_i, const Cell<Scalar>& cell_j, int m_i, int m_j,
                        const PhysicalConstants<Scalar>& constants = {}) {
  const auto qi = cell_dipole_charges(cell_i, m_i, constants);
  const auto qj = cell_dipole_charges(cell_j, m_j, constants);
  return coulomb_energy<Scalar>(qi, qj, constants);
}

/// The four pair energies u(m_i, m_j) consumed by the diagonal interaction
/// term, precomputed once per unordered cell pair.
template <typename Scalar>
struct PairTable {
  std::array<std::array<Scalar, 2>, 2> u{};  // u[m_i][m_j], eV

  Scalar operator()(int m_i, int m_j) const { return u[m_i][m_j]; }
};

template <typename Scalar>
PairTable<Scalar> pair_table(const Cell<Scalar>& cell_i, const Cell<Scalar>& cell_j,
                             const PhysicalConstants<Scalar>& constants = {}) {
  PairTable<Scalar> t;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) t.u[a][b] = pair_interaction(cell_i, cell_j, a, b, constants);
  return t;
}

/// Detuning of a cell induced by a driver's charges:
/// delta = U(cell in state 1) - U(cell in state 0). Linear in the driver
/// polarization.
template <typename Scalar>
Scalar driver_detuning(const DriverCell<Scalar>& driver, const Cell<Scalar>& cell,
                       const PhysicalConstants<Scalar>& constants = {}) {
  const auto qd = driver_charges(driver, constants);
  const auto q1 = cell_dipole_charges(cell, 1, constants);
  const auto q0 = cell_dipole_charges(cell, 0, constants);
  return coulomb_energy<Scalar>(q1, qd, constants) - coulomb_energy<Scalar>(q0, qd, constants);
}

/// Kink energy for the side-by-side pair geometry: the detuning of a target
/// cell from a fully polarized driver at the given center spacing.
template <typename Scalar>
Scalar kink_energy(Scalar a, Scalar spacing, const PhysicalConstants<Scalar>& constants = {}) {
  if (!(spacing > Scalar(0))) throw validation_error("kink_energy: spacing must be positive");
  Cell<Scalar> target;
  target.dot_separation = a;
  DriverCell<Scalar> driver;
  driver.center = Vec2<Scalar>(spacing, 0);
  driver.dot_separation = a;
  driver.polarization = Scalar(1);
  return driver_detuning(driver, target, constants);
}

/// Field strength E_o = |E_k / (q_e a)| that balances one fully polarized
/// side-by-side neighbor.
template <typename Scalar>
Scalar reference_field(Scalar a, Scalar spacing, const PhysicalConstants<Scalar>& constants = {}) {
  return std::abs(kink_energy(a, spacing, constants) / (constants.elementary_charge * a));
}

/// Field detuning delta_E = -q_e * E(center) . (a * axis), with the field
/// sampled at the cell center.
template <typename Scalar>
Scalar field_detuning(const FieldSpec<Scalar>& field, const Cell<Scalar>& cell,
                      const PhysicalConstants<Scalar>& constants = {}) {
  const Vec2<Scalar> e = field.at(cell.center);
  return -constants.elementary_charge * cell.dot_separation * e.dot(cell.axis);
}

}  // namespace qca
