#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qca/errors.hpp"
#include "qca/types.hpp"

namespace qca {

/// Internal units: energies in eV, lengths in nm, fields in V/nm, charges in
/// multiples of the elementary charge q_e. With this choice q_e*E*a in eV is
/// numerically E (V/nm) times a (nm).
template <typename Scalar>
struct PhysicalConstants {
  /// q_e^2 / (4 pi eps0 eps_r) in eV*nm; 1.43996 is the vacuum value.
  Scalar coulomb_energy_scale = Scalar(1.43996);
  Scalar elementary_charge = Scalar(1);

  static PhysicalConstants vacuum() { return {}; }

  static PhysicalConstants with_relative_permittivity(Scalar eps_r) {
    if (!(eps_r >= Scalar(1)))
      throw validation_error("constants: epsilon_r must be >= 1");
    return {Scalar(1.43996) / eps_r, Scalar(1)};
  }
};

/// Two-dot cell. The axis unit vector points from dot 1 to dot 0, so dot 0
/// sits at center + (a/2)*axis and dot 1 at center - (a/2)*axis.
template <typename Scalar>
struct Cell {
  Vec2<Scalar> center = Vec2<Scalar>::Zero();
  Vec2<Scalar> axis = Vec2<Scalar>(0, 1);
  Scalar dot_separation = Scalar(1);  // a, nm
  Scalar gamma = Scalar(0.001);       // tunneling energy, eV

  Vec2<Scalar> dot0() const { return center + Scalar(0.5) * dot_separation * axis; }
  Vec2<Scalar> dot1() const { return center - Scalar(0.5) * dot_separation * axis; }
  Vec2<Scalar> dot(int m) const { return m == 0 ? dot0() : dot1(); }
};

/// Fixed-polarization external cell, modeled as static charges only; it is
/// not part of the circuit's state space.
template <typename Scalar>
struct DriverCell {
  Vec2<Scalar> center = Vec2<Scalar>::Zero();
  Vec2<Scalar> axis = Vec2<Scalar>(0, 1);
  Scalar dot_separation = Scalar(1);
  Scalar polarization = Scalar(1);  // in [-1, 1]

  Vec2<Scalar> dot0() const { return center + Scalar(0.5) * dot_separation * axis; }
  Vec2<Scalar> dot1() const { return center - Scalar(0.5) * dot_separation * axis; }
};

/// Axis-aligned rectangle, half-open: lo <= p < hi componentwise, so a point
/// on a shared edge belongs to at most one rectangle.
template <typename Scalar>
struct Rect {
  Vec2<Scalar> lo = Vec2<Scalar>::Zero();
  Vec2<Scalar> hi = Vec2<Scalar>::Zero();

  bool contains(const Vec2<Scalar>& p) const {
    return p.x() >= lo.x() && p.x() < hi.x() && p.y() >= lo.y() && p.y() < hi.y();
  }
  bool overlaps(const Rect& o) const {
    return lo.x() < o.hi.x() && o.lo.x() < hi.x() && lo.y() < o.hi.y() && o.lo.y() < hi.y();
  }
};

template <typename Scalar>
struct FieldRegion {
  Rect<Scalar> rect;
  Vec2<Scalar> field = Vec2<Scalar>::Zero();  // V/nm
};

/// In-plane electric field: either uniform everywhere, or a set of
/// non-overlapping rectangular regions each carrying its own uniform field
/// (idealized electrode model). Evaluation is total: points outside every
/// region see default_field().
template <typename Scalar>
class FieldSpec {
 public:
  FieldSpec() = default;

  static FieldSpec uniform(const Vec2<Scalar>& e) {
    FieldSpec f;
    f.uniform_ = true;
    f.default_field_ = e;
    return f;
  }

  static FieldSpec regions(std::vector<FieldRegion<Scalar>> regions,
                           const Vec2<Scalar>& default_e = Vec2<Scalar>::Zero()) {
    for (std::size_t i = 0; i < regions.size(); ++i) {
      const auto& r = regions[i].rect;
      if (!(r.hi.x() >= r.lo.x()) || !(r.hi.y() >= r.lo.y()))
        throw validation_error("field region " + std::to_string(i + 1) +
                               ": rectangle extents must satisfy hi >= lo");
      for (std::size_t j = 0; j < i; ++j)
        if (r.overlaps(regions[j].rect))
          throw validation_error("field regions " + std::to_string(j + 1) + " and " +
                                 std::to_string(i + 1) + " overlap");
    }
    FieldSpec f;
    f.uniform_ = false;
    f.default_field_ = default_e;
    f.regions_ = std::move(regions);
    return f;
  }

  Vec2<Scalar> at(const Vec2<Scalar>& p) const {
    if (!uniform_)
      for (const auto& r : regions_)
        if (r.rect.contains(p)) return r.field;
    return default_field_;
  }

  bool is_uniform() const { return uniform_; }
  const Vec2<Scalar>& default_field() const { return default_field_; }
  const std::vector<FieldRegion<Scalar>>& field_regions() const { return regions_; }

 private:
  bool uniform_ = true;
  Vec2<Scalar> default_field_ = Vec2<Scalar>::Zero();
  std::vector<FieldRegion<Scalar>> regions_;
};

/// Ordered list of cells (index k = 1..N, which is also the basis bit order)
/// plus optional driver cells. Validates geometry on construction; immutable
/// afterwards.
template <typename Scalar>
class Circuit {
 public:
  Circuit(std::vector<Cell<Scalar>> cells, std::vector<DriverCell<Scalar>> drivers = {},
          PhysicalConstants<Scalar> constants = {})
      : cells_(std::move(cells)), drivers_(std::move(drivers)), constants_(constants) {
    validate();
  }

  Index n_cells() const { return static_cast<Index>(cells_.size()); }
  const std::vector<Cell<Scalar>>& cells() const { return cells_; }
  const std::vector<DriverCell<Scalar>>& drivers() const { return drivers_; }
  const PhysicalConstants<Scalar>& constants() const { return constants_; }

  /// Copy of this circuit with every driver's polarization set to p.
  Circuit with_driver_polarization(Scalar p) const {
    auto drivers = drivers_;
    for (auto& d : drivers) d.polarization = p;
    return Circuit(cells_, std::move(drivers), constants_);
  }

 private:
  static constexpr double kUnitAxisTol = 1e-12;
  static constexpr double kMinDotSeparation = 1e-9;  // nm

  void validate() const {
    if (cells_.empty()) throw validation_error("circuit: needs at least one cell");
    if (!(constants_.coulomb_energy_scale > Scalar(0)))
      throw validation_error("circuit: coulomb_energy_scale must be positive");
    for (std::size_t k = 0; k < cells_.size(); ++k) {
      const auto& c = cells_[k];
      const std::string who = "cell " + std::to_string(k + 1);
      if (!c.center.allFinite() || !c.axis.allFinite())
        throw validation_error(who + ": non-finite coordinates");
      if (std::abs(double(c.axis.norm()) - 1.0) > kUnitAxisTol)
        throw validation_error(who + ": axis must be a unit vector");
      if (!(c.dot_separation > Scalar(0)))
        throw validation_error(who + ": dot separation must be positive");
      if (!(c.gamma >= Scalar(0)))
        throw validation_error(who + ": tunneling energy must be non-negative");
    }
    for (std::size_t k = 0; k < drivers_.size(); ++k) {
      const auto& d = drivers_[k];
      const std::string who = "driver " + std::to_string(k + 1);
      if (!d.center.allFinite() || !d.axis.allFinite())
        throw validation_error(who + ": non-finite coordinates");
      if (std::abs(double(d.axis.norm()) - 1.0) > kUnitAxisTol)
        throw validation_error(who + ": axis must be a unit vector");
      if (!(d.dot_separation > Scalar(0)))
        throw validation_error(who + ": dot separation must be positive");
      if (!(d.polarization >= Scalar(-1) && d.polarization <= Scalar(1)))
        throw validation_error(who + ": polarization must lie in [-1, 1]");
    }
    // All dot positions across cells and drivers must stay separated.
    std::vector<std::pair<Vec2<Scalar>, std::string>> dots;
    for (std::size_t k = 0; k < cells_.size(); ++k) {
      dots.emplace_back(cells_[k].dot0(), "cell " + std::to_string(k + 1));
      dots.emplace_back(cells_[k].dot1(), "cell " + std::to_string(k + 1));
    }
    for (std::size_t k = 0; k < drivers_.size(); ++k) {
      dots.emplace_back(drivers_[k].dot0(), "driver " + std::to_string(k + 1));
      dots.emplace_back(drivers_[k].dot1(), "driver " + std::to_string(k + 1));
    }
    for (std::size_t i = 0; i < dots.size(); ++i)
      for (std::size_t j = i + 1; j < dots.size(); ++j)
        if (double((dots[i].first - dots[j].first).norm()) <= kMinDotSeparation)
          throw validation_error("geometry collision: dots of " + dots[i].second + " and " +
                                 dots[j].second + " are closer than 1e-9 nm");
  }

  std::vector<Cell<Scalar>> cells_;
  std::vector<DriverCell<Scalar>> drivers_;
  PhysicalConstants<Scalar> constants_;
};

/// n cells stacked head-to-tail along +y: centers (0, (k-1)*spacing), axes +y.
/// Requires spacing >= 2a so adjacent cells' dots do not collide.
template <typename Scalar>
Circuit<Scalar> longitudinal_array(Index n, Scalar spacing, Scalar a, Scalar gamma,
                                   PhysicalConstants<Scalar> constants = {}) {
  if (n < 1) throw validation_error("longitudinal_array: n must be >= 1");
  if (!(spacing >= 2 * a))
    throw validation_error("longitudinal_array: geometry collision, spacing must be >= 2a");
  std::vector<Cell<Scalar>> cells(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    cells[k].center = Vec2<Scalar>(0, Scalar(k) * spacing);
    cells[k].axis = Vec2<Scalar>(0, 1);
    cells[k].dot_separation = a;
    cells[k].gamma = gamma;
  }
  return Circuit<Scalar>(std::move(cells), {}, constants);
}

/// n cells side by side along +x: centers ((k-1)*spacing, 0), axes +y.
template <typename Scalar>
Circuit<Scalar> transverse_array(Index n, Scalar spacing, Scalar a, Scalar gamma,
                                 PhysicalConstants<Scalar> constants = {}) {
  if (n < 1) throw validation_error("transverse_array: n must be >= 1");
  if (!(spacing > Scalar(0)))
    throw validation_error("transverse_array: spacing must be positive");
  std::vector<Cell<Scalar>> cells(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    cells[k].center = Vec2<Scalar>(Scalar(k) * spacing, 0);
    cells[k].axis = Vec2<Scalar>(0, 1);
    cells[k].dot_separation = a;
    cells[k].gamma = gamma;
  }
  return Circuit<Scalar>(std::move(cells), {}, constants);
}

/// Field-input circuit: a longitudinal array of n_long cells along +y (the
/// field-sensing section) with a transverse row of n_trans cells attached to
/// the right of the middle longitudinal cell (the binary-wire section).
/// Cells 1..n_long are the longitudinal section; cells n_long+1.. follow at
/// x = j*trans_spacing on the middle cell's row. All axes +y.
template <typename Scalar>
Circuit<Scalar> field_input_circuit(Index n_long, Index n_trans, Scalar long_spacing,
                                    Scalar trans_spacing, Scalar a, Scalar gamma,
                                    PhysicalConstants<Scalar> constants = {}) {
  if (n_long < 1) throw validation_error("field_input_circuit: n_long must be >= 1");
  if (n_trans < 0) throw validation_error("field_input_circuit: n_trans must be >= 0");
  std::vector<Cell<Scalar>> cells;
  cells.reserve(static_cast<std::size_t>(n_long + n_trans));
  for (Index k = 0; k < n_long; ++k) {
    Cell<Scalar> c;
    c.center = Vec2<Scalar>(0, Scalar(k) * long_spacing);
    c.dot_separation = a;
    c.gamma = gamma;
    cells.push_back(c);
  }
  const Scalar y_mid = Scalar(n_long / 2) * long_spacing;
  for (Index j = 1; j <= n_trans; ++j) {
    Cell<Scalar> c;
    c.center = Vec2<Scalar>(Scalar(j) * trans_spacing, y_mid);
    c.dot_separation = a;
    c.gamma = gamma;
    cells.push_back(c);
  }
  return Circuit<Scalar>(std::move(cells), {}, constants);
}

}  // namespace qca
