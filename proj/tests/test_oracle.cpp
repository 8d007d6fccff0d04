#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "qca/hamiltonian.hpp"
#include "qca/oracle.hpp"
#include "support.hpp"

using namespace qca;
using V = Vec2<double>;

namespace {

FieldSpec<double> uniform_y(double e_y) { return FieldSpec<double>::uniform(V(0, e_y)); }

// Random scattered circuit with safe pairwise separations.
Circuit<double> random_circuit(std::mt19937_64& rng, Index n, bool with_driver) {
  std::vector<Cell<double>> cells(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    cells[k].center = V(3.5 * double(k) + testsupport::uniform(rng, -0.4, 0.4),
                        testsupport::uniform(rng, -1.5, 1.5));
    cells[k].axis = testsupport::random_unit_vector(rng);
    cells[k].dot_separation = testsupport::uniform(rng, 0.6, 1.4);
    cells[k].gamma = testsupport::uniform(rng, 0.0, 0.05);
  }
  std::vector<DriverCell<double>> drivers;
  if (with_driver) {
    DriverCell<double> d;
    d.center = V(-4.0, testsupport::uniform(rng, -1, 1));
    d.axis = testsupport::random_unit_vector(rng);
    d.polarization = testsupport::uniform(rng, -1, 1);
    drivers.push_back(d);
  }
  return Circuit<double>(std::move(cells), std::move(drivers));
}

}  // namespace

TEST_CASE("transverse pair: degenerate anti-aligned minimum below the crossing") {
  const auto circ = transverse_array<double>(2, 1, 1, 0.001);
  const double eo = reference_field<double>(1, 1);
  const auto spec = classical_enumerate(circ, uniform_y(0.6 * eo));
  CHECK(spec.min_degenerate);
  REQUIRE(spec.argmin_all.size() == 2);
  CHECK(spec.argmin_all[0] == 1);  // |01>
  CHECK(spec.argmin_all[1] == 2);  // |10>
}

TEST_CASE("transverse pair: aligned minimum above the crossing") {
  const auto circ = transverse_array<double>(2, 1, 1, 0.001);
  const double eo = reference_field<double>(1, 1);
  const auto spec = classical_enumerate(circ, uniform_y(1.4 * eo));
  CHECK(!spec.min_degenerate);
  CHECK(spec.argmin == 3);  // |11>
}

TEST_CASE("transverse triple: alternating minimum until twice the reference field") {
  const auto circ = transverse_array<double>(3, 1, 1, 0.010);
  const double eo = reference_field<double>(1, 1);
  for (const double f : {0.2, 1.0, 1.9}) {
    const auto spec = classical_enumerate(circ, uniform_y(f * eo));
    CHECK(spec.argmin == 5);  // |101>
  }
  for (const double f : {2.1, 3.0}) {
    const auto spec = classical_enumerate(circ, uniform_y(f * eo));
    CHECK(spec.argmin == 7);  // |111>
  }
}

TEST_CASE("enumeration size guard") {
  const auto circ = transverse_array<double>(21, 1, 1, 0.010);
  CHECK_THROWS_AS(classical_enumerate(circ, uniform_y(0)), validation_error);
}

TEST_CASE("hamiltonian diagonal equals enumeration on random circuits") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 1 + Index(rng() % 7);
    const auto circ = random_circuit(rng, n, trial % 3 == 0);
    const double e_y = testsupport::uniform(rng, -0.5, 0.5);
    const double e_x = testsupport::uniform(rng, -0.5, 0.5);
    const auto field = FieldSpec<double>::uniform(V(e_x, e_y));
    const auto rep = build(circ, field);
    const auto spec = classical_enumerate(circ, field);
    CHECK((rep.diagonal() - spec.energies).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("sorted diagonal equals sorted enumeration with regions fields") {
  std::mt19937_64 rng(77);
  const auto circ = field_input_circuit<double>(3, 3, 2, 1, 1, 0.010);
  FieldRegion<double> r{{V(-1, -3), V(0.5, 7)}, V(0, 0.3)};
  const auto field = FieldSpec<double>::regions({r}, V(0, 0.02));
  auto diag = build(circ, field).diagonal();
  auto ener = classical_enumerate(circ, field).energies;
  std::sort(diag.data(), diag.data() + diag.size());
  std::sort(ener.data(), ener.data() + ener.size());
  CHECK((diag - ener).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("argmin is consistent with the energy vector") {
  std::mt19937_64 rng(31);
  const auto circ = random_circuit(rng, 5, true);
  const auto spec = classical_enumerate(circ, uniform_y(0.2));
  const double emin = spec.energies.minCoeff();
  CHECK(spec.energies(spec.argmin) == emin);
  for (const auto p : spec.argmin_all) CHECK(spec.energies(p) - emin <= 1e-12);
  CHECK(std::is_sorted(spec.argmin_all.begin(), spec.argmin_all.end()));
}

TEST_CASE("two_level_analytic tracks the dense solver over random detunings") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 1000; ++t) {
    const double delta = testsupport::uniform(rng, -1.0, 1.0);
    const double gamma = testsupport::uniform(rng, 0.0, 0.06);
    Cell<double> cell;
    cell.gamma = gamma;
    const Circuit<double> circ({cell});
    // realize the detuning through the field: delta_E = -E_y * a
    const auto rep = build(circ, uniform_y(-delta));
    Eigen::SelfAdjointEigenSolver<MatX<double>> es(rep.dense());
    const auto ref = two_level_analytic(delta, gamma);
    CHECK(std::abs(es.eigenvalues()(0) - ref.energy) < 1e-10);
    VecX<double> v = es.eigenvectors().col(0);
    const double p = v(1) * v(1) - v(0) * v(0);
    if (gamma > 1e-12)  // at gamma = 0 the degenerate-at-origin convention differs
      CHECK(std::abs(p - ref.polarization) < 1e-8);
  }
}
