#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qca/hamiltonian.hpp"
#include "qca/oracle.hpp"
#include "support.hpp"

using namespace qca;
using V = Vec2<double>;

namespace {

FieldSpec<double> uniform_y(double e_y) { return FieldSpec<double>::uniform(V(0, e_y)); }

}  // namespace

TEST_CASE("basis_index packs bit k-1 of p as the state of cell k") {
  const int b101[] = {1, 0, 1};
  CHECK(basis_index(b101) == 5);
  const int zeros[] = {0, 0, 0, 0};
  CHECK(basis_index(zeros) == 0);
  const int ones8[] = {1, 1, 1, 1, 1, 1, 1, 1};
  CHECK(basis_index(ones8) == 255);
  const int bad[] = {2};
  CHECK_THROWS_AS(basis_index(bad), validation_error);
}

TEST_CASE("basis_index round-trips with basis_bits") {
  for (Index n : {1, 3, 6}) {
    for (BasisIndex p = 0; p < (BasisIndex(1) << n); ++p) {
      const auto bits = basis_bits(p, n);
      CHECK(basis_index(bits) == p);
    }
  }
}

TEST_CASE("single driven cell block matches the ordered two-level form") {
  // |1>,|0> ordered basis block [[d/2, -g], [-g, -d/2]]; storage order is
  // p = 0 (|0>) then p = 1 (|1>).
  Cell<double> cell;
  cell.gamma = 0.002;
  DriverCell<double> drv;
  drv.center = V(1, 0);
  drv.polarization = 0.7;
  const Circuit<double> circ({cell}, {drv});
  const double e_y = 0.15;
  const auto rep = build(circ, uniform_y(e_y));

  const double delta = driver_detuning(drv, cell) + field_detuning(uniform_y(e_y), cell);
  const auto& h = rep.dense();
  REQUIRE(h.rows() == 2);
  CHECK(h(1, 1) == doctest::Approx(delta / 2).epsilon(1e-12));   // <1|H|1>
  CHECK(h(0, 0) == doctest::Approx(-delta / 2).epsilon(1e-12));  // <0|H|0>
  CHECK(h(0, 1) == doctest::Approx(-0.002));
  CHECK(h(1, 0) == doctest::Approx(-0.002));
}

TEST_CASE("two-cell diagonal at gamma 0 matches the classical levels up to a shift") {
  const auto circ = transverse_array<double>(2, 1, 1, 0.0);
  const double e_y = 0.2;
  const auto rep = build(circ, uniform_y(e_y));
  const auto lv = classical_levels_n2<double>(1, 1, e_y);
  const auto& d = rep.diagonal();
  // diag index p: bit0 = m_1, bit1 = m_2
  const double shift = d(0) - lv.e00;
  CHECK(d(1) - lv.e01 == doctest::Approx(shift).epsilon(1e-12));
  CHECK(d(2) - lv.e10 == doctest::Approx(shift).epsilon(1e-12));
  CHECK(d(3) - lv.e11 == doctest::Approx(shift).epsilon(1e-12));
}

TEST_CASE("classical_levels_n2 reproduces the level-crossing structure") {
  const double ek = kink_energy<double>(1, 1);
  const double eo = reference_field<double>(1, 1);

  const auto at0 = classical_levels_n2<double>(1, 1, 0);
  CHECK(at0.e00 == doctest::Approx(ek / 2).epsilon(1e-15));
  CHECK(at0.e01 == doctest::Approx(-ek / 2).epsilon(1e-15));
  CHECK(at0.e10 == doctest::Approx(-ek / 2).epsilon(1e-15));
  CHECK(at0.e11 == doctest::Approx(ek / 2).epsilon(1e-15));

  const auto cross = classical_levels_n2<double>(1, 1, eo);
  CHECK(cross.e11 == doctest::Approx(-ek / 2).epsilon(1e-12));  // triple degeneracy

  const auto strong = classical_levels_n2<double>(1, 1, 2 * eo);
  CHECK(strong.e11 == doctest::Approx(-1.5 * ek).epsilon(1e-12));
  CHECK(strong.e11 < strong.e01);
}

TEST_CASE("dense matrix is symmetric with -gamma on single-bit-flip pairs") {
  const auto circ = field_input_circuit<double>(3, 2, 2, 1, 1, 0.010);
  const auto rep = build(circ, uniform_y(0.1));
  const auto& h = rep.dense();
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  const Index dim = rep.dimension();
  for (Index p = 0; p < dim; ++p)
    for (Index q = p + 1; q < dim; ++q) {
      const auto x = static_cast<std::uint64_t>(p ^ q);
      const bool one_flip = std::popcount(x) == 1;
      if (one_flip)
        CHECK(h(p, q) == doctest::Approx(-0.010));
      else
        CHECK(h(p, q) == 0.0);
    }
}

TEST_CASE("dense and matrix-free forms agree on random vectors") {
  const auto circ = field_input_circuit<double>(3, 3, 2, 1, 1, 0.010);
  DriverCell<double> drv;
  drv.center = V(-2, 0);
  drv.polarization = 0.4;
  const Circuit<double> with_driver(circ.cells(), {drv}, circ.constants());
  const auto rep = build(with_driver, uniform_y(0.07));
  const auto& h = rep.dense();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    VecX<double> v(rep.dimension());
    for (Index i = 0; i < v.size(); ++i) v(i) = testsupport::uniform(rng, -1, 1);
    const VecX<double> a = rep.apply(v);
    const VecX<double> b = h * v;
    CHECK((a - b).norm() <= 1e-10 * b.norm());
  }
}

TEST_CASE("apply reproduces dense columns and is linear") {
  const auto circ = transverse_array<double>(3, 1, 1, 0.010);
  const auto rep = build(circ, uniform_y(0.3));
  const auto& h = rep.dense();
  const Index dim = rep.dimension();
  for (Index p = 0; p < dim; ++p) {
    VecX<double> e = VecX<double>::Zero(dim);
    e(p) = 1;
    CHECK((rep.apply(e) - h.col(p)).cwiseAbs().maxCoeff() < 1e-14);
  }
  std::mt19937_64 rng(3);
  VecX<double> u(dim), v(dim);
  for (Index i = 0; i < dim; ++i) {
    u(i) = testsupport::uniform(rng, -1, 1);
    v(i) = testsupport::uniform(rng, -1, 1);
  }
  const double a = 0.37, b = -1.21;
  CHECK((rep.apply(a * u + b * v) - (a * rep.apply(u) + b * rep.apply(v))).cwiseAbs().maxCoeff() <
        1e-12);

  VecX<double> wrong(dim + 1);
  CHECK_THROWS_AS(rep.apply(wrong), validation_error);
}

TEST_CASE("apply maps an eigenvector to lambda times itself") {
  const auto circ = transverse_array<double>(2, 1, 1, 0.001);
  const auto rep = build(circ, uniform_y(0.1));
  Eigen::SelfAdjointEigenSolver<MatX<double>> es(rep.dense());
  const VecX<double> v = es.eigenvectors().col(0);
  CHECK((rep.apply(v) - es.eigenvalues()(0) * v).norm() < 1e-12);
}

TEST_CASE("diagonal matches the classical enumeration oracle exhaustively") {
  // several geometries, all dims enumerated
  std::vector<Circuit<double>> circuits;
  circuits.push_back(transverse_array<double>(4, 1, 1, 0.010));
  circuits.push_back(longitudinal_array<double>(3, 2, 1, 0.001));
  circuits.push_back(field_input_circuit<double>(3, 4, 2, 1, 1, 0.010));
  DriverCell<double> drv;
  drv.center = V(-1.5, 0.5);
  drv.polarization = -0.6;
  circuits.push_back(Circuit<double>(transverse_array<double>(3, 1.2, 1, 0.01).cells(), {drv}));
  for (const auto& circ : circuits) {
    const auto field = uniform_y(0.13);
    const auto rep = build(circ, field);
    const auto spec = classical_enumerate(circ, field);
    CHECK((rep.diagonal() - spec.energies).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("spectrum is invariant under field reversal for driverless circuits") {
  for (const auto& circ : {transverse_array<double>(3, 1, 1, 0.010),
                           field_input_circuit<double>(3, 2, 2, 1, 1, 0.010)}) {
    Eigen::SelfAdjointEigenSolver<MatX<double>> plus(build(circ, uniform_y(0.21)).dense());
    Eigen::SelfAdjointEigenSolver<MatX<double>> minus(build(circ, uniform_y(-0.21)).dense());
    CHECK((plus.eigenvalues() - minus.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("build rejects oversized circuits") {
  BuildOptions opts;
  opts.max_cells = 3;
  const auto circ = transverse_array<double>(4, 1, 1, 0.010);
  CHECK_THROWS_AS(build(circ, uniform_y(0), opts), validation_error);
  CHECK_NOTHROW(build(circ, uniform_y(0)));  // default cap admits it
}

TEST_CASE("core templates instantiate for other scalars") {
  using S = long double;
  const auto ek = kink_energy<S>(1, 1);
  CHECK(double(ek) == doctest::Approx(0.42176).epsilon(1e-4));
  const auto lv = classical_levels_n2<S>(1, 1, S(0.1));
  CHECK(double(lv.e01) == doctest::Approx(-double(ek) / 2).epsilon(1e-12));
  Cell<S> cell;
  cell.gamma = S(0.001);
  const Circuit<S> circ({cell});
  const auto rep = build(circ, FieldSpec<S>::uniform(Vec2<S>(0, 0.1)));
  CHECK(double(rep.diagonal()(1)) == doctest::Approx(-0.05).epsilon(1e-12));
}

TEST_CASE("dense form is gated by the threshold") {
  BuildOptions opts;
  opts.dense_threshold = 2;
  const auto circ = transverse_array<double>(3, 1, 1, 0.010);
  const auto rep = build(circ, uniform_y(0), opts);
  CHECK(!rep.dense_available());
  CHECK_THROWS_AS(rep.dense(), validation_error);
  CHECK_NOTHROW(rep.diagonal());
}
