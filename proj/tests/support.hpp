#pragma once

// Test-side oracles, kept independent of the library's computation paths:
// geometry and charge lists are rebuilt here from first principles.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qca/model.hpp"

namespace testsupport {

constexpr double kCoulombScale = 1.43996;  // eV*nm

struct Charge {
  double x, y, q;
};

// The three point charges of a two-dot cell in state m, from the geometric
// definition: electron at center -+ (a/2)*axis, half neutralizers on both.
inline std::array<Charge, 3> brute_cell_charges(double cx, double cy, double ux, double uy,
                                                double a, int m) {
  const double d0x = cx + 0.5 * a * ux, d0y = cy + 0.5 * a * uy;
  const double d1x = cx - 0.5 * a * ux, d1y = cy - 0.5 * a * uy;
  const double ex = (m == 1) ? d1x : d0x;
  const double ey = (m == 1) ? d1y : d0y;
  return {{{ex, ey, -1.0}, {d0x, d0y, 0.5}, {d1x, d1y, 0.5}}};
}

template <std::size_t A, std::size_t B>
double brute_coulomb(const std::array<Charge, A>& qa, const std::array<Charge, B>& qb) {
  double sum = 0;
  for (const auto& a : qa)
    for (const auto& b : qb)
      sum += a.q * b.q / std::hypot(a.x - b.x, a.y - b.y);
  return kCoulombScale * sum;
}

// 3x3 brute-force interaction of two cells, null self-cancelling terms and all.
inline double brute_pair_interaction(const qca::Cell<double>& ci, const qca::Cell<double>& cj,
                                     int mi, int mj) {
  const auto qa = brute_cell_charges(ci.center.x(), ci.center.y(), ci.axis.x(), ci.axis.y(),
                                     ci.dot_separation, mi);
  const auto qb = brute_cell_charges(cj.center.x(), cj.center.y(), cj.axis.x(), cj.axis.y(),
                                     cj.dot_separation, mj);
  return brute_coulomb(qa, qb);
}

// Closed-form side-by-side kink energy W * (1/s - 1/sqrt(s^2 + a^2)).
inline double closed_form_kink_energy(double a, double s) {
  return kCoulombScale * (1.0 / s - 1.0 / std::sqrt(s * s + a * a));
}

// Deterministic uniform double in [lo, hi), independent of library
// distribution implementations.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = double(rng() >> 11) * (1.0 / 9007199254740992.0);
  return lo + (hi - lo) * u;
}

inline qca::Vec2<double> random_unit_vector(std::mt19937_64& rng) {
  const double t = uniform(rng, 0.0, 2.0 * 3.14159265358979323846);
  return {std::cos(t), std::sin(t)};
}

}  // namespace testsupport
