#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qca/errors.hpp"
#include "qca/hamiltonian.hpp"
#include "qca/types.hpp"

namespace qca {

template <typename Scalar>
struct GroundStateResult {
  Scalar energy = 0;            // eV
  VecX<Scalar> vector;          // unit norm, sign-fixed
  Scalar gap = 0;               // E_1 - E_0, eV
  bool degenerate = false;      // gap below the degeneracy tolerance
  VecX<Scalar> polarizations;   // P_k per cell
  std::string warning;          // non-empty when degenerate
};

struct SolverOptions {
  std::uint64_t lanczos_seed = 20240601;
  double lanczos_tol = 1e-9;        // Ritz residual bound, eV
  Index lanczos_max_iter = 400;
  double degeneracy_tol = 1e-9;     // eV
  double residual_bound = 1e-8;     // times max(1, |E|)
  Index dense_cutoff = 6;           // ground_state() goes matrix-free above this
};

/// P_k = sum_p |v_p|^2 * (+1 if bit k-1 of p is set, else -1).
template <typename Scalar>
VecX<Scalar> polarizations(const VecX<Scalar>& v, Index n_cells) {
  if (v.size() != (Index(1) << n_cells))
    throw validation_error("polarizations: vector has dimension " + std::to_string(v.size()) +
                           ", expected 2^" + std::to_string(n_cells));
  VecX<Scalar> p = VecX<Scalar>::Zero(n_cells);
  for (Index i = 0; i < v.size(); ++i) {
    const Scalar w = v(i) * v(i);
    for (Index k = 0; k < n_cells; ++k) p(k) += ((i >> k) & 1) ? w : -w;
  }
  return p;
}

namespace detail {

// Largest-magnitude amplitude made positive (first such index on ties), so
// eigenvector output is reproducible byte for byte.
template <typename Scalar>
void fix_sign(VecX<Scalar>& v) {
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < Scalar(0)) v = -v;
}

// Deterministic start vector: raw mt19937_64 draws scaled to [-1, 1), so the
// sequence does not depend on the standard library's distribution details.
template <typename Scalar>
VecX<Scalar> seeded_vector(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  VecX<Scalar> v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double u = double(rng() >> 11) * (1.0 / 9007199254740992.0);  // [0, 1)
    v(i) = Scalar(2.0 * u - 1.0);
  }
  return v;
}

template <typename Scalar>
GroundStateResult<Scalar> finish_result(const HamiltonianRep<Scalar>& rep, Scalar energy,
                                        VecX<Scalar> v, Scalar gap, const SolverOptions& opts) {
  fix_sign(v);
  GroundStateResult<Scalar> r;
  r.energy = energy;
  r.gap = gap;
  r.degenerate = double(gap) < opts.degeneracy_tol;
  if (r.degenerate)
    r.warning = "ground state degenerate within " + std::to_string(opts.degeneracy_tol) +
                " eV; polarizations describe the returned vector only";
  r.polarizations = polarizations(v, rep.n_cells());
  r.vector = std::move(v);
  return r;
}

}  // namespace detail

/// Lowest eigenpair of the dense symmetric matrix; gap from the two lowest
/// eigenvalues.
template <typename Scalar>
GroundStateResult<Scalar> ground_state_dense(const HamiltonianRep<Scalar>& rep,
                                             SolverOptions opts = {}) {
  const MatX<Scalar>& h = rep.dense();
  Eigen::SelfAdjointEigenSolver<MatX<Scalar>> es(h);
  if (es.info() != Eigen::Success)
    throw solver_error("dense eigensolver did not converge");
  const Scalar energy = es.eigenvalues()(0);
  const Scalar gap = es.eigenvalues()(1) - energy;
  VecX<Scalar> v = es.eigenvectors().col(0);
  const Scalar resid = (h * v - energy * v).norm();
  const Scalar bound = Scalar(opts.residual_bound) * std::max<Scalar>(1, std::abs(energy));
  if (!(resid <= bound))
    throw solver_error("dense eigensolver residual " + std::to_string(double(resid)) +
                       " exceeds bound");
  return detail::finish_result(rep, energy, std::move(v), gap, opts);
}

/// Matrix-free Lanczos with full reorthogonalization. Deterministic for a
/// given seed; gap from the two lowest Ritz values.
template <typename Scalar>
GroundStateResult<Scalar> ground_state_lanczos(const HamiltonianRep<Scalar>& rep,
                                               std::uint64_t seed, double tol = 1e-9,
                                               Index max_iter = 400, SolverOptions opts = {}) {
  const Index dim = rep.dimension();
  const Index m_max = std::min<Index>(dim, std::max<Index>(2, max_iter));
  const Scalar scale =
      rep.diagonal().cwiseAbs().maxCoeff() + rep.gammas().cwiseAbs().sum();
  const Scalar breakdown = Scalar(1e-13) * std::max<Scalar>(1, scale);
  const Index check_stride = dim <= 64 ? 1 : 5;

  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<VecX<Scalar>> basis;
    std::vector<Scalar> alpha, beta;
    VecX<Scalar> v = detail::seeded_vector<Scalar>(dim, seed + std::uint64_t(attempt));
    v.normalize();
    basis.push_back(std::move(v));

    Eigen::SelfAdjointEigenSolver<MatX<Scalar>> tri;
    auto ritz = [&](Index m) {
      MatX<Scalar> t = MatX<Scalar>::Zero(m, m);
      for (Index i = 0; i < m; ++i) t(i, i) = alpha[static_cast<std::size_t>(i)];
      for (Index i = 0; i + 1 < m; ++i) {
        t(i, i + 1) = beta[static_cast<std::size_t>(i)];
        t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      tri.compute(t);
    };

    bool converged = false;
    Index m_used = 0;
    for (Index j = 0; j < m_max && !converged; ++j) {
      VecX<Scalar> w = rep.apply(basis[static_cast<std::size_t>(j)]);
      const Scalar a = basis[static_cast<std::size_t>(j)].dot(w);
      alpha.push_back(a);
      w -= a * basis[static_cast<std::size_t>(j)];
      if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * basis[static_cast<std::size_t>(j - 1)];
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) w -= b.dot(w) * b;
      const Scalar bnorm = w.norm();
      const Index m = j + 1;
      if (m >= 2 && (m % check_stride == 0 || m == m_max || bnorm <= breakdown)) {
        ritz(m);
        const Scalar theta0 = tri.eigenvalues()(0);
        const Scalar theta1 = tri.eigenvalues()(1);
        const Scalar res0 = bnorm * std::abs(tri.eigenvectors()(m - 1, 0));
        const Scalar res1 = bnorm * std::abs(tri.eigenvectors()(m - 1, 1));
        const bool ok0 = res0 <= Scalar(tol) * std::max<Scalar>(1, std::abs(theta0));
        const bool ok1 = res1 <= Scalar(10 * tol) * std::max<Scalar>(1, std::abs(theta1));
        if ((ok0 && ok1) || bnorm <= breakdown) {
          converged = true;
          m_used = m;
        }
      }
      if (!converged) {
        if (bnorm <= breakdown) break;  // invariant subspace too small; restart
        beta.push_back(bnorm);
        basis.push_back(w / bnorm);
      }
    }
    if (!converged) {
      if (basis.size() >= static_cast<std::size_t>(m_max))
        throw solver_error("lanczos: no convergence after " + std::to_string(m_max) +
                           " iterations");
      continue;  // early breakdown with a single Ritz value; retry with a new seed
    }

    const Scalar energy = tri.eigenvalues()(0);
    const Scalar gap = tri.eigenvalues()(1) - energy;
    VecX<Scalar> x = VecX<Scalar>::Zero(dim);
    for (Index i = 0; i < m_used; ++i)
      x += tri.eigenvectors()(i, 0) * basis[static_cast<std::size_t>(i)];
    x.normalize();
    const Scalar resid = (rep.apply(x) - energy * x).norm();
    const Scalar bound = std::max<Scalar>(Scalar(tol) * 10,
                                          Scalar(opts.residual_bound)) *
                         std::max<Scalar>(1, std::abs(energy));
    if (!(resid <= bound))
      throw solver_error("lanczos residual " + std::to_string(double(resid)) +
                         " exceeds bound " + std::to_string(double(bound)));
    return detail::finish_result(rep, energy, std::move(x), gap, opts);
  }
  throw solver_error("lanczos: Krylov space collapsed on every restart");
}

template <typename Scalar>
GroundStateResult<Scalar> ground_state_lanczos(const HamiltonianRep<Scalar>& rep,
                                               SolverOptions opts) {
  return ground_state_lanczos(rep, opts.lanczos_seed, opts.lanczos_tol, opts.lanczos_max_iter,
                              opts);
}

/// Dense for small circuits, matrix-free Lanczos otherwise. Full
/// eigendecomposition cost grows as 8^N while one Lanczos run stays close to
/// linear in the state count, so the cutoff sits well below the dense
/// materialization threshold.
template <typename Scalar>
GroundStateResult<Scalar> ground_state(const HamiltonianRep<Scalar>& rep,
                                       SolverOptions opts = {}) {
  if (rep.dense_available() && rep.n_cells() <= opts.dense_cutoff)
    return ground_state_dense(rep, opts);
  return ground_state_lanczos(rep, opts);
}

/// Ground-state polarization of a single cell beside a driver of polarization
/// p_drv at the given center spacing, in a uniform field (0, e_y).
template <typename Scalar>
Scalar single_cell_response(Scalar p_drv, Scalar e_y, Scalar a, Scalar spacing, Scalar gamma,
                            const PhysicalConstants<Scalar>& constants = {}) {
  if (!(p_drv >= Scalar(-1) && p_drv <= Scalar(1)))
    throw validation_error("single_cell_response: |P_drv| must be <= 1");
  Cell<Scalar> cell;
  cell.dot_separation = a;
  cell.gamma = gamma;
  DriverCell<Scalar> driver;
  driver.center = Vec2<Scalar>(spacing, 0);
  driver.dot_separation = a;
  driver.polarization = p_drv;
  Circuit<Scalar> circuit({cell}, {driver}, constants);
  const auto field = FieldSpec<Scalar>::uniform(Vec2<Scalar>(0, e_y));
  return ground_state_dense(build(circuit, field)).polarizations(0);
}

}  // namespace qca
