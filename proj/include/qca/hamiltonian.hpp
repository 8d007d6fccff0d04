#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qca/electrostatics.hpp"
#include "qca/errors.hpp"
#include "qca/model.hpp"
#include "qca/types.hpp"

namespace qca {

/// Product-basis label: bit k-1 of p is the state m_k of cell k.
using BasisIndex = std::uint64_t;

inline BasisIndex basis_index(std::span<const int> bits) {
  if (bits.size() > 63) throw validation_error("basis_index: too many cells");
  BasisIndex p = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != 0 && bits[k] != 1)
      throw validation_error("basis_index: bits must be 0 or 1");
    p |= BasisIndex(bits[k]) << k;
  }
  return p;
}

inline std::vector<int> basis_bits(BasisIndex p, Index n_cells) {
  std::vector<int> bits(static_cast<std::size_t>(n_cells));
  for (Index k = 0; k < n_cells; ++k) bits[k] = int((p >> k) & 1u);
  return bits;
}

struct BuildOptions {
  Index max_cells = 24;       // caps the 2^N state space
  Index dense_threshold = 12; // dense matrix available for N <= this
};

/// Classical energy levels of the two-cell side-by-side array, in the
/// symmetric zero conventions (intercell zero halfway between kinked and
/// unkinked, field zero with the electron midway between the dots).
template <typename Scalar>
struct ClassicalLevels {
  Scalar e00, e01, e10, e11;  // eV
};

template <typename Scalar>
ClassicalLevels<Scalar> classical_levels_n2(Scalar a, Scalar spacing, Scalar e_y,
                                            const PhysicalConstants<Scalar>& constants = {}) {
  const Scalar ek = kink_energy(a, spacing, constants);
  const Scalar f = constants.elementary_charge * e_y * a;
  return {ek / 2 + f, -ek / 2, -ek / 2, ek / 2 - f};
}

/// Circuit Hamiltonian over the 2^N product basis.
///
/// Diagonal at p: sum_k s_k * (delta_field_k + delta_driver_k)/2 with
/// s_k = +1 when bit k-1 of p is 1, plus sum_{i<j} u_ij(m_i, m_j) from the
/// pairwise tables (raw Coulomb sums, no per-pair recentering).
/// Off-diagonal: -gamma_k between index pairs differing in bit k-1 only.
/// The per-cell 2x2 blocks follow the sigma_z = |1><1| - |0><0| convention.
///
/// Immutable after construction; apply() and the accessors are safe to call
/// concurrently. The diagonal and the dense matrix materialize lazily.
template <typename Scalar>
class HamiltonianRep {
 public:
  HamiltonianRep(const Circuit<Scalar>& circuit, const FieldSpec<Scalar>& field,
                 BuildOptions options = {})
      : n_cells_(circuit.n_cells()),
        dense_threshold_(options.dense_threshold),
        cache_(std::make_unique<Cache>()) {
    if (n_cells_ > options.max_cells)
      throw validation_error("hamiltonian: " + std::to_string(n_cells_) +
                             " cells exceed the configured maximum of " +
                             std::to_string(options.max_cells));
    const auto& cells = circuit.cells();
    const auto& constants = circuit.constants();
    deltas_field_.resize(n_cells_);
    deltas_driver_.resize(n_cells_);
    gammas_.resize(n_cells_);
    for (Index k = 0; k < n_cells_; ++k) {
      deltas_field_(k) = field_detuning(field, cells[k], constants);
      Scalar drv = 0;
      for (const auto& d : circuit.drivers()) drv += driver_detuning(d, cells[k], constants);
      deltas_driver_(k) = drv;
      gammas_(k) = cells[k].gamma;
    }
    pair_tables_.resize(static_cast<std::size_t>(n_cells_ * (n_cells_ - 1) / 2));
    for (Index j = 1; j < n_cells_; ++j)
      for (Index i = 0; i < j; ++i)
        pair_tables_[pair_slot(i, j)] = pair_table(cells[i], cells[j], constants);
  }

  Index n_cells() const { return n_cells_; }
  Index dimension() const { return Index(1) << n_cells_; }
  const VecX<Scalar>& field_detunings() const { return deltas_field_; }
  const VecX<Scalar>& driver_detunings() const { return deltas_driver_; }
  const VecX<Scalar>& gammas() const { return gammas_; }

  /// Pair energies for cells i < j (0-based).
  const PairTable<Scalar>& pair_energies(Index i, Index j) const {
    return pair_tables_[pair_slot(i, j)];
  }

  const VecX<Scalar>& diagonal() const {
    std::call_once(cache_->diag_once, [this] { cache_->diag = compute_diagonal(); });
    return cache_->diag;
  }

  bool dense_available() const { return n_cells_ <= dense_threshold_; }

  const MatX<Scalar>& dense() const {
    if (!dense_available())
      throw validation_error("hamiltonian: dense form unavailable for " +
                             std::to_string(n_cells_) + " cells (threshold " +
                             std::to_string(dense_threshold_) + ")");
    std::scoped_lock lock(cache_->dense_mutex);
    if (!cache_->dense) cache_->dense = compute_dense();
    return *cache_->dense;
  }

  /// y = H x in O(N 2^N) work: diagonal product plus one bit-flip-paired
  /// accumulation of -gamma_k per cell.
  VecX<Scalar> apply(const VecX<Scalar>& x) const {
    if (x.size() != dimension())
      throw validation_error("hamiltonian apply: vector has dimension " +
                             std::to_string(x.size()) + ", expected " +
                             std::to_string(dimension()));
    VecX<Scalar> y = diagonal().cwiseProduct(x);
    const Index dim = dimension();
    for (Index k = 0; k < n_cells_; ++k) {
      const Scalar g = gammas_(k);
      if (g == Scalar(0)) continue;
      const Index stride = Index(1) << k;
      for (Index base = 0; base < dim; base += 2 * stride) {
        y.segment(base, stride) -= g * x.segment(base + stride, stride);
        y.segment(base + stride, stride) -= g * x.segment(base, stride);
      }
    }
    return y;
  }

 private:
  struct Cache {
    std::once_flag diag_once;
    VecX<Scalar> diag;
    std::mutex dense_mutex;
    std::optional<MatX<Scalar>> dense;
  };

  std::size_t pair_slot(Index i, Index j) const {
    return static_cast<std::size_t>(j * (j - 1) / 2 + i);
  }

  Scalar pair_value(Index k, Index j, int m_k, int m_j) const {
    return k < j ? pair_tables_[pair_slot(k, j)].u[m_k][m_j]
                 : pair_tables_[pair_slot(j, k)].u[m_j][m_k];
  }

  VecX<Scalar> compute_diagonal() const {
    const Index dim = dimension();
    VecX<Scalar> diag(dim);
    Scalar e0 = 0;
    for (Index k = 0; k < n_cells_; ++k) e0 -= (deltas_field_(k) + deltas_driver_(k)) / 2;
    for (Index j = 1; j < n_cells_; ++j)
      for (Index i = 0; i < j; ++i) e0 += pair_tables_[pair_slot(i, j)].u[0][0];
    diag(0) = e0;
    // diag(p) from diag(p with its lowest set bit cleared): only cell k flips.
    for (Index p = 1; p < dim; ++p) {
      const Index q = p & (p - 1);
      const Index k = std::countr_zero(static_cast<std::uint64_t>(p));
      Scalar d = diag(q) + deltas_field_(k) + deltas_driver_(k);
      for (Index j = 0; j < n_cells_; ++j) {
        if (j == k) continue;
        const int m_j = int((q >> j) & 1);
        d += pair_value(k, j, 1, m_j) - pair_value(k, j, 0, m_j);
      }
      diag(p) = d;
    }
    return diag;
  }

  MatX<Scalar> compute_dense() const {
    const Index dim = dimension();
    MatX<Scalar> h = MatX<Scalar>::Zero(dim, dim);
    h.diagonal() = diagonal();
    for (Index k = 0; k < n_cells_; ++k) {
      const Scalar g = gammas_(k);
      if (g == Scalar(0)) continue;
      const Index bit = Index(1) << k;
      for (Index p = 0; p < dim; ++p)
        if (!(p & bit)) {
          h(p, p | bit) = -g;
          h(p | bit, p) = -g;
        }
    }
    return h;
  }

  Index n_cells_;
  Index dense_threshold_;
  VecX<Scalar> deltas_field_;
  VecX<Scalar> deltas_driver_;
  VecX<Scalar> gammas_;
  std::vector<PairTable<Scalar>> pair_tables_;
  std::unique_ptr<Cache> cache_;
};

template <typename Scalar>
HamiltonianRep<Scalar> build(const Circuit<Scalar>& circuit, const FieldSpec<Scalar>& field,
                             BuildOptions options = {}) {
  return HamiltonianRep<Scalar>(circuit, field, options);
}

template <typename Scalar>
VecX<Scalar> apply(const HamiltonianRep<Scalar>& rep, const VecX<Scalar>& x) {
  return rep.apply(x);
}

}  // namespace qca
