#pragma once

#include "tensorres/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace tensorres {

// 1-based multi-index into [N]^p.
using MultiIndex = std::vector<int>;

// Real symmetric order-p tensor on R^N with exact entries.
//
// Only one representative per orbit of the symmetric group is stored: the
// ascending-sorted multi-index. Absent keys are zero and stored values are
// never zero. Consumers that sum over all (unsorted) indices must weight each
// stored entry by permutation_count().
class SymmetricTensor {
 public:
  using Entries = std::map<MultiIndex, Rational>;

  SymmetricTensor(int order, int dimension);

  int order() const { return order_; }
  int dimension() const { return dimension_; }
  const Entries& entries() const { return entries_; }
  std::size_t nonzero_count() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  // Value at any permutation of `index`. Throws std::domain_error on a bad
  // index length or an out-of-range component.
  Rational get(const MultiIndex& index) const;

  // Sets the orbit of `index`; zero erases it.
  void set(const MultiIndex& index, const Rational& value);

  // Multiplies every entry by c.
  SymmetricTensor scaled(const Rational& c) const;

  friend bool operator==(const SymmetricTensor&, const SymmetricTensor&) = default;

 private:
  MultiIndex canonical(const MultiIndex& index) const;

  int order_;
  int dimension_;
  Entries entries_;
};

// Number of distinct rearrangements of a multi-index: p! / prod(mult!).
std::uint64_t permutation_count(const MultiIndex& index);

// Calls f on every ascending multi-index of length p over [N].
void for_each_sorted_index(int p, int n, const std::function<void(const MultiIndex&)>& f);

inline Rational get_entry(const SymmetricTensor& t, const MultiIndex& index) { return t.get(index); }

using EntryFunction = std::function<Rational(const MultiIndex&)>;

// T_i = average of A over all p! permutations of i.
SymmetricTensor from_dense_symmetrization(int order, int dimension, const EntryFunction& a);

// Tr(X^k) for an order-2 tensor, by exact repeated multiplication.
Rational matrix_power_trace(const SymmetricTensor& x, int k);

// Dense row-major N x N copy of an order-2 tensor.
std::vector<Rational> dense_matrix(const SymmetricTensor& x);

// Frobenius norm over all unsorted indices, in floating point.
double frobenius_norm(const SymmetricTensor& t);

}  // namespace tensorres
