#include "tensorres/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tensorres {

SymmetricTensor::SymmetricTensor(int order, int dimension) : order_(order), dimension_(dimension) {
  if (order < 1) throw std::domain_error("tensor order must be positive");
  if (dimension < 1) throw std::domain_error("tensor dimension must be positive");
}

MultiIndex SymmetricTensor::canonical(const MultiIndex& index) const {
  if (static_cast<int>(index.size()) != order_)
    throw std::domain_error("index has length " + std::to_string(index.size()) + ", expected " +
                            std::to_string(order_));
  for (int i : index)
    if (i < 1 || i > dimension_)
      throw std::domain_error("index component " + std::to_string(i) + " outside 1.." +
                              std::to_string(dimension_));
  MultiIndex sorted = index;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

Rational SymmetricTensor::get(const MultiIndex& index) const {
  auto it = entries_.find(canonical(index));
  return it == entries_.end() ? Rational(0) : it->second;
}

void SymmetricTensor::set(const MultiIndex& index, const Rational& value) {
  MultiIndex key = canonical(index);
  if (value == 0)
    entries_.erase(key);
  else
    entries_[std::move(key)] = value;
}

SymmetricTensor SymmetricTensor::scaled(const Rational& c) const {
  SymmetricTensor out(order_, dimension_);
  if (c == 0) return out;
  for (const auto& [idx, v] : entries_) out.entries_.emplace(idx, v * c);
  return out;
}

std::uint64_t permutation_count(const MultiIndex& index) {
  MultiIndex sorted = index;
  std::sort(sorted.begin(), sorted.end());
  BigInt count = factorial(static_cast<long>(sorted.size()));
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      count /= factorial(static_cast<long>(run));
      run = 1;
    }
  }
  return count.get_ui();
}

void for_each_sorted_index(int p, int n, const std::function<void(const MultiIndex&)>& f) {
  MultiIndex idx(static_cast<std::size_t>(p), 1);
  while (true) {
    f(idx);
    int pos = p - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n) --pos;
    if (pos < 0) return;
    int next = idx[static_cast<std::size_t>(pos)] + 1;
    for (int j = pos; j < p; ++j) idx[static_cast<std::size_t>(j)] = next;
  }
}

SymmetricTensor from_dense_symmetrization(int order, int dimension, const EntryFunction& a) {
  SymmetricTensor out(order, dimension);
  for_each_sorted_index(order, dimension, [&](const MultiIndex& idx) {
    // Averaging over distinct rearrangements equals averaging over all p!
    // permutations, since each rearrangement is hit equally often.
    MultiIndex perm = idx;
    Rational sum = 0;
    long distinct = 0;
    do {
      sum += a(perm);
      ++distinct;
    } while (std::next_permutation(perm.begin(), perm.end()));
    sum /= distinct;
    out.set(idx, sum);
  });
  return out;
}

std::vector<Rational> dense_matrix(const SymmetricTensor& x) {
  if (x.order() != 2) throw std::domain_error("expected an order-2 tensor");
  const auto n = static_cast<std::size_t>(x.dimension());
  std::vector<Rational> m(n * n);
  for (const auto& [idx, v] : x.entries()) {
    auto i = static_cast<std::size_t>(idx[0] - 1);
    auto j = static_cast<std::size_t>(idx[1] - 1);
    m[i * n + j] = v;
    m[j * n + i] = v;
  }
  return m;
}

Rational matrix_power_trace(const SymmetricTensor& x, int k) {
  if (x.order() != 2) throw std::domain_error("matrix_power_trace needs an order-2 tensor");
  if (k < 0) throw std::domain_error("negative matrix power");
  const auto n = static_cast<std::size_t>(x.dimension());
  if (k == 0) return Rational(x.dimension());
  const std::vector<Rational> base = dense_matrix(x);
  std::vector<Rational> power = base;
  std::vector<Rational> next(n * n);
  for (int step = 1; step < k; ++step) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += power[i * n + l] * base[l * n + j];
        next[i * n + j] = s;
      }
    std::swap(power, next);
  }
  Rational trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += power[i * n + i];
  return trace;
}

double frobenius_norm(const SymmetricTensor& t) {
  double s = 0;
  for (const auto& [idx, v] : t.entries()) {
    double d = v.get_d();
    s += static_cast<double>(permutation_count(idx)) * d * d;
  }
  return std::sqrt(s);
}

}  // namespace tensorres
