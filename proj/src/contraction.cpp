#include "tensorres/contraction.hpp"

#include "tensorres/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace tensorres {

namespace {

template <class Scalar>
Scalar convert(const Rational& r) {
  if constexpr (std::is_same_v<Scalar, double>)
    return r.get_d();
  else
    return r;
}

void check_degrees(const SymmetricTensor& t, const ContractionGraph& g) {
  for (int d : g.degrees())
    if (d != t.order())
      throw std::domain_error("vertex degree " + std::to_string(d) + " does not match tensor order " +
                              std::to_string(t.order()));
}

// Calls f once per assignment of labels 0..n-1 to `edges`, writing them into `label`.
template <class F>
void for_each_assignment(const std::vector<int>& edges, int n, std::vector<int>& label, F&& f) {
  for (int e : edges) label[static_cast<std::size_t>(e)] = 0;
  while (true) {
    f();
    std::size_t j = edges.size();
    while (j > 0) {
      --j;
      auto e = static_cast<std::size_t>(edges[j]);
      if (++label[e] < n) break;
      label[e] = 0;
      if (j == 0) return;
    }
    if (edges.empty()) return;
  }
}

std::uint64_t checked_power(int n, std::size_t m, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < m; ++i) {
    r *= static_cast<std::uint64_t>(n);
    if (r > cap)
      throw ResourceError("dense contraction intermediate exceeds " + std::to_string(cap) + " entries");
  }
  return r;
}

template <class Scalar>
struct Block {
  std::vector<int> legs;  // sorted edge ids
  std::vector<Scalar> data;
};

template <class Scalar>
std::size_t flat_index(const Block<Scalar>& b, const std::vector<int>& label, int n) {
  std::size_t idx = 0;
  for (int e : b.legs) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(label[static_cast<std::size_t>(e)]);
  return idx;
}

}  // namespace

ContractionPlan plan_contraction(const ContractionGraph& g) {
  ContractionPlan plan;
  std::vector<int> cluster(static_cast<std::size_t>(g.vertex_count));
  std::iota(cluster.begin(), cluster.end(), 0);
  std::set<int> alive(cluster.begin(), cluster.end());

  auto shared = [&](int a, int b) {
    int s = 0;
    for (const auto& e : g.edges) {
      int cu = cluster[static_cast<std::size_t>(e.u)];
      int cv = cluster[static_cast<std::size_t>(e.v)];
      if ((cu == a && cv == b) || (cu == b && cv == a)) ++s;
    }
    return s;
  };

  while (alive.size() > 1) {
    int best_a = -1, best_b = -1, best_shared = -1;
    for (auto ia = alive.begin(); ia != alive.end(); ++ia)
      for (auto ib = std::next(ia); ib != alive.end(); ++ib) {
        int s = shared(*ia, *ib);
        if (s > best_shared) {
          best_shared = s;
          best_a = *ia;
          best_b = *ib;
        }
      }
    for (auto& c : cluster)
      if (c == best_b) c = best_a;
    alive.erase(best_b);
    int open = 0;
    for (const auto& e : g.edges) {
      bool in_u = cluster[static_cast<std::size_t>(e.u)] == best_a;
      bool in_v = cluster[static_cast<std::size_t>(e.v)] == best_a;
      if (in_u != in_v) ++open;
    }
    plan.steps.push_back({best_a, best_b, best_shared, open});
  }
  return plan;
}

template <class Scalar>
Scalar execute_plan(const SymmetricTensor& t, const ContractionGraph& g, const ContractionPlan& plan,
                    std::uint64_t max_entries) {
  check_degrees(t, g);
  if (g.vertex_count == 0) return Scalar(1);
  const int n = t.dimension();
  const int p = t.order();

  std::vector<Scalar> dense(checked_power(n, static_cast<std::size_t>(p), max_entries), Scalar(0));
  for (const auto& [idx, v] : t.entries()) {
    MultiIndex perm = idx;
    const Scalar value = convert<Scalar>(v);
    do {
      std::size_t flat = 0;
      for (int i : perm) flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(i - 1);
      dense[flat] = value;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::vector<int> label(g.edges.size(), 0);
  std::map<int, Block<Scalar>> blocks;
  for (int v = 0; v < g.vertex_count; ++v) {
    std::vector<int> slots;
    std::vector<int> legs;
    std::vector<int> loops;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto& edge = g.edges[e];
      if (edge.u == v && edge.v == v) {
        slots.push_back(static_cast<int>(e));
        slots.push_back(static_cast<int>(e));
        loops.push_back(static_cast<int>(e));
      } else if (edge.u == v || edge.v == v) {
        slots.push_back(static_cast<int>(e));
        legs.push_back(static_cast<int>(e));
      }
    }
    Block<Scalar> b;
    b.legs = legs;
    b.data.assign(checked_power(n, legs.size(), max_entries), Scalar(0));
    std::vector<int> all = legs;
    all.insert(all.end(), loops.begin(), loops.end());
    for_each_assignment(all, n, label, [&] {
      std::size_t flat = 0;
      for (int e : slots) flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(label[static_cast<std::size_t>(e)]);
      b.data[flat_index(b, label, n)] += dense[flat];
    });
    blocks.emplace(v, std::move(b));
  }

  for (const auto& step : plan.steps) {
    Block<Scalar>& a = blocks.at(step.a);
    Block<Scalar>& b = blocks.at(step.b);
    std::vector<int> shared_legs;
    std::vector<int> result_legs;
    std::set_intersection(a.legs.begin(), a.legs.end(), b.legs.begin(), b.legs.end(),
                          std::back_inserter(shared_legs));
    std::set_symmetric_difference(a.legs.begin(), a.legs.end(), b.legs.begin(), b.legs.end(),
                                  std::back_inserter(result_legs));
    Block<Scalar> merged;
    merged.legs = result_legs;
    merged.data.assign(checked_power(n, result_legs.size(), max_entries), Scalar(0));
    std::vector<int> all = result_legs;
    all.insert(all.end(), shared_legs.begin(), shared_legs.end());
    for_each_assignment(all, n, label, [&] {
      merged.data[flat_index(merged, label, n)] += a.data[flat_index(a, label, n)] * b.data[flat_index(b, label, n)];
    });
    blocks.erase(step.b);
    blocks.at(step.a) = std::move(merged);
  }
  if (blocks.size() != 1 || !blocks.begin()->second.legs.empty())
    throw std::logic_error("contraction plan did not reduce the graph to a scalar");
  return blocks.begin()->second.data.at(0);
}

namespace {

template <class Scalar>
class SparseContractor {
 public:
  SparseContractor(const SymmetricTensor& t, const ContractionGraph& g) : g_(g), p_(t.order()) {
    for (const auto& [idx, v] : t.entries()) {
      values_.emplace(idx, convert<Scalar>(v));
      const unsigned subsets = 1u << idx.size();
      for (unsigned mask = 0; mask < subsets; ++mask) {
        MultiIndex sub;
        for (std::size_t j = 0; j < idx.size(); ++j)
          if (mask & (1u << j)) sub.push_back(idx[j]);
        admissible_.insert(sub);
      }
    }
    // Extension lists: labels l with partial + {l} admissible.
    for (const auto& partial : admissible_) {
      if (static_cast<int>(partial.size()) >= p_) continue;
      auto& ext = extensions_[partial];
      for (const auto& [idx, v] : t.entries()) {
        for (int l : idx) {
          MultiIndex grown = partial;
          grown.insert(std::upper_bound(grown.begin(), grown.end(), l), l);
          if (admissible_.count(grown)) ext.insert(l);
        }
      }
    }
    order_edges();
    labels_.assign(static_cast<std::size_t>(g.vertex_count), {});
  }

  Scalar run() {
    if (g_.vertex_count == 0) return Scalar(1);
    if (values_.empty()) return Scalar(0);
    total_ = Scalar(0);
    recurse(0, Scalar(1));
    return total_;
  }

 private:
  void order_edges() {
    std::vector<int> rank(static_cast<std::size_t>(g_.vertex_count), -1);
    int next = 0;
    for (int start = 0; start < g_.vertex_count; ++start) {
      if (rank[static_cast<std::size_t>(start)] >= 0) continue;
      std::queue<int> q;
      q.push(start);
      rank[static_cast<std::size_t>(start)] = next++;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& e : g_.edges) {
          int w = e.u == v ? e.v : (e.v == v ? e.u : -1);
          if (w >= 0 && rank[static_cast<std::size_t>(w)] < 0) {
            rank[static_cast<std::size_t>(w)] = next++;
            q.push(w);
          }
        }
      }
    }
    order_.resize(g_.edges.size());
    std::iota(order_.begin(), order_.end(), 0);
    auto key = [&](int e) {
      const auto& edge = g_.edges[static_cast<std::size_t>(e)];
      int ru = rank[static_cast<std::size_t>(edge.u)];
      int rv = rank[static_cast<std::size_t>(edge.v)];
      return std::make_tuple(std::min(ru, rv), std::max(ru, rv), e);
    };
    std::sort(order_.begin(), order_.end(), [&](int x, int y) { return key(x) < key(y); });
  }

  // Inserts l into the sorted label list of v; false if no entry extends it.
  bool push(int v, int l) {
    auto& lab = labels_[static_cast<std::size_t>(v)];
    lab.insert(std::upper_bound(lab.begin(), lab.end(), l), l);
    return admissible_.count(lab) > 0;
  }

  void pop(int v, int l) {
    auto& lab = labels_[static_cast<std::size_t>(v)];
    lab.erase(std::lower_bound(lab.begin(), lab.end(), l));
  }

  Scalar completed_value(int v) const {
    const auto& lab = labels_[static_cast<std::size_t>(v)];
    if (static_cast<int>(lab.size()) != p_) return Scalar(1);
    return values_.at(lab);
  }

  void recurse(std::size_t pos, const Scalar& product) {
    if (pos == order_.size()) {
      total_ += product;
      return;
    }
    const auto& edge = g_.edges[static_cast<std::size_t>(order_[pos])];
    const std::set<int>& candidates = extensions_.at(labels_[static_cast<std::size_t>(edge.u)]);
    for (int l : candidates) {
      bool ok = push(edge.u, l);
      ok = push(edge.v, l) && ok;
      if (ok) {
        Scalar next = product;
        next *= completed_value(edge.u);
        if (edge.v != edge.u) next *= completed_value(edge.v);
        recurse(pos + 1, next);
      }
      pop(edge.v, l);
      pop(edge.u, l);
    }
  }

  const ContractionGraph& g_;
  int p_;
  std::map<MultiIndex, Scalar> values_;
  std::set<MultiIndex> admissible_;
  std::map<MultiIndex, std::set<int>> extensions_;
  std::vector<int> order_;
  std::vector<MultiIndex> labels_;
  Scalar total_{0};
};

}  // namespace

template <class Scalar>
Scalar contract_sparse(const SymmetricTensor& t, const ContractionGraph& g) {
  check_degrees(t, g);
  return SparseContractor<Scalar>(t, g).run();
}

template <class Scalar>
Scalar contract_network(const SymmetricTensor& t, const ContractionGraph& g) {
  if constexpr (std::is_same_v<Scalar, double>)
    return execute_plan<double>(t, g, plan_contraction(g));
  else
    return contract_sparse<Scalar>(t, g);
}

namespace {

template <class Scalar>
Scalar sum_classes(const SymmetricTensor& t, int k, bool connected_only) {
  Scalar total(0);
  for (const auto& cls : cached_isomorphism_classes(t.order(), k, connected_only)) {
    Scalar value = contract_network<Scalar>(t, cls.representative);
    if constexpr (std::is_same_v<Scalar, double>)
      total += static_cast<double>(cls.multiplicity) * value;
    else
      total += Rational(BigInt(std::to_string(cls.multiplicity))) * value;
  }
  return total;
}

}  // namespace

template <class Scalar>
Scalar invariant_M_k(const SymmetricTensor& t, int k) {
  if (k < 0) throw std::domain_error("k must be non-negative");
  if (k == 0) return Scalar(1);
  if ((t.order() * k) % 2 != 0) return Scalar(0);
  return sum_classes<Scalar>(t, k, false);
}

template <class Scalar>
Scalar invariant_M_k_conn(const SymmetricTensor& t, int k) {
  if (k < 1) throw std::domain_error("connected invariants need k >= 1");
  if ((t.order() * k) % 2 != 0) return Scalar(0);
  return sum_classes<Scalar>(t, k, true);
}

template Rational execute_plan<Rational>(const SymmetricTensor&, const ContractionGraph&, const ContractionPlan&,
                                         std::uint64_t);
template double execute_plan<double>(const SymmetricTensor&, const ContractionGraph&, const ContractionPlan&,
                                     std::uint64_t);
template Rational contract_sparse<Rational>(const SymmetricTensor&, const ContractionGraph&);
template double contract_sparse<double>(const SymmetricTensor&, const ContractionGraph&);
template Rational contract_network<Rational>(const SymmetricTensor&, const ContractionGraph&);
template double contract_network<double>(const SymmetricTensor&, const ContractionGraph&);
template Rational invariant_M_k<Rational>(const SymmetricTensor&, int);
template double invariant_M_k<double>(const SymmetricTensor&, int);
template Rational invariant_M_k_conn<Rational>(const SymmetricTensor&, int);
template double invariant_M_k_conn<double>(const SymmetricTensor&, int);

}  // namespace tensorres
