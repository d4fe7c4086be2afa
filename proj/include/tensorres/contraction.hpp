#pragma once

#include "tensorres/matchings.hpp"
#include "tensorres/rational.hpp"
#include "tensorres/tensor.hpp"

#include <cstdint>
#include <vector>

namespace tensorres {

enum class Mode { exact, floating };

struct MergeStep {
  int a = 0;  // surviving cluster id (smallest original vertex in it)
  int b = 0;  // absorbed cluster id
  int shared_edges = 0;
  int open_edges = 0;  // open edges of the merged cluster
};

// Pairwise merge schedule for a contraction graph. Loops are traced inside
// the initial vertex tensors, so a single-vertex graph has an empty plan.
struct ContractionPlan {
  std::vector<MergeStep> steps;
};

// Greedy: merge the pair of current clusters sharing the most edges, ties
// broken by the smallest (a, b).
ContractionPlan plan_contraction(const ContractionGraph& g);

// Dense execution of a plan. Intermediates hold N^open entries; the call
// throws ResourceError when one would exceed `max_entries`.
template <class Scalar>
Scalar execute_plan(const SymmetricTensor& t, const ContractionGraph& g, const ContractionPlan& plan,
                    std::uint64_t max_entries = 50'000'000);

// Sparse evaluation: backtracks over edge labels, pruning any partial vertex
// label multiset that no stored entry extends.
template <class Scalar>
Scalar contract_sparse(const SymmetricTensor& t, const ContractionGraph& g);

// M_mu(T) = sum over edge labelings of the product of vertex entries.
// Rational uses the sparse route, double the planned dense route.
// Throws std::domain_error when a vertex degree differs from the tensor order.
template <class Scalar>
Scalar contract_network(const SymmetricTensor& t, const ContractionGraph& g);

// M_k(T): sum over all matchings of [pk], evaluated once per isomorphism class.
template <class Scalar>
Scalar invariant_M_k(const SymmetricTensor& t, int k);

// M_k^conn(T): as invariant_M_k restricted to connected multigraphs; k >= 1.
template <class Scalar>
Scalar invariant_M_k_conn(const SymmetricTensor& t, int k);

}  // namespace tensorres
