#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tensorres {

// A perfect matching of the positions [pk] = {1, ..., pk}, where the
// positions are grouped into k consecutive blocks of size p.
struct Matching {
  int p = 0;
  int k = 0;
  // 1-based position pairs with first < second, sorted by first.
  std::vector<std::pair<int, int>> pairs;

  friend bool operator==(const Matching&, const Matching&) = default;
};

struct GraphEdge {
  int u = 0;  // 0-based vertex
  int v = 0;
  int slot_u = 0;  // 0-based position of the endpoint inside its block
  int slot_v = 0;

  bool is_loop() const { return u == v; }
};

// The p-regular multigraph obtained by collapsing each block of a matching
// to a vertex. Self-loops are allowed and count twice towards the degree.
struct ContractionGraph {
  int vertex_count = 0;
  std::vector<GraphEdge> edges;

  std::vector<int> degrees() const;
  // Symmetric k x k multiplicity matrix, row-major; the diagonal counts loops.
  std::vector<int> adjacency() const;
};

// Visits every perfect matching of [pk] once in canonical order: the smallest
// unpaired position is paired with each larger unpaired position in turn.
// k = 0 yields the single empty matching; odd pk yields nothing.
void for_each_matching(int p, int k, const std::function<void(const Matching&)>& visit);

std::vector<Matching> enumerate_matchings(int p, int k);
std::vector<Matching> enumerate_connected(int p, int k);

// Number of perfect matchings, (pk-1)!!, 1 for k = 0, 0 for odd pk.
std::uint64_t matching_count(int p, int k);

ContractionGraph build_multigraph(const Matching& mu);

// Connectivity ignoring loops; the empty graph counts as connected.
bool is_connected(const ContractionGraph& g);

// Vertex sets of the connected components, each sorted, ordered by smallest vertex.
std::vector<std::vector<int>> connected_components(const ContractionGraph& g);

// Lexicographically smallest adjacency matrix over all vertex relabelings.
std::vector<int> canonical_form(const ContractionGraph& g);

bool are_isomorphic(const ContractionGraph& a, const ContractionGraph& b);

struct IsoClass {
  ContractionGraph representative;
  std::uint64_t multiplicity = 0;
  bool connected = false;
};

// Partitions the matchings of [pk] (optionally only connected ones) by
// isomorphism type of their multigraphs. Classes are ordered by the first
// matching in canonical order that realizes them.
std::vector<IsoClass> isomorphism_classes(int p, int k, bool connected_only);

// Memoized isomorphism_classes; thread-safe.
const std::vector<IsoClass>& cached_isomorphism_classes(int p, int k, bool connected_only);

// Text edge list: "vertices K edges E" then one "u v" line per edge, 1-based.
std::string write_graph(const ContractionGraph& g);

}  // namespace tensorres
