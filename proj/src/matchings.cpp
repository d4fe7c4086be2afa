#include "tensorres/matchings.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace tensorres {

std::vector<int> ContractionGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(vertex_count), 0);
  for (const auto& e : edges) {
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  return deg;
}

std::vector<int> ContractionGraph::adjacency() const {
  const auto k = static_cast<std::size_t>(vertex_count);
  std::vector<int> a(k * k, 0);
  for (const auto& e : edges) {
    auto u = static_cast<std::size_t>(e.u);
    auto v = static_cast<std::size_t>(e.v);
    ++a[u * k + v];
    if (u != v) ++a[v * k + u];
  }
  return a;
}

namespace {

void match_from(std::vector<bool>& used, int n, Matching& current,
                const std::function<void(const Matching&)>& visit) {
  int first = 0;
  while (first < n && used[static_cast<std::size_t>(first)]) ++first;
  if (first == n) {
    visit(current);
    return;
  }
  used[static_cast<std::size_t>(first)] = true;
  for (int second = first + 1; second < n; ++second) {
    if (used[static_cast<std::size_t>(second)]) continue;
    used[static_cast<std::size_t>(second)] = true;
    current.pairs.emplace_back(first + 1, second + 1);
    match_from(used, n, current, visit);
    current.pairs.pop_back();
    used[static_cast<std::size_t>(second)] = false;
  }
  used[static_cast<std::size_t>(first)] = false;
}

}  // namespace

void for_each_matching(int p, int k, const std::function<void(const Matching&)>& visit) {
  if (p < 1 || k < 0) return;
  const int n = p * k;
  if (n % 2 != 0) return;
  Matching current{p, k, {}};
  current.pairs.reserve(static_cast<std::size_t>(n / 2));
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  match_from(used, n, current, visit);
}

std::vector<Matching> enumerate_matchings(int p, int k) {
  std::vector<Matching> out;
  for_each_matching(p, k, [&](const Matching& m) { out.push_back(m); });
  return out;
}

std::vector<Matching> enumerate_connected(int p, int k) {
  std::vector<Matching> out;
  for_each_matching(p, k, [&](const Matching& m) {
    if (is_connected(build_multigraph(m))) out.push_back(m);
  });
  return out;
}

std::uint64_t matching_count(int p, int k) {
  if (p < 1 || k < 0) return 0;
  const int n = p * k;
  if (n % 2 != 0) return 0;
  std::uint64_t c = 1;
  for (int i = n - 1; i > 1; i -= 2) c *= static_cast<std::uint64_t>(i);
  return c;
}

ContractionGraph build_multigraph(const Matching& mu) {
  ContractionGraph g;
  g.vertex_count = mu.k;
  g.edges.reserve(mu.pairs.size());
  for (auto [a, b] : mu.pairs) {
    GraphEdge e;
    e.u = (a - 1) / mu.p;
    e.v = (b - 1) / mu.p;
    e.slot_u = (a - 1) % mu.p;
    e.slot_v = (b - 1) % mu.p;
    g.edges.push_back(e);
  }
  return g;
}

std::vector<std::vector<int>> connected_components(const ContractionGraph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& e : g.edges) {
    int a = find(e.u);
    int b = find(e.v);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < g.vertex_count; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const ContractionGraph& g) {
  return g.vertex_count == 0 || connected_components(g).size() == 1;
}

namespace {

std::vector<int> canonical_adjacency(const std::vector<int>& a, int k) {
  const auto n = static_cast<std::size_t>(k);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = a;
  std::vector<int> candidate(n * n);
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        candidate[i * n + j] = a[static_cast<std::size_t>(perm[i]) * n + static_cast<std::size_t>(perm[j])];
    if (candidate < best) best = candidate;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<int> canonical_form(const ContractionGraph& g) {
  return canonical_adjacency(g.adjacency(), g.vertex_count);
}

bool are_isomorphic(const ContractionGraph& a, const ContractionGraph& b) {
  return a.vertex_count == b.vertex_count && a.edges.size() == b.edges.size() &&
         canonical_form(a) == canonical_form(b);
}

std::vector<IsoClass> isomorphism_classes(int p, int k, bool connected_only) {
  // Many matchings share an adjacency matrix, so count those first and only
  // canonicalize the distinct ones.
  struct Seen {
    std::uint64_t order;
    std::uint64_t count;
    ContractionGraph graph;
  };
  std::map<std::vector<int>, Seen> by_adjacency;
  std::uint64_t index = 0;
  for_each_matching(p, k, [&](const Matching& m) {
    ContractionGraph g = build_multigraph(m);
    if (connected_only && !is_connected(g)) {
      ++index;
      return;
    }
    auto [it, inserted] = by_adjacency.try_emplace(g.adjacency(), Seen{index, 0, {}});
    if (inserted) it->second.graph = std::move(g);
    ++it->second.count;
    ++index;
  });

  struct Group {
    std::uint64_t order;
    IsoClass cls;
  };
  std::map<std::vector<int>, Group> by_canonical;
  for (auto& [adj, seen] : by_adjacency) {
    auto canon = canonical_adjacency(adj, k);
    auto it = by_canonical.find(canon);
    if (it == by_canonical.end()) {
      bool conn = is_connected(seen.graph);
      by_canonical.emplace(std::move(canon), Group{seen.order, IsoClass{seen.graph, seen.count, conn}});
    } else {
      it->second.cls.multiplicity += seen.count;
      if (seen.order < it->second.order) {
        it->second.order = seen.order;
        it->second.cls.representative = seen.graph;
      }
    }
  }
  std::vector<Group> groups;
  for (auto& [canon, grp] : by_canonical) groups.push_back(std::move(grp));
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) { return a.order < b.order; });
  std::vector<IsoClass> out;
  out.reserve(groups.size());
  for (auto& grp : groups) out.push_back(std::move(grp.cls));
  return out;
}

const std::vector<IsoClass>& cached_isomorphism_classes(int p, int k, bool connected_only) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, bool>, std::vector<IsoClass>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(p, k, connected_only);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, isomorphism_classes(p, k, connected_only)).first;
  return it->second;
}

std::string write_graph(const ContractionGraph& g) {
  std::ostringstream os;
  os << "vertices " << g.vertex_count << " edges " << g.edges.size() << '\n';
  for (const auto& e : g.edges) os << e.u + 1 << ' ' << e.v + 1 << '\n';
  return os.str();
}

}  // namespace tensorres
