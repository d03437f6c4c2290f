#include "lossy/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "lossy/rng.hpp"

namespace lossy {

HypergraphInstance gen_partition_tight(Element n, int d) {
  if (d < 1 || n == 0 || n % static_cast<Element>(d) != 0)
    throw std::invalid_argument("n must be a positive multiple of d");
  std::vector<ElementSet> fam;
  for (Element start = 1; start <= n; start += static_cast<Element>(d)) {
    ElementSet s(static_cast<std::size_t>(d));
    std::iota(s.begin(), s.end(), start);
    fam.push_back(std::move(s));
  }
  return HypergraphInstance::with_dense_universe(d, n, std::move(fam));
}

namespace {

long double binomial(Element n, int k) {
  if (k < 0 || static_cast<Element>(k) > n) return 0;
  long double r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - static_cast<Element>(i)) / (i + 1);
  return r;
}

}  // namespace

HypergraphInstance gen_random_hs(Element n, std::size_t m, int d, std::uint64_t seed) {
  if (n == 0 || d < 1) throw std::invalid_argument("n and d must be positive");
  if (static_cast<Element>(d) > n) throw std::invalid_argument("d exceeds n");
  if (static_cast<long double>(m) > binomial(n, d))
    throw std::invalid_argument("m exceeds the number of distinct size-d subsets");
  SplitMix rng(seed);
  std::set<ElementSet> drawn;
  std::vector<ElementSet> fam;
  while (fam.size() < m) {
    // Floyd's sampling of a d-subset of {1..n}.
    ElementSet s;
    for (Element j = n - static_cast<Element>(d) + 1; j <= n; ++j) {
      Element t = static_cast<Element>(rng.below(j)) + 1;
      if (contains(s, t)) t = j;
      s.insert(std::lower_bound(s.begin(), s.end(), t), t);
    }
    if (drawn.insert(s).second) fam.push_back(std::move(s));
  }
  return HypergraphInstance::spanned(d, std::move(fam));
}

Graph gen_random_graph(Element n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  SplitMix rng(seed);
  std::vector<Graph::Edge> edges;
  for (Element u = 1; u <= n; ++u)
    for (Element v = u + 1; v <= n; ++v)
      if (rng.uniform() < p) edges.emplace_back(u, v);
  return Graph::with_dense_vertices(n, std::move(edges));
}

Tournament gen_random_tournament(Element n, std::uint64_t seed) {
  SplitMix rng(seed);
  std::vector<Tournament::Arc> arcs;
  for (Element u = 1; u <= n; ++u)
    for (Element v = u + 1; v <= n; ++v) {
      if (rng.next() & 1) arcs.emplace_back(u, v);
      else arcs.emplace_back(v, u);
    }
  return Tournament::with_dense_vertices(n, std::move(arcs));
}

Tournament transitive_tournament(const std::vector<Element>& order) {
  std::vector<Tournament::Arc> arcs;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) arcs.emplace_back(order[i], order[j]);
  return Tournament(ElementSet(order.begin(), order.end()), std::move(arcs));
}

std::vector<Element> random_permutation(Element n, std::uint64_t seed) {
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), Element{1});
  SplitMix rng(seed);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

Graph gen_cluster_noise(const std::vector<Element>& cluster_sizes, std::size_t flips, std::uint64_t seed) {
  Element n = 0;
  std::set<std::pair<Element, Element>> edges;
  for (Element size : cluster_sizes) {
    if (size == 0) throw std::invalid_argument("cluster sizes must be positive");
    for (Element u = n + 1; u <= n + size; ++u)
      for (Element v = u + 1; v <= n + size; ++v) edges.emplace(u, v);
    n += size;
  }
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (flips > pairs) throw std::invalid_argument("more flips than vertex pairs");
  SplitMix rng(seed);
  std::set<std::pair<Element, Element>> flipped;
  while (flipped.size() < flips) {
    Element u = static_cast<Element>(rng.below(n)) + 1;
    Element v = static_cast<Element>(rng.below(n)) + 1;
    if (u == v) continue;
    auto key = std::minmax(u, v);
    if (!flipped.insert(key).second) continue;
    if (!edges.erase(key)) edges.insert(key);
  }
  return Graph::with_dense_vertices(n, std::vector<Graph::Edge>(edges.begin(), edges.end()));
}

Tournament gen_perturbed_transitive(Element n, std::size_t flips, std::uint64_t seed) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  if (flips > pairs) throw std::invalid_argument("more flips than vertex pairs");
  const auto order = random_permutation(n, seed);
  std::vector<Element> rank(n + 1);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<Element>(i);
  SplitMix rng(mix64(seed));
  std::set<std::pair<Element, Element>> flipped;
  while (flipped.size() < flips) {
    Element u = static_cast<Element>(rng.below(n)) + 1;
    Element v = static_cast<Element>(rng.below(n)) + 1;
    if (u != v) flipped.insert(std::minmax(u, v));
  }
  std::vector<Tournament::Arc> arcs;
  for (Element u = 1; u <= n; ++u)
    for (Element v = u + 1; v <= n; ++v) {
      const bool forward = (rank[u] < rank[v]) != flipped.count({u, v});
      arcs.emplace_back(forward ? u : v, forward ? v : u);
    }
  return Tournament::with_dense_vertices(n, std::move(arcs));
}

}  // namespace lossy
