#pragma once

#include <cstdint>
#include <vector>

#include "lossy/instances.hpp"

namespace lossy {

/// n/d disjoint sets of size d covering {1..n}; its LP optimum is n/d and the
/// uniform 1/d assignment has support exactly n.
HypergraphInstance gen_partition_tight(Element n, int d);

/// m distinct d-subsets of {1..n}, uniformly without replacement. Universe is the
/// union of the drawn sets.
HypergraphInstance gen_random_hs(Element n, std::size_t m, int d, std::uint64_t seed);

/// G(n, p).
Graph gen_random_graph(Element n, double p, std::uint64_t seed);

/// Each pair oriented by one fair coin.
Tournament gen_random_tournament(Element n, std::uint64_t seed);

/// Transitive tournament on the order `order` (arcs go from earlier to later),
/// i.e. the unique topological order is `order`.
Tournament transitive_tournament(const std::vector<Element>& order);

/// Transitive tournament on a random order with `flips` distinct pairs reversed.
Tournament gen_perturbed_transitive(Element n, std::size_t flips, std::uint64_t seed);

/// Uniformly random permutation of 1..n.
std::vector<Element> random_permutation(Element n, std::uint64_t seed);

/// Disjoint cliques of the given sizes, then `flips` distinct vertex pairs toggled.
Graph gen_cluster_noise(const std::vector<Element>& cluster_sizes, std::size_t flips, std::uint64_t seed);

}  // namespace lossy
