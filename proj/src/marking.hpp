#pragma once

// Shared by the CVD and FVST kernels: the obstruction-matching marking step.

#include <functional>
#include <map>
#include <vector>

#include "lossy/instances.hpp"
#include "lossy/lp.hpp"
#include "lossy/solvers.hpp"

namespace lossy::detail {

struct ObstructionMarking {
  std::size_t cap = 0;
  std::map<Element, ElementSet> mark;
  std::map<Element, std::vector<Graph::Edge>> nu;
  std::map<Element, std::size_t> matching_size;
  ElementSet D;
  ElementSet M_all;
};

// `obstruction(v, w, r)` decides whether {v, w, r} is a forbidden triple.
inline ObstructionMarking mark_obstructions(const ElementSet& vertices, const RationalAssignment& alpha, std::size_t cap,
                                            const std::function<bool(Element, Element, Element)>& obstruction) {
  ObstructionMarking out;
  out.cap = cap;
  const ElementSet supp = support(alpha);
  for (Element v : alpha.ones()) {
    const ElementSet pool = set_difference(vertices, set_union(supp, out.M_all));
    std::vector<Graph::Edge> edges;
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j)
        if (obstruction(v, pool[i], pool[j])) edges.emplace_back(pool[i], pool[j]);
    std::vector<Graph::Edge> mu = maximal_matching(std::move(edges));
    out.matching_size[v] = mu.size();
    if (mu.size() > cap) {
      out.D.push_back(v);
      mu.resize(cap);
    }
    ElementSet marked;
    for (const auto& [a, b] : mu) {
      marked.push_back(a);
      marked.push_back(b);
    }
    marked = make_set(std::move(marked));
    out.M_all = set_union(out.M_all, marked);
    out.mark[v] = std::move(marked);
    out.nu[v] = std::move(mu);
  }
  return out;
}

// Any optimal dual certifies optimality of alpha through complementary slackness.
inline void require_optimal(const RationalAssignment& alpha, const HypergraphInstance& hs) {
  if (!check_optimal_pair(alpha, solve_dual(hs), hs))
    throw std::invalid_argument("assignment is not an optimal LP solution");
}

}  // namespace lossy::detail
