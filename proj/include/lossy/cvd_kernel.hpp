#pragma once

#include <map>
#include <string>
#include <vector>

#include "lossy/instances.hpp"
#include "lossy/lp.hpp"
#include "lossy/rational.hpp"

namespace lossy {

/// Violations found by a structural self-check; empty means the run is consistent.
struct StructureReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct CvdMarking {
  std::size_t cap = 0;                                   // ceil(1/eps) matching edges
  std::map<Element, ElementSet> mark;                    // keys: alpha^{-1}(1)
  std::map<Element, std::vector<Graph::Edge>> nu;        // truncated matchings
  std::map<Element, std::size_t> matching_size;          // |mu_v| before truncation
  ElementSet D;                                          // truncation occurred
  ElementSet M_all;
};

struct CvdClique {
  ElementSet vertices;      // clique of G - (support u M)
  ElementSet kept;
  ElementSet removed;
  ElementSet neighborhood;  // N_{G-D}(C)
};

struct CvdKernelResult {
  Graph reduced;
  ElementSet D;
  std::vector<CvdClique> cliques;
  RationalAssignment alpha;
  CvdMarking marking;
};

/// Throws std::invalid_argument unless 0 < eps < 1 and alpha is optimal for cvd_to_hs(g).
CvdMarking cvd_marking(const Rational& epsilon, const Graph& g, const RationalAssignment& alpha);

CvdKernelResult cvd_reduce(const Graph& g, const Rational& epsilon);

/// Throws std::invalid_argument if `s_prime` is not a CVD solution of the reduced graph.
Solution cvd_lift(const Graph& g, const CvdKernelResult& result, const Solution& s_prime);

StructureReport cvd_structure_checks(const Graph& g, const RationalAssignment& alpha, const CvdMarking& marking);

/// Cliques (connected components) of a cluster graph, ordered by smallest vertex.
std::vector<ElementSet> cluster_components(const Graph& g);

/// max(6, 4/eps), the vertex bound factor claimed for the kernel.
Rational cvd_size_factor(const Rational& epsilon);
/// 4 ceil(1/eps) + 2, the factor the counting argument actually supports
/// (every kept clique can see vertices of alpha^{-1}(1) \ D as well).
Rational cvd_size_factor_sound(const Rational& epsilon);

}  // namespace lossy
