#include "lossy/cvd_kernel.hpp"

#include <algorithm>
#include <stdexcept>

#include "marking.hpp"

namespace lossy {

namespace {

void check_epsilon(const Rational& epsilon) {
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

bool induced_p3(const Graph& g, Element a, Element b, Element c) {
  const int edges = g.adjacent(a, b) + g.adjacent(b, c) + g.adjacent(a, c);
  return edges == 2;
}

ElementSet neighborhood_of(const Graph& g, const ElementSet& set) {
  ElementSet out;
  for (Element v : set) out = set_union(out, g.neighbors(v));
  return set_difference(out, set);
}

}  // namespace

std::vector<ElementSet> cluster_components(const Graph& g) {
  std::vector<ElementSet> out;
  ElementSet seen;
  for (Element v : g.vertices()) {
    if (contains(seen, v)) continue;
    ElementSet comp{v};
    std::vector<Element> stack{v};
    while (!stack.empty()) {
      Element x = stack.back();
      stack.pop_back();
      for (Element y : g.neighbors(x))
        if (!contains(comp, y)) {
          comp.insert(std::lower_bound(comp.begin(), comp.end(), y), y);
          stack.push_back(y);
        }
    }
    seen = set_union(seen, comp);
    out.push_back(std::move(comp));
  }
  return out;
}

CvdMarking cvd_marking(const Rational& epsilon, const Graph& g, const RationalAssignment& alpha) {
  check_epsilon(epsilon);
  detail::require_optimal(alpha, cvd_to_hs(g));
  const auto cap = static_cast<std::size_t>(ceil_to_int(1 / epsilon));
  auto m = detail::mark_obstructions(g.vertices(), alpha, cap,
                                     [&](Element v, Element w, Element r) { return induced_p3(g, v, w, r); });
  CvdMarking out;
  out.cap = m.cap;
  out.mark = std::move(m.mark);
  out.nu = std::move(m.nu);
  out.matching_size = std::move(m.matching_size);
  out.D = std::move(m.D);
  out.M_all = std::move(m.M_all);
  return out;
}

CvdKernelResult cvd_reduce(const Graph& g, const Rational& epsilon) {
  check_epsilon(epsilon);
  CvdKernelResult out;
  out.alpha = solve_primal(cvd_to_hs(g));
  out.marking = cvd_marking(epsilon, g, out.alpha);
  out.D = out.marking.D;

  const ElementSet core = set_union(support(out.alpha), out.marking.M_all);
  const Graph minus_d = g.without(out.D);
  ElementSet dropped = out.D;
  for (auto& clique : cluster_components(g.without(core))) {
    CvdClique c;
    c.neighborhood = neighborhood_of(minus_d, clique);
    const std::size_t keep = std::min(clique.size(), c.neighborhood.size());
    c.kept.assign(clique.begin(), clique.begin() + static_cast<std::ptrdiff_t>(keep));
    c.removed.assign(clique.begin() + static_cast<std::ptrdiff_t>(keep), clique.end());
    dropped = set_union(dropped, c.removed);
    c.vertices = std::move(clique);
    out.cliques.push_back(std::move(c));
  }
  out.reduced = g.without(dropped);
  return out;
}

Solution cvd_lift(const Graph& g, const CvdKernelResult& result, const Solution& s_prime) {
  if (!verify_solution(result.reduced, Solution{s_prime.elements, ProblemKind::ClusterVertexDeletion}))
    throw std::invalid_argument("solution is not valid for the reduced graph");
  ElementSet s = s_prime.elements;
  for (const auto& c : result.cliques) {
    if (c.removed.empty() || !is_subset(c.kept, s_prime.elements)) continue;
    s = set_union(set_difference(s, c.kept), neighborhood_of(g, c.vertices));
  }
  return Solution{set_union(result.D, s), ProblemKind::ClusterVertexDeletion};
}

StructureReport cvd_structure_checks(const Graph& g, const RationalAssignment& alpha, const CvdMarking& marking) {
  StructureReport rep;
  auto fail = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };
  const ElementSet supp = support(alpha);
  const ElementSet core = set_union(supp, marking.M_all);
  const ElementSet& D = marking.D;

  ElementSet seen;
  for (const auto& [v, m] : marking.mark) {
    if (intersects(m, seen)) fail("mark sets of " + std::to_string(v) + " overlap earlier marks");
    if (intersects(m, supp)) fail("mark set of " + std::to_string(v) + " meets the support");
    if (marking.nu.at(v).size() > marking.cap) fail("matching of " + std::to_string(v) + " exceeds the cap");
    seen = set_union(seen, m);
  }

  const auto cliques = cluster_components(g.without(core));
  for (const auto& c : cliques) {
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (!g.adjacent(c[i], c[j])) fail("component containing " + std::to_string(c[0]) + " is not a clique");
    for (Element x : g.vertices()) {
      if (contains(c, x) || contains(D, x)) continue;
      std::size_t adj = 0;
      for (Element y : c) adj += g.adjacent(x, y);
      if (adj != 0 && adj != c.size())
        fail("clique containing " + std::to_string(c[0]) + " is not a module: vertex " + std::to_string(x));
    }
  }

  for (Element v : set_difference(supp, D)) {
    const ElementSet outside = set_difference(g.neighbors(v), core);
    if (outside.empty()) continue;
    if (std::none_of(cliques.begin(), cliques.end(), [&](const ElementSet& c) { return c == outside; }))
      fail("vertex " + std::to_string(v) + " sees more than one clique or part of one");
  }

  const Rational bound = 3 * alpha.objective - 2 * Rational(static_cast<long>(alpha.ones().size()));
  if (Rational(static_cast<long>(supp.size())) > bound) fail("support exceeds 3 frac - 2 |alpha^{-1}(1)|");
  return rep;
}

Rational cvd_size_factor(const Rational& epsilon) {
  Rational q = 4 / epsilon;
  return q > 6 ? q : Rational(6);
}

Rational cvd_size_factor_sound(const Rational& epsilon) {
  Rational q(4 * ceil_to_int(1 / epsilon) + 2);
  return q > 6 ? q : Rational(6);
}

}  // namespace lossy
