#include <doctest.h>

#include <cstdint>

#include "lossy/cvd_kernel.hpp"
#include "lossy/generators.hpp"
#include "lossy/solvers.hpp"

using namespace lossy;

namespace {

Solution cvd(ElementSet s) { return Solution{std::move(s), ProblemKind::ClusterVertexDeletion}; }

std::size_t cvd_opt(const Graph& g) { return exact_hs_size(cvd_to_hs(g)); }

Graph star(Element leaves) {
  std::vector<Graph::Edge> e;
  for (Element v = 2; v <= leaves + 1; ++v) e.emplace_back(1, v);
  return Graph::with_dense_vertices(leaves + 1, e);
}

// Vertex 1 sees all of the clique {2..8} and the two independent vertices 9, 10.
Graph clique_with_hub() {
  std::vector<Graph::Edge> e;
  for (Element u = 2; u <= 8; ++u)
    for (Element v = u + 1; v <= 8; ++v) e.emplace_back(u, v);
  for (Element v = 2; v <= 10; ++v) e.emplace_back(1, v);
  return Graph::with_dense_vertices(10, e);
}

// Q1 = {1..5} and the hub 10 form a K6 minus nothing; 10 also sees 6 and 7,
// which sit in the cliques {6,8} and {7,9}.
Graph size_bound_gadget() {
  std::vector<Graph::Edge> e;
  for (Element u = 1; u <= 5; ++u)
    for (Element v = u + 1; v <= 5; ++v) e.emplace_back(u, v);
  for (Element v = 1; v <= 7; ++v) e.emplace_back(v, 10);
  e.emplace_back(6, 8);
  e.emplace_back(7, 9);
  return Graph::with_dense_vertices(10, e);
}

}  // namespace

TEST_CASE("cluster graphs reduce to nothing") {
  const Graph g = gen_cluster_noise({3, 3}, 0, 1);
  const auto r = cvd_reduce(g, Rational(1, 2));
  CHECK(r.marking.mark.empty());
  CHECK(r.D.empty());
  CHECK(r.reduced.num_vertices() == 0);
  CHECK(r.cliques.size() == 2);
  CHECK(cvd_lift(g, r, cvd({})).elements.empty());
  CHECK(cvd_structure_checks(g, r.alpha, r.marking).ok());
}

TEST_CASE("P3 marks both endpoints of the middle vertex") {
  const Graph p3 = Graph::with_dense_vertices(3, {{1, 2}, {2, 3}});
  const auto alpha = solve_primal(cvd_to_hs(p3));
  REQUIRE(alpha.objective == 1);
  const auto m = cvd_marking(Rational(1, 2), p3, alpha);
  CHECK(m.cap == 2);
  CHECK(m.D.empty());
  for (Element v : alpha.ones()) CHECK(m.mark.at(v) == set_difference(p3.vertices(), {v}));

  const auto r = cvd_reduce(p3, Rational(1, 2));
  CHECK(Rational(static_cast<long>(r.reduced.num_vertices())) <= cvd_size_factor(Rational(1, 2)) * r.alpha.objective);
  const auto lifted = cvd_lift(p3, r, exact_hs(cvd_to_hs(r.reduced)));
  CHECK(verify_solution(p3, cvd(lifted.elements)).ok);
  CHECK(lifted.size() == 1);
  CHECK(cvd_structure_checks(p3, r.alpha, r.marking).ok());
}

TEST_CASE("a star whose leaf matching overflows the cap lands in D") {
  const Graph five = star(5), six = star(6);
  const Rational eps(1, 2);
  const auto a5 = cvd_reduce(five, eps);
  CHECK(a5.alpha.ones() == ElementSet{1});
  CHECK(a5.marking.matching_size.at(1) == 2);
  CHECK(a5.D.empty());

  const auto a6 = cvd_reduce(six, eps);
  CHECK(a6.marking.matching_size.at(1) == 3);
  CHECK(a6.marking.nu.at(1).size() == 2);
  CHECK(a6.D == ElementSet{1});
  const auto lifted = cvd_lift(six, a6, exact_hs(cvd_to_hs(a6.reduced)));
  CHECK(lifted.elements == ElementSet{1});
  CHECK(cvd_structure_checks(six, a6.alpha, a6.marking).ok());
}

TEST_CASE("a fully selected shrunk clique is exchanged for its neighborhood") {
  const Graph g = clique_with_hub();
  const auto r = cvd_reduce(g, Rational(1, 2));
  CHECK(r.marking.mark.at(1) == ElementSet{2, 3, 9, 10});
  REQUIRE(r.cliques.size() == 1);
  const auto& c = r.cliques[0];
  CHECK(c.vertices == ElementSet{4, 5, 6, 7, 8});
  CHECK(c.neighborhood == ElementSet{1, 2, 3});
  CHECK(c.kept == ElementSet{4, 5, 6});
  CHECK(c.removed == ElementSet{7, 8});
  CHECK(r.reduced.vertices() == ElementSet{1, 2, 3, 4, 5, 6, 9, 10});

  const auto lifted = cvd_lift(g, r, cvd({1, 4, 5, 6}));
  CHECK(lifted.elements == ElementSet{1, 2, 3});
  CHECK(verify_solution(g, lifted).ok);

  const auto best = cvd_lift(g, r, exact_hs(cvd_to_hs(r.reduced)));
  CHECK(best.size() == cvd_opt(g));
  CHECK_THROWS_AS(cvd_lift(g, r, cvd({})), std::invalid_argument);
}

TEST_CASE("the claimed max(6, 4/eps) vertex bound can fail; the counting bound holds") {
  const Graph g = size_bound_gadget();
  const Rational eps(1, 2);
  const auto r = cvd_reduce(g, eps);
  CHECK(r.alpha.objective == 1);
  CHECK(r.D.empty());
  CHECK(r.reduced.num_vertices() == 10);
  CHECK(Rational(static_cast<long>(r.reduced.num_vertices())) > cvd_size_factor(eps) * r.alpha.objective);
  CHECK(Rational(static_cast<long>(r.reduced.num_vertices())) <= cvd_size_factor_sound(eps) * r.alpha.objective);
  CHECK(cvd_structure_checks(g, r.alpha, r.marking).ok());

  const auto lifted = cvd_lift(g, r, exact_hs(cvd_to_hs(r.reduced)));
  CHECK(Rational(static_cast<long>(lifted.size())) <= (1 + eps) * static_cast<long>(cvd_opt(g)));
}

TEST_CASE("size factors") {
  CHECK(cvd_size_factor(Rational(1, 2)) == 8);
  CHECK(cvd_size_factor(Rational(1, 4)) == 16);
  CHECK(cvd_size_factor(Rational(3, 4)) == 6);
  CHECK(cvd_size_factor_sound(Rational(1, 2)) == 10);
  CHECK(cvd_size_factor_sound(Rational(1, 4)) == 18);
}

TEST_CASE("marking rejects a non-optimal alpha and bad epsilon") {
  const Graph p3 = Graph::with_dense_vertices(3, {{1, 2}, {2, 3}});
  RationalAssignment all;
  for (Element v : p3.vertices()) all.values[v] = 1;
  all.objective = 3;
  CHECK_THROWS_AS(cvd_marking(Rational(1, 2), p3, all), std::invalid_argument);
  CHECK_THROWS_AS(cvd_reduce(p3, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(cvd_reduce(p3, Rational(0)), std::invalid_argument);
}

TEST_CASE("fuzzed graphs: structure, ratio, D exclusion") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const Graph g = seed % 2 ? gen_random_graph(12 + seed % 7, 0.3, seed) : gen_cluster_noise({4, 3, 5, 2}, seed % 6, seed);
    for (const Rational& eps : {Rational(1, 4), Rational(1, 2)}) {
      const auto r = cvd_reduce(g, eps);
      CHECK(cvd_structure_checks(g, r.alpha, r.marking).ok());
      CHECK(Rational(static_cast<long>(r.reduced.num_vertices())) <= cvd_size_factor_sound(eps) * r.alpha.objective);
      const auto s_star = exact_hs(cvd_to_hs(g));
      const auto lifted = cvd_lift(g, r, exact_hs(cvd_to_hs(r.reduced)));
      CHECK(verify_solution(g, lifted).ok);
      CHECK(Rational(static_cast<long>(lifted.size())) <= (1 + eps) * static_cast<long>(s_star.size()));
      CHECK(Rational(static_cast<long>(set_difference(r.D, s_star.elements).size())) <=
            eps * static_cast<long>(s_star.size()));
      for (const auto& c : r.cliques) CHECK(c.kept.size() <= c.neighborhood.size());
    }
  }
}
