#include <doctest.h>

#include <cstdint>

#include "lossy/element_kernel.hpp"
#include "lossy/generators.hpp"
#include "lossy/solvers.hpp"

using namespace lossy;

namespace {

Solution hs(ElementSet s) { return Solution{std::move(s), ProblemKind::HittingSet}; }

std::size_t pow_size(const Rational& base, int d) {
  Rational r = 1;
  for (int i = 0; i < d; ++i) r *= base;
  return static_cast<std::size_t>(floor_to_int(r));
}

}  // namespace

TEST_CASE("single edge: the basic optimum puts one endpoint at the threshold") {
  // {1/2, 1/2} is optimal but not a vertex of the LP polyhedron, so the simplex
  // returns an endpoint at value 1 = 1/(d-1), and that endpoint is deleted.
  const auto edge = HypergraphInstance::with_dense_universe(2, 2, {{1, 2}});
  const auto r = element_reduce(edge);
  CHECK(r.h_star.size() == 1);
  CHECK(r.reduced.num_sets() == 0);
  const auto lifted = element_lift(edge, r, hs({}));
  CHECK(lifted.size() == 1);
  CHECK(verify_solution(edge, lifted).ok);
}

TEST_CASE("below-threshold optimum leaves the instance unchanged") {
  // The 5-cycle has the unique optimum 1/2 everywhere.
  const auto c5 = Graph::with_dense_vertices(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}}).as_vertex_cover();
  const auto r = element_reduce(c5);
  CHECK(r.h_star.empty());
  CHECK(r.reduced == c5);
  CHECK(r.frac_out == Rational(5) / 2);
  CHECK(element_lift(c5, r, hs({1, 3, 5})).elements == ElementSet{1, 3, 5});
  CHECK_THROWS_AS(element_lift(c5, r, hs({1, 3})), std::invalid_argument);
}

TEST_CASE("star K_{1,3} loses its center") {
  const auto star = Graph::with_dense_vertices(4, {{1, 2}, {1, 3}, {1, 4}}).as_vertex_cover();
  const auto r = element_reduce(star);
  CHECK(r.h_star == ElementSet{1});
  CHECK(r.reduced.num_sets() == 0);
  CHECK(r.reduced.num_elements() == 0);
  CHECK(r.frac_in == 1);
  CHECK(r.frac_out == 0);
  CHECK(element_lift(star, r, hs({})).elements == ElementSet{1});

  const auto a = approx_conditions(star, r, hs({}), Rational(1), 1);
  CHECK(a.additive_ok);
}

TEST_CASE("partition (6,3) lifts to an optimum") {
  const auto p = gen_partition_tight(6, 3);
  const auto r = element_reduce(p);
  const auto lifted = element_lift(p, r, exact_hs(r.reduced));
  CHECK(verify_solution(p, lifted).ok);
  CHECK(lifted.size() == 2);
}

TEST_CASE("lift on an empty family passes the solution through") {
  const auto empty = HypergraphInstance::with_dense_universe(3, 5, {});
  const auto r = element_reduce(empty);
  CHECK(r.h_star.empty());
  CHECK(element_lift(empty, r, hs({})).elements.empty());
}

TEST_CASE("approx_conditions with no deletions is additive") {
  const auto c5 = Graph::with_dense_vertices(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}}).as_vertex_cover();
  const auto r = element_reduce(c5);
  CHECK(approx_conditions(c5, r, hs({1, 3, 5}), Rational(1) / 7, 3).additive_ok);
}

TEST_CASE("ratio constants") {
  CHECK(element_kernel_ratio(2) == Rational(3, 2));
  CHECK(element_kernel_ratio(3) == Rational(7, 3));
}

TEST_CASE("size bounds, frac drop and threshold") {
  for (int d = 2; d <= 4; ++d)
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const auto h = gen_random_hs(24, 12 + seed % 30, d, seed * 7 + d);
      const auto r = element_reduce(h);
      const Rational frac_out = solve_primal(r.reduced).objective;
      CHECK(frac_out == r.frac_out);
      CHECK(Rational(static_cast<long>(r.reduced.num_elements())) <= d * frac_out);
      CHECK(r.reduced.num_sets() <= pow_size(d * frac_out, d));
      for (const auto& [u, v] : r.final_alpha.values) CHECK(v < Rational(1, d - 1));

      REQUIRE(r.round_fracs.size() == r.rounds.size() + 1);
      for (std::size_t i = 0; i < r.rounds.size(); ++i)
        CHECK(r.round_fracs[i] - r.round_fracs[i + 1] >= Rational(static_cast<long>(r.rounds[i].size()), d - 1));

      std::size_t total = 0;
      for (const auto& round : r.rounds) total += round.size();
      CHECK(total == r.h_star.size());
      for (const auto& s : r.reduced.family()) CHECK_FALSE(intersects(s, r.h_star));
    }
}

TEST_CASE("exact at d = 2 against brute force") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Graph g = gen_random_graph(6 + seed % 11, 0.25, seed);
    const auto h = g.as_vertex_cover();
    const auto r = element_reduce(h);
    const auto lifted = element_lift(h, r, brute_force_hs(r.reduced));
    CHECK(verify_solution(h, lifted).ok);
    CHECK(lifted.size() == brute_force_hs(h).size());
  }
}

TEST_CASE("ratio and disjunction at d = 3 against brute force") {
  const Rational rho(4, 3);  // (d-1)^2 / d
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto h = gen_random_hs(14, 10 + seed % 20, 3, seed);
    const auto r = element_reduce(h);
    const auto s_prime = brute_force_hs(r.reduced);
    const auto lifted = element_lift(h, r, s_prime);
    const std::size_t opt = brute_force_hs(h).size();
    CHECK(verify_solution(h, lifted).ok);
    CHECK(Rational(static_cast<long>(lifted.size())) <= element_kernel_ratio(3) * static_cast<long>(opt));
    const auto a = approx_conditions(h, r, s_prime, rho, opt);
    CHECK((a.additive_ok || a.ratio_ok));
  }
}
