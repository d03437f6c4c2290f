#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <set>

#include "lossy/generators.hpp"
#include "lossy/solvers.hpp"

using namespace lossy;

TEST_CASE("exact_hs examples") {
  const auto triple = HypergraphInstance::with_dense_universe(3, 3, {{1, 2, 3}});
  CHECK(exact_hs(triple).elements == ElementSet{1});

  const auto k3 = Graph::with_dense_vertices(3, {{1, 2}, {2, 3}, {1, 3}}).as_vertex_cover();
  CHECK(exact_hs(k3).size() == 2);
  CHECK(exact_hs(k3).elements == ElementSet{1, 2});

  CHECK(exact_hs(gen_partition_tight(6, 3)).size() == 2);
  CHECK(exact_hs(HypergraphInstance::with_dense_universe(2, 3, {})).elements.empty());
}

TEST_CASE("budget") {
  const auto k3 = Graph::with_dense_vertices(3, {{1, 2}, {2, 3}, {1, 3}}).as_vertex_cover();
  CHECK_FALSE(exact_hs(k3, std::size_t{1}).has_value());
  REQUIRE(exact_hs(k3, std::size_t{2}).has_value());
  CHECK(exact_hs(k3, std::size_t{2})->size() == 2);
}

TEST_CASE("exact_hs agrees with subset enumeration up to 16 elements") {
  for (int d = 2; d <= 4; ++d)
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const auto h = gen_random_hs(16, 8 + seed % 25, d, seed * 13 + d);
      const auto fast = exact_hs(h);
      const auto slow = brute_force_hs(h);
      CHECK(verify_solution(h, fast).ok);
      CHECK(fast.size() == slow.size());
      CHECK(exact_hs_size(h) == slow.size());
      // Both report the lexicographically least optimum.
      CHECK(fast.elements == slow.elements);
    }
}

TEST_CASE("d_approx") {
  const auto edge = HypergraphInstance::with_dense_universe(2, 2, {{1, 2}});
  CHECK(d_approx(edge).elements == ElementSet{1, 2});
  CHECK(d_approx(gen_partition_tight(6, 3)).size() == 6);
  CHECK(d_approx(HypergraphInstance::with_dense_universe(3, 4, {})).elements.empty());

  for (int d = 2; d <= 4; ++d)
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      const auto h = gen_random_hs(16, 20, d, seed + 1000 * d);
      const auto a = d_approx(h);
      const auto opt = exact_hs_size(h);
      CHECK(verify_solution(h, a).ok);
      CHECK(a.size() >= opt);
      CHECK(a.size() <= static_cast<std::size_t>(d) * opt);
    }
}

TEST_CASE("maximal_matching") {
  const auto k3 = Graph::with_dense_vertices(3, {{1, 2}, {2, 3}, {1, 3}});
  CHECK(maximal_matching(k3).size() == 1);

  const auto p4 = Graph::with_dense_vertices(4, {{1, 2}, {2, 3}, {3, 4}});
  CHECK(maximal_matching(p4) == std::vector<Graph::Edge>{{1, 2}, {3, 4}});
  CHECK(maximal_matching(Graph::with_dense_vertices(5, {})).empty());

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Graph g = gen_random_graph(14, 0.3, seed);
    const auto m = maximal_matching(g);
    std::set<Element> used;
    for (auto [u, v] : m) {
      CHECK(g.adjacent(u, v));
      CHECK(used.insert(u).second);
      CHECK(used.insert(v).second);
    }
    for (auto [u, v] : g.edges()) CHECK((used.count(u) || used.count(v)));
  }
}

TEST_CASE("oracles log calls and keep their guarantees") {
  const auto h = gen_random_hs(14, 20, 3, 4);
  const std::size_t opt = exact_hs_size(h);

  Oracle exact = Oracle::exact();
  CHECK(exact.solve(h).size() == opt);
  REQUIRE(exact.call_log().size() == 1);
  CHECK(exact.call_log()[0].elements == h.num_elements());
  CHECK(exact.call_log()[0].sets == h.num_sets());
  CHECK(exact.fresh().call_log().empty());

  Oracle approx = Oracle::d_approx();
  CHECK(approx.solve(h).size() <= 3 * opt);

  for (auto padding : {Oracle::Padding::LowestIds, Oracle::Padding::HighestIds}) {
    Oracle adv = Oracle::adversarial(Rational(3, 2), padding);
    const auto s = adv.solve(h);
    CHECK(is_hitting_set(h, s));
    CHECK(s.size() == std::min<std::size_t>(h.num_elements(), (3 * opt) / 2));
  }

  Oracle scripted = Oracle::scripted([](const HypergraphInstance&, std::size_t) { return ElementSet{}; });
  CHECK_THROWS_AS(scripted.solve(h), std::logic_error);
}
