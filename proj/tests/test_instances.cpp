#include <doctest.h>

#include <cstdint>

#include "lossy/generators.hpp"
#include "lossy/instances.hpp"

using namespace lossy;

namespace {

ElementSet subset_of(const ElementSet& base, std::uint32_t mask) {
  ElementSet s;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (mask >> i & 1u) s.push_back(base[i]);
  return s;
}

}  // namespace

TEST_CASE("parse_hs reads the header and the sets") {
  auto a = parse_hs("p hs 3 1 3\ns 1 2 3\n");
  CHECK(a.d() == 3);
  CHECK(a.universe() == ElementSet{1, 2, 3});
  CHECK(a.family() == std::vector<ElementSet>{{1, 2, 3}});

  auto b = parse_hs("p hs 2 1 2\ns 1 2");
  CHECK(b.family() == std::vector<ElementSet>{{1, 2}});

  auto c = parse_hs("c two triples\np hs 4 2 3\ns 1 2 3\ns 2 3 4\n");
  CHECK(c.num_sets() == 2);
  CHECK(c.family()[1] == ElementSet{2, 3, 4});
}

TEST_CASE("parse_hs rejects malformed input") {
  CHECK_THROWS_AS(parse_hs("s 1 2"), ParseError);
  CHECK_THROWS_AS(parse_hs("p hs 2 1 2\ns 1 3"), ParseError);
  CHECK_THROWS_AS(parse_hs("p hs 4 1 2\ns 1 2 3"), ParseError);
  CHECK_THROWS_AS(parse_hs("p hs 3 2 2\ns 1 2"), ParseError);
}

TEST_CASE("duplicate sets collapse") {
  auto h = HypergraphInstance::with_dense_universe(2, 3, {{1, 2}, {2, 1}, {2, 3}});
  CHECK(h.num_sets() == 2);
}

TEST_CASE("graphs and tournaments") {
  Graph k3 = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3");
  CHECK(k3.num_edges() == 3);
  CHECK(k3.adjacent(3, 1));

  Tournament c3 = parse_tournament("p tour 3\na 1 2\na 2 3\na 3 1");
  CHECK(c3.arc(3, 1));
  CHECK_FALSE(c3.arc(1, 3));

  CHECK_THROWS(parse_tournament("p tour 3\na 1 2\na 2 3"));
  CHECK_THROWS(parse_tournament("p tour 2\na 1 2\na 2 1"));
  CHECK_THROWS(parse_graph("p edge 2 2\ne 1 2\ne 2 1"));
  CHECK_THROWS(parse_graph("p edge 2 1\ne 1 1"));
}

TEST_CASE("cvd_to_hs lists the induced P3s") {
  auto path3 = Graph::with_dense_vertices(3, {{1, 2}, {2, 3}});
  CHECK(cvd_to_hs(path3).family() == std::vector<ElementSet>{{1, 2, 3}});

  auto k3 = Graph::with_dense_vertices(3, {{1, 2}, {2, 3}, {1, 3}});
  CHECK(cvd_to_hs(k3).family().empty());
  CHECK(cvd_to_hs(k3).universe() == ElementSet{1, 2, 3});

  auto path4 = Graph::with_dense_vertices(4, {{1, 2}, {2, 3}, {3, 4}});
  CHECK(cvd_to_hs(path4).family() == std::vector<ElementSet>{{1, 2, 3}, {2, 3, 4}});
}

TEST_CASE("fvst_to_hs lists the directed triangles") {
  auto c3 = Tournament::with_dense_vertices(3, {{1, 2}, {2, 3}, {3, 1}});
  CHECK(fvst_to_hs(c3).family() == std::vector<ElementSet>{{1, 2, 3}});

  CHECK(fvst_to_hs(transitive_tournament({1, 2, 3})).family().empty());

  auto t4 = Tournament::with_dense_vertices(4, {{1, 2}, {1, 3}, {2, 3}, {4, 1}, {2, 4}, {3, 4}});
  CHECK(fvst_to_hs(t4).family() == std::vector<ElementSet>{{1, 2, 4}, {1, 3, 4}});
}

TEST_CASE("verify_solution reports a witness") {
  auto h = HypergraphInstance::with_dense_universe(3, 3, {{1, 2, 3}});
  CHECK(verify_solution(h, Solution{{2}, ProblemKind::HittingSet}).ok);

  auto k3 = Graph::with_dense_vertices(3, {{1, 2}, {2, 3}, {1, 3}});
  auto v = verify_solution(k3, Solution{{1}, ProblemKind::VertexCover});
  CHECK_FALSE(v.ok);
  CHECK(v.witness == ElementSet{2, 3});
  CHECK(verify_solution(k3, Solution{{}, ProblemKind::ClusterVertexDeletion}).ok);

  auto c3 = Tournament::with_dense_vertices(3, {{1, 2}, {2, 3}, {3, 1}});
  auto w = verify_solution(c3, Solution{{}, ProblemKind::FeedbackVertexSetTournament});
  CHECK_FALSE(w.ok);
  CHECK(w.witness == ElementSet{1, 2, 3});
}

TEST_CASE("implicit reductions agree with direct verification on every subset") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = gen_random_graph(10, 0.4, seed);
    const auto hs = cvd_to_hs(g);
    const Tournament t = gen_random_tournament(9, seed);
    const auto ths = fvst_to_hs(t);
    for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
      const ElementSet s = subset_of(g.vertices(), mask);
      CHECK(verify_solution(g, Solution{s, ProblemKind::ClusterVertexDeletion}).ok == is_hitting_set(hs, s));
      if (mask < (1u << 9)) {
        const ElementSet st = subset_of(t.vertices(), mask);
        CHECK(verify_solution(t, Solution{st, ProblemKind::FeedbackVertexSetTournament}).ok ==
              is_hitting_set(ths, st));
      }
    }
  }
}

TEST_CASE("serialization round trips") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto h = gen_random_hs(12, 15, 3, seed);
    CHECK(parse_hs(serialize_hs(h)) == h);
    const auto g = gen_random_graph(12, 0.3, seed);
    CHECK(parse_graph(serialize_graph(g)) == g);
    const auto t = gen_random_tournament(8, seed);
    CHECK(parse_tournament(serialize_tournament(t)) == t);

    // Sparse ids go through the labels line.
    const auto sub = g.without({2, 5, 7});
    CHECK(parse_graph(serialize_graph(sub)) == sub);
    const auto hsub = h.without({1, 4});
    CHECK(parse_hs(serialize_hs(hsub)) == hsub);
    const auto tsub = t.without({3});
    CHECK(parse_tournament(serialize_tournament(tsub)) == tsub);
  }
}

TEST_CASE("generators") {
  const auto p63 = gen_partition_tight(6, 3);
  CHECK(p63.family() == std::vector<ElementSet>{{1, 2, 3}, {4, 5, 6}});
  CHECK(gen_partition_tight(2, 2).family() == std::vector<ElementSet>{{1, 2}});
  CHECK(gen_partition_tight(9, 3).num_sets() == 3);
  CHECK_THROWS(gen_partition_tight(7, 3));

  CHECK(gen_random_hs(10, 20, 3, 7) == gen_random_hs(10, 20, 3, 7));
  CHECK(gen_random_hs(10, 20, 3, 7).num_sets() == 20);
  CHECK_THROWS(gen_random_hs(4, 5, 3, 1));

  const auto t = gen_random_tournament(3, 11);
  CHECK(t.arcs().size() == 3);

  const auto two_k3 = gen_cluster_noise({3, 3}, 0, 5);
  CHECK(two_k3.num_edges() == 6);
  CHECK(cvd_to_hs(two_k3).family().empty());

  CHECK(gen_random_graph(15, 0.2, 3) == gen_random_graph(15, 0.2, 3));
  CHECK(gen_cluster_noise({4, 5}, 3, 9) == gen_cluster_noise({4, 5}, 3, 9));
  CHECK(gen_perturbed_transitive(10, 4, 2) == gen_perturbed_transitive(10, 4, 2));
  CHECK(fvst_to_hs(gen_perturbed_transitive(10, 0, 2)).family().empty());
}
