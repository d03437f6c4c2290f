#include <doctest.h>

#include <sstream>

#include "lossy/generators.hpp"
#include "lossy/harness.hpp"
#include "lossy/solvers.hpp"

using namespace lossy;

TEST_CASE("compare_against_bruteforce examples") {
  const auto cluster = compare_against_bruteforce(gen_cluster_noise({3, 3}, 0, 1), "cvd:1/2");
  REQUIRE(cluster.has_value());
  CHECK(*cluster == 1);

  const auto partition = compare_against_bruteforce(gen_partition_tight(6, 3), "element_kernel");
  REQUIRE(partition.has_value());
  CHECK(*partition == 1);

  const auto edge = compare_against_bruteforce(HypergraphInstance::with_dense_universe(2, 2, {{1, 2}}), "dapprox");
  REQUIRE(edge.has_value());
  CHECK(*edge == 2);

  const auto c3 = Tournament::with_dense_vertices(3, {{1, 2}, {2, 3}, {3, 1}});
  CHECK(compare_against_bruteforce(c3, "fvst:1/2") == Rational(1));
}

TEST_CASE("compare_against_bruteforce enforces caps and methods") {
  CHECK_THROWS_AS(compare_against_bruteforce(gen_random_hs(30, 40, 3, 1), "exact"), CapExceeded);
  CHECK_THROWS_AS(compare_against_bruteforce(gen_random_graph(26, 0.2, 1), "cvd:1/2"), CapExceeded);
  CHECK_THROWS_AS(compare_against_bruteforce(gen_random_tournament(21, 1), "fvst:1/2"), CapExceeded);
  CHECK_THROWS(compare_against_bruteforce(gen_partition_tight(6, 3), "bogus"));
}

TEST_CASE("parse_any dispatches on the header") {
  CHECK(std::holds_alternative<HypergraphInstance>(parse_any("p hs 2 1 2\ns 1 2\n")));
  CHECK(std::holds_alternative<Graph>(parse_any("c hello\np edge 2 1\ne 1 2\n")));
  CHECK(std::holds_alternative<Tournament>(parse_any("p tour 2\na 2 1\n")));
  CHECK_THROWS(parse_any("p nope 3\n"));

  const AnyInstance g = gen_random_graph(9, 0.5, 3);
  CHECK(instance_digest(parse_any(serialize_any(g))) == instance_digest(g));
  CHECK(instance_digest(g).size() == 16);
  CHECK(instance_digest(g) != instance_digest(AnyInstance(gen_random_graph(9, 0.5, 4))));
}

TEST_CASE("parse_solution skips comments") {
  CHECK(parse_solution("c optimum\n3 1\n2\n") == ElementSet{1, 2, 3});
  CHECK(parse_solution("").empty());
}

TEST_CASE("lift contexts replay the kernels") {
  SUBCASE("hitting set") {
    const AnyInstance in = gen_random_hs(20, 40, 3, 2);
    const auto& h = std::get<HypergraphInstance>(in);
    const auto r = element_reduce(h);
    const Json ctx = lift_context(in, r);
    CHECK(ctx.at("kind") == "hs");
    const auto s_prime = exact_hs(r.reduced).elements;
    CHECK(lift_from_context(in, ctx, s_prime).elements == element_lift(h, r, Solution{s_prime}).elements);
  }
  SUBCASE("cvd") {
    const AnyInstance in = gen_cluster_noise({5, 4, 3}, 4, 7);
    const auto& g = std::get<Graph>(in);
    const auto r = cvd_reduce(g, Rational(1, 2));
    const Json ctx = Json::parse(lift_context(in, r).dump());
    const auto s_prime = exact_hs(cvd_to_hs(r.reduced)).elements;
    const auto direct = cvd_lift(g, r, Solution{s_prime, ProblemKind::ClusterVertexDeletion});
    CHECK(lift_from_context(in, ctx, s_prime).elements == direct.elements);
  }
  SUBCASE("fvst") {
    const AnyInstance in = gen_perturbed_transitive(14, 4, 3);
    const auto& t = std::get<Tournament>(in);
    const auto r = fvst_reduce(t, Rational(1, 2));
    const Json ctx = Json::parse(lift_context(in, r).dump());
    const auto s_prime = exact_hs(fvst_to_hs(r.reduced)).elements;
    const auto direct = fvst_lift(t, r, Solution{s_prime, ProblemKind::FeedbackVertexSetTournament});
    CHECK(lift_from_context(in, ctx, s_prime).elements == direct.elements);
  }
  SUBCASE("mismatched input") {
    const AnyInstance a = gen_random_hs(20, 40, 3, 2), b = gen_random_hs(20, 40, 3, 3);
    const Json ctx = lift_context(a, element_reduce(std::get<HypergraphInstance>(a)));
    CHECK_THROWS_AS(lift_from_context(b, ctx, {}), std::invalid_argument);
  }
}

TEST_CASE("generate") {
  const auto a = generate(Json{{"kind", "random_hs"}, {"n", 20}, {"m", 30}, {"d", 3}}, 5);
  CHECK(std::get<HypergraphInstance>(a) == gen_random_hs(20, 30, 3, 5));
  const auto b = generate(Json{{"kind", "random_graph"}, {"n", 10}, {"p", "1/2"}, {"seed", 9}}, 5);
  CHECK(std::get<Graph>(b) == gen_random_graph(10, 0.5, 9));
  const auto c = generate(Json{{"kind", "random_tournament"}, {"n", Json{{"min", 5}, {"max", 9}}}}, 1);
  const auto n = std::get<Tournament>(c).num_vertices();
  CHECK(n >= 5);
  CHECK(n <= 9);
  CHECK_THROWS(generate(Json{{"kind", "nope"}}, 1));
}

TEST_CASE("RunSpec validation") {
  CHECK_THROWS(RunSpec::from_json(Json{{"method", "lp"}, {"generator", Json{{"kind", "random_hs"}}}, {"bogus", 1}}));
  CHECK_THROWS(RunSpec::from_json(Json{{"method", "teleport"}, {"generator", Json::object()}}));
  const auto s = RunSpec::from_json(Json{{"method", "cvd"}, {"generator", Json{{"kind", "random_graph"}}}, {"epsilon", "1/4"}});
  CHECK(s.epsilon == Rational(1, 4));
  CHECK(RunSpec::from_json(s.to_json()).to_json() == s.to_json());
  CHECK(make_oracle("adversarial:6/5").beta() == Rational(6, 5));
  CHECK(make_oracle("adversarial:1.2:high").padding() == Oracle::Padding::HighestIds);
  CHECK(make_oracle("dapprox").kind() == Oracle::Kind::DApprox);
  CHECK_THROWS(make_oracle("psychic"));
}

TEST_CASE("empty experiment") {
  std::ostringstream out;
  const auto r = run_experiment(Json(), &out);
  CHECK(r.records.empty());
  CHECK(out.str().empty());
  CHECK(r.summary.at("runs") == 0);
  CHECK(run_experiment(Json::object()).records.empty());
  CHECK_THROWS(run_experiment(Json{{"rns", Json::array()}}));
}

TEST_CASE("experiments are deterministic and ordered") {
  const Json spec = Json::parse(R"({
    "runs": [
      {"method": "element_kernel", "generator": {"kind": "random_hs", "n": 14, "m": 20, "d": 3}, "seeds": {"from": 1, "count": 4}},
      {"method": "cvd", "generator": {"kind": "cluster_noise", "sizes": [4, 4, 3], "flips": 3}, "seeds": [7, 8]},
      {"method": "vc2", "generator": {"kind": "random_graph", "n": 24, "p": "0.2"}, "threshold": "2", "seeds": [1]}
    ]})");
  std::ostringstream a, b;
  const auto ra = run_experiment(spec, &a, 2);
  const auto rb = run_experiment(spec, &b, 1);
  CHECK(a.str() == b.str());
  REQUIRE(ra.records.size() == 7);
  CHECK(ra.records[0].at("config").at("seed") == 1);
  CHECK(ra.records[5].at("config").at("seed") == 8);
  for (const auto& rec : ra.records) {
    CHECK(rec.at("success") == true);
    CHECK(rec.at("violations") == 0);
    CHECK(rec.contains("wall_ms"));
    CHECK_FALSE(Json::parse(canonical_line(rec)).contains("wall_ms"));
  }
  CHECK(ra.summary.at("runs") == 7);
  CHECK(ra.summary.at("success_rate") == "1/1");
}

TEST_CASE("run records carry the expected checks") {
  RunSpec spec;
  spec.method = "fvst";
  spec.generator = Json{{"kind", "perturbed_transitive"}, {"n", 12}, {"flips", 3}};
  spec.seed = 4;
  const Json rec = run_one(spec);
  for (const char* name : {"size_bound", "structure", "valid", "ratio_bound", "d_small"})
    CHECK(rec.at("checks").at(name) == true);
  CHECK(rec.at("instance").at("n") == 12);

  spec.method = "lp";
  spec.generator = Json{{"kind", "partition_tight"}, {"n", 12}, {"d", 3}};
  const Json lp = run_one(spec);
  CHECK(lp.at("checks").at("uniform_support_tight") == true);
  CHECK(lp.at("result").at("frac") == "4/1");
}
