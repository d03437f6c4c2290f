#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "lossy/generators.hpp"
#include "lossy/protocols.hpp"

using namespace lossy;

namespace {

ProtocolConfig config(std::uint64_t seed, Rational threshold = 8) {
  ProtocolConfig cfg;
  cfg.seed = seed;
  cfg.brute_force_frac_threshold = std::move(threshold);
  return cfg;
}

const Graph k3 = Graph::with_dense_vertices(3, {{1, 2}, {2, 3}, {1, 3}});

Graph complete(Element n) {
  std::vector<Graph::Edge> e;
  for (Element u = 1; u <= n; ++u)
    for (Element v = u + 1; v <= n; ++v) e.emplace_back(u, v);
  return Graph::with_dense_vertices(n, e);
}

// Leaves exactly one fresh edge {a,b} of the query's complement uncovered per round.
Oracle one_pair_oracle() {
  return Oracle::scripted([](const HypergraphInstance& q, std::size_t) {
    const auto& V = q.universe();
    for (std::size_t i = 0; i < V.size(); ++i)
      for (std::size_t j = i + 1; j < V.size(); ++j) {
        const ElementSet pair{V[i], V[j]};
        bool used = false;
        for (const auto& s : q.family()) used = used || s == pair;
        if (!used) return set_difference(V, pair);
      }
    return V;
  });
}

}  // namespace

TEST_CASE("analytic constants") {
  CHECK(vc_nu() == doctest::Approx(std::sqrt(10.0) / 2 - 1));
  CHECK(vc_ratio() == doctest::Approx(1.7208).epsilon(1e-4));
  CHECK(vc_ratio() < 1.721);
  CHECK(dhs_h(3, Rational(1)) == doctest::Approx(1.0 / 1920));
  CHECK(dhs_tau(3, Rational(1)) == 2);
  CHECK(dhs_tau(3, Rational(2, 3)) == 3);
}

TEST_CASE("config validation") {
  ProtocolConfig cfg;
  cfg.c = Rational(1, 4);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.c = Rational(1, 5);
  cfg.epsilon = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.epsilon = 1;
  cfg.t = -1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("vc protocol: small inputs") {
  const auto r = vc_protocol(k3, config(1));
  CHECK(r.branch == Branch::BruteForce);
  CHECK(r.solution.size() == 2);
  CHECK(verify_solution(k3, r.solution).ok);

  const auto empty = vc_protocol(Graph::with_dense_vertices(6, {}), config(1, 0));
  CHECK(empty.solution.elements.empty());
  CHECK(empty.call_sizes.empty());
}

TEST_CASE("vc protocol on G(40, 0.15)") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = gen_random_graph(40, 0.15, seed);
    auto r = vc_protocol(g, config(seed));
    CHECK(verify_solution(g, r.solution).ok);
    CHECK(r.rounds_used <= 2);
    CHECK(r.call_sizes.size() == r.rounds_used);
    const double two_f = 2 * to_double(r.frac_reduced);
    for (const auto& c : r.call_sizes) {
      CHECK(c.elements <= two_f + 1e-9);
      CHECK(c.sets <= 2 * std::pow(two_f, 1.5) + 1e-9);
    }
    r.attach_opt(exact_hs_size(g.as_vertex_cover()));
    REQUIRE(r.ratio.has_value());
    if (!r.failed()) CHECK(*r.ratio <= Rational(1721, 1000));
  }
}

TEST_CASE("dhs protocol: small inputs") {
  const auto empty = dhs_protocol(HypergraphInstance::with_dense_universe(3, 5, {}), config(3, 0));
  CHECK(empty.solution.elements.empty());

  const auto p = gen_partition_tight(6, 3);
  const auto r = dhs_protocol(p, config(3));
  CHECK(r.branch == Branch::BruteForce);
  CHECK(r.solution.size() == 2);
}

TEST_CASE("dhs protocol on a random 3-HS instance") {
  const auto h = gen_random_hs(60, 400, 3, 17);
  auto r = dhs_protocol(h, config(17));
  CHECK(verify_solution(h, r.solution).ok);
  CHECK(r.rounds_used <= 2);
  r.attach_opt(exact_hs_size(h));
  if (!r.failed() && r.branch != Branch::BruteForce)
    CHECK(*r.ratio <= 3 * (1 - Rational(dhs_h(3, Rational(1)))));

  const auto again = dhs_protocol(h, config(17));
  CHECK(again.solution.elements == r.solution.elements);
  CHECK(again.branch == r.branch);
}

TEST_CASE("dhs protocol with a d-approximate oracle still returns a valid solution") {
  const auto h = gen_random_hs(30, 120, 3, 8);
  auto cfg = config(8, 0);
  cfg.oracle = Oracle::d_approx();
  const auto r = dhs_protocol(h, cfg);
  CHECK(verify_solution(h, r.solution).ok);
}

TEST_CASE("rsz protocol: small inputs") {
  ProtocolConfig cfg = config(2);
  cfg.t = 2;
  const auto edgeless = rsz_protocol(Graph::with_dense_vertices(5, {}), cfg);
  CHECK(edgeless.solution.elements.empty());
  CHECK(edgeless.rounds_used == 0);

  const auto r = rsz_protocol(k3, cfg);
  CHECK(r.branch == Branch::BruteForce);
  CHECK(r.solution.size() == 2);
  CHECK_THROWS_AS(extract_ruzsa_witness(r, k3, cfg), std::invalid_argument);
}

TEST_CASE("rsz protocol on G(50, 0.1)") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = gen_random_graph(50, 0.1, seed);
    auto r = rsz_protocol(g, config(seed));
    CHECK(verify_solution(g, r.solution).ok);
    CHECK(r.rounds_used <= 4);
    r.attach_opt(exact_hs_size(g.as_vertex_cover()));
    if (r.branch == Branch::FinalSmall || r.branch == Branch::BruteForce) CHECK(*r.ratio <= Rational(9, 5));
  }
}

TEST_CASE("a scripted oracle drives the Ruzsa protocol past its last round") {
  const Graph k6 = complete(6);
  ProtocolConfig cfg = config(5, 0);
  cfg.c = Rational(1, 10);
  cfg.t = 2;
  cfg.oracle = one_pair_oracle();
  const auto r = rsz_protocol(k6, cfg);
  REQUIRE(r.branch == Branch::Exhausted);
  CHECK(r.rounds_used == 3);
  CHECK(verify_solution(k6, r.solution).ok);

  auto w = extract_ruzsa_witness(r, k6, cfg);
  CHECK(w.r == 1);
  CHECK(w.parts.size() == 3);
  CHECK(verify_ruzsa_witness(w).ok);

  auto overlapping = w;
  overlapping.parts[1] = overlapping.parts[0];
  overlapping.matchings[1] = overlapping.matchings[0];
  CHECK_FALSE(verify_ruzsa_witness(overlapping).ok);

  auto short_matching = w;
  short_matching.matchings[2].clear();
  CHECK_FALSE(verify_ruzsa_witness(short_matching).ok);
}

TEST_CASE("adversarial oracle keeps within beta times the factor") {
  ProtocolConfig cfg = config(4);
  cfg.oracle = Oracle::adversarial(Rational(6, 5));
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Graph g = gen_random_graph(40, 0.15, seed);
    cfg.seed = seed;
    auto r = vc_protocol(g, cfg);
    CHECK(verify_solution(g, r.solution).ok);
    r.attach_opt(exact_hs_size(g.as_vertex_cover()));
    if (!r.failed()) CHECK(*r.ratio <= Rational(6, 5) * Rational(1721, 1000));
  }
}

TEST_CASE("reports are reproducible") {
  const Graph g = gen_random_graph(40, 0.15, 9);
  const auto a = vc_protocol(g, config(9)), b = vc_protocol(g, config(9));
  CHECK(a.solution.elements == b.solution.elements);
  CHECK(a.branch == b.branch);
  REQUIRE(a.rounds.size() == b.rounds.size());
  for (std::size_t i = 0; i < a.rounds.size(); ++i) CHECK(a.rounds[i].sampled == b.rounds[i].sampled);
}
