#include "lossy/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>
#include <type_traits>

#include "lossy/generators.hpp"
#include "lossy/rng.hpp"
#include "lossy/solvers.hpp"

namespace lossy {

namespace {

using Clock = std::chrono::steady_clock;

Rational qn(std::size_t n) { return Rational(static_cast<long>(n)); }

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  // Decimal literals go through their shortest text form, so 0.1 means 1/10.
  if (j.is_number()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

struct Checks {
  Json obj = Json::object();
  std::size_t failed = 0;

  void add(const std::string& name, bool ok) {
    obj[name] = ok;
    if (!ok) ++failed;
  }
};

std::optional<Rational> ratio_of(std::size_t size, std::size_t opt) {
  if (opt == 0) return size == 0 ? std::optional<Rational>(1) : std::nullopt;
  return qn(size) / qn(opt);
}

// Records opt/ratio and returns whether ratio <= bound (an empty output is required at opt = 0).
bool record_ratio(Json& rec, std::size_t size, std::size_t opt, const Rational& bound) {
  rec["opt"] = opt;
  const auto r = ratio_of(size, opt);
  rec["ratio"] = r ? Json(to_string(*r)) : Json(nullptr);
  if (!r) rec["zero_opt_mismatch"] = true;
  return r && *r <= bound;
}

Json instance_info(const AnyInstance& inst) {
  Json j;
  j["digest"] = instance_digest(inst);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HypergraphInstance>) {
          j["n"] = x.num_elements();
          j["m"] = x.num_sets();
          j["d"] = x.d();
        } else if constexpr (std::is_same_v<T, Graph>) {
          j["n"] = x.num_vertices();
          j["m"] = x.num_edges();
          j["d"] = 2;
        } else {
          j["n"] = x.num_vertices();
          j["m"] = x.arcs().size();
          j["d"] = 3;
        }
      },
      inst);
  return j;
}

HypergraphInstance as_hs(const AnyInstance& inst) {
  if (auto h = std::get_if<HypergraphInstance>(&inst)) return *h;
  if (auto g = std::get_if<Graph>(&inst)) return g->as_vertex_cover();
  throw std::invalid_argument("method expects a hitting-set instance or a graph");
}

const Graph& as_graph(const AnyInstance& inst) {
  if (auto g = std::get_if<Graph>(&inst)) return *g;
  throw std::invalid_argument("method expects a graph");
}

const Tournament& as_tournament(const AnyInstance& inst) {
  if (auto t = std::get_if<Tournament>(&inst)) return *t;
  throw std::invalid_argument("method expects a tournament");
}

std::size_t size_param(const Json& g, const char* key, SplitMix& rng) {
  const Json& v = g.at(key);
  if (v.is_object()) {
    const auto lo = v.at("min").get<std::size_t>(), hi = v.at("max").get<std::size_t>();
    if (lo > hi) throw std::invalid_argument(std::string(key) + ": min exceeds max");
    return lo + rng.below(hi - lo + 1);
  }
  return v.get<std::size_t>();
}

std::string read_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string out;
  char buf[65536];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
  std::fclose(f);
  return out;
}

// Oracle factor used in the ratio bounds of the protocols.
Rational oracle_factor(const Oracle& o, int d) {
  switch (o.kind()) {
    case Oracle::Kind::Adversarial: return o.beta();
    case Oracle::Kind::DApprox: return Rational(d);
    default: return Rational(1);
  }
}

Json run_lp(const AnyInstance& inst, const RunSpec& spec, Checks& checks) {
  const HypergraphInstance h = as_hs(inst);
  const LpSolution sol = solve_lp(h);
  const ElementSet supp = support(sol.primal);
  Json j;
  j["frac"] = rational_json(sol.primal.objective);
  j["support_size"] = supp.size();
  j["pivots"] = sol.pivots;
  checks.add("optimal_pair", check_optimal_pair(sol.primal, sol.dual, h));
  checks.add("support_bound", qn(supp.size()) <= h.d() * sol.primal.objective);
  if (spec.generator.value("kind", "") == "partition_tight") {
    RationalAssignment uniform;
    for (Element u : h.universe()) uniform.values[u] = Rational(1, h.d());
    uniform.objective = qn(h.num_elements()) / h.d();
    DualAssignment ones;
    ones.values.assign(h.num_sets(), Rational(1));
    ones.objective = qn(h.num_sets());
    checks.add("uniform_optimal", check_optimal_pair(uniform, ones, h));
    checks.add("uniform_support_tight", qn(support(uniform).size()) == h.d() * uniform.objective);
  }
  return j;
}

Json run_element_kernel(const AnyInstance& inst, const RunSpec& spec, Checks& checks) {
  const HypergraphInstance h = as_hs(inst);
  const int d = h.d();
  const ElementKernelResult r = element_reduce(h);
  const Rational resolved = solve_primal(r.reduced).objective;
  Json j = to_json(r);
  j["frac_out_resolved"] = rational_json(resolved);
  checks.add("frac_out_consistent", resolved == r.frac_out);
  checks.add("universe_bound", qn(r.reduced.num_elements()) <= d * resolved);
  Rational family_bound(1);
  for (int i = 0; i < d; ++i) family_bound *= d * resolved;
  checks.add("family_bound", qn(r.reduced.num_sets()) <= family_bound);
  bool drop = true;
  for (std::size_t i = 0; i < r.rounds.size(); ++i) {
    const Rational next = i + 1 < r.round_fracs.size() ? r.round_fracs[i + 1] : r.frac_out;
    if (d > 1 && r.round_fracs[i] - next < qn(r.rounds[i].size()) / (d - 1)) drop = false;
  }
  checks.add("frac_drop", drop);
  if (spec.opt) {
    // Subset enumeration is the ground truth wherever it is affordable.
    const bool enumerate = h.num_elements() <= kHsOptCap;
    const std::size_t opt = enumerate ? brute_force_hs(h).size() : exact_hs_size(h);
    j["opt_source"] = enumerate ? "enumeration" : "branch_and_bound";
    const Solution s_prime = exact_hs(r.reduced);
    const Solution lifted = element_lift(h, r, s_prime);
    j["lift_size"] = lifted.size();
    checks.add("valid", static_cast<bool>(verify_solution(h, lifted)));
    checks.add("ratio_bound", record_ratio(j, lifted.size(), opt, element_kernel_ratio(d)));
    if (d == 2) checks.add("exact_at_d2", lifted.size() == opt);
    if (d >= 2) {
      const Rational rho = Rational((d - 1) * (d - 1)) / d;
      const ApproxReport a = approx_conditions(h, r, s_prime, rho, opt);
      j["additive_ok"] = a.additive_ok;
      j["ratio_ok"] = a.ratio_ok;
      checks.add("approx_disjunction", a.additive_ok || a.ratio_ok);
    }
  }
  return j;
}

Json run_solver(const AnyInstance& inst, const RunSpec& spec, Checks& checks) {
  const HypergraphInstance h = as_hs(inst);
  const Solution s = spec.method == "exact" ? exact_hs(h) : d_approx(h);
  Json j;
  j["solution"] = to_json(s.elements);
  j["solution_size"] = s.size();
  checks.add("valid", static_cast<bool>(verify_solution(h, s)));
  if (spec.opt) {
    const std::size_t opt = exact_hs_size(h);
    const Rational bound = spec.method == "exact" ? Rational(1) : Rational(h.d());
    checks.add("ratio_bound", record_ratio(j, s.size(), opt, bound));
  }
  return j;
}

Json run_protocol(const AnyInstance& inst, const RunSpec& spec, Checks& checks, bool& success) {
  const ProtocolConfig cfg = spec.protocol_config();
  HypergraphInstance input;
  ProtocolReport rep;
  if (spec.method == "dhs") {
    input = as_hs(inst);
    rep = dhs_protocol(input, cfg);
  } else {
    const Graph& g = as_graph(inst);
    input = g.as_vertex_cover();
    rep = spec.method == "vc2" ? vc_protocol(g, cfg) : rsz_protocol(g, cfg);
  }
  const int d = input.d();
  const bool valid = static_cast<bool>(verify_solution(input, Solution{rep.solution.elements, ProblemKind::HittingSet}));
  checks.add("valid", valid);
  const Rational f = rep.frac_reduced;

  Rational factor;
  bool ratio_applies = !rep.failed();
  if (spec.method == "vc2") {
    factor = Rational(1721, 1000);
    bool vertices = true, edges = true;
    const Rational two_f = 2 * f;
    for (const auto& c : rep.call_sizes) {
      vertices = vertices && qn(c.elements) <= two_f;
      // sets <= 2 (2f)^{3/2}  <=>  sets^2 <= 4 (2f)^3
      edges = edges && qn(c.sets) * qn(c.sets) <= 4 * two_f * two_f * two_f;
    }
    checks.add("call_vertices", vertices);
    checks.add("call_edges", edges);
  } else if (spec.method == "dhs") {
    factor = Rational(d) * (1 - Rational(dhs_h(d, spec.epsilon)));
    checks.add("rounds_bound", rep.rounds_used <= static_cast<std::size_t>(dhs_tau(d, spec.epsilon)));
    bool sample = true, universe = true;
    const long double df = static_cast<long double>(d) * f.get_d();
    const long double expo = 1 + static_cast<long double>(spec.epsilon.get_d());
    for (const auto& round : rep.rounds) {
      if (round.queried) {
        const long double bound = std::pow(2.0L, round.index) * std::pow(df, expo);
        sample = sample && static_cast<long double>(round.call_sets) <= bound * (1 + 1e-12L);
      }
      const bool terminal = &round == &rep.rounds.back() && rep.branch != Branch::FinalSmall;
      if (!terminal) {
        // |U_i| >= ((d-1)/(2d))^i |U|
        Rational lower = qn(rep.reduced_elements);
        for (int k = 0; k < round.index; ++k) lower *= Rational(d - 1) / (2 * d);
        universe = universe && qn(round.residual) >= lower;
      }
    }
    checks.add("round_sample_bound", sample);
    checks.add("universe_lower_bound", universe);
  } else {
    factor = 1 + 4 * spec.c;
    ratio_applies = rep.branch == Branch::BruteForce || rep.branch == Branch::FinalSmall;
    checks.add("rounds_bound", rep.rounds_used <= static_cast<std::size_t>(spec.t + 1));
    if (rep.branch == Branch::Exhausted) {
      const RuzsaWitness w = extract_ruzsa_witness(rep, as_graph(inst), cfg);
      const Verdict v = verify_ruzsa_witness(w);
      checks.add("witness", static_cast<bool>(v));
    }
  }
  if (rep.branch != Branch::BruteForce) factor *= oracle_factor(cfg.oracle, d);

  Json j = to_json(rep);
  j["ratio_factor"] = rational_json(factor);
  j["ratio_applies"] = ratio_applies;
  success = valid;
  if (spec.opt) {
    rep.attach_opt(exact_hs_size(input));
    const bool within = record_ratio(j, rep.solution.size(), *rep.opt, factor);
    if (ratio_applies) checks.add("ratio_bound", within);
    success = valid && within;
  }
  return j;
}

bool module_exchange_ok(const Graph& g, const std::vector<CvdClique>& cliques, const ElementSet& s_star) {
  for (const auto& c : cliques) {
    ElementSet n;
    for (Element v : c.vertices) n = set_union(n, g.neighbors(v));
    n = set_difference(n, c.vertices);
    const ElementSet swapped = set_union(set_difference(s_star, c.vertices), n);
    if (!verify_solution(g, Solution{swapped, ProblemKind::ClusterVertexDeletion})) return false;
  }
  return true;
}

Json run_cvd(const AnyInstance& inst, const RunSpec& spec, Checks& checks) {
  const Graph& g = as_graph(inst);
  const CvdKernelResult r = cvd_reduce(g, spec.epsilon);
  const Rational& frac = r.alpha.objective;
  Json j = to_json(r);
  j["frac"] = rational_json(frac);
  checks.add("size_bound", qn(r.reduced.num_vertices()) <= cvd_size_factor(spec.epsilon) * frac);
  checks.add("size_bound_sound", qn(r.reduced.num_vertices()) <= cvd_size_factor_sound(spec.epsilon) * frac);
  bool shrink = true;
  for (const auto& c : r.cliques) shrink = shrink && c.kept.size() <= c.neighborhood.size();
  checks.add("clique_shrink", shrink);
  const StructureReport st = cvd_structure_checks(g, r.alpha, r.marking);
  j["structure_violations"] = st.violations;
  checks.add("structure", st.ok());
  if (spec.opt) {
    const Solution s_star = exact_hs(cvd_to_hs(g));
    const Solution s_prime = exact_hs(cvd_to_hs(r.reduced));
    const Solution lifted =
        cvd_lift(g, r, Solution{s_prime.elements, ProblemKind::ClusterVertexDeletion});
    j["lift_size"] = lifted.size();
    checks.add("valid", static_cast<bool>(verify_solution(g, lifted)));
    checks.add("ratio_bound", record_ratio(j, lifted.size(), s_star.size(), 1 + spec.epsilon));
    checks.add("d_small", qn(set_difference(r.D, s_star.elements).size()) <= spec.epsilon * qn(s_star.size()));
    checks.add("module_exchange", module_exchange_ok(g, r.cliques, s_star.elements));
  }
  return j;
}

Json run_fvst(const AnyInstance& inst, const RunSpec& spec, Checks& checks) {
  const Tournament& t = as_tournament(inst);
  const FvstKernelResult r = fvst_reduce(t, spec.epsilon);
  const Rational& frac = r.alpha.objective;
  Json j = to_json(r);
  j["frac"] = rational_json(frac);
  checks.add("size_bound", qn(r.reduced.num_vertices()) <= fvst_size_factor(spec.epsilon) * frac);
  const StructureReport st = fvst_triangle_check(t, r.alpha, r.marking);
  j["structure_violations"] = st.violations;
  checks.add("structure", st.ok());
  if (spec.opt) {
    const Solution s_star = exact_hs(fvst_to_hs(t));
    const Solution s_prime = exact_hs(fvst_to_hs(r.reduced));
    const Solution lifted =
        fvst_lift(t, r, Solution{s_prime.elements, ProblemKind::FeedbackVertexSetTournament});
    j["lift_size"] = lifted.size();
    checks.add("valid", static_cast<bool>(verify_solution(t, lifted)));
    checks.add("ratio_bound", record_ratio(j, lifted.size(), s_star.size(), 1 + spec.epsilon));
    checks.add("d_small", qn(set_difference(r.D, s_star.elements).size()) <= r.delta * qn(s_star.size()));
  }
  return j;
}

std::vector<std::uint64_t> expand_seeds(const Json& run) {
  std::vector<std::uint64_t> out;
  if (auto it = run.find("seeds"); it != run.end()) {
    if (it->is_array()) {
      for (const auto& s : *it) out.push_back(s.get<std::uint64_t>());
    } else {
      const auto from = it->value("from", std::uint64_t{0});
      const auto count = it->at("count").get<std::uint64_t>();
      for (std::uint64_t k = 0; k < count; ++k) out.push_back(from + k);
    }
  } else {
    out.push_back(run.value("seed", std::uint64_t{0}));
  }
  return out;
}

}  // namespace

Json to_json(const ElementSet& s) { return Json(s); }

Json to_json(const RationalAssignment& a) {
  Json values = Json::object();
  for (const auto& [u, q] : a.values) values[std::to_string(u)] = to_string(q);
  return Json{{"objective", to_string(a.objective)}, {"values", values}};
}

Json to_json(const ElementKernelResult& r) {
  Json fracs = Json::array();
  for (const auto& q : r.round_fracs) fracs.push_back(to_string(q));
  return Json{{"frac_in", to_string(r.frac_in)},
              {"frac_out", to_string(r.frac_out)},
              {"h_star", r.h_star},
              {"rounds", r.rounds},
              {"round_fracs", fracs},
              {"reduced_elements", r.reduced.num_elements()},
              {"reduced_sets", r.reduced.num_sets()}};
}

Json to_json(const ProtocolReport& r) {
  Json j;
  j["protocol"] = r.protocol;
  j["seed"] = r.seed;
  j["branch"] = std::string(to_string(r.branch));
  j["solution"] = r.solution.elements;
  j["solution_size"] = r.solution.size();
  j["rounds_used"] = r.rounds_used;
  Json calls = Json::array();
  for (const auto& c : r.call_sizes) calls.push_back({{"elements", c.elements}, {"sets", c.sets}});
  j["call_sizes"] = calls;
  Json flags = Json::object();
  for (const auto& [name, fired] : r.failure_flags) flags[name] = fired;
  j["failure_flags"] = flags;
  Json rounds = Json::array();
  for (const auto& x : r.rounds) {
    Json m = Json::array();
    for (const auto& [u, v] : x.matching) m.push_back({u, v});
    rounds.push_back({{"index", x.index},
                      {"p", x.p},
                      {"universe", x.universe},
                      {"sampled", x.sampled},
                      {"sample_bound", x.sample_bound},
                      {"queried", x.queried},
                      {"call_sets", x.call_sets},
                      {"answer_size", x.answer.size()},
                      {"residual", x.residual},
                      {"residual_bound", x.residual_bound},
                      {"matching", m}});
  }
  j["rounds"] = rounds;
  j["frac_input"] = to_string(r.frac_input);
  j["frac_reduced"] = to_string(r.frac_reduced);
  j["reduced_elements"] = r.reduced_elements;
  j["reduced_sets"] = r.reduced_sets;
  j["h_star"] = r.h_star;
  if (r.opt) j["opt"] = *r.opt;
  if (r.ratio) j["ratio"] = to_string(*r.ratio);
  return j;
}

Json to_json(const CvdKernelResult& r) {
  Json cliques = Json::array();
  for (const auto& c : r.cliques)
    cliques.push_back({{"vertices", c.vertices}, {"kept", c.kept}, {"removed", c.removed}, {"neighborhood", c.neighborhood}});
  Json marks = Json::object();
  for (const auto& [v, m] : r.marking.mark)
    marks[std::to_string(v)] = {{"mark", m}, {"matching_size", r.marking.matching_size.at(v)}};
  return Json{{"reduced_vertices", r.reduced.num_vertices()},
              {"reduced_edges", r.reduced.num_edges()},
              {"D", r.D},
              {"cap", r.marking.cap},
              {"M", r.marking.M_all},
              {"marking", marks},
              {"cliques", cliques},
              {"alpha", to_json(r.alpha)}};
}

Json to_json(const FvstKernelResult& r) {
  const FvstMarking& m = r.marking;
  Json sides = Json::object();
  for (const auto& [v, back] : m.backw) sides[std::to_string(v)] = {{"backw", back}, {"forw", m.forw.at(v)}};
  Json positions = Json::object();
  for (const auto& [v, p] : m.position) positions[std::to_string(v)] = p;
  return Json{{"reduced_vertices", r.reduced.num_vertices()},
              {"D", r.D},
              {"X", r.X},
              {"delta", to_string(r.delta)},
              {"delta_prime", to_string(r.delta_prime)},
              {"cap", m.cap},
              {"cap_prime", m.cap_prime},
              {"M", m.M_all},
              {"M_hat", m.M_hat},
              {"extra", sides},
              {"positions", positions},
              {"alpha", to_json(r.alpha)}};
}

std::string instance_digest(const AnyInstance& inst) {
  const std::string text = std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HypergraphInstance>) return serialize_hs(x);
        else if constexpr (std::is_same_v<T, Graph>) return serialize_graph(x);
        else return serialize_tournament(x);
      },
      inst);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

AnyInstance generate(const Json& gen, std::uint64_t seed) {
  const std::string kind = gen.at("kind").get<std::string>();
  const std::uint64_t s = gen.value("seed", seed);
  // Size ranges draw from their own stream so they do not shift the instance draw.
  SplitMix sizes(mix64(s ^ 0x5157a11ceULL));
  if (kind == "random_hs")
    return gen_random_hs(static_cast<Element>(size_param(gen, "n", sizes)), size_param(gen, "m", sizes),
                         gen.at("d").get<int>(), s);
  if (kind == "partition_tight")
    return gen_partition_tight(static_cast<Element>(size_param(gen, "n", sizes)), gen.at("d").get<int>());
  if (kind == "random_graph")
    return gen_random_graph(static_cast<Element>(size_param(gen, "n", sizes)), rational_from(gen.at("p")).get_d(), s);
  if (kind == "random_tournament")
    return gen_random_tournament(static_cast<Element>(size_param(gen, "n", sizes)), s);
  if (kind == "perturbed_transitive")
    return gen_perturbed_transitive(static_cast<Element>(size_param(gen, "n", sizes)), size_param(gen, "flips", sizes), s);
  if (kind == "cluster_noise") {
    std::vector<Element> cl;
    for (const auto& x : gen.at("sizes")) cl.push_back(x.get<Element>());
    return gen_cluster_noise(cl, size_param(gen, "flips", sizes), s);
  }
  if (kind == "file") {
    const std::string path = gen.at("path").get<std::string>();
    const std::string format = gen.value("format", std::string("auto"));
    const std::string text = read_file(path);
    if (format == "auto") return parse_any(text);
    if (format == "hs") return parse_hs(text);
    if (format == "graph") return parse_graph(text);
    if (format == "tournament") return parse_tournament(text);
    throw std::invalid_argument("unknown file format " + format);
  }
  throw std::invalid_argument("unknown generator kind " + kind);
}

Oracle make_oracle(std::string_view d) {
  if (d == "exact") return Oracle::exact();
  if (d == "dapprox") return Oracle::d_approx();
  constexpr std::string_view adv = "adversarial:";
  if (d.substr(0, adv.size()) == adv) {
    std::string_view rest = d.substr(adv.size());
    auto padding = Oracle::Padding::LowestIds;
    if (auto colon = rest.find(':'); colon != std::string_view::npos) {
      const std::string_view p = rest.substr(colon + 1);
      if (p == "high") padding = Oracle::Padding::HighestIds;
      else if (p != "low") throw std::invalid_argument("unknown padding " + std::string(p));
      rest = rest.substr(0, colon);
    }
    return Oracle::adversarial(parse_rational(rest), padding);
  }
  throw std::invalid_argument("unknown oracle " + std::string(d));
}

RunSpec RunSpec::from_json(const Json& j) {
  static const char* known[] = {"method", "generator", "seed", "seeds", "epsilon", "c", "t", "threshold", "oracle", "opt"};
  for (const auto& [key, _] : j.items())
    if (std::none_of(std::begin(known), std::end(known), [&](const char* k) { return key == k; }))
      throw std::invalid_argument("unknown run field \"" + key + "\"");
  RunSpec s;
  s.method = j.at("method").get<std::string>();
  static const char* methods[] = {"lp", "element_kernel", "exact", "dapprox", "vc2", "dhs", "rsz", "cvd", "fvst"};
  if (std::none_of(std::begin(methods), std::end(methods), [&](const char* m) { return s.method == m; }))
    throw std::invalid_argument("unknown method " + s.method);
  s.generator = j.at("generator");
  s.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("epsilon")) s.epsilon = rational_from(j["epsilon"]);
  else if (s.method == "dhs") s.epsilon = 1;
  if (j.contains("c")) s.c = rational_from(j["c"]);
  s.t = j.value("t", 3);
  if (j.contains("threshold")) s.threshold = rational_from(j["threshold"]);
  s.oracle = j.value("oracle", std::string("exact"));
  s.opt = j.value("opt", true);
  make_oracle(s.oracle);
  return s;
}

Json RunSpec::to_json() const {
  return Json{{"method", method},   {"generator", generator},         {"seed", seed},
              {"epsilon", to_string(epsilon)}, {"c", to_string(c)}, {"t", t},
              {"threshold", to_string(threshold)}, {"oracle", oracle}, {"opt", opt}};
}

ProtocolConfig RunSpec::protocol_config() const {
  ProtocolConfig cfg;
  cfg.seed = seed;
  cfg.epsilon = epsilon;
  cfg.c = c;
  cfg.t = t;
  cfg.brute_force_frac_threshold = threshold;
  cfg.oracle = make_oracle(oracle);
  return cfg;
}

Json run_one(const RunSpec& spec) {
  const auto start = Clock::now();
  Json rec;
  rec["config"] = spec.to_json();
  Checks checks;
  bool success = true;
  try {
    const AnyInstance inst = generate(spec.generator, spec.seed);
    rec["instance"] = instance_info(inst);
    Json body;
    if (spec.method == "lp") body = run_lp(inst, spec, checks);
    else if (spec.method == "element_kernel") body = run_element_kernel(inst, spec, checks);
    else if (spec.method == "exact" || spec.method == "dapprox") body = run_solver(inst, spec, checks);
    else if (spec.method == "vc2" || spec.method == "dhs" || spec.method == "rsz")
      body = run_protocol(inst, spec, checks, success);
    else if (spec.method == "cvd") body = run_cvd(inst, spec, checks);
    else body = run_fvst(inst, spec, checks);
    rec["result"] = std::move(body);
  } catch (const std::exception& e) {
    rec["error"] = e.what();
    checks.add("completed", false);
  }
  rec["checks"] = checks.obj;
  rec["violations"] = checks.failed;
  if (spec.method != "vc2" && spec.method != "dhs" && spec.method != "rsz") success = checks.failed == 0;
  else success = success && !rec.contains("error") && checks.obj.value("valid", false);
  rec["success"] = success;
  rec["wall_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rec;
}

std::string canonical_line(const Json& record) {
  Json copy = record;
  copy.erase("wall_ms");
  return copy.dump();
}

Json summarize(const std::vector<Json>& records) {
  std::size_t successes = 0, violations = 0, errors = 0, failures = 0, max_volume = 0;
  std::optional<Rational> max_ratio;
  for (const auto& r : records) {
    successes += r.at("success").get<bool>();
    violations += r.at("violations").get<std::size_t>();
    errors += r.contains("error");
    if (!r.contains("result")) continue;
    const Json& body = r.at("result");
    if (auto it = body.find("ratio"); it != body.end() && it->is_string()) {
      const Rational q = parse_rational(it->get<std::string>());
      if (!max_ratio || q > *max_ratio) max_ratio = q;
    }
    if (body.value("branch", "") == "Failure") ++failures;
    if (auto it = body.find("call_sizes"); it != body.end()) {
      std::size_t volume = 0;
      for (const auto& c : *it) volume += c.at("sets").get<std::size_t>();
      max_volume = std::max(max_volume, volume);
    }
  }
  Json s;
  s["runs"] = records.size();
  s["successes"] = successes;
  s["success_rate"] = records.empty() ? Json(nullptr) : Json(to_string(qn(successes) / qn(records.size())));
  s["bound_violations"] = violations;
  s["errors"] = errors;
  s["protocol_failures"] = failures;
  s["max_ratio"] = max_ratio ? Json(to_string(*max_ratio)) : Json(nullptr);
  s["max_call_volume"] = max_volume;
  return s;
}

ExperimentResult run_experiment(const Json& spec, std::ostream* sink, std::size_t threads) {
  std::vector<RunSpec> runs;
  if (!spec.is_null() && !spec.is_object()) throw std::invalid_argument("experiment spec must be an object");
  if (spec.is_object()) {
    for (const auto& [key, _] : spec.items())
      if (key != "threads" && key != "runs") throw std::invalid_argument("unknown experiment field \"" + key + "\"");
    if (auto it = spec.find("runs"); it != spec.end()) {
      for (const auto& entry : *it) {
        for (std::uint64_t seed : expand_seeds(entry)) {
          Json e = entry;
          e.erase("seeds");
          e["seed"] = seed;
          runs.push_back(RunSpec::from_json(e));
        }
      }
    }
    if (threads == 0) threads = spec.value("threads", std::size_t{0});
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(runs.size(), 1));

  ExperimentResult out;
  out.records.resize(runs.size());
  std::vector<bool> ready(runs.size(), false);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t written = 0;
  std::exception_ptr sink_error;

  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < runs.size();) {
      Json rec = run_one(runs[i]);
      std::lock_guard lock(mu);
      out.records[i] = std::move(rec);
      ready[i] = true;
      // The sink sees records in sweep order regardless of completion order.
      while (written < runs.size() && ready[written]) {
        if (sink && !sink_error) {
          try {
            *sink << canonical_line(out.records[written]) << '\n';
          } catch (...) {
            sink_error = std::current_exception();
          }
        }
        ++written;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (sink_error) std::rethrow_exception(sink_error);
  if (sink) sink->flush();
  out.summary = summarize(out.records);
  return out;
}

std::optional<Rational> compare_against_bruteforce(const AnyInstance& inst, std::string_view method) {
  auto cap_check = [](std::size_t n, std::size_t cap, const char* what) {
    if (n > cap)
      throw CapExceeded(std::string(what) + " has " + std::to_string(n) + " > " + std::to_string(cap) +
                        " for brute force");
  };
  if (method == "exact" || method == "dapprox" || method == "element_kernel") {
    const HypergraphInstance h = as_hs(inst);
    cap_check(h.num_elements(), kHsOptCap, "universe");
    const std::size_t opt = brute_force_hs(h).size();
    std::size_t got;
    if (method == "exact") got = exact_hs(h).size();
    else if (method == "dapprox") got = d_approx(h).size();
    else {
      const auto r = element_reduce(h);
      got = element_lift(h, r, exact_hs(r.reduced)).size();
    }
    return ratio_of(got, opt);
  }
  const auto colon = method.find(':');
  const std::string_view kind = method.substr(0, colon);
  if (colon == std::string_view::npos) throw std::invalid_argument("unknown method " + std::string(method));
  const Rational eps = parse_rational(method.substr(colon + 1));
  if (kind == "cvd") {
    const Graph& g = as_graph(inst);
    cap_check(g.num_vertices(), kCvdOptCap, "graph");
    const std::size_t opt = brute_force_hs(cvd_to_hs(g)).size();
    const auto r = cvd_reduce(g, eps);
    const Solution s_prime{exact_hs(cvd_to_hs(r.reduced)).elements, ProblemKind::ClusterVertexDeletion};
    return ratio_of(cvd_lift(g, r, s_prime).size(), opt);
  }
  if (kind == "fvst") {
    const Tournament& t = as_tournament(inst);
    cap_check(t.num_vertices(), kFvstOptCap, "tournament");
    const std::size_t opt = brute_force_hs(fvst_to_hs(t)).size();
    const auto r = fvst_reduce(t, eps);
    const Solution s_prime{exact_hs(fvst_to_hs(r.reduced)).elements, ProblemKind::FeedbackVertexSetTournament};
    return ratio_of(fvst_lift(t, r, s_prime).size(), opt);
  }
  throw std::invalid_argument("unknown method " + std::string(method));
}

AnyInstance parse_any(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] != 'p') continue;
    std::string_view rest = line.substr(first + 1);
    rest.remove_prefix(std::min(rest.find_first_not_of(" \t"), rest.size()));
    if (rest.starts_with("hs")) return parse_hs(text);
    if (rest.starts_with("edge")) return parse_graph(text);
    if (rest.starts_with("tour")) return parse_tournament(text);
    break;
  }
  throw ParseError(1, "no recognizable 'p hs|edge|tour' header");
}

std::string serialize_any(const AnyInstance& inst) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HypergraphInstance>) return serialize_hs(x);
        else if constexpr (std::is_same_v<T, Graph>) return serialize_graph(x);
        else return serialize_tournament(x);
      },
      inst);
}

ElementSet parse_solution(std::string_view text) {
  std::vector<Element> out;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c') continue;
    std::size_t i = first;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t used = 0;
      unsigned long v;
      try {
        v = std::stoul(line.substr(i), &used);
      } catch (const std::exception&) {
        throw ParseError(line_no, "expected an element id");
      }
      if (v == 0 || v > 0xffffffffUL) throw ParseError(line_no, "element id out of range");
      out.push_back(static_cast<Element>(v));
      i += used;
    }
  }
  return make_set(std::move(out));
}

Json lift_context(const AnyInstance& input, const ElementKernelResult& r) {
  Json j{{"kind", "hs"}, {"input_digest", instance_digest(input)}};
  j.update(to_json(r));
  return j;
}

Json lift_context(const AnyInstance& input, const CvdKernelResult& r) {
  Json j{{"kind", "cvd"}, {"input_digest", instance_digest(input)}};
  j.update(to_json(r));
  return j;
}

Json lift_context(const AnyInstance& input, const FvstKernelResult& r) {
  Json j{{"kind", "fvst"}, {"input_digest", instance_digest(input)}};
  j.update(to_json(r));
  return j;
}

Solution lift_from_context(const AnyInstance& input, const Json& ctx, const ElementSet& s_prime) {
  if (ctx.at("input_digest").get<std::string>() != instance_digest(input))
    throw std::invalid_argument("lift context belongs to a different input instance");
  const std::string kind = ctx.at("kind").get<std::string>();
  auto set_at = [&](const Json& j, const char* key) { return make_set(j.at(key).get<std::vector<Element>>()); };
  if (kind == "hs") {
    const HypergraphInstance h = as_hs(input);
    ElementKernelResult r;
    r.h_star = set_at(ctx, "h_star");
    r.reduced = h.without(r.h_star);
    const ProblemKind pk = std::holds_alternative<Graph>(input) ? ProblemKind::VertexCover : ProblemKind::HittingSet;
    return element_lift(h, r, Solution{s_prime, pk});
  }
  if (kind == "cvd") {
    const Graph& g = as_graph(input);
    CvdKernelResult r;
    r.D = set_at(ctx, "D");
    ElementSet dropped = r.D;
    for (const auto& c : ctx.at("cliques")) {
      CvdClique cl{set_at(c, "vertices"), set_at(c, "kept"), set_at(c, "removed"), set_at(c, "neighborhood")};
      dropped = set_union(dropped, cl.removed);
      r.cliques.push_back(std::move(cl));
    }
    r.reduced = g.without(dropped);
    return cvd_lift(g, r, Solution{s_prime, ProblemKind::ClusterVertexDeletion});
  }
  if (kind == "fvst") {
    const Tournament& t = as_tournament(input);
    FvstKernelResult r;
    r.D = set_at(ctx, "D");
    r.X = set_at(ctx, "X");
    r.marking.cap_prime = ctx.at("cap_prime").get<std::size_t>();
    for (const auto& [key, side] : ctx.at("extra").items()) {
      const Element v = static_cast<Element>(std::stoul(key));
      r.marking.backw[v] = side.at("backw").get<std::vector<Element>>();
      r.marking.forw[v] = side.at("forw").get<std::vector<Element>>();
    }
    for (const auto& [key, q] : ctx.at("alpha").at("values").items())
      r.alpha.values[static_cast<Element>(std::stoul(key))] = parse_rational(q.get<std::string>());
    r.alpha.objective = parse_rational(ctx.at("alpha").at("objective").get<std::string>());
    r.reduced = t.without(set_union(r.D, r.X));
    return fvst_lift(t, r, Solution{s_prime, ProblemKind::FeedbackVertexSetTournament});
  }
  throw std::invalid_argument("unknown lift context kind " + kind);
}

}  // namespace lossy
