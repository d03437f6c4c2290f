#include "lossy/protocols.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lossy/lp.hpp"
#include "lossy/rng.hpp"

namespace lossy {

void ProtocolConfig::validate() const {
  if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
  if (sgn(c) <= 0 || c >= Rational(1, 4)) throw std::invalid_argument("c must lie in (0, 1/4)");
  if (t < 0) throw std::invalid_argument("t must be non-negative");
  if (sgn(brute_force_frac_threshold) < 0) throw std::invalid_argument("brute-force threshold must be non-negative");
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::BruteForce: return "BruteForce";
    case Branch::EarlyLarge: return "EarlyLarge";
    case Branch::FinalSmall: return "FinalSmall";
    case Branch::Failure: return "Failure";
    case Branch::Exhausted: return "Exhausted";
  }
  return "?";
}

bool ProtocolReport::failed() const {
  for (const auto& [name, fired] : failure_flags)
    if (fired) return true;
  return branch == Branch::Failure;
}

void ProtocolReport::attach_opt(std::size_t optimum) {
  opt = optimum;
  if (optimum == 0) {
    if (solution.size() == 0) ratio = Rational(1);
    else ratio.reset();
  } else {
    ratio = Rational(static_cast<long>(solution.size()), static_cast<long>(optimum));
  }
}

double vc_nu() { return std::sqrt(10.0) / 2 - 1; }
double vc_ratio() { return 2 / (std::sqrt(10.0) - 2); }

double dhs_h(int d, const Rational& epsilon) {
  return 1.0 / (10.0 * d) * std::pow(0.25, d / to_double(epsilon));
}

int dhs_tau(int d, const Rational& epsilon) {
  return static_cast<int>(ceil_to_int(Rational(d - 1) / epsilon));
}

namespace {

using Real = long double;

// count > bound, tolerating rounding in the analytic side.
bool exceeds(std::size_t count, Real bound) {
  return static_cast<Real>(count) > bound + std::fabs(bound) * LDBL_EPSILON;
}

Real to_real(const Rational& q) { return static_cast<Real>(q.get_d()); }

std::vector<std::size_t> bernoulli_sample(std::size_t population, Real p, std::uint64_t seed, int round) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < population; ++i)
    if (static_cast<Real>(keyed_uniform(seed, static_cast<std::uint64_t>(round), i)) < p) out.push_back(i);
  return out;
}

// Shared prologue: kernelize, and answer directly when frac is small.
struct Setup {
  ElementKernelResult kernel;
  bool done = false;
};

Setup prepare(const HypergraphInstance& input, const ProtocolConfig& cfg, ProtocolReport& report, ProblemKind kind) {
  cfg.validate();
  report.seed = cfg.seed;
  report.failure_flags = {{"sample-too-large", false}, {"residual-too-dense", false}};
  Setup s;
  s.kernel = element_reduce(input);
  report.frac_input = s.kernel.frac_in;
  report.frac_reduced = s.kernel.frac_out;
  report.reduced_elements = s.kernel.reduced.num_elements();
  report.reduced_sets = s.kernel.reduced.num_sets();
  report.h_star = s.kernel.h_star.size();
  if (s.kernel.frac_in <= cfg.brute_force_frac_threshold) {
    report.solution = Solution{exact_hs(input).elements, kind};
    report.branch = Branch::BruteForce;
    s.done = true;
  } else if (s.kernel.frac_out <= cfg.brute_force_frac_threshold) {
    report.solution = element_lift(input, s.kernel, Solution{exact_hs(s.kernel.reduced).elements, kind});
    report.branch = Branch::BruteForce;
    s.done = true;
  }
  return s;
}

void finish(const HypergraphInstance& input, const Setup& setup, const ElementSet& s, const Oracle& oracle,
            ProblemKind kind, ProtocolReport& report) {
  report.solution = element_lift(input, setup.kernel, Solution{s, kind});
  report.call_sizes = oracle.call_log();
  report.rounds_used = report.call_sizes.size();
}

void set_flag(ProtocolReport& report, std::string_view name) {
  for (auto& [n, fired] : report.failure_flags)
    if (n == name) fired = true;
}

std::vector<ElementSet> pick(const std::vector<ElementSet>& family, const std::vector<std::size_t>& idx) {
  std::vector<ElementSet> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(family[i]);
  return out;
}

std::vector<ElementSet> inside(const std::vector<ElementSet>& family, const ElementSet& universe) {
  std::vector<ElementSet> out;
  for (const auto& s : family)
    if (is_subset(s, universe)) out.push_back(s);
  return out;
}

}  // namespace

ProtocolReport vc_protocol(const Graph& g, const ProtocolConfig& cfg) {
  const HypergraphInstance input = g.as_vertex_cover();
  ProtocolReport report;
  report.protocol = "vc2";
  Setup setup = prepare(input, cfg, report, ProblemKind::VertexCover);
  if (setup.done) return report;

  Oracle oracle = cfg.oracle.fresh();
  const HypergraphInstance& inst = setup.kernel.reduced;
  const auto& U = inst.universe();
  const auto& F = inst.family();
  const Real two_frac = 2 * to_real(setup.kernel.frac_out);
  const Real p1 = std::min<Real>(1, 1 / std::sqrt(two_frac));
  const Real dense_bound = 2 * std::pow(two_frac, Real(1.5));

  ElementSet S;
  ProtocolRound r1;
  r1.index = 1;
  r1.p = static_cast<double>(p1);
  r1.universe = U.size();
  auto sample = bernoulli_sample(F.size(), p1, cfg.seed, 1);
  r1.sampled = sample.size();
  r1.sample_bound = static_cast<double>(2 * p1 * F.size());
  if (exceeds(sample.size(), 2 * p1 * F.size())) {
    set_flag(report, "sample-too-large");
    report.rounds.push_back(r1);
    report.branch = Branch::Failure;
    finish(input, setup, d_approx(inst).elements, oracle, ProblemKind::VertexCover, report);
    return report;
  }
  const HypergraphInstance q1(2, U, pick(F, sample));
  r1.queried = true;
  r1.call_sets = q1.num_sets();
  const ElementSet S1 = oracle.solve(q1);
  r1.answer = S1;

  // |S1| >= nu |U| with nu = sqrt(10)/2 - 1, decided exactly: (2|S1| + 2|U|)^2 >= 10 |U|^2.
  const auto a = 2 * S1.size() + 2 * U.size();
  const bool large = a * a >= 10 * U.size() * U.size();
  const ElementSet U1 = set_difference(U, S1);
  const auto T1 = inside(F, U1);
  r1.residual = T1.size();
  r1.residual_bound = static_cast<double>(dense_bound);
  report.rounds.push_back(r1);
  if (large && !U.empty()) {
    report.branch = Branch::EarlyLarge;
    finish(input, setup, U, oracle, ProblemKind::VertexCover, report);
    return report;
  }
  if (exceeds(T1.size(), dense_bound)) {
    set_flag(report, "residual-too-dense");
    report.branch = Branch::Failure;
    finish(input, setup, d_approx(inst).elements, oracle, ProblemKind::VertexCover, report);
    return report;
  }
  const HypergraphInstance q2(2, U1, T1);
  ProtocolRound r2;
  r2.index = 2;
  r2.p = 1;
  r2.universe = U1.size();
  r2.sampled = T1.size();
  r2.sample_bound = static_cast<double>(dense_bound);
  r2.queried = true;
  r2.call_sets = q2.num_sets();
  const ElementSet S2 = oracle.solve(q2);
  r2.answer = S2;
  report.rounds.push_back(r2);

  const ElementSet s_first = set_union(S2, S1);
  const ElementSet T = d_approx(inst.induced(S1)).elements;
  const ElementSet s_second = set_union(U1, T);
  S = s_second.size() < s_first.size() ? s_second : s_first;
  report.branch = Branch::FinalSmall;
  finish(input, setup, S, oracle, ProblemKind::VertexCover, report);
  return report;
}

ProtocolReport dhs_protocol(const HypergraphInstance& input, const ProtocolConfig& cfg) {
  ProtocolReport report;
  report.protocol = "dhs";
  Setup setup = prepare(input, cfg, report, ProblemKind::HittingSet);
  if (setup.done) return report;

  Oracle oracle = cfg.oracle.fresh();
  const HypergraphInstance& inst = setup.kernel.reduced;
  const int d = inst.d();
  const auto& U = inst.universe();
  const auto& F = inst.family();
  const Real eps = to_real(cfg.epsilon);
  const Real dfrac = d * to_real(setup.kernel.frac_out);
  const int tau = dhs_tau(d, cfg.epsilon);
  const Real shrink = 1 - Real(d + 1) / (2 * d);  // 1 - mu/d

  // T_{i-1} is tracked as indices into F so samples are keyed by the set's identity.
  std::vector<std::size_t> alive(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) alive[i] = i;
  ElementSet Ui = U, prev = U, Si;

  for (int i = 1; i <= tau; ++i) {
    ProtocolRound round;
    round.index = i;
    const Real p = std::min<Real>(1, std::pow(dfrac, -(Real(d - 1) - i * eps)));
    round.p = static_cast<double>(p);
    round.universe = Ui.size();
    std::vector<std::size_t> sampled;
    for (auto idx : alive)
      if (static_cast<Real>(keyed_uniform(cfg.seed, static_cast<std::uint64_t>(i), idx)) < p) sampled.push_back(idx);
    const Real bound = std::pow(Real(2), i) * std::pow(dfrac, 1 + eps);
    round.sampled = sampled.size();
    round.sample_bound = static_cast<double>(bound);
    if (exceeds(sampled.size(), bound)) {
      set_flag(report, "sample-too-large");
      report.rounds.push_back(round);
      report.branch = Branch::Failure;
      finish(input, setup, d_approx(inst).elements, oracle, ProblemKind::HittingSet, report);
      return report;
    }
    const HypergraphInstance query(d, Ui, pick(F, sampled));
    round.queried = true;
    round.call_sets = query.num_sets();
    Si = oracle.solve(query);
    round.answer = Si;

    // |S_i| >= (mu/d) |U_{i-1}|  <=>  2d |S_i| >= (d+1) |U_{i-1}|
    if (2 * static_cast<std::size_t>(d) * Si.size() >= static_cast<std::size_t>(d + 1) * Ui.size() && !Ui.empty()) {
      report.rounds.push_back(round);
      const ElementSet outside = set_difference(U, Ui);
      const ElementSet T = d_approx(inst.induced(outside)).elements;
      report.branch = Branch::EarlyLarge;
      finish(input, setup, set_union(T, Ui), oracle, ProblemKind::HittingSet, report);
      return report;
    }
    prev = Ui;
    Ui = set_difference(Ui, Si);
    std::vector<std::size_t> next;
    for (auto idx : alive)
      if (is_subset(F[idx], Ui)) next.push_back(idx);
    alive = std::move(next);
    round.residual = Ui.size();
    round.residual_bound = static_cast<double>(std::pow(shrink, i) * U.size());
    report.rounds.push_back(round);
  }
  // prev = U_{tau-1}
  report.branch = Branch::FinalSmall;
  finish(input, setup, set_union(Si, set_difference(U, prev)), oracle, ProblemKind::HittingSet, report);
  return report;
}

ProtocolReport rsz_protocol(const Graph& g, const ProtocolConfig& cfg) {
  const HypergraphInstance input = g.as_vertex_cover();
  ProtocolReport report;
  report.protocol = "rsz";
  Setup setup = prepare(input, cfg, report, ProblemKind::VertexCover);
  if (setup.done) return report;

  Oracle oracle = cfg.oracle.fresh();
  const HypergraphInstance& inst = setup.kernel.reduced;
  const auto& V = inst.universe();
  const auto& E = inst.family();
  const Real two_frac = 2 * to_real(setup.kernel.frac_out);
  const Real p = std::min<Real>(1, 1 / std::sqrt(two_frac));
  const Real dense_bound = 2 * std::pow(two_frac, Real(1.5));
  // |M_i| < c |V| compared exactly.
  const Rational cV = cfg.c * Rational(static_cast<long>(V.size()));

  std::set<std::size_t> accumulated;  // E_{i-1} as indices into E
  for (int i = 1; i <= cfg.t + 1; ++i) {
    ProtocolRound round;
    round.index = i;
    round.p = static_cast<double>(p);
    round.universe = V.size();
    auto W = bernoulli_sample(E.size(), p, cfg.seed, i);
    round.sampled = W.size();
    round.sample_bound = static_cast<double>(2 * p * E.size());
    if (exceeds(W.size(), 2 * p * E.size())) {
      set_flag(report, "sample-too-large");
      report.rounds.push_back(round);
      report.branch = Branch::Failure;
      finish(input, setup, d_approx(inst).elements, oracle, ProblemKind::VertexCover, report);
      return report;
    }
    std::set<std::size_t> query_idx = accumulated;
    query_idx.insert(W.begin(), W.end());
    const HypergraphInstance query(2, V, pick(E, {query_idx.begin(), query_idx.end()}));
    round.queried = true;
    round.call_sets = query.num_sets();
    const ElementSet Si = oracle.solve(query);
    round.answer = Si;

    std::vector<Graph::Edge> rest;
    std::vector<std::size_t> rest_idx;
    for (std::size_t k = 0; k < E.size(); ++k)
      if (!intersects(E[k], Si)) {
        rest.emplace_back(E[k][0], E[k][1]);
        rest_idx.push_back(k);
      }
    round.matching = maximal_matching(rest);
    round.residual = rest.size();
    round.residual_bound = static_cast<double>(dense_bound);
    report.rounds.push_back(round);

    if (Rational(static_cast<long>(round.matching.size())) < cV) {
      ElementSet S = Si;
      for (const auto& [u, v] : round.matching) S = set_union(S, make_set({u, v}));
      report.branch = Branch::FinalSmall;
      finish(input, setup, S, oracle, ProblemKind::VertexCover, report);
      return report;
    }
    if (exceeds(rest.size(), dense_bound)) {
      set_flag(report, "residual-too-dense");
      report.branch = Branch::Failure;
      finish(input, setup, d_approx(inst).elements, oracle, ProblemKind::VertexCover, report);
      return report;
    }
    accumulated.insert(rest_idx.begin(), rest_idx.end());
  }
  report.branch = Branch::Exhausted;
  finish(input, setup, d_approx(inst).elements, oracle, ProblemKind::VertexCover, report);
  return report;
}

RuzsaWitness extract_ruzsa_witness(const ProtocolReport& report, const Graph& g, const ProtocolConfig& cfg) {
  if (report.protocol != "rsz" || report.branch != Branch::Exhausted)
    throw std::invalid_argument("report carries no Ruzsa-Szemeredi witness event");
  const auto kernel = element_reduce(g.as_vertex_cover());
  std::vector<Graph::Edge> edges;
  for (const auto& e : kernel.reduced.family()) edges.emplace_back(e[0], e[1]);
  RuzsaWitness w;
  w.graph = Graph(kernel.reduced.universe(), edges);
  w.r = static_cast<std::size_t>(ceil_to_int(cfg.c * Rational(static_cast<long>(w.graph.num_vertices()))));
  for (const auto& round : report.rounds) {
    w.parts.push_back(set_difference(w.graph.vertices(), round.answer));
    w.matchings.push_back(round.matching);
  }
  return w;
}

Verdict verify_ruzsa_witness(const RuzsaWitness& w) {
  const Graph& g = w.graph;
  if (w.parts.size() != w.matchings.size()) return {false, {}, "parts and matchings differ in number"};
  std::vector<std::set<Graph::Edge>> inner(w.parts.size());
  for (std::size_t i = 0; i < w.parts.size(); ++i) {
    const auto& M = w.matchings[i];
    if (M.size() < w.r) return {false, {}, "matching " + std::to_string(i + 1) + " smaller than r"};
    ElementSet seen;
    for (const auto& [u, v] : M) {
      if (!g.has_vertex(u) || !g.has_vertex(v) || !g.adjacent(u, v))
        return {false, make_set({u, v}), "matching edge not in the graph"};
      if (!contains(w.parts[i], u) || !contains(w.parts[i], v))
        return {false, make_set({u, v}), "matching edge leaves its part"};
      if (contains(seen, u) || contains(seen, v)) return {false, make_set({u, v}), "edges share an endpoint"};
      seen = set_union(seen, make_set({u, v}));
    }
    for (const auto& e : g.induced(w.parts[i]).edges()) inner[i].insert(e);
  }
  for (std::size_t i = 0; i < inner.size(); ++i)
    for (std::size_t j = i + 1; j < inner.size(); ++j)
      for (const auto& e : inner[i])
        if (inner[j].count(e)) return {false, make_set({e.first, e.second}), "induced edge sets overlap"};

  // Witness construction: trim to exactly r edges and check the union graph.
  std::vector<std::vector<Graph::Edge>> trimmed;
  std::set<Graph::Edge> all;
  for (const auto& M : w.matchings) {
    std::vector<Graph::Edge> m;
    for (auto [u, v] : M) m.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(m.begin(), m.end());
    m.resize(w.r);
    for (const auto& e : m)
      if (!all.insert(e).second) return {false, make_set({e.first, e.second}), "trimmed matchings overlap"};
    trimmed.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < trimmed.size(); ++i) {
    ElementSet verts;
    for (const auto& [u, v] : trimmed[i]) verts = set_union(verts, make_set({u, v}));
    std::set<Graph::Edge> own(trimmed[i].begin(), trimmed[i].end());
    for (const auto& e : all)
      if (!own.count(e) && contains(verts, e.first) && contains(verts, e.second))
        return {false, make_set({e.first, e.second}), "matching " + std::to_string(i + 1) + " is not induced"};
  }
  return {};
}

}  // namespace lossy
