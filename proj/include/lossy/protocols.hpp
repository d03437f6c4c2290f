#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lossy/element_kernel.hpp"
#include "lossy/instances.hpp"
#include "lossy/rational.hpp"
#include "lossy/solvers.hpp"

namespace lossy {

struct ProtocolConfig {
  std::uint64_t seed = 0;
  Rational epsilon{1};       // d-HS protocol
  Rational c{1, 5};          // Ruzsa protocol, in (0, 1/4)
  int t = 3;                 // Ruzsa protocol, t + 1 rounds
  Rational brute_force_frac_threshold{8};
  Oracle oracle = Oracle::exact();

  /// Throws std::invalid_argument when a parameter is outside its range.
  void validate() const;
};

enum class Branch {
  BruteForce,  // frac at or below the threshold, solved exactly
  EarlyLarge,  // an oracle answer covered a large fraction of the universe
  FinalSmall,  // the residual instance was solved by the last call
  Failure,     // a size check fired; the d-approximation was returned
  Exhausted,   // Ruzsa protocol ran past round t + 1 (a witness exists)
};

std::string_view to_string(Branch b);

/// One oracle round. Thresholds are the analytic bounds the counts are checked against.
struct ProtocolRound {
  int index = 0;                 // 1-based
  double p = 0;                  // sampling probability
  std::size_t universe = 0;      // elements in the queried instance
  std::size_t sampled = 0;       // |F_i| or |W_i|
  double sample_bound = 0;
  bool queried = false;          // false when the sample check failed first
  std::size_t call_sets = 0;     // sets in the queried instance
  ElementSet answer;             // S_i
  std::size_t residual = 0;      // |T_i| (Ruzsa, VC) or |U_i| (d-HS)
  double residual_bound = 0;     // failure threshold (Ruzsa, VC) or universe lower bound (d-HS)
  std::vector<Graph::Edge> matching;  // M_i (Ruzsa)
};

struct ProtocolReport {
  std::string protocol;
  std::uint64_t seed = 0;
  Solution solution;
  Branch branch = Branch::BruteForce;
  std::size_t rounds_used = 0;
  std::vector<Oracle::Call> call_sizes;
  std::vector<std::pair<std::string, bool>> failure_flags;
  std::vector<ProtocolRound> rounds;

  Rational frac_input;
  Rational frac_reduced;
  std::size_t reduced_elements = 0;
  std::size_t reduced_sets = 0;
  std::size_t h_star = 0;

  std::optional<std::size_t> opt;
  std::optional<Rational> ratio;

  bool failed() const;
  /// Records opt and |solution| / opt. With opt = 0 the ratio is 1 for an empty
  /// solution and left unset otherwise.
  void attach_opt(std::size_t optimum);
};

/// sqrt(10)/2 - 1.
double vc_nu();
/// 2 / (sqrt(10) - 2).
double vc_ratio();
/// (1/(10d)) (1/4)^(d/eps).
double dhs_h(int d, const Rational& epsilon);
/// ceil((d-1)/eps).
int dhs_tau(int d, const Rational& epsilon);

ProtocolReport vc_protocol(const Graph& g, const ProtocolConfig& cfg);
ProtocolReport dhs_protocol(const HypergraphInstance& inst, const ProtocolConfig& cfg);
ProtocolReport rsz_protocol(const Graph& g, const ProtocolConfig& cfg);

/// Vertex sets U_i = V \ S_i and maximal matchings M_i of the rounds of an
/// exhausted Ruzsa run, over the kernelized graph.
struct RuzsaWitness {
  Graph graph;                    // kernelized graph the rounds worked on
  std::size_t r = 0;              // ceil(c |V|)
  std::vector<ElementSet> parts;  // U_i
  std::vector<std::vector<Graph::Edge>> matchings;
};

/// Throws std::invalid_argument unless the report ended in Branch::Exhausted.
RuzsaWitness extract_ruzsa_witness(const ProtocolReport& report, const Graph& g, const ProtocolConfig& cfg);

/// Checks that each M_i is a matching of size >= r inside G[U_i], that the edge
/// sets E(G[U_i]) are pairwise disjoint, and that the trimmed matchings are
/// pairwise disjoint induced matchings of their union graph.
Verdict verify_ruzsa_witness(const RuzsaWitness& w);

}  // namespace lossy
