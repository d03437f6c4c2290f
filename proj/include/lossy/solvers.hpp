#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lossy/instances.hpp"
#include "lossy/rational.hpp"

namespace lossy {

/// Minimum hitting set by depth-first branching on a smallest unhit set with
/// packing-bound pruning. Ties are broken towards the lexicographically least
/// optimal set (sorted element lists compared lexicographically).
/// Returns nullopt when the optimum exceeds `budget`.
std::optional<Solution> exact_hs(const HypergraphInstance& inst, std::optional<std::size_t> budget);
Solution exact_hs(const HypergraphInstance& inst);

/// Optimum size only (skips the lexicographic canonicalization pass).
std::size_t exact_hs_size(const HypergraphInstance& inst);

/// Subset enumeration by increasing size. Reference oracle for small universes.
Solution brute_force_hs(const HypergraphInstance& inst);

/// Folklore d-approximation: scan the family in order and take every element of
/// each set not yet hit.
Solution d_approx(const HypergraphInstance& inst);

/// Greedy matching over the sorted edge list; inclusion-maximal.
std::vector<Graph::Edge> maximal_matching(const Graph& g);
std::vector<Graph::Edge> maximal_matching(std::vector<Graph::Edge> sorted_edges);

/// Black-box solver queried by the protocols. Every call is logged.
class Oracle {
 public:
  enum class Kind { Exact, DApprox, Adversarial, Scripted };
  /// How an adversarial oracle pads the exact optimum.
  enum class Padding { LowestIds, HighestIds };

  struct Call {
    std::size_t elements = 0;
    std::size_t sets = 0;
  };

  using Script = std::function<ElementSet(const HypergraphInstance&, std::size_t call_index)>;

  static Oracle exact();
  static Oracle d_approx();
  /// Exact optimum padded with unused universe elements up to floor(beta * opt).
  static Oracle adversarial(Rational beta, Padding padding = Padding::LowestIds);
  /// Caller-supplied answers; validity is still enforced.
  static Oracle scripted(Script script);

  /// Returns a hitting set of `query`; throws std::logic_error if a scripted answer is invalid.
  ElementSet solve(const HypergraphInstance& query);

  Kind kind() const { return kind_; }
  const Rational& beta() const { return beta_; }
  Padding padding() const { return padding_; }
  const std::vector<Call>& call_log() const { return log_; }
  void clear_log() { log_.clear(); }
  /// A fresh oracle of the same configuration with an empty log.
  Oracle fresh() const;

 private:
  Kind kind_ = Kind::Exact;
  Rational beta_{1};
  Padding padding_ = Padding::LowestIds;
  Script script_;
  std::vector<Call> log_;
};

}  // namespace lossy
