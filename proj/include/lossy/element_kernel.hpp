#pragma once

#include <vector>

#include "lossy/instances.hpp"
#include "lossy/lp.hpp"

namespace lossy {

/// Output of the iterated LP-threshold element reduction.
struct ElementKernelResult {
  HypergraphInstance reduced;          // sets avoiding h_star, universe = their union
  ElementSet h_star;                   // disjoint union of `rounds`
  std::vector<ElementSet> rounds;      // elements at or above 1/(d-1) per iteration
  std::vector<Rational> round_fracs;   // LP optimum at the start of each iteration
  Rational frac_in;
  Rational frac_out;
  RationalAssignment final_alpha;      // optimum of `reduced`, all values < 1/(d-1)
};

/// Repeatedly solves the LP and deletes every element valued >= 1/(d-1)
/// (with all sets it hits) until no element reaches the threshold.
ElementKernelResult element_reduce(const HypergraphInstance& inst);

/// S' + H*. Throws std::invalid_argument if `s_prime` does not hit every set of
/// the reduced instance.
Solution element_lift(const HypergraphInstance& inst, const ElementKernelResult& result, const Solution& s_prime);

struct ApproxReport {
  bool additive_ok = false;  // |S| - |S'| <= rho * opt
  bool ratio_ok = false;     // |S| / opt <= d - rho/(d-1)
};

/// Evaluates both guarantees of the lift for a given rho > 0 and the exact opt of `inst`.
ApproxReport approx_conditions(const HypergraphInstance& inst, const ElementKernelResult& result,
                               const Solution& s_prime, const Rational& rho, std::size_t opt);

/// d - (d-1)/d.
Rational element_kernel_ratio(int d);

}  // namespace lossy
