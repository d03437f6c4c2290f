#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lossy/cvd_kernel.hpp"
#include "lossy/instances.hpp"
#include "lossy/lp.hpp"
#include "lossy/rational.hpp"

namespace lossy {

/// Topological order of G - support(alpha).
struct AlphaOrder {
  std::vector<Element> order;
  std::map<Element, std::size_t> rank;
};

/// Positions use 0 for "before every unmarked vertex"; vertex ids are >= 1.
constexpr Element kFrontPosition = 0;

struct FvstMarking {
  std::size_t cap = 0;  // ceil(1/delta)
  std::map<Element, ElementSet> mark;
  std::map<Element, std::vector<Graph::Edge>> nu;
  std::map<Element, std::size_t> matching_size;
  ElementSet D;
  ElementSet M_all;

  // Filled by fvst_extra_marking.
  std::size_t cap_prime = 0;  // ceil(1/delta')
  std::map<Element, std::vector<Element>> backw;  // ascending in <_alpha
  std::map<Element, std::vector<Element>> forw;   // ascending in <_alpha
  ElementSet M_hat;
  std::map<Element, Element> position;  // (support \ D) u M -> position w.r.t. M
};

struct FvstKernelResult {
  Tournament reduced;
  ElementSet D;
  ElementSet X;
  FvstMarking marking;
  RationalAssignment alpha;
  Rational delta;
  Rational delta_prime;
};

/// Throws std::logic_error if G - support(alpha) has a cycle.
AlphaOrder alpha_order(const Tournament& t, const RationalAssignment& alpha);

/// Position of v among `unmarked` (listed in <_alpha order), or nullopt if v
/// does not fit. Binary search on the arc pattern, then a full scan to confirm.
std::optional<Element> fit_position(const Tournament& t, const std::vector<Element>& unmarked, Element v);

/// Throws std::invalid_argument unless 0 < delta < 1 and alpha is optimal for fvst_to_hs(t).
FvstMarking fvst_marking(const Rational& delta, const Tournament& t, const RationalAssignment& alpha);

/// Throws std::logic_error if a vertex of (support \ D) u M has no position.
FvstMarking fvst_extra_marking(const Rational& delta_prime, const Tournament& t, const RationalAssignment& alpha,
                               FvstMarking marking);

/// eps/3 - 2 eps^2 / 9 and 2 eps / 3.
Rational fvst_delta(const Rational& epsilon);
Rational fvst_delta_prime(const Rational& epsilon);

FvstKernelResult fvst_reduce(const Tournament& t, const Rational& epsilon);

/// Y collected from full backw/forw sets inside s_prime.
ElementSet fvst_lift_extra(const FvstKernelResult& result, const ElementSet& s_prime);

/// S' u D u Y. Throws std::invalid_argument if `s_prime` leaves a cycle in the reduced tournament.
Solution fvst_lift(const Tournament& t, const FvstKernelResult& result, const Solution& s_prime);

/// Classifies every triangle of G - D and checks the backw/forw consequence.
StructureReport fvst_triangle_check(const Tournament& t, const RationalAssignment& alpha, const FvstMarking& marking);

/// 13 + 9/eps.
Rational fvst_size_factor(const Rational& epsilon);

}  // namespace lossy
