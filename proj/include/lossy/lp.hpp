#pragma once

#include <map>
#include <vector>

#include "lossy/instances.hpp"
#include "lossy/rational.hpp"

namespace lossy {

/// Solution of the covering LP  min sum_u y_u  s.t.  sum_{u in S} y_u >= 1, y >= 0.
/// Every universe element has an entry (zeros included).
struct RationalAssignment {
  std::map<Element, Rational> values;
  Rational objective;

  const Rational& at(Element u) const;
  /// Elements whose value is exactly one.
  ElementSet ones() const;
};

/// Solution of the packing LP  max sum_S x_S  s.t.  sum_{S ni u} x_S <= 1, x >= 0,
/// indexed like `HypergraphInstance::family()`.
struct DualAssignment {
  std::vector<Rational> values;
  Rational objective;
};

struct LpSolution {
  RationalAssignment primal;
  DualAssignment dual;
  std::size_t pivots = 0;
};

/// Exact primal simplex on the packing LP with Bland's rule. The covering optimum is
/// read off the final simplex multipliers, so both sides come from one basis.
/// Deterministic: repeated calls return identical assignments.
LpSolution solve_lp(const HypergraphInstance& inst);

RationalAssignment solve_primal(const HypergraphInstance& inst);
DualAssignment solve_dual(const HypergraphInstance& inst);

/// Thrown by check_optimal_pair when an input is not feasible for the instance.
class InfeasibleAssignment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool primal_feasible(const HypergraphInstance& inst, const RationalAssignment& y);
bool dual_feasible(const HypergraphInstance& inst, const DualAssignment& x);

/// True iff the objectives agree exactly and both complementary slackness
/// conditions hold. Throws InfeasibleAssignment if either side is infeasible.
bool check_optimal_pair(const RationalAssignment& primal, const DualAssignment& dual,
                        const HypergraphInstance& inst);

ElementSet support(const RationalAssignment& a);

/// Restriction of `a` to `sub`'s universe, with the objective recomputed.
RationalAssignment restrict_to(const RationalAssignment& a, const ElementSet& sub);

}  // namespace lossy
