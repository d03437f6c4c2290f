#include "lossy/element_kernel.hpp"

#include <stdexcept>

namespace lossy {

ElementKernelResult element_reduce(const HypergraphInstance& inst) {
  if (inst.d() < 2) throw std::invalid_argument("element kernel requires d >= 2");
  const Rational threshold(1, inst.d() - 1);

  ElementKernelResult out;
  HypergraphInstance current = inst.without({});
  const std::size_t cap = inst.num_elements() + 1;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > cap) throw std::logic_error("element reduction exceeded its iteration cap");
    RationalAssignment alpha = solve_primal(current);
    if (iter == 0) out.frac_in = alpha.objective;
    out.round_fracs.push_back(alpha.objective);
    ElementSet heavy;
    for (const auto& [u, v] : alpha.values)
      if (v >= threshold) heavy.push_back(u);
    if (heavy.empty()) {
      out.frac_out = alpha.objective;
      out.final_alpha = std::move(alpha);
      break;
    }
    out.h_star = set_union(out.h_star, heavy);
    out.rounds.push_back(std::move(heavy));
    current = current.without(out.rounds.back());
  }
  out.reduced = std::move(current);
  return out;
}

Solution element_lift(const HypergraphInstance& inst, const ElementKernelResult& result, const Solution& s_prime) {
  if (!is_hitting_set(result.reduced, s_prime.elements))
    throw std::invalid_argument("solution does not hit every set of the reduced instance");
  if (!is_subset(s_prime.elements, inst.universe()))
    throw std::invalid_argument("solution uses elements outside the input universe");
  return Solution{set_union(s_prime.elements, result.h_star), s_prime.kind};
}

ApproxReport approx_conditions(const HypergraphInstance& inst, const ElementKernelResult& result,
                               const Solution& s_prime, const Rational& rho, std::size_t opt) {
  if (sgn(rho) <= 0) throw std::invalid_argument("rho must be positive");
  Solution lifted = element_lift(inst, result, s_prime);
  ApproxReport r;
  const Rational lifted_size(static_cast<long>(lifted.size()));
  const Rational prime_size(static_cast<long>(s_prime.size()));
  const Rational o(static_cast<long>(opt));
  r.additive_ok = lifted_size - prime_size <= rho * o;
  if (opt == 0) {
    r.ratio_ok = lifted.size() == 0;
  } else {
    r.ratio_ok = lifted_size / o <= Rational(inst.d()) - rho / (inst.d() - 1);
  }
  return r;
}

Rational element_kernel_ratio(int d) { return Rational(d) - Rational(d - 1) / d; }

}  // namespace lossy
