#include "lossy/fvst_kernel.hpp"

#include <algorithm>
#include <stdexcept>

#include "marking.hpp"

namespace lossy {

namespace {

bool triangle(const Tournament& t, Element a, Element b, Element c) {
  return (t.arc(a, b) && t.arc(b, c) && t.arc(c, a)) || (t.arc(b, a) && t.arc(c, b) && t.arc(a, c));
}

void check_unit(const Rational& q, const char* name) {
  if (sgn(q) <= 0 || q >= 1) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

}  // namespace

AlphaOrder alpha_order(const Tournament& t, const RationalAssignment& alpha) {
  const Tournament rest = t.without(support(alpha));
  const auto& vs = rest.vertices();
  std::map<Element, std::size_t> indeg;
  for (Element v : vs) indeg[v] = 0;
  for (const auto& [a, b] : rest.arcs()) ++indeg[b];
  AlphaOrder out;
  ElementSet ready;
  for (const auto& [v, k] : indeg)
    if (k == 0) ready.push_back(v);
  while (!ready.empty()) {
    // A tournament's topological order is unique, so at most one source exists at a time.
    if (ready.size() > 1) throw std::logic_error("tournament order is not unique");
    Element v = ready.back();
    ready.pop_back();
    out.rank[v] = out.order.size();
    out.order.push_back(v);
    for (Element w : vs)
      if (w != v && rest.arc(v, w) && --indeg[w] == 0) ready.push_back(w);
  }
  if (out.order.size() != vs.size()) throw std::logic_error("G - support(alpha) contains a cycle");
  return out;
}

std::optional<Element> fit_position(const Tournament& t, const std::vector<Element>& unmarked, Element v) {
  // Leading run of unmarked vertices with arcs into v.
  std::size_t lo = 0, hi = unmarked.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (t.arc(unmarked[mid], v)) lo = mid + 1;
    else hi = mid;
  }
  for (std::size_t i = 0; i < unmarked.size(); ++i)
    if (t.arc(unmarked[i], v) != (i < lo)) return std::nullopt;
  return lo == 0 ? kFrontPosition : unmarked[lo - 1];
}

FvstMarking fvst_marking(const Rational& delta, const Tournament& t, const RationalAssignment& alpha) {
  check_unit(delta, "delta");
  detail::require_optimal(alpha, fvst_to_hs(t));
  const auto cap = static_cast<std::size_t>(ceil_to_int(1 / delta));
  auto m = detail::mark_obstructions(t.vertices(), alpha, cap,
                                     [&](Element v, Element w, Element r) { return triangle(t, v, w, r); });
  FvstMarking out;
  out.cap = m.cap;
  out.mark = std::move(m.mark);
  out.nu = std::move(m.nu);
  out.matching_size = std::move(m.matching_size);
  out.D = std::move(m.D);
  out.M_all = std::move(m.M_all);
  return out;
}

FvstMarking fvst_extra_marking(const Rational& delta_prime, const Tournament& t, const RationalAssignment& alpha,
                               FvstMarking marking) {
  check_unit(delta_prime, "delta'");
  const auto cap = static_cast<std::size_t>(ceil_to_int(1 / delta_prime));
  marking.cap_prime = cap;
  const ElementSet supp = support(alpha);
  const AlphaOrder ord = alpha_order(t, alpha);
  std::vector<Element> unmarked;
  for (Element v : ord.order)
    if (!contains(marking.M_all, v)) unmarked.push_back(v);

  for (Element v : set_union(set_difference(supp, marking.D), marking.M_all)) {
    auto p = fit_position(t, unmarked, v);
    if (!p) throw std::logic_error("vertex " + std::to_string(v) + " has no position");
    marking.position[v] = *p;
  }

  ElementSet reserved;
  for (Element v : set_difference(supp, marking.D)) {
    const Element p = marking.position.at(v);
    const std::size_t split = p == kFrontPosition ? 0 : ord.rank.at(p) + 1;  // ranks < split are <= p
    std::vector<Element> back, fwd;
    for (Element u : unmarked) {
      if (contains(reserved, u)) continue;
      (ord.rank.at(u) < split ? back : fwd).push_back(u);
    }
    if (back.size() > cap) back.erase(back.begin(), back.end() - static_cast<std::ptrdiff_t>(cap));
    if (fwd.size() > cap) fwd.resize(cap);
    reserved = set_union(reserved, make_set(back));
    reserved = set_union(reserved, make_set(fwd));
    marking.backw[v] = std::move(back);
    marking.forw[v] = std::move(fwd);
  }
  marking.M_hat = reserved;
  return marking;
}

Rational fvst_delta(const Rational& epsilon) { return epsilon / 3 - 2 * epsilon * epsilon / 9; }
Rational fvst_delta_prime(const Rational& epsilon) { return 2 * epsilon / 3; }

FvstKernelResult fvst_reduce(const Tournament& t, const Rational& epsilon) {
  check_unit(epsilon, "epsilon");
  FvstKernelResult out;
  out.delta = fvst_delta(epsilon);
  out.delta_prime = fvst_delta_prime(epsilon);
  out.alpha = solve_primal(fvst_to_hs(t));
  out.marking = fvst_extra_marking(out.delta_prime, t, out.alpha, fvst_marking(out.delta, t, out.alpha));
  out.D = out.marking.D;
  const ElementSet keep = set_union(set_union(support(out.alpha), out.marking.M_all), out.marking.M_hat);
  out.X = set_difference(t.vertices(), keep);
  out.reduced = t.without(set_union(out.D, out.X));
  return out;
}

ElementSet fvst_lift_extra(const FvstKernelResult& result, const ElementSet& s_prime) {
  const std::size_t cap = result.marking.cap_prime;
  auto full_inside = [&](const std::vector<Element>& side) {
    return side.size() == cap && is_subset(make_set(side), s_prime);
  };
  ElementSet y;
  for (Element v : set_difference(support(result.alpha), result.D))
    if (full_inside(result.marking.backw.at(v)) || full_inside(result.marking.forw.at(v))) y.push_back(v);
  return y;
}

Solution fvst_lift(const Tournament& t, const FvstKernelResult& result, const Solution& s_prime) {
  if (!is_subset(s_prime.elements, t.vertices())) throw std::invalid_argument("solution uses unknown vertices");
  if (!verify_solution(result.reduced, Solution{s_prime.elements, ProblemKind::FeedbackVertexSetTournament}))
    throw std::invalid_argument("solution leaves a cycle in the reduced tournament");
  ElementSet s = set_union(s_prime.elements, result.D);
  s = set_union(s, fvst_lift_extra(result, s_prime.elements));
  return Solution{s, ProblemKind::FeedbackVertexSetTournament};
}

StructureReport fvst_triangle_check(const Tournament& t, const RationalAssignment& alpha, const FvstMarking& m) {
  StructureReport rep;
  const ElementSet supp = support(alpha);
  const ElementSet anchors = set_difference(supp, m.D);
  const ElementSet core = set_union(anchors, m.M_all);
  const AlphaOrder ord = alpha_order(t, alpha);
  auto pos = [&](Element v) { return m.position.at(v); };
  auto before = [&](Element p, Element w) { return p == kFrontPosition || ord.rank.at(p) < ord.rank.at(w); };
  auto name = [](Element a, Element b, Element c) {
    return "{" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "}";
  };

  for (Element v : core)
    if (!m.position.count(v)) rep.violations.push_back("vertex " + std::to_string(v) + " has no recorded position");
  if (!rep.ok()) return rep;

  const ElementSet live = set_difference(t.vertices(), m.D);
  for (std::size_t i = 0; i < live.size(); ++i)
    for (std::size_t j = i + 1; j < live.size(); ++j)
      for (std::size_t k = j + 1; k < live.size(); ++k) {
        const Element tri[3] = {live[i], live[j], live[k]};
        if (!triangle(t, tri[0], tri[1], tri[2])) continue;
        int outside = 0, wi = -1;
        for (int a = 0; a < 3; ++a)
          if (!contains(core, tri[a])) ++outside, wi = a;
        if (outside == 0) continue;
        if (outside > 1) {
          rep.violations.push_back("triangle " + name(tri[0], tri[1], tri[2]) + " has two unmarked vertices");
          continue;
        }
        const Element w = tri[wi];
        const Element x = tri[(wi + 1) % 3], y = tri[(wi + 2) % 3];
        bool classified = false;
        for (auto [v, u] : {std::pair{x, y}, std::pair{y, x}}) {
          if (!contains(anchors, v)) continue;
          const bool case_i = t.arc(u, v) && before(pos(v), w) && !before(pos(u), w);
          const bool case_ii = t.arc(v, u) && before(pos(u), w) && !before(pos(v), w);
          classified |= case_i || case_ii;
          if (contains(m.M_hat, w)) continue;
          const auto& side = t.arc(v, u) ? m.backw.at(v) : m.forw.at(v);
          if (side.size() != m.cap_prime)
            rep.violations.push_back("triangle " + name(v, u, w) + ": reserved side of " + std::to_string(v) + " not full");
          for (Element r : side)
            if (!triangle(t, v, u, r))
              rep.violations.push_back("triangle " + name(v, u, w) + ": reserved " + std::to_string(r) + " is no witness");
        }
        if (!classified) rep.violations.push_back("triangle " + name(tri[0], tri[1], tri[2]) + " matches neither case");
      }

  const Rational bound = 3 * alpha.objective - 2 * Rational(static_cast<long>(alpha.ones().size()));
  if (Rational(static_cast<long>(supp.size())) > bound)
    rep.violations.push_back("support exceeds 3 frac - 2 |alpha^{-1}(1)|");
  return rep;
}

Rational fvst_size_factor(const Rational& epsilon) { return 13 + 9 / epsilon; }

}  // namespace lossy
