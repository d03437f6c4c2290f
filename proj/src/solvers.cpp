#include "lossy/solvers.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace lossy {

namespace {

using Word = std::uint64_t;

template <std::size_t W>
struct Mask {
  std::array<Word, W> w{};

  void set(std::size_t i) { w[i >> 6] |= Word{1} << (i & 63); }
  void reset(std::size_t i) { w[i >> 6] &= ~(Word{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bool intersects(const Mask& o) const {
    for (std::size_t k = 0; k < W; ++k)
      if (w[k] & o.w[k]) return true;
    return false;
  }
  // Bits of *this outside `o` that also lie in `p`.
  bool intersects_without(const Mask& p, const Mask& o) const {
    for (std::size_t k = 0; k < W; ++k)
      if (w[k] & p.w[k] & ~o.w[k]) return true;
    return false;
  }
  int count_without(const Mask& o) const {
    int c = 0;
    for (std::size_t k = 0; k < W; ++k) c += std::popcount(w[k] & ~o.w[k]);
    return c;
  }
  void merge_without(const Mask& m, const Mask& o) {
    for (std::size_t k = 0; k < W; ++k) w[k] |= m.w[k] & ~o.w[k];
  }
};

// Depth-first branching on a set with the fewest available elements. Elements of
// earlier branches are excluded in later ones, so every hitting set is reached once.
template <std::size_t W>
class BranchAndBound {
 public:
  using M = Mask<W>;

  BranchAndBound(const std::vector<std::vector<std::uint32_t>>& sets, std::size_t n) : n_(n) {
    // Smaller sets first makes the greedy packing bound tighter.
    std::vector<int> order(sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sets[a].size() < sets[b].size(); });
    for (int i : order) {
      M m;
      for (auto e : sets[i]) m.set(e);
      masks_.push_back(m);
      elems_.push_back(sets[i]);
    }
  }

  // Fewest further elements (fewer than `bound`) that complete `chosen` into a hitting
  // set avoiding `excluded`; `bound` if there is none. The completion goes to `witness`.
  std::size_t minimum(const M& chosen, const M& excluded, std::size_t bound, M* witness) {
    best_ = bound;
    best_mask_ = {};
    std::vector<int> unhit;
    for (int s = 0; s < static_cast<int>(masks_.size()); ++s)
      if (!masks_[s].intersects(chosen)) unhit.push_back(s);
    M cur, ex = excluded;
    search(unhit, cur, ex, 0);
    if (witness && best_ < bound) *witness = best_mask_;
    return best_;
  }

  std::size_t num_sets() const { return masks_.size(); }
  const M& mask(int s) const { return masks_[s]; }

 private:
  std::size_t packing_bound(const std::vector<int>& unhit, const M& excluded) const {
    M acc;
    std::size_t lb = 0;
    for (int s : unhit) {
      if (masks_[s].intersects_without(acc, excluded)) continue;
      acc.merge_without(masks_[s], excluded);
      ++lb;
    }
    return lb;
  }

  void search(const std::vector<int>& unhit, M& chosen, M& excluded, std::size_t count) {
    if (unhit.empty()) {
      if (count < best_) {
        best_ = count;
        best_mask_ = chosen;
      }
      return;
    }
    if (count + 1 >= best_) return;
    if (count + packing_bound(unhit, excluded) >= best_) return;

    int pick = -1, pick_avail = 1 << 30;
    for (int s : unhit) {
      const int a = masks_[s].count_without(excluded);
      if (a < pick_avail) pick = s, pick_avail = a;
      if (a <= 1) break;
    }
    if (pick_avail == 0) return;

    std::vector<std::uint32_t> undo;
    std::vector<int> child;
    child.reserve(unhit.size());
    for (auto e : elems_[pick]) {
      if (excluded.test(e)) continue;
      chosen.set(e);
      child.clear();
      for (int s : unhit)
        if (!masks_[s].test(e)) child.push_back(s);
      search(child, chosen, excluded, count + 1);
      chosen.reset(e);
      excluded.set(e);
      undo.push_back(e);
      if (count + 1 >= best_) break;
    }
    for (auto e : undo) excluded.reset(e);
  }

  std::size_t n_;
  std::vector<M> masks_;
  std::vector<std::vector<std::uint32_t>> elems_;
  std::size_t best_ = 0;
  M best_mask_;
};

// Max-degree greedy, used only as an initial upper bound.
std::size_t greedy_upper_bound(const HypergraphInstance& inst) {
  std::vector<ElementSet> open = inst.family();
  std::size_t size = 0;
  while (!open.empty()) {
    std::map<Element, std::size_t> deg;
    for (const auto& s : open)
      for (Element e : s) ++deg[e];
    Element best = 0;
    std::size_t best_deg = 0;
    for (const auto& [e, k] : deg)
      if (k > best_deg) best = e, best_deg = k;
    ++size;
    std::erase_if(open, [&](const ElementSet& s) { return contains(s, best); });
  }
  return size;
}

struct Indexed {
  std::vector<std::vector<std::uint32_t>> sets;
  std::size_t n = 0;
};

Indexed index_sets(const HypergraphInstance& inst) {
  Indexed out;
  const auto& u = inst.universe();
  out.n = u.size();
  for (const auto& s : inst.family()) {
    if (s.empty()) throw std::invalid_argument("empty set cannot be hit");
    std::vector<std::uint32_t> idx;
    for (Element e : s)
      idx.push_back(static_cast<std::uint32_t>(std::lower_bound(u.begin(), u.end(), e) - u.begin()));
    out.sets.push_back(std::move(idx));
  }
  return out;
}

struct Outcome {
  std::size_t opt = 0;
  std::optional<ElementSet> solution;  // lexicographically least, when requested
};

template <std::size_t W>
Outcome solve_with(const HypergraphInstance& inst, const Indexed& ix, std::size_t upper, bool canonical) {
  using M = Mask<W>;
  BranchAndBound<W> bb(ix.sets, ix.n);
  M witness;
  Outcome out;
  out.opt = bb.minimum(M{}, M{}, upper, &witness);
  if (!canonical || out.opt == upper) return out;

  // Decide elements in ascending order, taking each one whenever some optimal hitting
  // set agrees with every decision so far. `witness` is always such a set.
  M chosen, excluded;
  std::size_t count = 0;
  for (std::size_t pos = 0; pos < ix.n && count < out.opt; ++pos) {
    bool useful = false;
    for (std::size_t s = 0; s < bb.num_sets() && !useful; ++s)
      useful = bb.mask(static_cast<int>(s)).test(pos) && !bb.mask(static_cast<int>(s)).intersects(chosen);
    if (!useful) {
      excluded.set(pos);
      continue;
    }
    chosen.set(pos);
    if (!witness.test(pos)) {
      M completion;
      const std::size_t left = out.opt - count - 1;
      if (bb.minimum(chosen, excluded, left + 1, &completion) <= left) {
        witness = completion;
        witness.merge_without(chosen, M{});
      } else {
        chosen.reset(pos);
        excluded.set(pos);
        continue;
      }
    }
    ++count;
  }
  ElementSet s;
  for (std::size_t i = 0; i < ix.n; ++i)
    if (chosen.test(i)) s.push_back(inst.universe()[i]);
  out.solution = std::move(s);
  return out;
}

Outcome solve(const HypergraphInstance& inst, std::size_t upper, bool canonical) {
  const Indexed ix = index_sets(inst);
  const std::size_t words = (ix.n + 63) / 64;
  if (words <= 1) return solve_with<1>(inst, ix, upper, canonical);
  if (words <= 2) return solve_with<2>(inst, ix, upper, canonical);
  if (words <= 4) return solve_with<4>(inst, ix, upper, canonical);
  if (words <= 16) return solve_with<16>(inst, ix, upper, canonical);
  if (words <= 64) return solve_with<64>(inst, ix, upper, canonical);
  throw std::invalid_argument("exact solver limited to 4096 elements");
}

}  // namespace

std::size_t exact_hs_size(const HypergraphInstance& inst) {
  const std::size_t upper = greedy_upper_bound(inst) + 1;
  const Outcome o = solve(inst, upper, false);
  if (o.opt == upper) throw std::logic_error("branching missed the greedy solution");
  return o.opt;
}

std::optional<Solution> exact_hs(const HypergraphInstance& inst, std::optional<std::size_t> budget) {
  std::size_t upper = greedy_upper_bound(inst) + 1;
  if (budget) upper = std::min(upper, *budget + 1);
  const Outcome o = solve(inst, upper, true);
  if (o.opt == upper) {
    if (budget && upper == *budget + 1) return std::nullopt;
    throw std::logic_error("branching missed the greedy solution");
  }
  if (!o.solution || o.solution->size() != o.opt)
    throw std::logic_error("no hitting set of optimal size in lexicographic pass");
  return Solution{*o.solution, ProblemKind::HittingSet};
}

Solution exact_hs(const HypergraphInstance& inst) { return *exact_hs(inst, std::nullopt); }

Solution brute_force_hs(const HypergraphInstance& inst) {
  const auto& u = inst.universe();
  const std::size_t n = u.size();
  if (n > 30) throw std::invalid_argument("brute force limited to 30 elements");
  for (std::size_t k = 0; k <= n; ++k) {
    // Combinations in lexicographic order, so the first hit is the lexicographically least.
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      ElementSet s;
      for (auto i : idx) s.push_back(u[i]);
      if (is_hitting_set(inst, s)) return Solution{s, ProblemKind::HittingSet};
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw std::logic_error("instance has no hitting set");
}

Solution d_approx(const HypergraphInstance& inst) {
  ElementSet chosen;
  for (const auto& s : inst.family())
    if (!intersects(s, chosen)) chosen = set_union(chosen, s);
  return Solution{chosen, ProblemKind::HittingSet};
}

std::vector<Graph::Edge> maximal_matching(std::vector<Graph::Edge> edges) {
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  std::vector<Graph::Edge> out;
  ElementSet used;
  for (const auto& [u, v] : edges) {
    if (contains(used, u) || contains(used, v)) continue;
    out.emplace_back(u, v);
    used.insert(std::lower_bound(used.begin(), used.end(), u), u);
    used.insert(std::lower_bound(used.begin(), used.end(), v), v);
  }
  return out;
}

std::vector<Graph::Edge> maximal_matching(const Graph& g) { return maximal_matching(g.edges()); }

// ---------------------------------------------------------------------------
// Oracle

Oracle Oracle::exact() { return Oracle{}; }

Oracle Oracle::d_approx() {
  Oracle o;
  o.kind_ = Kind::DApprox;
  o.beta_ = 0;
  return o;
}

Oracle Oracle::adversarial(Rational beta, Padding padding) {
  if (beta < 1) throw std::invalid_argument("adversarial oracle needs beta >= 1");
  Oracle o;
  o.kind_ = Kind::Adversarial;
  o.beta_ = std::move(beta);
  o.padding_ = padding;
  return o;
}

Oracle Oracle::scripted(Script script) {
  Oracle o;
  o.kind_ = Kind::Scripted;
  o.beta_ = 0;
  o.script_ = std::move(script);
  return o;
}

Oracle Oracle::fresh() const {
  Oracle o = *this;
  o.log_.clear();
  return o;
}

ElementSet Oracle::solve(const HypergraphInstance& query) {
  const std::size_t call = log_.size();
  log_.push_back({query.num_elements(), query.num_sets()});
  switch (kind_) {
    case Kind::Exact:
      return exact_hs(query).elements;
    case Kind::DApprox:
      return lossy::d_approx(query).elements;
    case Kind::Adversarial: {
      ElementSet s = exact_hs(query).elements;
      const auto target = static_cast<std::size_t>(floor_to_int(beta_ * Rational(static_cast<long>(s.size()))));
      ElementSet spare = set_difference(query.universe(), s);
      if (padding_ == Padding::HighestIds) std::reverse(spare.begin(), spare.end());
      ElementSet pad;
      for (std::size_t i = 0; i < spare.size() && s.size() + pad.size() < target; ++i) pad.push_back(spare[i]);
      return set_union(s, make_set(std::move(pad)));
    }
    case Kind::Scripted: {
      ElementSet s = make_set(script_(query, call));
      if (!is_subset(s, query.universe()) || !is_hitting_set(query, s))
        throw std::logic_error("scripted oracle returned an invalid hitting set");
      return s;
    }
  }
  throw std::logic_error("unknown oracle kind");
}

}  // namespace lossy
