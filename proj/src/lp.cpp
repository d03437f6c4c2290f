#include "lossy/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace lossy {

const Rational& RationalAssignment::at(Element u) const {
  auto it = values.find(u);
  if (it == values.end()) throw std::out_of_range("element " + std::to_string(u) + " not in assignment");
  return it->second;
}

ElementSet RationalAssignment::ones() const {
  ElementSet out;
  for (const auto& [u, v] : values)
    if (v == 1) out.push_back(u);
  return out;
}

namespace {

// Revised simplex for  max 1^T x  s.t.  A x + s = 1,  x, s >= 0  where A is the
// element/set incidence matrix (rows = universe elements, columns = sets).
// Variables 0..m-1 are set columns, m..m+r-1 are slacks. The slack basis is
// feasible since the right-hand side is all ones.
class PackingSimplex {
 public:
  explicit PackingSimplex(const HypergraphInstance& inst) : inst_(inst) {
    const auto& u = inst.universe();
    rows_ = u.size();
    m_ = inst.num_sets();
    columns_.reserve(m_);
    for (const auto& s : inst.family()) {
      std::vector<std::size_t> col;
      for (Element e : s) col.push_back(static_cast<std::size_t>(std::lower_bound(u.begin(), u.end(), e) - u.begin()));
      columns_.push_back(std::move(col));
    }
    binv_.assign(rows_ * rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) binv_[i * rows_ + i] = 1;
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) basis_[i] = m_ + i;
    rhs_.assign(rows_, Rational(1));
    cost_.assign(rows_, Rational(0));
  }

  std::size_t run() {
    std::size_t pivots = 0;
    std::vector<Rational> pi(rows_), col(rows_);
    std::vector<char> nonbasic(m_ + rows_, 1);
    for (auto b : basis_) nonbasic[b] = 0;
    // Largest reduced cost enters while the objective moves; after a degenerate pivot
    // Bland's smallest-index rule takes over until the next strict improvement, which
    // rules out cycling.
    bool bland = false;
    for (;;) {
      compute_prices(pi);
      std::size_t entering = m_ + rows_;
      Rational rc, best_rc;
      for (std::size_t j = 0; j < m_ + rows_; ++j) {
        if (!nonbasic[j]) continue;
        if (j < m_) {
          rc = 1;
          for (auto r : columns_[j]) rc -= pi[r];
        } else {
          rc = -pi[j - m_];
        }
        if (sgn(rc) <= 0) continue;
        if (entering == m_ + rows_ || rc > best_rc) {
          entering = j;
          best_rc = rc;
        }
        if (bland) break;
      }
      if (entering == m_ + rows_) break;

      entering_column(entering, col);
      std::size_t leave = rows_;
      Rational best, ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(col[i]) <= 0) continue;
        ratio = rhs_[i] / col[i];
        if (leave == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_) throw std::logic_error("packing LP reported unbounded");
      bland = sgn(best) == 0;
      pivot(leave, entering, col);
      nonbasic[basis_[leave]] = 1;
      basis_[leave] = entering;
      nonbasic[entering] = 0;
      cost_[leave] = entering < m_ ? 1 : 0;
      ++pivots;
    }
    return pivots;
  }

  LpSolution extract(std::size_t pivots) const {
    LpSolution out;
    out.pivots = pivots;
    std::vector<Rational> pi(rows_);
    compute_prices(pi);
    const auto& u = inst_.universe();
    for (std::size_t i = 0; i < rows_; ++i) {
      out.primal.values.emplace(u[i], pi[i]);
      out.primal.objective += pi[i];
    }
    out.dual.values.assign(m_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < m_) out.dual.values[basis_[i]] = rhs_[i];
    for (const auto& x : out.dual.values) out.dual.objective += x;
    return out;
  }

 private:
  // pi = c_B^T B^{-1}
  void compute_prices(std::vector<Rational>& pi) const {
    for (std::size_t j = 0; j < rows_; ++j) {
      pi[j] = 0;
      for (std::size_t i = 0; i < rows_; ++i)
        if (sgn(cost_[i]) != 0 && sgn(binv_[i * rows_ + j]) != 0) pi[j] += cost_[i] * binv_[i * rows_ + j];
    }
  }

  // col = B^{-1} a_j
  void entering_column(std::size_t j, std::vector<Rational>& col) const {
    for (std::size_t i = 0; i < rows_; ++i) {
      col[i] = 0;
      if (j < m_) {
        for (auto r : columns_[j]) col[i] += binv_[i * rows_ + r];
      } else {
        col[i] = binv_[i * rows_ + (j - m_)];
      }
    }
  }

  void pivot(std::size_t leave, std::size_t /*entering*/, const std::vector<Rational>& col) {
    const Rational p = col[leave];
    Rational* prow = &binv_[leave * rows_];
    for (std::size_t k = 0; k < rows_; ++k)
      if (sgn(prow[k]) != 0) prow[k] /= p;
    rhs_[leave] /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == leave || sgn(col[i]) == 0) continue;
      const Rational f = col[i];
      Rational* row = &binv_[i * rows_];
      for (std::size_t k = 0; k < rows_; ++k)
        if (sgn(prow[k]) != 0) row[k] -= f * prow[k];
      rhs_[i] -= f * rhs_[leave];
    }
  }

  const HypergraphInstance& inst_;
  std::size_t rows_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<std::size_t>> columns_;
  std::vector<Rational> binv_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> rhs_;
  std::vector<Rational> cost_;
};

}  // namespace

LpSolution solve_lp(const HypergraphInstance& inst) {
  PackingSimplex simplex(inst);
  auto pivots = simplex.run();
  auto out = simplex.extract(pivots);
  if (out.primal.objective != out.dual.objective) throw std::logic_error("LP objectives disagree");
  for (const auto& [u, v] : out.primal.values)
    if (sgn(v) < 0 || v > 1) throw std::logic_error("optimal covering value outside [0,1]");
  return out;
}

RationalAssignment solve_primal(const HypergraphInstance& inst) { return solve_lp(inst).primal; }

DualAssignment solve_dual(const HypergraphInstance& inst) { return solve_lp(inst).dual; }

bool primal_feasible(const HypergraphInstance& inst, const RationalAssignment& y) {
  for (const auto& [u, v] : y.values)
    if (sgn(v) < 0) return false;
  for (const auto& s : inst.family()) {
    Rational sum;
    for (Element e : s) {
      auto it = y.values.find(e);
      if (it != y.values.end()) sum += it->second;
    }
    if (sum < 1) return false;
  }
  return true;
}

bool dual_feasible(const HypergraphInstance& inst, const DualAssignment& x) {
  if (x.values.size() != inst.num_sets()) return false;
  std::map<Element, Rational> load;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    if (sgn(x.values[i]) < 0) return false;
    for (Element e : inst.family()[i]) load[e] += x.values[i];
  }
  for (const auto& [e, l] : load)
    if (l > 1) return false;
  return true;
}

bool check_optimal_pair(const RationalAssignment& primal, const DualAssignment& dual, const HypergraphInstance& inst) {
  if (!primal_feasible(inst, primal)) throw InfeasibleAssignment("primal assignment is infeasible");
  if (!dual_feasible(inst, dual)) throw InfeasibleAssignment("dual assignment is infeasible");

  Rational py, dx;
  for (const auto& [u, v] : primal.values) py += v;
  for (const auto& v : dual.values) dx += v;
  if (py != primal.objective || dx != dual.objective) return false;
  if (py != dx) return false;

  const auto& fam = inst.family();
  std::map<Element, Rational> load;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (Element e : fam[i]) load[e] += dual.values[i];
    if (sgn(dual.values[i]) > 0) {
      Rational cover;
      for (Element e : fam[i]) {
        auto it = primal.values.find(e);
        if (it != primal.values.end()) cover += it->second;
      }
      if (cover != 1) return false;
    }
  }
  for (const auto& [u, v] : primal.values) {
    if (sgn(v) == 0) continue;
    auto it = load.find(u);
    if (it == load.end() || it->second != 1) return false;
  }
  return true;
}

ElementSet support(const RationalAssignment& a) {
  ElementSet out;
  for (const auto& [u, v] : a.values)
    if (sgn(v) != 0) out.push_back(u);
  return out;
}

RationalAssignment restrict_to(const RationalAssignment& a, const ElementSet& sub) {
  RationalAssignment out;
  for (Element u : sub) {
    auto it = a.values.find(u);
    Rational v = it == a.values.end() ? Rational(0) : it->second;
    out.objective += v;
    out.values.emplace(u, std::move(v));
  }
  return out;
}

}  // namespace lossy
