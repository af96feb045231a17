#include "probcalc/simplex.hpp"

#include <stdexcept>

namespace probcalc {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows, std::vector<Rational>(cols + 1)), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][n_]; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return m_; }

  void set_objective(const std::vector<Rational>& c) {
    z_.assign(n_ + 1, 0);
    for (std::size_t j = 0; j < n_; ++j) z_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j)
        if (t_[i][j] != 0) z_[j] -= cb * t_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = t_[r][c];
    for (std::size_t j = 0; j <= n_; ++j)
      if (t_[r][j] != 0) t_[r][j] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational k = t_[i][c];
      for (std::size_t j = 0; j <= n_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= k * t_[r][j];
    }
    if (!z_.empty() && z_[c] != 0) {
      Rational k = z_[c];
      for (std::size_t j = 0; j <= n_; ++j)
        if (t_[r][j] != 0) z_[j] -= k * t_[r][j];
    }
    basis_[r] = c;
  }

  // Maximizes over columns in `allowed`. False when unbounded.
  bool run(const std::vector<bool>& allowed) {
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (allowed[j] && z_[j] > 0) {
          enter = j;
          break;
        }
      if (enter == n_) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][n_] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  Rational objective_value() const { return -z_[n_]; }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> z_;
};

}  // namespace

LpResult lp_solve(const LpProblem& p) {
  // Columns: split variables, then one surplus per Geq row, then one artificial per row.
  std::vector<std::size_t> pos(p.nvars), neg(p.nvars, SIZE_MAX);
  std::size_t col = 0;
  for (std::size_t v = 0; v < p.nvars; ++v) {
    pos[v] = col++;
    if (!p.free_var.empty() && p.free_var[v]) neg[v] = col++;
  }
  std::size_t m = p.rows.size();
  std::vector<std::size_t> surplus(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    if (p.rows[i].rel == RowRel::Geq) surplus[i] = col++;
    else if (p.rows[i].rel != RowRel::Eq) throw std::invalid_argument("lp rows must be = or >=");
  }
  std::size_t art0 = col;
  std::size_t ncols = col + m;
  Tableau t(m, ncols);
  for (std::size_t i = 0; i < m; ++i) {
    const LinRow& r = p.rows[i];
    bool flip = r.rhs < 0;
    Rational sgn = flip ? -1 : 1;
    for (const auto& [v, c] : r.coeffs) {
      t.at(i, pos[v]) += sgn * c;
      if (neg[v] != SIZE_MAX) t.at(i, neg[v]) -= sgn * c;
    }
    if (surplus[i] != SIZE_MAX) t.at(i, surplus[i]) = -sgn;
    t.at(i, art0 + i) = 1;
    t.rhs(i) = sgn * r.rhs;
    t.basis()[i] = art0 + i;
  }

  std::vector<Rational> c1(ncols, 0);
  for (std::size_t i = 0; i < m; ++i) c1[art0 + i] = -1;
  t.set_objective(c1);
  std::vector<bool> allowed(ncols, true);
  t.run(allowed);
  LpResult res;
  if (t.objective_value() < 0) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }
  // Drive artificials out of the basis.
  for (std::size_t i = 0; i < t.rows();) {
    if (t.basis()[i] < art0) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < art0 && t.at(i, j) == 0) ++j;
    if (j < art0) {
      t.pivot(i, j);
      ++i;
    } else {
      t.drop_row(i);
    }
  }
  for (std::size_t j = art0; j < ncols; ++j) allowed[j] = false;
  std::vector<Rational> c2(ncols, 0);
  for (const auto& [v, c] : p.maximize) {
    c2[pos[v]] += c;
    if (neg[v] != SIZE_MAX) c2[neg[v]] -= c;
  }
  t.set_objective(c2);
  bool bounded = t.run(allowed);
  std::vector<Rational> colval(ncols, 0);
  for (std::size_t i = 0; i < t.rows(); ++i) colval[t.basis()[i]] = t.rhs(i);
  res.x.assign(p.nvars, 0);
  for (std::size_t v = 0; v < p.nvars; ++v) {
    res.x[v] = colval[pos[v]];
    if (neg[v] != SIZE_MAX) res.x[v] -= colval[neg[v]];
  }
  res.status = bounded ? LpResult::Status::Optimal : LpResult::Status::Unbounded;
  res.value = 0;
  for (const auto& [v, c] : p.maximize) res.value += c * res.x[v];
  return res;
}

}  // namespace probcalc
