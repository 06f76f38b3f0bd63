#include "peg/simplex.hpp"

#include <sstream>

#include "peg/errors.hpp"

namespace peg {

void LinearProgram::add_row(std::vector<std::pair<int, Rational>> coeffs, char sense,
                            Rational rhs) {
  Row row;
  row.coeffs = std::move(coeffs);
  row.sense = sense;
  row.rhs = std::move(rhs);
  rows.push_back(std::move(row));
}

namespace {

// Consecutive degenerate pivots tolerated under the steepest-descent rule
// before switching to Bland's rule.
constexpr int kBlandTrigger = 24;

class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : lp_(lp) {
    const int m = static_cast<int>(lp.rows.size());
    n_struct_ = lp.num_vars;
    // Column layout: structural | slack/surplus | artificial.
    int n_slack = 0;
    for (const auto& row : lp.rows)
      if (row.sense != '=') ++n_slack;
    first_art_ = n_struct_ + n_slack;
    int n_art = 0;
    for (const auto& row : lp.rows) {
      const bool flip = row.rhs < 0;
      const char sense = flip ? (row.sense == '<' ? '>' : row.sense == '>' ? '<' : '=')
                              : row.sense;
      if (sense != '<') ++n_art;
    }
    cols_ = first_art_ + n_art;
    t_.assign(m, std::vector<Rational>(cols_, Rational(0)));
    b_.assign(m, Rational(0));
    basis_.assign(m, -1);
    active_.assign(m, true);

    int slack_at = n_struct_;
    int art_at = first_art_;
    for (int i = 0; i < m; ++i) {
      const auto& row = lp.rows[i];
      const bool flip = row.rhs < 0;
      for (const auto& [var, coeff] : row.coeffs) t_[i][var] += flip ? -coeff : coeff;
      b_[i] = flip ? -row.rhs : row.rhs;
      char sense = row.sense;
      if (flip) sense = sense == '<' ? '>' : sense == '>' ? '<' : '=';
      if (sense == '<') {
        t_[i][slack_at] = 1;
        basis_[i] = slack_at++;
      } else if (sense == '>') {
        t_[i][slack_at++] = -1;
        t_[i][art_at] = 1;
        basis_[i] = art_at++;
      } else {
        t_[i][art_at] = 1;
        basis_[i] = art_at++;
      }
    }
  }

  LPSolution solve() {
    // Phase 1: maximize minus the sum of artificials.
    if (first_art_ < cols_) {
      std::vector<Rational> cost(cols_, Rational(0));
      for (int j = first_art_; j < cols_; ++j) cost[j] = -1;
      make_objective(cost);
      run(cols_);
      Rational infeas = 0;
      for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] >= first_art_) infeas += b_[i];
      if (infeas != 0) throw LPError("infeasible linear program");
      drive_out_artificials();
    }

    // Phase 2: the real objective, artificial columns barred.
    std::vector<Rational> cost(cols_, Rational(0));
    for (int j = 0; j < n_struct_; ++j) cost[j] = lp_.objective[j];
    make_objective(cost);
    run(first_art_);

    LPSolution solution;
    solution.values.assign(n_struct_, Rational(0));
    solution.objective = 0;
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (!active_[i]) continue;
      if (basis_[i] < n_struct_) {
        solution.values[basis_[i]] = b_[i];
        solution.objective += lp_.objective[basis_[i]] * b_[i];
      }
    }
    solution.pivots = pivots_;
    return solution;
  }

 private:
  void make_objective(const std::vector<Rational>& cost) {
    cost_ = cost;
    // Reduced costs z_j = c_B^T T_j - c_j for the current basis.
    z_.assign(cols_, Rational(0));
    for (int j = 0; j < cols_; ++j) z_[j] = -cost[j];
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (!active_[i]) continue;
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < cols_; ++j)
        if (t_[i][j] != 0) z_[j] += cb * t_[i][j];
    }
  }

  // Pivots until optimal, considering entering columns < col_limit.
  void run(int col_limit) {
    int degenerate_run = 0;
    bool bland = false;
    for (;;) {
      int enter = -1;
      if (bland) {
        for (int j = 0; j < col_limit; ++j)
          if (z_[j] < 0) {
            enter = j;
            break;
          }
      } else {
        for (int j = 0; j < col_limit; ++j)
          if (z_[j] < 0 && (enter < 0 || z_[j] < z_[enter])) enter = j;
      }
      if (enter < 0) return;  // optimal

      int leave = -1;
      for (size_t i = 0; i < basis_.size(); ++i) {
        if (!active_[i] || t_[i][enter] <= 0) continue;
        if (leave < 0) {
          leave = static_cast<int>(i);
          continue;
        }
        const Rational cur = b_[i] * t_[leave][enter];
        const Rational best = b_[leave] * t_[i][enter];
        if (cur < best || (cur == best && basis_[i] < basis_[leave]))
          leave = static_cast<int>(i);
      }
      if (leave < 0) throw LPError("unbounded linear program");

      if (b_[leave] == 0) {
        if (++degenerate_run >= kBlandTrigger) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (!active_[i] || basis_[i] < first_art_) continue;
      int enter = -1;
      for (int j = 0; j < first_art_; ++j)
        if (t_[i][j] != 0) {
          enter = j;
          break;
        }
      if (enter < 0) {
        active_[i] = false;  // redundant constraint
      } else {
        pivot(static_cast<int>(i), enter);
      }
    }
  }

  void pivot(int r, int e) {
    ++pivots_;
    const Rational piv = t_[r][e];
    std::vector<int> nz;
    nz.reserve(cols_);
    for (int j = 0; j < cols_; ++j) {
      if (t_[r][j] == 0) continue;
      t_[r][j] /= piv;
      nz.push_back(j);
    }
    b_[r] /= piv;
    const bool rhs_nz = b_[r] != 0;
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (static_cast<int>(i) == r || !active_[i]) continue;
      const Rational m = t_[i][e];
      if (m == 0) continue;
      for (int j : nz) t_[i][j] -= m * t_[r][j];
      if (rhs_nz) b_[i] -= m * b_[r];
    }
    const Rational mz = z_[e];
    if (mz != 0) {
      for (int j : nz) z_[j] -= mz * t_[r][j];
    }
    basis_[r] = e;
  }

  const LinearProgram& lp_;
  int n_struct_ = 0;
  int first_art_ = 0;
  int cols_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> b_;
  std::vector<Rational> z_;
  std::vector<Rational> cost_;
  std::vector<int> basis_;
  std::vector<bool> active_;
  long pivots_ = 0;
};

}  // namespace

LPSolution solve_lp(const LinearProgram& lp) {
  if (static_cast<int>(lp.objective.size()) != lp.num_vars)
    throw LPError("objective size mismatch");
  Tableau tableau(lp);
  return tableau.solve();
}

std::string lp_to_text(const LinearProgram& lp, const std::vector<std::string>& var_names) {
  auto name = [&](int v) {
    return v < static_cast<int>(var_names.size()) ? var_names[v] : "z" + std::to_string(v);
  };
  std::ostringstream out;
  out << "max";
  for (int v = 0; v < lp.num_vars; ++v)
    if (lp.objective[v] != 0) out << ' ' << to_frac(lp.objective[v]) << '*' << name(v);
  out << '\n';
  for (const auto& row : lp.rows) {
    bool first = true;
    for (const auto& [v, c] : row.coeffs) {
      out << (first ? "" : " + ") << to_frac(c) << '*' << name(v);
      first = false;
    }
    out << ' ' << (row.sense == '<' ? "<=" : row.sense == '>' ? ">=" : "=") << ' '
        << to_frac(row.rhs) << '\n';
  }
  return out.str();
}

}  // namespace peg
