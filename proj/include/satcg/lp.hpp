#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace satcg {

// Maximization LP in the fixed form: max c'x  s.t.  Ax <= b, x >= 0.
// Columns are stored sparsely; rows are identified by dense indices.
struct LpProblem {
  std::vector<double> objective;                            // per variable
  std::vector<std::vector<std::pair<int, double>>> columns; // per variable: (row, coeff)
  std::vector<double> rhs;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  int add_row(double b) {
    rhs.push_back(b);
    return num_rows() - 1;
  }
  int add_variable(double obj, std::vector<std::pair<int, double>> entries = {}) {
    objective.push_back(obj);
    columns.push_back(std::move(entries));
    return num_vars() - 1;
  }

  void check() const {
    if (columns.size() != objective.size())
      throw std::invalid_argument("lp: column/objective size mismatch");
    for (double b : rhs)
      if (!std::isfinite(b)) throw std::invalid_argument("lp: non-finite rhs");
    for (double c : objective)
      if (!std::isfinite(c)) throw std::invalid_argument("lp: non-finite objective");
    for (const auto& col : columns)
      for (const auto& [row, val] : col) {
        if (row < 0 || row >= num_rows()) throw std::invalid_argument("lp: entry row out of range");
        if (!std::isfinite(val)) throw std::invalid_argument("lp: non-finite matrix entry");
      }
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "?";
}

struct LpOptions {
  enum class PivotRule { MostImproving, Bland };
  PivotRule pivot_rule = PivotRule::MostImproving;
  double feasibility_tol = 1e-9;  // absolute
  double optimality_tol = 1e-9;   // relative to coefficient magnitude
  int max_iterations = 50000;
  int refactor_interval = 64;  // pivots between basis reinversions
  int stall_threshold = 32;    // degenerate pivots before Bland's rule kicks in
};

// Basis encoding that survives column growth: entry k holds the structural
// variable index basic in row k, or -(i+1) when row i's slack is basic there.
struct LpBasis {
  std::vector<int> rows;
};

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  std::vector<double> x;      // per variable
  std::vector<double> duals;  // per constraint
  double objective = 0.0;
  int iterations = 0;
  LpBasis basis;
};

namespace detail {

// Revised simplex with a dense explicit basis inverse, periodically
// reinverted. Variables: structural 0..n-1, slack of row k = n+k,
// artificial of row k = n+m+k (phase 1 only, for rows with negative rhs).
class SimplexEngine {
 public:
  SimplexEngine(const LpProblem& p, const LpOptions& opt) : p_(p), opt_(opt) {
    n_ = p.num_vars();
    m_ = p.num_rows();
    rhs_scale_ = 1.0;
    for (double b : p.rhs) rhs_scale_ = std::max(rhs_scale_, std::fabs(b));
  }

  LpSolution run(const LpBasis* warm) {
    LpSolution sol;
    if (m_ == 0) return solve_unconstrained();

    bool warm_ok = warm != nullptr && load_warm_basis(*warm);
    if (!warm_ok) load_slack_basis();

    if (min_basic_value() < -feas_tol()) {
      if (warm_ok) {
        load_slack_basis();
        warm_ok = false;
      }
      if (min_basic_value() < -feas_tol()) {
        install_artificials();
        const LpStatus st = iterate(/*phase=*/1);
        if (st == LpStatus::IterationLimit) return extract(st);
        if (phase1_objective() < -feas_tol() * (1.0 + rhs_scale_)) return extract(LpStatus::Infeasible);
        expel_artificials();
      }
    }

    LpStatus st = iterate(/*phase=*/2);
    // Re-price against a freshly inverted basis; resume if cleanup exposes
    // further improving columns.
    for (int round = 0; round < 3 && st == LpStatus::Optimal; ++round) {
      refactor();
      if (!has_entering_candidate(2)) break;
      st = iterate(2);
    }
    return extract(st);
  }

 private:
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kPivotPreferred = 1e-7;

  double feas_tol() const { return opt_.feasibility_tol; }

  bool is_structural(int j) const { return j < n_; }
  bool is_slack(int j) const { return j >= n_ && j < n_ + m_; }
  bool is_artificial(int j) const { return j >= n_ + m_; }

  double phase_cost(int phase, int j) const {
    if (phase == 1) return is_artificial(j) ? -1.0 : 0.0;
    return is_structural(j) ? p_.objective[j] : 0.0;
  }

  // w = B^{-1} * column(j)
  void ftran(int j, std::vector<double>& w) const {
    w.assign(m_, 0.0);
    if (is_structural(j)) {
      for (const auto& [row, val] : p_.columns[j])
        for (int k = 0; k < m_; ++k) w[k] += binv_[k * m_ + row] * val;
    } else if (is_slack(j)) {
      const int row = j - n_;
      for (int k = 0; k < m_; ++k) w[k] = binv_[k * m_ + row];
    } else {
      const int row = j - n_ - m_;
      for (int k = 0; k < m_; ++k) w[k] = -binv_[k * m_ + row];
    }
  }

  double reduced_cost(int phase, int j, const std::vector<double>& y) const {
    double d = phase_cost(phase, j);
    if (is_structural(j)) {
      for (const auto& [row, val] : p_.columns[j]) d -= y[row] * val;
    } else if (is_slack(j)) {
      d -= y[j - n_];
    } else {
      d += y[j - n_ - m_];
    }
    return d;
  }

  void compute_duals(int phase, std::vector<double>& y) const {
    y.assign(m_, 0.0);
    for (int k = 0; k < m_; ++k) {
      const double cb = phase_cost(phase, basic_[k]);
      if (cb == 0.0) continue;
      for (int i = 0; i < m_; ++i) y[i] += cb * binv_[k * m_ + i];
    }
  }

  void load_slack_basis() {
    basic_.resize(m_);
    in_basis_.assign(n_ + 2 * m_, 0);
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    xb_ = p_.rhs;
    for (int k = 0; k < m_; ++k) {
      basic_[k] = n_ + k;
      in_basis_[n_ + k] = 1;
      binv_[k * m_ + k] = 1.0;
    }
    has_artificials_ = false;
  }

  bool load_warm_basis(const LpBasis& warm) {
    if (static_cast<int>(warm.rows.size()) != m_) return false;
    basic_.resize(m_);
    in_basis_.assign(n_ + 2 * m_, 0);
    for (int k = 0; k < m_; ++k) {
      const int code = warm.rows[k];
      const int j = code >= 0 ? code : n_ + (-code - 1);
      if (code >= 0 && code >= n_) return false;
      if (code < 0 && -code - 1 >= m_) return false;
      if (in_basis_[j]) return false;
      basic_[k] = j;
      in_basis_[j] = 1;
    }
    has_artificials_ = false;
    return refactor();
  }

  // Rows whose slack start is infeasible get an artificial with a -1 entry,
  // so the starting point is feasible for phase 1.
  void install_artificials() {
    for (int k = 0; k < m_; ++k) {
      if (xb_[k] < -feas_tol()) {
        in_basis_[basic_[k]] = 0;
        basic_[k] = n_ + m_ + k;
        in_basis_[n_ + m_ + k] = 1;
        for (int i = 0; i < m_; ++i) binv_[k * m_ + i] = -binv_[k * m_ + i];
        xb_[k] = -xb_[k];
        has_artificials_ = true;
      }
    }
  }

  double phase1_objective() const {
    double obj = 0.0;
    for (int k = 0; k < m_; ++k)
      if (is_artificial(basic_[k])) obj -= xb_[k];
    return obj;
  }

  // Degenerate pivots replacing basic artificials with real columns where a
  // nonzero pivot exists; rows with no such column are redundant and keep
  // their artificial at level zero.
  void expel_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (!is_artificial(basic_[r])) continue;
      int found = -1;
      double best = 0.0;
      for (int j = 0; j < n_ + m_; ++j) {
        if (in_basis_[j]) continue;
        double wr = 0.0;
        if (is_structural(j)) {
          for (const auto& [row, val] : p_.columns[j]) wr += binv_[r * m_ + row] * val;
        } else {
          wr = binv_[r * m_ + (j - n_)];
        }
        if (std::fabs(wr) > std::fabs(best) && std::fabs(wr) > kPivotPreferred) {
          best = wr;
          found = j;
          if (std::fabs(best) > 0.5) break;
        }
      }
      if (found >= 0) {
        ftran(found, work_);
        pivot(r, found, work_);
      }
    }
  }

  bool refactor() {
    // Gauss-Jordan inversion of the current basis matrix with partial pivoting.
    std::vector<double> a(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int k = 0; k < m_; ++k) {
      const int j = basic_[k];
      if (is_structural(j)) {
        for (const auto& [row, val] : p_.columns[j]) a[row * m_ + k] = val;
      } else if (is_slack(j)) {
        a[(j - n_) * m_ + k] = 1.0;
      } else {
        a[(j - n_ - m_) * m_ + k] = -1.0;
      }
    }
    std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int k = 0; k < m_; ++k) inv[k * m_ + k] = 1.0;
    for (int col = 0; col < m_; ++col) {
      int piv = -1;
      double best = 1e-12;
      for (int r = col; r < m_; ++r)
        if (std::fabs(a[r * m_ + col]) > best) {
          best = std::fabs(a[r * m_ + col]);
          piv = r;
        }
      if (piv < 0) return false;
      if (piv != col) {
        for (int c = 0; c < m_; ++c) {
          std::swap(a[piv * m_ + c], a[col * m_ + c]);
          std::swap(inv[piv * m_ + c], inv[col * m_ + c]);
        }
      }
      const double s = 1.0 / a[col * m_ + col];
      for (int c = 0; c < m_; ++c) {
        a[col * m_ + c] *= s;
        inv[col * m_ + c] *= s;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = a[r * m_ + col];
        if (f == 0.0) continue;
        for (int c = 0; c < m_; ++c) {
          a[r * m_ + c] -= f * a[col * m_ + c];
          inv[r * m_ + c] -= f * inv[col * m_ + c];
        }
      }
    }
    binv_ = std::move(inv);
    recompute_xb();
    return true;
  }

  void recompute_xb() {
    xb_.assign(m_, 0.0);
    for (int k = 0; k < m_; ++k)
      for (int i = 0; i < m_; ++i) xb_[k] += binv_[k * m_ + i] * p_.rhs[i];
  }

  double min_basic_value() const {
    double mn = 0.0;
    for (double v : xb_) mn = std::min(mn, v);
    return mn;
  }

  void pivot(int r, int q, const std::vector<double>& w) {
    const double inv_piv = 1.0 / w[r];
    for (int i = 0; i < m_; ++i) binv_[r * m_ + i] *= inv_piv;
    for (int k = 0; k < m_; ++k) {
      if (k == r) continue;
      const double f = w[k];
      if (f == 0.0) continue;
      for (int i = 0; i < m_; ++i) binv_[k * m_ + i] -= f * binv_[r * m_ + i];
    }
    const double theta = std::max(xb_[r], 0.0) * inv_piv;
    for (int k = 0; k < m_; ++k) xb_[k] -= theta * w[k];
    xb_[r] = theta;
    in_basis_[basic_[r]] = 0;
    basic_[r] = q;
    in_basis_[q] = 1;
  }

  int entering_bound(int phase) const { return phase == 1 ? n_ + m_ : n_ + m_; }

  // Entering variable under the active rule; -1 when priced out.
  int choose_entering(int phase, const std::vector<double>& y, bool bland) const {
    int best = -1;
    double best_d = 0.0;
    for (int j = 0; j < entering_bound(phase); ++j) {
      if (in_basis_[j]) continue;
      const double d = reduced_cost(phase, j, y);
      const double tol = opt_.optimality_tol * (1.0 + std::fabs(phase_cost(phase, j)));
      if (d <= tol) continue;
      if (bland) return j;
      if (d > best_d) {
        best_d = d;
        best = j;
      }
    }
    return best;
  }

  bool has_entering_candidate(int phase) const {
    std::vector<double> y;
    compute_duals(phase, y);
    return choose_entering(phase, y, false) >= 0;
  }

  // Leaving row for entering column w, or -1 (unbounded direction).
  int choose_leaving(const std::vector<double>& w, bool bland) const {
    int row = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m_; ++k) {
      if (w[k] <= kPivotTol) continue;
      const double t = std::max(xb_[k], 0.0) / w[k];
      if (t < theta - 1e-12) {
        theta = t;
        row = k;
      } else if (t < theta + 1e-12 && row >= 0) {
        if (bland) {
          if (basic_[k] < basic_[row]) row = k;
        } else if (std::fabs(w[k]) > std::fabs(w[row])) {
          row = k;
        }
      }
    }
    // Avoid a dangerously small pivot when a comparable ratio with a larger
    // pivot element exists.
    if (row >= 0 && std::fabs(w[row]) < kPivotPreferred && !bland) {
      const double limit = theta + 1e-9 * (1.0 + theta);
      int alt = -1;
      for (int k = 0; k < m_; ++k) {
        if (w[k] <= kPivotPreferred) continue;
        const double t = std::max(xb_[k], 0.0) / w[k];
        if (t <= limit && (alt < 0 || std::fabs(w[k]) > std::fabs(w[alt]))) alt = k;
      }
      if (alt >= 0) row = alt;
    }
    return row;
  }

  LpStatus iterate(int phase) {
    std::vector<double> y;
    int since_refactor = 0;
    int degenerate_run = 0;
    bool bland = opt_.pivot_rule == LpOptions::PivotRule::Bland;

    while (true) {
      if (iterations_ >= opt_.max_iterations) return LpStatus::IterationLimit;
      compute_duals(phase, y);
      const int q = choose_entering(phase, y, bland);
      if (q < 0) return LpStatus::Optimal;
      ftran(q, work_);
      const int r = choose_leaving(work_, bland);
      if (r < 0) {
        if (phase == 1) throw std::runtime_error("lp: phase-1 relaxation unbounded (corrupt data)");
        return LpStatus::Unbounded;
      }
      const double theta = std::max(xb_[r], 0.0) / work_[r];
      pivot(r, q, work_);
      ++iterations_;
      if (theta <= 1e-12) {
        if (++degenerate_run > opt_.stall_threshold) bland = true;
      } else {
        degenerate_run = 0;
        if (opt_.pivot_rule != LpOptions::PivotRule::Bland) bland = false;
      }
      if (++since_refactor >= opt_.refactor_interval) {
        if (!refactor()) throw std::runtime_error("lp: basis became singular");
        since_refactor = 0;
      }
    }
  }

  LpSolution solve_unconstrained() const {
    LpSolution sol;
    sol.x.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j)
      if (p_.objective[j] > opt_.optimality_tol * (1.0 + std::fabs(p_.objective[j]))) {
        sol.status = LpStatus::Unbounded;
        return sol;
      }
    sol.status = LpStatus::Optimal;
    return sol;
  }

  LpSolution extract(LpStatus st) {
    LpSolution sol;
    sol.status = st;
    sol.iterations = iterations_;
    if (st == LpStatus::Infeasible || st == LpStatus::Unbounded) return sol;

    sol.x.assign(n_, 0.0);
    for (int k = 0; k < m_; ++k)
      if (is_structural(basic_[k])) sol.x[basic_[k]] = std::max(xb_[k], 0.0);
    std::vector<double> y;
    compute_duals(2, y);
    sol.duals = y;
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += p_.objective[j] * sol.x[j];
    sol.objective = obj;
    sol.basis.rows.resize(m_);
    for (int k = 0; k < m_; ++k) {
      const int j = basic_[k];
      if (is_structural(j))
        sol.basis.rows[k] = j;
      else if (is_slack(j))
        sol.basis.rows[k] = -(j - n_ + 1);
      else
        sol.basis.rows[k] = -(j - n_ - m_ + 1);  // degenerate artificial -> its row's slack
    }
    return sol;
  }

  const LpProblem& p_;
  const LpOptions& opt_;
  int n_ = 0, m_ = 0;
  double rhs_scale_ = 1.0;
  std::vector<int> basic_;
  std::vector<char> in_basis_;
  std::vector<double> binv_;  // dense m x m, row-major
  std::vector<double> xb_;
  std::vector<double> work_;
  bool has_artificials_ = false;
  int iterations_ = 0;
};

}  // namespace detail

inline LpSolution solve(const LpProblem& problem, const LpOptions& options = {},
                        const LpBasis* warm_start = nullptr) {
  problem.check();
  detail::SimplexEngine engine(problem, options);
  return engine.run(warm_start);
}

// Fixed-format MPS export (fields at columns 2-3, 5-12, 15-22, 25-36, 40-47,
// 50-61). The objective row is named OBJ and is to be maximized.
inline void write_mps(const LpProblem& p, std::ostream& os, std::string_view name = "SATCG") {
  const auto field = [](std::string s, std::size_t width) {
    s.resize(width, ' ');
    return s;
  };
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6G", v);
    return std::string(buf);
  };
  const auto row_name = [](int r) { return "R" + std::to_string(r); };
  const auto col_name = [](int j) { return "X" + std::to_string(j); };

  os << "* maximize OBJ\n";
  os << "NAME          " << name << "\n";
  os << "ROWS\n";
  os << " N  OBJ\n";
  for (int r = 0; r < p.num_rows(); ++r) os << " L  " << row_name(r) << "\n";
  os << "COLUMNS\n";
  for (int j = 0; j < p.num_vars(); ++j) {
    std::vector<std::pair<std::string, double>> entries;
    if (p.objective[j] != 0.0) entries.emplace_back("OBJ", p.objective[j]);
    for (const auto& [row, val] : p.columns[j]) entries.emplace_back(row_name(row), val);
    for (std::size_t i = 0; i < entries.size(); i += 2) {
      os << "    " << field(col_name(j), 10) << field(entries[i].first, 10);
      if (i + 1 < entries.size())
        os << field(num(entries[i].second), 12) << "   " << field(entries[i + 1].first, 10)
           << num(entries[i + 1].second);
      else
        os << num(entries[i].second);
      os << "\n";
    }
  }
  os << "RHS\n";
  for (int r = 0; r < p.num_rows(); ++r) {
    if (p.rhs[r] == 0.0) continue;
    os << "    " << field("RHS", 10) << field(row_name(r), 10) << num(p.rhs[r]) << "\n";
  }
  os << "ENDATA\n";
}

}  // namespace satcg
