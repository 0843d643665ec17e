#pragma once

// Generic integer linear programming: model container, LP relaxation by a
// bounded-variable two-phase tableau simplex, branch-and-bound integer
// search, and LP-format text export.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcycle {

enum class ConstraintSense { Ge, Le, Eq };

enum class SolveStatus { Optimal, Infeasible, Unbounded, CapHit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::CapHit: return "cap";
  }
  return "?";
}

struct NumericalInstability : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IlpVariable {
  std::string name;
  long long lb = 0;
  std::optional<long long> ub;  // nullopt = +infinity
};

struct IlpConstraint {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  ConstraintSense sense = ConstraintSense::Ge;
  double rhs = 0;
};

struct IlpModel {
  std::vector<IlpVariable> variables;
  std::vector<IlpConstraint> constraints;
  std::vector<std::pair<int, double>> objective;  // minimized

  int add_variable(std::string name, long long lb = 0,
                   std::optional<long long> ub = std::nullopt) {
    variables.push_back({std::move(name), lb, ub});
    return static_cast<int>(variables.size()) - 1;
  }

  void add_constraint(std::string name, std::vector<std::pair<int, double>> terms,
                      ConstraintSense sense, double rhs) {
    constraints.push_back({std::move(name), std::move(terms), sense, rhs});
  }

  void validate() const {
    std::set<std::string> names;
    for (const auto& v : variables) {
      if (!names.insert(v.name).second)
        throw std::invalid_argument("duplicate variable name '" + v.name + "'");
      if (v.lb < 0) throw std::invalid_argument("negative lower bound on " + v.name);
      if (v.ub && *v.ub < v.lb)
        throw std::invalid_argument("empty bound interval on " + v.name);
    }
    auto check_terms = [&](const std::vector<std::pair<int, double>>& ts) {
      for (auto [j, c] : ts) {
        (void)c;
        if (j < 0 || j >= static_cast<int>(variables.size()))
          throw std::invalid_argument("constraint references unknown variable");
      }
    };
    for (const auto& c : constraints) check_terms(c.terms);
    check_terms(objective);
  }

  int variable_index(std::string_view name) const {
    for (int j = 0; j < static_cast<int>(variables.size()); ++j)
      if (variables[j].name == name) return j;
    throw std::invalid_argument("no variable named '" + std::string(name) + "'");
  }
};

struct SolveStats {
  long long nodes_explored = 0;
  long long lp_iterations = 0;
  double wall_time = 0;
  int variable_count = 0;
  int constraint_count = 0;
};

struct LpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> values;  // per structural variable
  double objective = 0;
  long long iterations = 0;
};

struct IntSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<long long> values;  // valid when Optimal, or CapHit with incumbent
  bool has_incumbent = false;
  double objective = 0;
  SolveStats stats;

  long long value_of(const IlpModel& m, std::string_view name) const {
    return values.at(m.variable_index(name));
  }
};

struct SolverOptions {
  double feas_tol = 1e-6;
  double int_tol = 1e-6;
  double pivot_tol = 1e-9;
  double pivot_magnitude_cap = 1e12;
  double time_limit_s = 600.0;
  long long max_open_nodes = 400000;
  size_t max_tableau_bytes = size_t(1500) * 1024 * 1024;
};

namespace detail {

using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class PhaseResult { Optimal, Unbounded, TimedOut };

// Two-phase primal simplex over a dense tableau with implicit variable
// bounds: nonbasic variables rest at a bound, entering steps may be plain
// bound flips, and the ratio test watches both bounds of each basic variable.
class Simplex {
 public:
  Simplex(const IlpModel& model, const SolverOptions& opts,
          Clock::time_point deadline)
      : model_(model), opts_(opts), deadline_(deadline) {}

  // Bounds override replaces the model's variable bounds (used by B&B nodes).
  LpSolution solve(const std::vector<double>* lb_override = nullptr,
                   const std::vector<double>* ub_override = nullptr) {
    build(lb_override, ub_override);
    LpSolution out;
    out.iterations = 0;

    if (needs_phase1_) {
      set_phase1_costs();
      PhaseResult r = pivot_loop();
      out.iterations = iterations_;
      if (r == PhaseResult::TimedOut) {
        out.status = SolveStatus::CapHit;
        return out;
      }
      if (r == PhaseResult::Unbounded)
        throw NumericalInstability("phase-1 relaxation unbounded");
      if (phase1_value() > opts_.feas_tol) {
        out.status = SolveStatus::Infeasible;
        return out;
      }
      fix_artificials();
    }

    set_phase2_costs();
    PhaseResult r = pivot_loop();
    out.iterations = iterations_;
    if (r == PhaseResult::TimedOut) {
      out.status = SolveStatus::CapHit;
      return out;
    }
    if (r == PhaseResult::Unbounded) {
      out.status = SolveStatus::Unbounded;
      return out;
    }
    out.status = SolveStatus::Optimal;
    out.values = structural_values();
    out.objective = 0;
    for (auto [j, c] : model_.objective) out.objective += c * out.values[j];
    return out;
  }

 private:
  int rows_ = 0;               // constraints
  int n_struct_ = 0;
  int n_total_ = 0;            // structurals + slacks + artificials
  int first_artificial_ = -1;  // -1 when none
  bool needs_phase1_ = false;

  std::vector<double> tab_;    // rows_ x n_total_, row-major
  std::vector<double> rhs_b_;  // per-row current basic value
  std::vector<double> cost_;   // reduced-cost row
  std::vector<double> lb_, ub_;
  std::vector<int> basis_;     // column basic in each row
  std::vector<int> where_;     // -1 nonbasic-at-lb, -2 nonbasic-at-ub, else row
  long long iterations_ = 0;
  int degen_streak_ = 0;
  bool bland_ = false;

  const IlpModel& model_;
  const SolverOptions& opts_;
  Clock::time_point deadline_;

  double& t(int r, int j) { return tab_[static_cast<size_t>(r) * n_total_ + j]; }

  void build(const std::vector<double>* lbo, const std::vector<double>* ubo) {
    rows_ = static_cast<int>(model_.constraints.size());
    n_struct_ = static_cast<int>(model_.variables.size());

    // count artificials first so the tableau is allocated once
    std::vector<double> lb(n_struct_), ub(n_struct_);
    for (int j = 0; j < n_struct_; ++j) {
      lb[j] = lbo ? (*lbo)[j] : static_cast<double>(model_.variables[j].lb);
      ub[j] = ubo ? (*ubo)[j]
                  : (model_.variables[j].ub
                         ? static_cast<double>(*model_.variables[j].ub)
                         : kInf);
      if (lb[j] > ub[j] + 1e-12) {
        // empty box: mark impossible via an artificial-only phase 1
        lb[j] = ub[j] + 1;  // caller sees Infeasible through phase 1
      }
    }

    // residuals at the all-at-lower-bound point decide artificials;
    // Ge rows are negated to Le so every slack has bounds [0, inf) or [0,0]
    std::vector<double> resid(rows_);
    std::vector<int> art_rows;
    for (int r = 0; r < rows_; ++r) {
      const IlpConstraint& con = model_.constraints[r];
      double sign = con.sense == ConstraintSense::Ge ? -1.0 : 1.0;
      double act = 0;
      for (auto [j, c] : con.terms) act += sign * c * lb[j];
      double b = sign * con.rhs;
      double slack = b - act;
      bool eq = con.sense == ConstraintSense::Eq;
      bool ok = eq ? std::abs(slack) <= opts_.feas_tol : slack >= -opts_.feas_tol;
      resid[r] = slack;
      if (!ok) art_rows.push_back(r);
    }
    int n_art = static_cast<int>(art_rows.size());
    needs_phase1_ = n_art > 0;
    n_total_ = n_struct_ + rows_ + n_art;
    first_artificial_ = n_art > 0 ? n_struct_ + rows_ : -1;

    size_t bytes = static_cast<size_t>(rows_) * n_total_ * sizeof(double);
    if (bytes > opts_.max_tableau_bytes)
      throw NumericalInstability(
          "tableau of " + std::to_string(bytes / (1024 * 1024)) +
          " MiB exceeds the configured memory cap");

    tab_.assign(static_cast<size_t>(rows_) * n_total_, 0.0);
    rhs_b_.assign(rows_, 0.0);
    lb_ = std::move(lb);
    ub_ = std::move(ub);
    lb_.resize(n_total_, 0.0);
    ub_.resize(n_total_, kInf);
    basis_.assign(rows_, -1);
    where_.assign(n_total_, -1);

    std::map<int, int> art_col;  // row -> artificial column
    for (int k = 0; k < n_art; ++k) art_col[art_rows[k]] = n_struct_ + rows_ + k;

    for (int r = 0; r < rows_; ++r) {
      const IlpConstraint& con = model_.constraints[r];
      double sign = con.sense == ConstraintSense::Ge ? -1.0 : 1.0;
      for (auto [j, c] : con.terms) t(r, j) += sign * c;
      int slack = n_struct_ + r;
      t(r, slack) = 1.0;
      if (con.sense == ConstraintSense::Eq) ub_[slack] = 0.0;

      auto it = art_col.find(r);
      if (it == art_col.end()) {
        basis_[r] = slack;
        where_[slack] = r;
        rhs_b_[r] = std::max(0.0, resid[r]);  // clamp tiny negatives
      } else {
        // row may need negation so the artificial enters with +1 and value >= 0
        if (resid[r] < 0)
          for (int j = 0; j <= slack; ++j) t(r, j) = -t(r, j);
        int a = it->second;
        t(r, a) = 1.0;
        basis_[r] = a;
        where_[a] = r;
        rhs_b_[r] = std::abs(resid[r]);
        where_[slack] = -1;  // nonbasic at lower bound 0
      }
    }
    iterations_ = 0;
    degen_streak_ = 0;
    bland_ = false;
  }

  void set_phase1_costs() {
    cost_.assign(n_total_, 0.0);
    for (int j = first_artificial_; j < n_total_; ++j) cost_[j] = 1.0;
    reduce_costs();
  }

  void set_phase2_costs() {
    cost_.assign(n_total_, 0.0);
    for (auto [j, c] : model_.objective) cost_[j] += c;
    reduce_costs();
  }

  // Make reduced costs of basic columns exactly zero.
  void reduce_costs() {
    for (int r = 0; r < rows_; ++r) {
      double cb = cost_[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &tab_[static_cast<size_t>(r) * n_total_];
      for (int j = 0; j < n_total_; ++j) cost_[j] -= cb * row[j];
      cost_[basis_[r]] = 0.0;
    }
  }

  double phase1_value() const {
    double z = 0;
    for (int r = 0; r < rows_; ++r)
      if (basis_[r] >= first_artificial_) z += rhs_b_[r];
    return z;
  }

  // After phase 1 all artificials are pinned to zero so later pivots can
  // never push them positive again.
  void fix_artificials() {
    for (int j = first_artificial_; j < n_total_; ++j) ub_[j] = 0.0;
  }

  bool at_deadline() const { return Clock::now() >= deadline_; }

  std::vector<double> structural_values() const {
    std::vector<double> x(n_struct_);
    for (int j = 0; j < n_struct_; ++j)
      x[j] = where_[j] == -2 ? ub_[j] : lb_[j];
    for (int r = 0; r < rows_; ++r)
      if (basis_[r] < n_struct_) x[basis_[r]] = rhs_b_[r];
    return x;
  }

  PhaseResult pivot_loop() {
    const double dtol = 1e-9;
    for (;;) {
      if ((iterations_ & 127) == 0 && at_deadline()) return PhaseResult::TimedOut;

      // pricing
      int enter = -1;
      double best = -dtol;
      for (int j = 0; j < n_total_; ++j) {
        if (where_[j] >= 0) continue;               // basic
        if (lb_[j] >= ub_[j]) continue;             // fixed
        double d = where_[j] == -1 ? cost_[j] : -cost_[j];
        if (d < best - 1e-15) {
          if (bland_) {
            if (d < -dtol) { enter = j; break; }
          } else {
            best = d;
            enter = j;
          }
        }
      }
      if (enter < 0) return PhaseResult::Optimal;

      double dir = where_[enter] == -1 ? 1.0 : -1.0;
      double span = ub_[enter] - lb_[enter];  // may be inf

      // ratio test
      double t_best = span;
      int leave = -1;
      for (int r = 0; r < rows_; ++r) {
        double a = t(r, enter) * dir;
        double lim;
        if (a > opts_.pivot_tol)
          lim = (rhs_b_[r] - lb_[basis_[r]]) / a;
        else if (a < -opts_.pivot_tol)
          lim = (ub_[basis_[r]] - rhs_b_[r]) / (-a);
        else
          continue;
        if (lim < -1e-9) lim = 0;  // tolerance shield
        if (lim < t_best - 1e-10 ||
            (leave >= 0 && lim <= t_best + 1e-10 && bland_ &&
             basis_[r] < basis_[leave])) {
          t_best = lim;
          leave = r;
        }
      }

      if (t_best == kInf) return PhaseResult::Unbounded;
      ++iterations_;

      if (leave < 0) {
        // entering variable flips to its opposite bound, basis unchanged
        for (int r = 0; r < rows_; ++r) {
          double a = t(r, enter);
          if (a != 0.0) rhs_b_[r] -= a * dir * span;
        }
        where_[enter] = where_[enter] == -1 ? -2 : -1;
        continue;
      }

      double piv = t(leave, enter);
      if (std::abs(piv) > opts_.pivot_magnitude_cap)
        throw NumericalInstability("pivot magnitude " + std::to_string(piv) +
                                   " exceeds the configured bound");

      // track degeneracy for the Bland fallback
      if (t_best <= 1e-10) {
        if (++degen_streak_ > 2 * (rows_ + n_total_)) bland_ = true;
      } else {
        degen_streak_ = 0;
        bland_ = false;
      }

      // move entering by t_best, update basic values
      double step = dir * t_best;
      for (int r = 0; r < rows_; ++r) {
        double a = t(r, enter);
        if (a != 0.0) rhs_b_[r] -= a * step;
      }
      int leaving_var = basis_[leave];
      double enter_from = where_[enter] == -1 ? lb_[enter] : ub_[enter];
      // leaving variable exits at whichever bound the ratio test hit
      where_[leaving_var] = (t(leave, enter) * dir > 0) ? -1 : -2;
      basis_[leave] = enter;
      where_[enter] = leave;
      rhs_b_[leave] = enter_from + step;

      // eliminate the entering column
      double* prow = &tab_[static_cast<size_t>(leave) * n_total_];
      double inv = 1.0 / piv;
      for (int j = 0; j < n_total_; ++j) prow[j] *= inv;
      prow[enter] = 1.0;
      for (int r = 0; r < rows_; ++r) {
        if (r == leave) continue;
        double f = t(r, enter);
        if (f == 0.0) continue;
        double* row = &tab_[static_cast<size_t>(r) * n_total_];
        for (int j = 0; j < n_total_; ++j) row[j] -= f * prow[j];
        row[enter] = 0.0;
      }
      double fc = cost_[enter];
      if (fc != 0.0) {
        for (int j = 0; j < n_total_; ++j) cost_[j] -= fc * prow[j];
        cost_[enter] = 0.0;
      }
    }
  }
};

inline double activity(const IlpConstraint& con, const std::vector<double>& x) {
  double a = 0;
  for (auto [j, c] : con.terms) a += c * x[j];
  return a;
}

inline bool satisfied(const IlpConstraint& con, const std::vector<double>& x,
                      double tol) {
  double a = activity(con, x);
  switch (con.sense) {
    case ConstraintSense::Ge: return a >= con.rhs - tol;
    case ConstraintSense::Le: return a <= con.rhs + tol;
    case ConstraintSense::Eq: return std::abs(a - con.rhs) <= tol;
  }
  return false;
}

}  // namespace detail

inline LpSolution solve_lp_relaxation(const IlpModel& model,
                                      const SolverOptions& opts = {}) {
  model.validate();
  auto deadline = detail::Clock::now() +
                  std::chrono::duration_cast<detail::Clock::duration>(
                      std::chrono::duration<double>(opts.time_limit_s));
  detail::Simplex s(model, opts, deadline);
  return s.solve();
}

namespace detail {

// Opportunistic integer incumbent: ceil the relaxation point, then raise
// variables to repair violated >= rows (covering-style models repair fully;
// anything else just fails and the search continues without an incumbent).
inline std::optional<std::vector<long long>> ceil_repair(
    const IlpModel& model, const std::vector<double>& relax,
    const std::vector<double>& lb, const std::vector<double>& ub) {
  const int n = static_cast<int>(model.variables.size());
  std::vector<long long> x(n);
  for (int j = 0; j < n; ++j) {
    double v = std::ceil(relax[j] - 1e-9);
    v = std::max(v, lb[j]);
    if (v > ub[j]) return std::nullopt;
    x[j] = static_cast<long long>(v);
  }
  std::vector<double> xd(x.begin(), x.end());
  for (int pass = 0; pass < 4; ++pass) {
    bool all_ok = true, changed = false;
    for (const auto& con : model.constraints) {
      if (satisfied(con, xd, 1e-9)) continue;
      all_ok = false;
      if (con.sense != ConstraintSense::Ge) return std::nullopt;
      double short_by = con.rhs - activity(con, xd);
      // largest positive coefficient with room, ties to the lowest index
      int pick = -1;
      double pc = 0;
      for (auto [j, c] : con.terms)
        if (c > pc + 1e-12 && xd[j] < ub[j] - 0.5) {
          pick = j;
          pc = c;
        }
      if (pick < 0) return std::nullopt;
      double bump = std::ceil(short_by / pc - 1e-9);
      if (xd[pick] + bump > ub[pick] + 1e-9) return std::nullopt;
      xd[pick] += bump;
      changed = true;
    }
    if (all_ok) {
      for (int j = 0; j < n; ++j) x[j] = static_cast<long long>(xd[j]);
      return x;
    }
    if (!changed) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

// Branch-and-bound with best-bound node selection and most-fractional
// branching. All variables are integer; finite upper bounds are required so
// the search region is a box.
inline IntSolution solve_bb(const IlpModel& model, double time_limit_s = 600.0,
                            SolverOptions opts = {}) {
  model.validate();
  opts.time_limit_s = time_limit_s;
  const int n = static_cast<int>(model.variables.size());
  for (const auto& v : model.variables)
    if (!v.ub)
      throw std::invalid_argument("solve_bb needs a finite upper bound on '" +
                                  v.name + "'");

  auto t0 = detail::Clock::now();
  auto deadline = t0 + std::chrono::duration_cast<detail::Clock::duration>(
                           std::chrono::duration<double>(time_limit_s));
  IntSolution out;
  out.stats.variable_count = n;
  out.stats.constraint_count = static_cast<int>(model.constraints.size());

  // integral objective permits ceiling node bounds
  bool int_obj = true;
  for (auto [j, c] : model.objective) {
    (void)j;
    if (std::abs(c - std::llround(c)) > 1e-12) int_obj = false;
  }

  struct Node {
    double bound;
    long long seq;
    std::vector<double> lb, ub;
  };
  auto cmp = [](const Node& a, const Node& b) {
    return a.bound != b.bound ? a.bound > b.bound : a.seq > b.seq;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);

  std::vector<double> lb0(n), ub0(n);
  for (int j = 0; j < n; ++j) {
    lb0[j] = static_cast<double>(model.variables[j].lb);
    ub0[j] = static_cast<double>(*model.variables[j].ub);
  }

  double incumbent = std::numeric_limits<double>::infinity();
  std::vector<long long> best;
  long long seq = 0;
  bool capped = false;

  auto consider = [&](const std::vector<long long>& x) {
    double obj = 0;
    for (auto [j, c] : model.objective) obj += c * x[j];
    if (obj < incumbent - 1e-9) {
      std::vector<double> xd(x.begin(), x.end());
      for (const auto& con : model.constraints)
        if (!detail::satisfied(con, xd, 1e-6)) return;
      incumbent = obj;
      best = x;
    }
  };

  open.push({-std::numeric_limits<double>::infinity(), seq++, lb0, ub0});
  while (!open.empty()) {
    if (detail::Clock::now() >= deadline ||
        static_cast<long long>(open.size()) > opts.max_open_nodes) {
      capped = true;
      break;
    }
    Node node = open.top();
    open.pop();
    double gate = int_obj && std::isfinite(node.bound)
                      ? std::ceil(node.bound - 1e-6)
                      : node.bound;
    if (gate >= incumbent - 1e-9) continue;

    detail::Simplex lp(model, opts, deadline);
    LpSolution rel;
    try {
      rel = lp.solve(&node.lb, &node.ub);
    } catch (const NumericalInstability&) {
      if (out.stats.nodes_explored == 0) throw;  // root failure is fatal
      capped = true;  // treat an exploded subproblem as a resource cap
      break;
    }
    ++out.stats.nodes_explored;
    out.stats.lp_iterations += rel.iterations;
    if (rel.status == SolveStatus::CapHit) {
      capped = true;
      break;
    }
    if (rel.status == SolveStatus::Infeasible) continue;
    if (rel.status == SolveStatus::Unbounded) {
      out.status = SolveStatus::Unbounded;
      out.stats.wall_time =
          std::chrono::duration<double>(detail::Clock::now() - t0).count();
      return out;
    }
    double bound = int_obj ? std::ceil(rel.objective - 1e-6) : rel.objective;
    if (bound >= incumbent - 1e-9) continue;

    // most fractional variable, ties to the lowest index
    int branch = -1;
    double most = opts.int_tol;
    for (int j = 0; j < n; ++j) {
      double f = rel.values[j] - std::floor(rel.values[j]);
      double dist = std::min(f, 1.0 - f);
      if (dist > most + 1e-12) {
        most = dist;
        branch = j;
      }
    }

    if (branch < 0) {
      std::vector<long long> x(n);
      for (int j = 0; j < n; ++j) x[j] = std::llround(rel.values[j]);
      consider(x);
      continue;
    }

    if (auto rounded = detail::ceil_repair(model, rel.values, node.lb, node.ub))
      consider(*rounded);

    double fv = std::floor(rel.values[branch]);
    Node down{rel.objective, seq++, node.lb, node.ub};
    down.ub[branch] = fv;
    Node up{rel.objective, seq++, std::move(node.lb), std::move(node.ub)};
    up.lb[branch] = fv + 1;
    if (down.lb[branch] <= down.ub[branch]) open.push(std::move(down));
    if (up.lb[branch] <= up.ub[branch]) open.push(std::move(up));
  }

  out.stats.wall_time =
      std::chrono::duration<double>(detail::Clock::now() - t0).count();
  out.has_incumbent = !best.empty();
  if (capped) {
    out.status = SolveStatus::CapHit;
    if (out.has_incumbent) {
      out.values = best;
      out.objective = incumbent;
    }
    return out;
  }
  if (!out.has_incumbent) {
    out.status = SolveStatus::Infeasible;
    return out;
  }
  out.status = SolveStatus::Optimal;
  out.values = best;
  out.objective = incumbent;

  // paranoia: the reported optimum must satisfy the model exactly
  std::vector<double> xd(best.begin(), best.end());
  for (const auto& con : model.constraints)
    if (!detail::satisfied(con, xd, 1e-6))
      throw NumericalInstability("integer optimum fails exact feasibility check");
  return out;
}

namespace detail {

inline std::string sanitize_name(const std::string& s) {
  std::string out;
  for (char ch : s)
    out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') ? ch : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])))
    out = "x" + out;
  return out;
}

inline std::string fmt_coef(double c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

}  // namespace detail

// CPLEX-style LP text: Minimize / Subject To / Bounds / General / End.
inline std::string export_lp_text(const IlpModel& model) {
  model.validate();
  std::vector<std::string> names;
  names.reserve(model.variables.size());
  std::set<std::string> used;
  for (const auto& v : model.variables) {
    std::string nm = detail::sanitize_name(v.name);
    while (!used.insert(nm).second) nm += "_";
    names.push_back(nm);
  }

  std::ostringstream os;
  os << "\\ " << model.variables.size() << " variables, "
     << model.constraints.size() << " constraints\n";
  os << "Minimize\n obj:";
  if (model.objective.empty()) os << " 0 " << names.at(0);
  bool first = true;
  for (auto [j, c] : model.objective) {
    if (c >= 0 && !first) os << " +";
    else if (c < 0) os << " -";
    else os << " ";
    os << detail::fmt_coef(std::abs(c)) << " " << names[j];
    first = false;
  }
  os << "\nSubject To\n";
  int cn = 0;
  for (const auto& con : model.constraints) {
    std::string cname = con.name.empty() ? "c" + std::to_string(cn)
                                         : detail::sanitize_name(con.name);
    os << " " << cname << ":";
    bool f2 = true;
    for (auto [j, c] : con.terms) {
      if (c >= 0 && !f2) os << " +";
      else if (c < 0) os << " -";
      else os << " ";
      os << detail::fmt_coef(std::abs(c)) << " " << names[j];
      f2 = false;
    }
    if (f2) os << " 0 " << names.at(0);
    os << (con.sense == ConstraintSense::Ge   ? " >= "
           : con.sense == ConstraintSense::Le ? " <= "
                                              : " = ")
       << detail::fmt_coef(con.rhs) << "\n";
    ++cn;
  }
  os << "Bounds\n";
  for (size_t j = 0; j < names.size(); ++j) {
    const auto& v = model.variables[j];
    if (v.ub)
      os << " " << v.lb << " <= " << names[j] << " <= " << *v.ub << "\n";
    else
      os << " " << names[j] << " >= " << v.lb << "\n";
  }
  os << "General\n";
  for (const auto& nm : names) os << " " << nm << "\n";
  os << "End\n";
  return os.str();
}

}  // namespace pcycle
