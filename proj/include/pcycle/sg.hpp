#pragma once

// SG protection: one p-cycle guards each link purely through its straddling
// relation, with enough copies that any two simultaneous failures are
// restorable. Model shape:
//   minimize   sum_i c_i s_i
//   subject to sum_p x_{i,p} n_{i,p} >= w_i          (per link)
//              n_p >= 2 n_{i,p}                      (per straddling pair)
//              s_i >= sum_j n_j delta_{i,j}          (per link)
// with x_{i,p} = 2 on straddling relations and 0 otherwise.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcycle/cycles.hpp"
#include "pcycle/ilp.hpp"
#include "pcycle/topology.hpp"

namespace pcycle {

// Smallest even copy count that protects a straddler of capacity W against
// a second simultaneous failure.
inline long long theorem1_min_copies(long long W) {
  if (W < 0) throw std::invalid_argument("capacity must be non-negative");
  return W % 2 == 0 ? W : W + 1;
}

struct SgInfeasible : std::runtime_error {
  SgInfeasible(const std::string& link_label, int link_id)
      : std::runtime_error("link " + link_label + " (id " +
                           std::to_string(link_id) +
                           ") has positive demand but straddles no cycle; "
                           "SG protection is infeasible"),
        link(link_id) {}
  int link;
};

struct SgPlan {
  std::vector<long long> copies;                       // n_p per cycle id
  std::map<std::pair<int, int>, long long> allocations;  // (link,cycle) -> n_{i,p}
  std::vector<long long> spare;                        // s_i per link id
  double total_cost = 0;

  long long copies_of(int cycle) const { return copies.at(cycle); }
  long long alloc(int link, int cycle) const {
    auto it = allocations.find({link, cycle});
    return it == allocations.end() ? 0 : it->second;
  }
};

struct SgModel {
  IlpModel model;
  std::vector<int> s_var;                      // per link
  std::vector<int> np_var;                     // per cycle
  std::map<std::pair<int, int>, int> nip_var;  // (link,cycle) -> column
  long long unpruned_variable_count = 0;       // L*P + P + L
};

// Variable pruning drops n_{i,p} wherever x_{i,p}=0; the full variant keeps
// them (with their vacuous coupling rows) for the equivalence check.
inline SgModel build_sg_model(const Network& net, const CycleSet& cs,
                              bool prune = true) {
  const int L = net.link_count();
  const int P = cs.size();
  SgModel out;
  IlpModel& m = out.model;

  const long long max_w = net.max_working();
  const long long total_w = net.total_working();
  const long long n_cap = 2 * max_w + 2;

  out.s_var.resize(L);
  for (int i = 0; i < L; ++i)
    out.s_var[i] = m.add_variable("s_" + std::to_string(i), 0, total_w);
  out.np_var.resize(P);
  for (int p = 0; p < P; ++p) {
    // never useful above twice the largest per-cycle straddler half-demand
    long long cap = 0;
    for (int i : cs.cycle(p).straddling_links)
      cap = std::max(cap, 2 * ((net.link(i).working + 1) / 2));
    if (!prune) cap = n_cap;
    out.np_var[p] = m.add_variable("np_" + std::to_string(p), 0, cap);
  }
  for (int i = 0; i < L; ++i) {
    for (int p = 0; p < P; ++p) {
      if (prune && sg_coefficient(i, p, cs) == 0) continue;
      long long cap = prune ? (net.link(i).working + 1) / 2 : n_cap;
      out.nip_var[{i, p}] = m.add_variable(
          "n_" + std::to_string(i) + "_" + std::to_string(p), 0, cap);
    }
  }
  out.unpruned_variable_count =
      static_cast<long long>(L) * P + P + L;

  for (int i = 0; i < L; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int p = 0; p < P; ++p) {
      int x = sg_coefficient(i, p, cs);
      auto it = out.nip_var.find({i, p});
      if (it != out.nip_var.end() && x != 0)
        terms.emplace_back(it->second, static_cast<double>(x));
    }
    if (terms.empty()) {
      if (net.link(i).working > 0) throw SgInfeasible(net.link_label(i), i);
      continue;  // nothing to protect, nothing to emit
    }
    m.add_constraint("cover_" + std::to_string(i), std::move(terms),
                     ConstraintSense::Ge,
                     static_cast<double>(net.link(i).working));
  }

  for (const auto& [key, col] : out.nip_var) {
    m.add_constraint(
        "pairing_" + std::to_string(key.first) + "_" + std::to_string(key.second),
        {{out.np_var[key.second], 1.0}, {col, -2.0}}, ConstraintSense::Ge, 0.0);
  }

  for (int i = 0; i < L; ++i) {
    std::vector<std::pair<int, double>> terms{{out.s_var[i], 1.0}};
    for (int p = 0; p < P; ++p)
      if (delta(i, p, cs) == 1) terms.emplace_back(out.np_var[p], -1.0);
    m.add_constraint("spare_" + std::to_string(i), std::move(terms),
                     ConstraintSense::Ge, 0.0);
  }

  for (int i = 0; i < L; ++i)
    m.objective.emplace_back(out.s_var[i], net.link(i).unit_cost);
  return out;
}

struct SgSolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<SgPlan> plan;  // present on Optimal, or CapHit with incumbent
  SolveStats stats;
  std::string diagnosis;
};

inline SgPlan extract_sg_plan(const Network& net, const CycleSet& cs,
                              const SgModel& sm, const IntSolution& sol) {
  SgPlan plan;
  plan.copies.resize(cs.size());
  for (int p = 0; p < cs.size(); ++p) plan.copies[p] = sol.values[sm.np_var[p]];
  for (const auto& [key, col] : sm.nip_var)
    if (sol.values[col] > 0) plan.allocations[key] = sol.values[col];
  plan.spare.resize(net.link_count());
  for (int i = 0; i < net.link_count(); ++i)
    plan.spare[i] = sol.values[sm.s_var[i]];
  plan.total_cost = sol.objective;
  return plan;
}

inline SgSolveResult solve_sg(const Network& net, const CycleSet& cs,
                              double time_limit_s = 600.0,
                              const SolverOptions& base_opts = {}) {
  SgSolveResult out;
  SgModel sm;
  try {
    sm = build_sg_model(net, cs);
  } catch (const SgInfeasible& e) {
    out.status = SolveStatus::Infeasible;
    out.diagnosis = e.what();
    return out;
  }
  IntSolution sol = solve_bb(sm.model, time_limit_s, base_opts);
  out.status = sol.status;
  out.stats = sol.stats;
  if (sol.status == SolveStatus::Optimal ||
      (sol.status == SolveStatus::CapHit && sol.has_incumbent))
    out.plan = extract_sg_plan(net, cs, sm, sol);
  if (sol.status == SolveStatus::CapHit)
    out.diagnosis = sol.has_incumbent
                        ? "time or resource cap hit; best incumbent reported"
                        : "time or resource cap hit before any incumbent";
  return out;
}

}  // namespace pcycle
