#pragma once

// DB protection: every link is guarded by a protection-pair of p-cycles that
// are link disjoint or share only that link as a common on-cycle link. Model
// shape (per-pair allocations in both orientations):
//   minimize   sum_i c_i s_i
//   subject to sum_{(p,q) in Q_i} [x_{i,p} n_{i,p,q} + x_{i,q} n_{i,q,p}] >= 2 w_i
//              n_{i,p,q} = n_{i,q,p}          same relation on both cycles
//              n_{i,p,q} = 2 n_{i,q,p}        on-cycle on p, straddling on q
//              n_{i,p}   = sum_q n_{i,p,q}
//              n_p >= n_{i,p}                  and, for links i != j sharing
//              n_p >= n_{i,p} + n_{j,p,q}      the identical pair (p,q)
//              s_i >= sum_j n_j delta_{i,j}
// with x 1 on-cycle, 2 straddling. The ceiling bound on a shared straddling
// cycle q (copies >= w_i/2 + w_j/2 rounded up) is implied: the x=2
// coefficient halves each demand, the coupling rows keep orientations
// consistent, and the shared form of the copy constraint adds the two
// halves before integrality rounds them.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pcycle/cycles.hpp"
#include "pcycle/ilp.hpp"
#include "pcycle/topology.hpp"

namespace pcycle {

enum class PairSharing { LinkDisjoint, ShareOnlyI };

struct ProtectionPair {
  int link = -1;
  int p = -1, q = -1;  // cycle ids, p < q
  PairSharing sharing = PairSharing::LinkDisjoint;
};

// x_{i,p,q}: units protected on cycle p per copy; depends only on (i, p).
inline int db_coefficient(int link, int cycle, const CycleSet& cs) {
  switch (cs.relation(link, cycle)) {
    case LinkRelation::OnCycle: return 1;
    case LinkRelation::Straddling: return 2;
    case LinkRelation::Unrelated: return 0;
  }
  return 0;
}

// All unordered cycle pairs covering the link that are link disjoint or share
// exactly the link itself as a common on-cycle link, in (p, q) order. A cap
// keeps the lexicographically smallest pairs when the set explodes.
inline std::vector<ProtectionPair> enumerate_protection_pairs(
    int link, const CycleSet& cs, long long pair_cap = 10000,
    bool* truncated = nullptr) {
  if (truncated) *truncated = false;
  std::vector<int> covering;
  for (int p = 0; p < cs.size(); ++p)
    if (cs.relation(link, p) != LinkRelation::Unrelated) covering.push_back(p);

  std::vector<ProtectionPair> out;
  for (size_t a = 0; a < covering.size() && !(truncated && *truncated); ++a) {
    for (size_t b = a + 1; b < covering.size(); ++b) {
      int p = covering[a], q = covering[b];
      const auto& ep = cs.cycle(p).on_cycle_links;
      const auto& eq = cs.cycle(q).on_cycle_links;
      // sorted edge-set intersection
      int common = 0;
      bool only_link = true;
      for (size_t x = 0, y = 0; x < ep.size() && y < eq.size();) {
        if (ep[x] < eq[y]) ++x;
        else if (ep[x] > eq[y]) ++y;
        else {
          ++common;
          if (ep[x] != link) only_link = false;
          ++x, ++y;
        }
      }
      ProtectionPair pr;
      pr.link = link;
      pr.p = p;
      pr.q = q;
      if (common == 0) {
        pr.sharing = PairSharing::LinkDisjoint;
      } else if (common == 1 && only_link &&
                 cs.relation(link, p) == LinkRelation::OnCycle &&
                 cs.relation(link, q) == LinkRelation::OnCycle) {
        pr.sharing = PairSharing::ShareOnlyI;
      } else {
        continue;
      }
      out.push_back(pr);
      if (static_cast<long long>(out.size()) >= pair_cap) {
        if (truncated) *truncated = true;
        break;
      }
    }
  }
  return out;
}

inline std::vector<std::vector<ProtectionPair>> enumerate_all_protection_pairs(
    const CycleSet& cs, long long pair_cap = 10000,
    std::vector<int>* truncated_links = nullptr) {
  std::vector<std::vector<ProtectionPair>> out(cs.link_count());
  for (int i = 0; i < cs.link_count(); ++i) {
    bool trunc = false;
    out[i] = enumerate_protection_pairs(i, cs, pair_cap, &trunc);
    if (trunc && truncated_links) truncated_links->push_back(i);
  }
  return out;
}

struct DbInfeasible : std::runtime_error {
  DbInfeasible(const std::string& link_label, int link_id)
      : std::runtime_error("link " + link_label + " (id " +
                           std::to_string(link_id) +
                           ") has positive demand but no protection-pair"),
        link(link_id) {}
  int link;
};

struct DbPlan {
  std::vector<long long> copies;  // n_p per cycle id
  std::map<std::tuple<int, int, int>, long long> pair_allocations;  // (i,p,q) ordered
  std::map<std::pair<int, int>, long long> per_cycle;  // (i,p) -> n_{i,p}
  std::vector<long long> spare;
  double total_cost = 0;

  long long copies_of(int cycle) const { return copies.at(cycle); }
  long long alloc(int link, int cycle) const {
    auto it = per_cycle.find({link, cycle});
    return it == per_cycle.end() ? 0 : it->second;
  }
};

struct DbModel {
  IlpModel model;
  std::vector<int> s_var;
  std::vector<int> np_var;
  std::map<std::pair<int, int>, int> nip_var;
  std::map<std::tuple<int, int, int>, int> nipq_var;  // ordered (i,p,q)
};

inline DbModel build_db_model(const Network& net, const CycleSet& cs,
                              const std::vector<std::vector<ProtectionPair>>& pairs) {
  const int L = net.link_count();
  const int P = cs.size();
  DbModel out;
  IlpModel& m = out.model;

  for (int i = 0; i < L; ++i)
    if (net.link(i).working > 0 && pairs.at(i).empty())
      throw DbInfeasible(net.link_label(i), i);

  const long long max_w = net.max_working();
  const long long total_w = net.total_working();
  const long long n_cap = 2 * max_w + 2;

  out.s_var.resize(L);
  for (int i = 0; i < L; ++i)
    out.s_var[i] = m.add_variable("s_" + std::to_string(i), 0, total_w);
  out.np_var.resize(P);
  for (int p = 0; p < P; ++p)
    out.np_var[p] = m.add_variable("np_" + std::to_string(p), 0, n_cap);
  for (int i = 0; i < L; ++i) {
    for (const ProtectionPair& pr : pairs[i]) {
      for (auto [p, q] : {std::pair{pr.p, pr.q}, std::pair{pr.q, pr.p}}) {
        auto key = std::make_tuple(i, p, q);
        if (!out.nipq_var.count(key))
          out.nipq_var[key] = m.add_variable("n_" + std::to_string(i) + "_" +
                                                 std::to_string(p) + "_" +
                                                 std::to_string(q),
                                             0, n_cap);
      }
      for (int p : {pr.p, pr.q}) {
        auto key = std::make_pair(i, p);
        if (!out.nip_var.count(key))
          out.nip_var[key] = m.add_variable(
              "n_" + std::to_string(i) + "_" + std::to_string(p), 0, n_cap);
      }
    }
  }

  // full dual-failure protection of each demand
  for (int i = 0; i < L; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (const ProtectionPair& pr : pairs[i]) {
      terms.emplace_back(out.nipq_var.at({i, pr.p, pr.q}),
                         static_cast<double>(db_coefficient(i, pr.p, cs)));
      terms.emplace_back(out.nipq_var.at({i, pr.q, pr.p}),
                         static_cast<double>(db_coefficient(i, pr.q, cs)));
    }
    if (terms.empty()) continue;  // zero-demand link with no pairs
    m.add_constraint("protect_" + std::to_string(i), std::move(terms),
                     ConstraintSense::Ge,
                     2.0 * static_cast<double>(net.link(i).working));
  }

  // orientation couplings within each pair
  for (int i = 0; i < L; ++i) {
    for (const ProtectionPair& pr : pairs[i]) {
      LinkRelation rp = cs.relation(i, pr.p);
      LinkRelation rq = cs.relation(i, pr.q);
      int vpq = out.nipq_var.at({i, pr.p, pr.q});
      int vqp = out.nipq_var.at({i, pr.q, pr.p});
      std::string nm = "couple_" + std::to_string(i) + "_" +
                       std::to_string(pr.p) + "_" + std::to_string(pr.q);
      if (rp == rq) {
        m.add_constraint(nm, {{vpq, 1.0}, {vqp, -1.0}}, ConstraintSense::Eq, 0.0);
      } else if (rp == LinkRelation::OnCycle && rq == LinkRelation::Straddling) {
        m.add_constraint(nm, {{vpq, 1.0}, {vqp, -2.0}}, ConstraintSense::Eq, 0.0);
      } else {  // straddling on p, on-cycle on q
        m.add_constraint(nm, {{vqp, 1.0}, {vpq, -2.0}}, ConstraintSense::Eq, 0.0);
      }
    }
  }

  // per-cycle totals
  for (const auto& [key, col] : out.nip_var) {
    auto [i, p] = key;
    std::vector<std::pair<int, double>> terms{{col, 1.0}};
    for (const ProtectionPair& pr : pairs[i]) {
      if (pr.p == p) terms.emplace_back(out.nipq_var.at({i, p, pr.q}), -1.0);
      else if (pr.q == p) terms.emplace_back(out.nipq_var.at({i, p, pr.p}), -1.0);
    }
    m.add_constraint("total_" + std::to_string(i) + "_" + std::to_string(p),
                     std::move(terms), ConstraintSense::Eq, 0.0);
  }

  // copy counts: plain form per allocation, strengthened form per shared pair
  for (const auto& [key, col] : out.nip_var) {
    auto [i, p] = key;
    m.add_constraint("copies_" + std::to_string(i) + "_" + std::to_string(p),
                     {{out.np_var[p], 1.0}, {col, -1.0}}, ConstraintSense::Ge,
                     0.0);
  }
  std::map<std::pair<int, int>, std::vector<int>> sharing;  // (p,q) -> links
  for (int i = 0; i < L; ++i)
    for (const ProtectionPair& pr : pairs[i])
      sharing[{pr.p, pr.q}].push_back(i);
  for (const auto& [pq, ls] : sharing) {
    if (ls.size() < 2) continue;
    auto [p, q] = pq;
    for (int i : ls) {
      for (int j : ls) {
        if (i == j) continue;
        m.add_constraint("copies_" + std::to_string(p) + "_shared_" +
                             std::to_string(i) + "_" + std::to_string(j),
                         {{out.np_var[p], 1.0},
                          {out.nip_var.at({i, p}), -1.0},
                          {out.nipq_var.at({j, p, q}), -1.0}},
                         ConstraintSense::Ge, 0.0);
        m.add_constraint("copies_" + std::to_string(q) + "_shared_" +
                             std::to_string(i) + "_" + std::to_string(j),
                         {{out.np_var[q], 1.0},
                          {out.nip_var.at({i, q}), -1.0},
                          {out.nipq_var.at({j, q, p}), -1.0}},
                         ConstraintSense::Ge, 0.0);
      }
    }
  }

  // spare forms the cycles
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

struct DbSolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<DbPlan> plan;
  SolveStats stats;
  std::string diagnosis;
  std::vector<int> truncated_links;  // pair cap engaged: possible suboptimality
};

inline DbPlan extract_db_plan(const Network& net, const CycleSet& cs,
                              const DbModel& dm, const IntSolution& sol) {
  DbPlan plan;
  plan.copies.resize(cs.size());
  for (int p = 0; p < cs.size(); ++p) plan.copies[p] = sol.values[dm.np_var[p]];
  for (const auto& [key, col] : dm.nipq_var)
    if (sol.values[col] > 0) plan.pair_allocations[key] = sol.values[col];
  for (const auto& [key, col] : dm.nip_var)
    if (sol.values[col] > 0) plan.per_cycle[key] = sol.values[col];
  plan.spare.resize(net.link_count());
  for (int i = 0; i < net.link_count(); ++i)
    plan.spare[i] = sol.values[dm.s_var[i]];
  plan.total_cost = sol.objective;
  return plan;
}

inline DbSolveResult solve_db(const Network& net, const CycleSet& cs,
                              double time_limit_s = 600.0,
                              long long pair_cap = 10000,
                              const SolverOptions& base_opts = {}) {
  DbSolveResult out;
  std::vector<std::vector<ProtectionPair>> pairs =
      enumerate_all_protection_pairs(cs, pair_cap, &out.truncated_links);
  DbModel dm;
  try {
    dm = build_db_model(net, cs, pairs);
  } catch (const DbInfeasible& e) {
    out.status = SolveStatus::Infeasible;
    out.diagnosis = e.what();
    return out;
  }
  IntSolution sol = solve_bb(dm.model, time_limit_s, base_opts);
  out.status = sol.status;
  out.stats = sol.stats;
  if (sol.status == SolveStatus::Optimal ||
      (sol.status == SolveStatus::CapHit && sol.has_incumbent))
    out.plan = extract_db_plan(net, cs, dm, sol);
  if (sol.status == SolveStatus::CapHit)
    out.diagnosis = sol.has_incumbent
                        ? "time or resource cap hit; best incumbent reported"
                        : "time or resource cap hit before any incumbent";
  return out;
}

}  // namespace pcycle
