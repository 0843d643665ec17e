#pragma once

// Exhaustive dual-failure verification. Every unordered pair of links is
// failed together and the plan's cycles must restore both demands with the
// copies they actually reserve:
//   - a straddler restores over both arcs (two units per copy), or over the
//     single intact arc when the other failure sits on the cycle;
//   - SG plans may split a cycle's copies between two failed straddlers;
//   - DB plans lose a cycle entirely for an on-cycle link when the other
//     failure is also on that cycle, and otherwise assign copies jointly.
// Route accounting is aggregated per surviving link and checked against the
// plan's spare values.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pcycle/plan.hpp"

namespace pcycle {

struct FailureScenario {
  int a = -1;
  int b = -1;  // -1 = phantom second failure (single-failure probe)
};

struct RouteUse {
  int cycle = -1;
  std::vector<int> links;
  long long units = 0;
};

struct LinkRestoration {
  int link = -1;
  long long demanded = 0;
  long long restored = 0;
  std::vector<RouteUse> routes;
};

struct RestorationOutcome {
  FailureScenario scenario;
  bool restored = false;
  std::vector<LinkRestoration> detail;
  std::string reason;
};

struct VerificationReport {
  bool sg_kind = true;
  long long scenario_count = 0;
  std::vector<RestorationOutcome> failures;
  bool pass = false;
};

inline std::vector<FailureScenario> enumerate_dual_failures(const Network& net) {
  std::vector<FailureScenario> out;
  for (int a = 0; a < net.link_count(); ++a)
    for (int b = a + 1; b < net.link_count(); ++b)
      out.push_back({a, b});
  return out;
}

namespace detail {

// The two arcs of a cycle relative to a straddling link: each is the list of
// on-cycle link ids along one side between the chord's endpoints.
inline std::pair<std::vector<int>, std::vector<int>> chord_arcs(
    const Network& net, const Cycle& cyc, int chord) {
  const Link& lk = net.link(chord);
  const int k = cyc.length();
  int pu = -1, pv = -1;
  for (int i = 0; i < k; ++i) {
    if (cyc.node_seq[i] == lk.u) pu = i;
    if (cyc.node_seq[i] == lk.v) pv = i;
  }
  if (pu < 0 || pv < 0) throw std::logic_error("chord endpoints not on cycle");
  std::vector<int> arc_a, arc_b;
  for (int i = pu; i % k != pv % k; ++i) {
    int x = cyc.node_seq[i % k], y = cyc.node_seq[(i + 1) % k];
    arc_a.push_back(*net.link_between(x, y));
  }
  for (int i = pv; i % k != pu % k; ++i) {
    int x = cyc.node_seq[i % k], y = cyc.node_seq[(i + 1) % k];
    arc_b.push_back(*net.link_between(x, y));
  }
  return {arc_a, arc_b};
}

// On-cycle restoration path: the cycle minus the failed on-cycle link.
inline std::vector<int> around_path(const Cycle& cyc, int link) {
  std::vector<int> out;
  for (int l : cyc.on_cycle_links)
    if (l != link) out.push_back(l);
  return out;
}

inline bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

struct CapacitySource {
  int cycle;
  long long copies_avail;  // copies usable by this link on this cycle
  int units_per_copy;      // 1 or 2
  bool intact_arc_only;    // route shape
  std::vector<int> arc_a, arc_b;  // arc_b empty when single-path
};

inline void add_routes(LinkRestoration& lr, const CapacitySource& src,
                       long long copies_used) {
  if (copies_used <= 0) return;
  RouteUse r1{src.cycle, src.arc_a, copies_used};
  lr.routes.push_back(std::move(r1));
  if (!src.arc_b.empty()) {
    RouteUse r2{src.cycle, src.arc_b, copies_used};
    lr.routes.push_back(std::move(r2));
  }
}

// Greedy draw: higher yield first, then lower cycle id; consumes from the
// shared pool.
inline long long draw_greedy(LinkRestoration& lr,
                             std::vector<CapacitySource>& sources,
                             std::map<int, long long>& pool, long long need) {
  std::sort(sources.begin(), sources.end(),
            [](const CapacitySource& a, const CapacitySource& b) {
              if (a.units_per_copy != b.units_per_copy)
                return a.units_per_copy > b.units_per_copy;
              return a.cycle < b.cycle;
            });
  long long got = 0;
  for (const CapacitySource& s : sources) {
    if (got >= need) break;
    long long avail = std::min(s.copies_avail, pool[s.cycle]);
    if (avail <= 0) continue;
    long long want_copies =
        (need - got + s.units_per_copy - 1) / s.units_per_copy;
    long long use = std::min(avail, want_copies);
    pool[s.cycle] -= use;
    got += use * s.units_per_copy;
    add_routes(lr, s, use);
  }
  return got;
}

}  // namespace detail

// SG restoration of one scenario. Plan allocations drive which cycles each
// failed straddler may use; a cycle straddled by both failed links has its
// copies split between them.
inline RestorationOutcome verify_sg(const SgPlan& plan, FailureScenario sc,
                                    const Network& net, const CycleSet& cs) {
  if (static_cast<int>(plan.copies.size()) != cs.size() ||
      static_cast<int>(plan.spare.size()) != net.link_count())
    throw std::invalid_argument("malformed plan: wrong copies/spare size");
  for (const auto& [key, v] : plan.allocations) {
    if (v < 0) throw std::invalid_argument("malformed plan: negative allocation");
    if (cs.relation(key.first, key.second) != LinkRelation::Straddling)
      throw std::invalid_argument(
          "malformed plan: allocation on a non-straddling relation (link " +
          std::to_string(key.first) + ", cycle " + std::to_string(key.second) + ")");
  }

  RestorationOutcome out;
  out.scenario = sc;
  std::vector<int> failed{sc.a};
  if (sc.b >= 0) failed.push_back(sc.b);

  // per failed link: uncontended capacity plus the shared split set
  std::vector<LinkRestoration> detail;
  std::vector<long long> fixed_cap(failed.size(), 0);
  std::vector<std::vector<detail::CapacitySource>> fixed_src(failed.size());
  std::set<int> shared;  // cycles straddled and allocated by both

  for (size_t k = 0; k < failed.size(); ++k) {
    int e = failed[k];
    int f = failed[1 - k < failed.size() ? 1 - k : k];
    if (failed.size() == 1) f = -1;
    LinkRestoration lr;
    lr.link = e;
    lr.demanded = net.link(e).working;
    detail.push_back(lr);
    if (net.link(e).working == 0) continue;

    for (int p = 0; p < cs.size(); ++p) {
      long long a_ep = plan.alloc(e, p);
      if (a_ep <= 0) continue;
      LinkRelation rf =
          f < 0 ? LinkRelation::Unrelated : cs.relation(f, p);
      auto [arc_a, arc_b] = detail::chord_arcs(net, cs.cycle(p), e);
      if (rf == LinkRelation::OnCycle) {
        // one arc lost; the intact arc carries one unit per copy
        const std::vector<int>& intact =
            detail::contains(arc_a, f) ? arc_b : arc_a;
        fixed_src[k].push_back(
            {p, plan.copies[p], 1, true, intact, {}});
        fixed_cap[k] += plan.copies[p];
      } else if (rf == LinkRelation::Straddling && sc.b >= 0 &&
                 plan.alloc(failed[1 - k], p) > 0) {
        shared.insert(p);  // joint split resolved below
      } else if (rf == LinkRelation::Straddling) {
        // the other failure straddles but draws nothing: whole cycle usable
        fixed_src[k].push_back({p, plan.copies[p], 2, false, arc_a, arc_b});
        fixed_cap[k] += 2 * plan.copies[p];
      } else {
        fixed_src[k].push_back({p, a_ep, 2, false, arc_a, arc_b});
        fixed_cap[k] += 2 * a_ep;
      }
    }
  }

  long long need0 = std::max(0LL, detail[0].demanded - fixed_cap[0]);
  long long need1 = failed.size() > 1
                        ? std::max(0LL, detail[1].demanded - fixed_cap[1])
                        : 0;
  long long shared_copies = 0;
  for (int p : shared) shared_copies += plan.copies[p];
  bool split_ok = (need0 + 1) / 2 + (need1 + 1) / 2 <= shared_copies;

  // assemble concrete routes: uncontended first, then the split
  std::map<int, long long> pool;
  for (int p = 0; p < cs.size(); ++p) pool[p] = plan.copies[p];
  for (size_t k = 0; k < failed.size(); ++k) {
    LinkRestoration& lr = detail[k];
    if (lr.demanded == 0) {
      lr.restored = 0;
      continue;
    }
    std::map<int, long long> own_pool;  // uncontended sources don't contend
    for (const auto& s : fixed_src[k]) own_pool[s.cycle] = s.copies_avail;
    lr.restored = detail::draw_greedy(lr, fixed_src[k], own_pool, lr.demanded);
    long long rem = lr.demanded - lr.restored;
    if (rem > 0 && split_ok) {
      for (int p : shared) {
        if (rem <= 0) break;
        long long use = std::min(pool[p], (rem + 1) / 2);
        if (use <= 0) continue;
        pool[p] -= use;
        auto [arc_a, arc_b] = detail::chord_arcs(net, cs.cycle(p), failed[k]);
        detail::add_routes(lr, {p, use, 2, false, arc_a, arc_b}, use);
        long long got = std::min(rem, 2 * use);
        lr.restored += got;
        rem -= got;
      }
    }
  }

  bool all = true;
  std::ostringstream why;
  for (const auto& lr : detail)
    if (lr.restored < lr.demanded) {
      all = false;
      why << "link " << net.link_label(lr.link) << " restored " << lr.restored
          << "/" << lr.demanded;
      if (!shared.empty() && !split_ok)
        why << " (insufficient split capacity on shared cycles)";
      why << "; ";
    }

  // accounting: routes avoid failed links and stay within spare
  std::map<int, long long> used;
  for (const auto& lr : detail)
    for (const auto& r : lr.routes)
      for (int l : r.links) {
        for (int fl : failed)
          if (l == fl) throw std::logic_error("route crosses a failed link");
        used[l] += r.units;
      }
  for (const auto& [l, u] : used)
    if (u > plan.spare[l]) {
      all = false;
      why << "spare exceeded on link " << net.link_label(l) << " (" << u << ">"
          << plan.spare[l] << "); ";
    }

  out.detail = std::move(detail);
  out.restored = all;
  if (!all) out.reason = why.str();
  return out;
}

// DB restoration of one scenario: candidate cycles come from the plan's
// pair allocations, a cycle is lost for an on-cycle link when the other
// failure is on it too, and copies are assigned jointly (greedy, then an
// exhaustive split of the contended cycles).
inline RestorationOutcome verify_db(const DbPlan& plan, FailureScenario sc,
                                    const Network& net, const CycleSet& cs) {
  if (static_cast<int>(plan.copies.size()) != cs.size() ||
      static_cast<int>(plan.spare.size()) != net.link_count())
    throw std::invalid_argument("malformed plan: wrong copies/spare size");
  for (const auto& [key, v] : plan.per_cycle) {
    if (v < 0) throw std::invalid_argument("malformed plan: negative allocation");
    if (cs.relation(key.first, key.second) == LinkRelation::Unrelated)
      throw std::invalid_argument(
          "malformed plan: allocation on an unrelated cycle (link " +
          std::to_string(key.first) + ", cycle " + std::to_string(key.second) + ")");
  }

  RestorationOutcome out;
  out.scenario = sc;
  std::vector<int> failed{sc.a};
  if (sc.b >= 0) failed.push_back(sc.b);

  std::vector<LinkRestoration> detail(failed.size());
  std::vector<std::vector<detail::CapacitySource>> srcs(failed.size());
  for (size_t k = 0; k < failed.size(); ++k) {
    int e = failed[k];
    int f = failed.size() > 1 ? failed[1 - k] : -1;
    detail[k].link = e;
    detail[k].demanded = net.link(e).working;
    if (detail[k].demanded == 0) continue;

    for (int p = 0; p < cs.size(); ++p) {
      if (plan.alloc(e, p) <= 0) continue;
      if (plan.copies[p] <= 0) continue;
      LinkRelation re = cs.relation(e, p);
      LinkRelation rf = f < 0 ? LinkRelation::Unrelated : cs.relation(f, p);
      if (rf == LinkRelation::OnCycle) {
        if (re == LinkRelation::OnCycle) continue;  // cycle broken for e
        auto [arc_a, arc_b] = detail::chord_arcs(net, cs.cycle(p), e);
        const std::vector<int>& intact =
            detail::contains(arc_a, f) ? arc_b : arc_a;
        srcs[k].push_back({p, plan.copies[p], 1, true, intact, {}});
      } else if (re == LinkRelation::OnCycle) {
        srcs[k].push_back(
            {p, plan.copies[p], 1, false, detail::around_path(cs.cycle(p), e), {}});
      } else {
        auto [arc_a, arc_b] = detail::chord_arcs(net, cs.cycle(p), e);
        srcs[k].push_back({p, plan.copies[p], 2, false, arc_a, arc_b});
      }
    }
  }

  // joint assignment over the shared copy pool
  auto attempt = [&](const std::vector<size_t>& order,
                     std::vector<LinkRestoration>& det) {
    std::map<int, long long> pool;
    for (int p = 0; p < cs.size(); ++p) pool[p] = plan.copies[p];
    bool ok = true;
    for (size_t k : order) {
      det[k].routes.clear();
      det[k].restored = 0;
      if (det[k].demanded == 0) continue;
      auto sources = srcs[k];
      det[k].restored =
          detail::draw_greedy(det[k], sources, pool, det[k].demanded);
      if (det[k].restored < det[k].demanded) ok = false;
    }
    return ok;
  };

  std::vector<size_t> order(failed.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = k;
  // larger demand first
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return detail[a].demanded != detail[b].demanded
               ? detail[a].demanded > detail[b].demanded
               : a < b;
  });
  bool ok = attempt(order, detail);
  if (!ok && failed.size() == 2) {
    std::reverse(order.begin(), order.end());
    ok = attempt(order, detail);
  }

  if (!ok && failed.size() == 2) {
    // exhaustive split of the contended cycles (both links can draw on them)
    std::set<int> c0, c1;
    for (const auto& s : srcs[0]) c0.insert(s.cycle);
    for (const auto& s : srcs[1]) c1.insert(s.cycle);
    std::vector<int> contended;
    for (int p : c0)
      if (c1.count(p)) contended.push_back(p);

    double combos = 1;
    for (int p : contended) combos *= static_cast<double>(plan.copies[p] + 1);
    if (!contended.empty() && combos <= 2e6) {
      std::vector<long long> take(contended.size(), 0);
      std::function<bool(size_t)> rec = [&](size_t idx) -> bool {
        if (idx == contended.size()) {
          std::map<int, long long> pool;
          for (int p = 0; p < cs.size(); ++p) pool[p] = plan.copies[p];
          for (size_t t = 0; t < contended.size(); ++t)
            pool[contended[t]] = take[t];  // link 0's share
          auto s0 = srcs[0];
          detail[0].routes.clear();
          detail[0].restored =
              detail::draw_greedy(detail[0], s0, pool, detail[0].demanded);
          if (detail[0].restored < detail[0].demanded) return false;
          // link 1 gets the complement of the contended share
          for (size_t t = 0; t < contended.size(); ++t)
            pool[contended[t]] = plan.copies[contended[t]] - take[t];
          auto s1 = srcs[1];
          detail[1].routes.clear();
          detail[1].restored =
              detail::draw_greedy(detail[1], s1, pool, detail[1].demanded);
          return detail[1].restored >= detail[1].demanded;
        }
        for (long long v = plan.copies[contended[idx]]; v >= 0; --v) {
          take[idx] = v;
          if (rec(idx + 1)) return true;
        }
        return false;
      };
      ok = rec(0);
    }
  }

  bool all = ok;
  std::ostringstream why;
  for (const auto& lr : detail)
    if (lr.restored < lr.demanded) {
      all = false;
      why << "link " << net.link_label(lr.link) << " restored " << lr.restored
          << "/" << lr.demanded << " (no feasible joint assignment); ";
    }

  std::map<int, long long> used;
  for (const auto& lr : detail)
    for (const auto& r : lr.routes)
      for (int l : r.links) {
        for (int fl : failed)
          if (l == fl) throw std::logic_error("route crosses a failed link");
        used[l] += r.units;
      }
  for (const auto& [l, u] : used)
    if (u > plan.spare[l]) {
      all = false;
      why << "spare exceeded on link " << net.link_label(l) << " (" << u << ">"
          << plan.spare[l] << "); ";
    }

  out.detail = std::move(detail);
  out.restored = all;
  if (!all) out.reason = why.str();
  return out;
}

inline RestorationOutcome verify_scenario(const PlanFile& pf, FailureScenario sc,
                                          const Network& net, const CycleSet& cs) {
  return pf.is_sg() ? verify_sg(pf.sg(), sc, net, cs)
                    : verify_db(pf.db(), sc, net, cs);
}

inline VerificationReport verify_plan(const PlanFile& pf, const Network& net,
                                      const CycleSet& cs) {
  VerificationReport rep;
  rep.sg_kind = pf.is_sg();
  auto scenarios = enumerate_dual_failures(net);
  rep.scenario_count = static_cast<long long>(scenarios.size());
  for (const FailureScenario& sc : scenarios) {
    RestorationOutcome oc = verify_scenario(pf, sc, net, cs);
    if (!oc.restored) rep.failures.push_back(std::move(oc));
  }
  rep.pass = rep.failures.empty();
  return rep;
}

// Single failures as a degenerate scenario with a phantom second link.
inline bool verify_single_failures(const PlanFile& pf, const Network& net,
                                   const CycleSet& cs) {
  for (int l = 0; l < net.link_count(); ++l) {
    RestorationOutcome oc = verify_scenario(pf, {l, -1}, net, cs);
    if (!oc.restored) return false;
  }
  return true;
}

}  // namespace pcycle
