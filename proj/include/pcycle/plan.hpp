#pragma once

// Text serialization of protection plans. A plan references cycle ids, which
// are only meaningful together with the enumeration bound, so the block
// records the hop limit it was produced under.
//
//   sg-plan                      db-plan
//   hops 4                       hops 4
//   cycle 3 copies 2             cycle 0 copies 1
//   alloc 0 3 1                  pairalloc 0 0 1 1
//   spare 0 4                    alloc 0 0 1
//                                spare 0 2

#include <sstream>
#include <string>
#include <variant>

#include "pcycle/db.hpp"
#include "pcycle/sg.hpp"

namespace pcycle {

struct PlanParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PlanFile {
  std::variant<SgPlan, DbPlan> plan;
  int max_hops = 0;

  bool is_sg() const { return std::holds_alternative<SgPlan>(plan); }
  const SgPlan& sg() const { return std::get<SgPlan>(plan); }
  const DbPlan& db() const { return std::get<DbPlan>(plan); }
};

inline std::string serialize_plan(const SgPlan& plan, int max_hops) {
  std::ostringstream os;
  os << "sg-plan\n";
  os << "hops " << max_hops << "\n";
  for (size_t p = 0; p < plan.copies.size(); ++p)
    if (plan.copies[p] > 0) os << "cycle " << p << " copies " << plan.copies[p] << "\n";
  for (const auto& [key, v] : plan.allocations)
    os << "alloc " << key.first << " " << key.second << " " << v << "\n";
  for (size_t i = 0; i < plan.spare.size(); ++i)
    os << "spare " << i << " " << plan.spare[i] << "\n";
  return os.str();
}

inline std::string serialize_plan(const DbPlan& plan, int max_hops) {
  std::ostringstream os;
  os << "db-plan\n";
  os << "hops " << max_hops << "\n";
  for (size_t p = 0; p < plan.copies.size(); ++p)
    if (plan.copies[p] > 0) os << "cycle " << p << " copies " << plan.copies[p] << "\n";
  for (const auto& [key, v] : plan.pair_allocations)
    os << "pairalloc " << std::get<0>(key) << " " << std::get<1>(key) << " "
       << std::get<2>(key) << " " << v << "\n";
  for (const auto& [key, v] : plan.per_cycle)
    os << "alloc " << key.first << " " << key.second << " " << v << "\n";
  for (size_t i = 0; i < plan.spare.size(); ++i)
    os << "spare " << i << " " << plan.spare[i] << "\n";
  return os.str();
}

// Reads either block kind. Cycle/link id ranges are validated by the caller
// against the recomputed cycle set (the hop count travels with the plan).
inline PlanFile parse_plan(const std::string& text, int link_count,
                           int cycle_count) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_kind = false, sg_kind = true;
  SgPlan sg;
  DbPlan db;
  int hops = 0;

  auto need_cycle = [&](long long p) {
    if (p < 0 || p >= cycle_count)
      throw PlanParseError("plan references cycle " + std::to_string(p) +
                           " outside the enumerated set (0.." +
                           std::to_string(cycle_count - 1) + ")");
  };
  auto need_link = [&](long long i) {
    if (i < 0 || i >= link_count)
      throw PlanParseError("plan references unknown link " + std::to_string(i));
  };

  sg.copies.assign(cycle_count, 0);
  db.copies.assign(cycle_count, 0);
  sg.spare.assign(link_count, 0);
  db.spare.assign(link_count, 0);

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(detail::strip_comment(line));
    if (toks.empty()) continue;
    if (!have_kind) {
      if (toks[0] == "sg-plan") sg_kind = true;
      else if (toks[0] == "db-plan") sg_kind = false;
      else throw PlanParseError("line 1 must be 'sg-plan' or 'db-plan'");
      have_kind = true;
      continue;
    }
    auto ll = [&](const std::string& s) {
      long long v;
      if (!detail::parse_ll(s, v) || v < 0)
        throw PlanParseError("line " + std::to_string(lineno) +
                             ": expected a non-negative integer, got '" + s + "'");
      return v;
    };
    if (toks[0] == "hops" && toks.size() == 2) {
      hops = static_cast<int>(ll(toks[1]));
    } else if (toks[0] == "cycle" && toks.size() == 4 && toks[2] == "copies") {
      long long p = ll(toks[1]);
      need_cycle(p);
      (sg_kind ? sg.copies : db.copies)[p] = ll(toks[3]);
    } else if (toks[0] == "alloc" && toks.size() == 4) {
      long long i = ll(toks[1]), p = ll(toks[2]);
      need_link(i);
      need_cycle(p);
      if (sg_kind) sg.allocations[{(int)i, (int)p}] = ll(toks[3]);
      else db.per_cycle[{(int)i, (int)p}] = ll(toks[3]);
    } else if (toks[0] == "pairalloc" && toks.size() == 5 && !sg_kind) {
      long long i = ll(toks[1]), p = ll(toks[2]), q = ll(toks[3]);
      need_link(i);
      need_cycle(p);
      need_cycle(q);
      db.pair_allocations[{(int)i, (int)p, (int)q}] = ll(toks[4]);
    } else if (toks[0] == "spare" && toks.size() == 3) {
      long long i = ll(toks[1]);
      need_link(i);
      (sg_kind ? sg.spare : db.spare)[i] = ll(toks[2]);
    } else {
      throw PlanParseError("line " + std::to_string(lineno) +
                           ": unrecognized plan line '" + toks[0] + "'");
    }
  }
  if (!have_kind) throw PlanParseError("empty plan file");

  PlanFile out;
  out.max_hops = hops;
  if (sg_kind) out.plan = std::move(sg);
  else out.plan = std::move(db);
  return out;
}

// Peek at the hop count without knowing the cycle set yet.
inline int plan_hops(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto toks = detail::split_ws(detail::strip_comment(line));
    if (toks.size() == 2 && toks[0] == "hops") {
      long long v;
      if (detail::parse_ll(toks[1], v) && v >= 3) return static_cast<int>(v);
    }
  }
  return 0;
}

}  // namespace pcycle
