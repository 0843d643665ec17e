#pragma once

// Simple-cycle enumeration and the link/cycle relation table that the model
// builders and the failure simulator probe.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcycle/topology.hpp"

namespace pcycle {

enum class LinkRelation : std::uint8_t { Unrelated = 0, OnCycle = 1, Straddling = 2 };

struct CycleCapExceeded : std::runtime_error {
  explicit CycleCapExceeded(long long cap)
      : std::runtime_error("cycle enumeration exceeded cap of " +
                           std::to_string(cap) + " cycles") {}
};

struct Cycle {
  int id = -1;
  std::vector<int> node_seq;          // canonical, closed implicitly
  std::vector<int> on_cycle_links;    // sorted link ids, same size as node_seq
  std::vector<int> straddling_links;  // sorted link ids (chords)

  int length() const { return static_cast<int>(node_seq.size()); }
};

class CycleSet {
 public:
  CycleSet() = default;
  CycleSet(std::vector<Cycle> cycles, int max_hops, int link_count)
      : cycles_(std::move(cycles)), max_hops_(max_hops), link_count_(link_count) {
    relation_.assign(static_cast<size_t>(link_count_) * cycles_.size(),
                     LinkRelation::Unrelated);
    for (const Cycle& c : cycles_) {
      for (int l : c.on_cycle_links) at(l, c.id) = LinkRelation::OnCycle;
      for (int l : c.straddling_links) at(l, c.id) = LinkRelation::Straddling;
    }
  }

  const std::vector<Cycle>& cycles() const { return cycles_; }
  const Cycle& cycle(int id) const { return cycles_.at(id); }
  int size() const { return static_cast<int>(cycles_.size()); }
  int max_hops() const { return max_hops_; }
  int link_count() const { return link_count_; }

  LinkRelation relation(int link, int cycle) const {
    check(link, cycle);
    return relation_[static_cast<size_t>(link) * cycles_.size() + cycle];
  }

 private:
  LinkRelation& at(int link, int cycle) {
    return relation_[static_cast<size_t>(link) * cycles_.size() + cycle];
  }
  void check(int link, int cycle) const {
    if (link < 0 || link >= link_count_)
      throw std::out_of_range("unknown link id " + std::to_string(link));
    if (cycle < 0 || cycle >= size())
      throw std::out_of_range("unknown cycle id " + std::to_string(cycle));
  }

  std::vector<Cycle> cycles_;
  int max_hops_ = 0;
  int link_count_ = 0;
  std::vector<LinkRelation> relation_;  // L x P, row-major by link
};

namespace detail {

// Lexicographically smallest rotation/orientation of the node-name sequence.
inline std::vector<int> canonical_node_seq(const Network& net,
                                           const std::vector<int>& seq) {
  const int k = static_cast<int>(seq.size());
  int min_pos = 0;
  for (int i = 1; i < k; ++i)
    if (net.node_name(seq[i]) < net.node_name(seq[min_pos])) min_pos = i;
  std::vector<int> fwd(k), bwd(k);
  for (int i = 0; i < k; ++i) fwd[i] = seq[(min_pos + i) % k];
  for (int i = 0; i < k; ++i) bwd[i] = seq[(min_pos - i + k) % k];
  return net.node_name(fwd[1]) <= net.node_name(bwd[1]) ? fwd : bwd;
}

inline bool name_seq_less(const Network& net, const Cycle& a, const Cycle& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (int i = 0; i < a.length(); ++i) {
    const std::string& na = net.node_name(a.node_seq[i]);
    const std::string& nb = net.node_name(b.node_seq[i]);
    if (na != nb) return na < nb;
  }
  return false;
}

}  // namespace detail

// All simple cycles with at most max_hops links, each reported once in
// canonical form (rotated to the smallest node name, oriented toward the
// smaller second name), sorted by (length, name sequence).
inline CycleSet enumerate_simple_cycles(const Network& net, int max_hops,
                                        long long cycle_cap = 1000000) {
  if (max_hops < 3) throw std::invalid_argument("max_hops must be >= 3");
  const int n = net.node_count();
  std::vector<Cycle> found;
  std::vector<bool> on_path(n, false);
  std::vector<int> path;

  // DFS from each start node, visiting only nodes with a higher index; each
  // cycle surfaces exactly once per orientation, filtered to one.
  auto record = [&]() {
    if (found.size() >= static_cast<size_t>(cycle_cap))
      throw CycleCapExceeded(cycle_cap);
    Cycle c;
    c.node_seq = detail::canonical_node_seq(net, path);
    found.push_back(std::move(c));
  };

  struct Frame {
    int node;
    size_t next = 0;
  };
  for (int s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[s] = true;
    std::vector<Frame> stack{{s}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbrs = net.neighbors(f.node);
      if (f.next >= nbrs.size()) {
        on_path[f.node] = false;
        path.pop_back();
        stack.pop_back();
        continue;
      }
      auto [y, link] = nbrs[f.next++];
      if (y == s && path.size() >= 3) {
        if (path[1] < path.back()) record();  // one orientation only
      } else if (y > s && !on_path[y] &&
                 path.size() < static_cast<size_t>(max_hops)) {
        on_path[y] = true;
        path.push_back(y);
        stack.push_back({y});
      }
    }
    on_path[s] = false;
  }

  std::sort(found.begin(), found.end(),
            [&](const Cycle& a, const Cycle& b) {
              return detail::name_seq_less(net, a, b);
            });

  for (int id = 0; id < static_cast<int>(found.size()); ++id) {
    Cycle& c = found[id];
    c.id = id;
    const int k = c.length();
    std::vector<bool> member(net.node_count(), false);
    for (int v : c.node_seq) member[v] = true;
    for (int i = 0; i < k; ++i) {
      auto l = net.link_between(c.node_seq[i], c.node_seq[(i + 1) % k]);
      if (!l) throw std::logic_error("cycle uses a non-existent link");
      c.on_cycle_links.push_back(*l);
    }
    std::sort(c.on_cycle_links.begin(), c.on_cycle_links.end());
    for (const Link& lk : net.links()) {
      if (member[lk.u] && member[lk.v] &&
          !std::binary_search(c.on_cycle_links.begin(), c.on_cycle_links.end(),
                              lk.id))
        c.straddling_links.push_back(lk.id);
    }
  }
  return CycleSet(std::move(found), max_hops, net.link_count());
}

inline LinkRelation classify_link(int link, int cycle, const CycleSet& cs) {
  return cs.relation(link, cycle);
}

// x_{i,p}: units of straddling-link demand protected per cycle copy.
inline int sg_coefficient(int link, int cycle, const CycleSet& cs) {
  return cs.relation(link, cycle) == LinkRelation::Straddling ? 2 : 0;
}

// delta_{i,j}: 1 when the link lies on the cycle (spare is consumed there).
inline int delta(int link, int cycle, const CycleSet& cs) {
  return cs.relation(link, cycle) == LinkRelation::OnCycle ? 1 : 0;
}

// One line per cycle: "cycle <id>: a-b-c (on 3, straddling 0)".
inline std::string dump_cycles(const Network& net, const CycleSet& cs) {
  std::string out;
  for (const Cycle& c : cs.cycles()) {
    out += "cycle " + std::to_string(c.id) + ":";
    std::string seq;
    for (int v : c.node_seq) {
      if (!seq.empty()) seq += "-";
      seq += net.node_name(v);
    }
    out += " " + seq + " (on " + std::to_string(c.on_cycle_links.size()) +
           ", straddling " + std::to_string(c.straddling_links.size()) + ")\n";
  }
  return out;
}

struct ProtectabilityReport {
  bool three_connected = false;
  std::vector<std::pair<int, int>> offending_node_pairs;  // < 3 disjoint paths
  std::vector<int> unstraddled_links;  // chord of no enumerable cycle
};

// Advisory pre-flight check: 3-edge-connectivity pair by pair, plus links
// that no enumerable cycle can protect as a straddler.
inline ProtectabilityReport validate_protectable(const Network& net,
                                                 int max_hops,
                                                 long long cycle_cap = 1000000) {
  ProtectabilityReport rep;
  for (int a = 0; a < net.node_count(); ++a)
    for (int b = a + 1; b < net.node_count(); ++b)
      if (link_disjoint_path_count(net, a, b) < 3)
        rep.offending_node_pairs.emplace_back(a, b);
  rep.three_connected = rep.offending_node_pairs.empty();

  CycleSet cs = enumerate_simple_cycles(net, max_hops, cycle_cap);
  std::vector<bool> straddled(net.link_count(), false);
  for (const Cycle& c : cs.cycles())
    for (int l : c.straddling_links) straddled[l] = true;
  for (int l = 0; l < net.link_count(); ++l)
    if (!straddled[l]) rep.unstraddled_links.push_back(l);
  return rep;
}

}  // namespace pcycle
