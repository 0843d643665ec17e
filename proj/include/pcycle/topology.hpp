#pragma once

// Undirected mesh topologies with per-link working capacity and unit cost,
// plus the line-oriented text format used by all tools.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pcycle {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

struct Link {
  int id = -1;           // 0-based, assigned in file order
  int u = -1, v = -1;    // node indices, u < v
  long long working = 0; // w_i, wavelength-channel units
  double unit_cost = 1.0;
};

class Network {
 public:
  Network() = default;
  Network(std::string name, std::vector<std::string> node_names,
          std::vector<Link> links)
      : name_(std::move(name)), node_names_(std::move(node_names)) {
    for (int i = 0; i < static_cast<int>(node_names_.size()); ++i) {
      if (!node_index_.emplace(node_names_[i], i).second)
        throw std::invalid_argument("duplicate node '" + node_names_[i] + "'");
    }
    adj_.resize(node_names_.size());
    for (Link lk : links) add_link(lk);
    if (node_count() < 3)
      throw std::invalid_argument("network needs at least 3 nodes");
    if (link_count() < 3)
      throw std::invalid_argument("network needs at least 3 links");
  }

  const std::string& name() const { return name_; }
  int node_count() const { return static_cast<int>(node_names_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }
  const std::vector<std::string>& node_names() const { return node_names_; }
  const std::string& node_name(int i) const { return node_names_.at(i); }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(int id) const { return links_.at(id); }

  std::optional<int> node_index(std::string_view name) const {
    auto it = node_index_.find(std::string(name));
    if (it == node_index_.end()) return std::nullopt;
    return it->second;
  }

  // (neighbor node, link id) pairs, sorted by neighbor index
  const std::vector<std::pair<int, int>>& neighbors(int node) const {
    return adj_.at(node);
  }

  std::optional<int> link_between(int a, int b) const {
    for (auto [n, l] : adj_.at(a))
      if (n == b) return l;
    return std::nullopt;
  }

  int degree(int node) const { return static_cast<int>(adj_.at(node).size()); }

  long long total_working() const {
    long long t = 0;
    for (const Link& l : links_) t += l.working;
    return t;
  }

  long long max_working() const {
    long long m = 0;
    for (const Link& l : links_) m = std::max(m, l.working);
    return m;
  }

  std::string link_label(int id) const {
    const Link& l = links_.at(id);
    return node_names_[l.u] + "-" + node_names_[l.v];
  }

 private:
  void add_link(Link lk) {
    if (lk.u == lk.v)
      throw std::invalid_argument("self-loop at node '" +
                                  node_names_.at(lk.u) + "'");
    if (lk.u > lk.v) std::swap(lk.u, lk.v);
    if (lk.u < 0 || lk.v >= node_count())
      throw std::invalid_argument("link endpoint out of range");
    if (link_between(lk.u, lk.v))
      throw std::invalid_argument("duplicate link " + node_names_[lk.u] +
                                  " " + node_names_[lk.v]);
    if (lk.working < 0) throw std::invalid_argument("negative working capacity");
    if (!(lk.unit_cost > 0)) throw std::invalid_argument("unit cost must be positive");
    lk.id = static_cast<int>(links_.size());
    adj_[lk.u].emplace_back(lk.v, lk.id);
    adj_[lk.v].emplace_back(lk.u, lk.id);
    std::sort(adj_[lk.u].begin(), adj_[lk.u].end());
    std::sort(adj_[lk.v].begin(), adj_[lk.v].end());
    links_.push_back(lk);
  }

  std::string name_;
  std::vector<std::string> node_names_;
  std::map<std::string, int> node_index_;
  std::vector<Link> links_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
};

namespace detail {

inline std::string strip_comment(std::string line) {
  auto pos = line.find('#');
  if (pos != std::string::npos) line.erase(pos);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
    line.pop_back();
  return line;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline bool parse_ll(const std::string& s, long long& out) {
  if (s.empty()) return false;
  size_t pos = 0;
  try {
    out = std::stoll(s, &pos);
  } catch (...) {
    return false;
  }
  return pos == s.size();
}

inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  size_t pos = 0;
  try {
    out = std::stod(s, &pos);
  } catch (...) {
    return false;
  }
  return pos == s.size();
}

}  // namespace detail

// Topology file format (one item per line, '#' starts a comment):
//   network <name>          -- optional, first meaningful line
//   nodes: <id> <id> ...
//   link <u> <v> <w> [<c>]  -- w non-negative integer, c positive decimal (default 1)
inline Network parse_network(std::string_view text) {
  std::string name = "unnamed";
  std::vector<std::string> nodes;
  struct RawLink {
    std::string u, v;
    long long w;
    double c;
    int line;
  };
  std::vector<RawLink> raw;
  bool saw_nodes = false, saw_any = false;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::strip_comment(line);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "network") {
      if (saw_any) throw ParseError(lineno, "'network' must be the first line");
      if (toks.size() != 2) throw ParseError(lineno, "expected: network <name>");
      name = toks[1];
      saw_any = true;
    } else if (toks[0] == "nodes:") {
      if (saw_nodes) throw ParseError(lineno, "duplicate 'nodes:' line");
      if (toks.size() < 2) throw ParseError(lineno, "empty node list");
      nodes.assign(toks.begin() + 1, toks.end());
      saw_nodes = true;
      saw_any = true;
    } else if (toks[0] == "link") {
      if (!saw_nodes) throw ParseError(lineno, "'link' before 'nodes:' line");
      if (toks.size() != 4 && toks.size() != 5)
        throw ParseError(lineno, "expected: link <u> <v> <w> [<c>]");
      RawLink rl;
      rl.u = toks[1];
      rl.v = toks[2];
      rl.line = lineno;
      if (!detail::parse_ll(toks[3], rl.w) || rl.w < 0)
        throw ParseError(lineno, "working capacity must be a non-negative integer");
      rl.c = 1.0;
      if (toks.size() == 5 && (!detail::parse_double(toks[4], rl.c) || !(rl.c > 0)))
        throw ParseError(lineno, "unit cost must be a positive number");
      raw.push_back(std::move(rl));
      saw_any = true;
    } else {
      throw ParseError(lineno, "unrecognized directive '" + toks[0] + "'");
    }
  }
  if (!saw_nodes) throw ParseError(lineno, "missing 'nodes:' line");

  std::map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    if (!index.emplace(nodes[i], i).second)
      throw ParseError(0, "duplicate node '" + nodes[i] + "'");
  }
  std::vector<Link> links;
  for (const RawLink& rl : raw) {
    auto iu = index.find(rl.u), iv = index.find(rl.v);
    if (iu == index.end()) throw ParseError(rl.line, "unknown node '" + rl.u + "'");
    if (iv == index.end()) throw ParseError(rl.line, "unknown node '" + rl.v + "'");
    Link lk;
    lk.u = iu->second;
    lk.v = iv->second;
    lk.working = rl.w;
    lk.unit_cost = rl.c;
    if (lk.u == lk.v) throw ParseError(rl.line, "self-loop at '" + rl.u + "'");
    links.push_back(lk);
  }
  try {
    return Network(name, nodes, links);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

inline std::string serialize_network(const Network& net) {
  std::ostringstream out;
  out << "network " << net.name() << "\n";
  out << "nodes:";
  for (const auto& n : net.node_names()) out << ' ' << n;
  out << "\n";
  for (const Link& l : net.links()) {
    out << "link " << net.node_name(l.u) << ' ' << net.node_name(l.v) << ' '
        << l.working;
    std::ostringstream c;
    c << l.unit_cost;
    out << ' ' << c.str() << "\n";
  }
  return out.str();
}

inline double avg_nodal_degree(const Network& net) {
  return 2.0 * net.link_count() / net.node_count();
}

// Number of pairwise link-disjoint paths between a and b (max-flow with unit
// link capacities; each undirected link becomes two unit arcs).
inline int link_disjoint_path_count(const Network& net, int a, int b) {
  const int L = net.link_count();
  // residual capacity per (link, direction): dir 0 = u->v, 1 = v->u
  std::vector<int> cap(2 * L, 1);
  int flow = 0;
  for (;;) {
    // BFS for an augmenting path
    std::vector<int> prev_link(net.node_count(), -1), prev_dir(net.node_count(), -1);
    std::vector<bool> seen(net.node_count(), false);
    std::queue<int> q;
    q.push(a);
    seen[a] = true;
    while (!q.empty() && !seen[b]) {
      int x = q.front();
      q.pop();
      for (auto [y, l] : net.neighbors(x)) {
        if (seen[y]) continue;
        int dir = (net.link(l).u == x) ? 0 : 1;
        if (cap[2 * l + dir] <= 0) continue;
        seen[y] = true;
        prev_link[y] = l;
        prev_dir[y] = dir;
        q.push(y);
      }
    }
    if (!seen[b]) break;
    for (int x = b; x != a;) {
      int l = prev_link[x], d = prev_dir[x];
      cap[2 * l + d] -= 1;
      cap[2 * l + (1 - d)] += 1;
      x = (d == 0) ? net.link(l).u : net.link(l).v;
    }
    ++flow;
  }
  return flow;
}

}  // namespace pcycle
