#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace capradii {

// Left vertices with admissible right neighbours.
struct BipartiteGraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::vector<int>> adjacency;  // one list per left vertex
};

// Points must each be routed to one admissible sink without exceeding the
// per-sink capacity.
struct AssignmentProblem {
  int point_count = 0;
  int sink_count = 0;
  std::vector<std::vector<int>> admissible;  // one list per point
  std::vector<long long> sink_caps;
};

// Hopcroft-Karp maximum-cardinality matching. Returns match_left with -1 for
// unmatched vertices. Augmenting paths explore admissible sets in ascending
// index order so the output is reproducible.
inline std::vector<int> max_matching(const BipartiteGraph& g) {
  const int nl = g.left_count, nr = g.right_count;
  std::vector<std::vector<int>> adj = g.adjacency;
  adj.resize(nl);
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    for (int v : a)
      if (v < 0 || v >= nr) throw std::invalid_argument("matching: adjacency index out of range");
  }

  std::vector<int> match_left(nl, -1), match_right(nr, -1);
  std::vector<int> dist(nl);
  const int INF = std::numeric_limits<int>::max();

  auto bfs = [&]() -> bool {
    std::queue<int> q;
    for (int u = 0; u < nl; ++u) {
      if (match_left[u] == -1) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = INF;
      }
    }
    bool reachable_free = false;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        int w = match_right[v];
        if (w == -1) {
          reachable_free = true;
        } else if (dist[w] == INF) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(int)> dfs = [&](int u) -> bool {
    for (int v : adj[u]) {
      int w = match_right[v];
      if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    dist[u] = INF;
    return false;
  };

  while (bfs()) {
    for (int u = 0; u < nl; ++u)
      if (match_left[u] == -1) dfs(u);
  }
  return match_left;
}

inline int matching_size(const std::vector<int>& match_left) {
  int s = 0;
  for (int v : match_left)
    if (v >= 0) ++s;
  return s;
}

namespace detail {

// Dinic max-flow on a small graph, tuned for many short-lived instances.
class Dinic {
 public:
  explicit Dinic(int nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

  void add_edge(int from, int to, long long cap) {
    edges_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  long long run(int s, int t) {
    long long total = 0;
    while (bfs(s, t)) {
      it_ = head_;
      long long f;
      while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) total += f;
    }
    return total;
  }

  long long edge_flow(int idx) const { return edges_[2 * idx + 1].cap; }

 private:
  struct Edge {
    int to;
    int next;
    long long cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    level_[s] = 0;
    queue_.clear();
    queue_.push_back(s);
    for (size_t qi = 0; qi < queue_.size(); ++qi) {
      int u = queue_[qi];
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] == -1) {
          level_[edges_[e].to] = level_[u] + 1;
          queue_.push_back(edges_[e].to);
        }
      }
    }
    return level_[t] != -1;
  }

  long long dfs(int u, int t, long long limit) {
    if (u == t || limit == 0) return limit;
    for (int& e = it_[u]; e != -1; e = edges_[e].next) {
      int v = edges_[e].to;
      if (edges_[e].cap > 0 && level_[v] == level_[u] + 1) {
        long long got = dfs(v, t, std::min(limit, edges_[e].cap));
        if (got > 0) {
          edges_[e].cap -= got;
          edges_[e ^ 1].cap += got;
          return got;
        }
      }
    }
    level_[u] = -1;
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_, level_, it_;
  std::vector<int> queue_;
};

}  // namespace detail

// Full assignment of every point to an admissible sink respecting sink
// capacities, or nullopt. Decided by max-flow value = point_count; edge order
// follows ascending sink index, so results are deterministic.
inline std::optional<std::vector<int>> feasible_assignment(const AssignmentProblem& p) {
  const int np = p.point_count, ns = p.sink_count;
  if (p.admissible.size() != static_cast<size_t>(np) ||
      p.sink_caps.size() != static_cast<size_t>(ns))
    throw std::invalid_argument("assignment: shape mismatch");
  for (long long c : p.sink_caps)
    if (c < 0) throw std::invalid_argument("assignment: negative capacity");

  // nodes: 0 = source, 1..np points, np+1..np+ns sinks, np+ns+1 target
  const int s = 0, t = np + ns + 1;
  detail::Dinic dinic(np + ns + 2);
  std::vector<std::pair<int, int>> point_edge_range(np);
  int edge_index = 0;
  for (int i = 0; i < np; ++i) {
    dinic.add_edge(s, 1 + i, 1);
    ++edge_index;
  }
  for (int i = 0; i < np; ++i) {
    std::vector<int> sinks = p.admissible[i];
    std::sort(sinks.begin(), sinks.end());
    point_edge_range[i].first = edge_index;
    for (int j : sinks) {
      if (j < 0 || j >= ns) throw std::invalid_argument("assignment: sink index out of range");
      dinic.add_edge(1 + i, 1 + np + j, 1);
      ++edge_index;
    }
    point_edge_range[i].second = edge_index;
  }
  std::vector<int> sink_edge(ns);
  for (int j = 0; j < ns; ++j) {
    sink_edge[j] = edge_index;
    dinic.add_edge(1 + np + j, t, p.sink_caps[j]);
    ++edge_index;
  }

  long long flow = dinic.run(s, t);
  if (flow != np) return std::nullopt;

  std::vector<int> assign(np, -1);
  for (int i = 0; i < np; ++i) {
    std::vector<int> sinks = p.admissible[i];
    std::sort(sinks.begin(), sinks.end());
    int base = point_edge_range[i].first;
    for (size_t r = 0; r < sinks.size(); ++r) {
      if (dinic.edge_flow(base + static_cast<int>(r)) > 0) {
        assign[i] = sinks[r];
        break;
      }
    }
  }
  return assign;
}

inline bool assignment_feasible(const AssignmentProblem& p) {
  return feasible_assignment(p).has_value();
}

}  // namespace capradii
