#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "capradii/core.hpp"
#include "capradii/rng.hpp"

namespace capradii {

// Undirected bounded-degree graph, input of the vertex-cover reduction.
struct VcGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // normalized u < v, no duplicates

  static VcGraph make(int n, std::vector<std::pair<int, int>> raw_edges) {
    VcGraph g;
    g.vertex_count = n;
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : raw_edges) {
      if (u == v) throw std::invalid_argument("graph has a self-loop");
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("graph edge endpoint out of range");
      if (u > v) std::swap(u, v);
      if (!seen.insert({u, v}).second) throw std::invalid_argument("graph has a duplicate edge");
      g.edges.push_back({u, v});
    }
    return g;
  }

  int max_degree() const {
    std::vector<int> deg(vertex_count, 0);
    for (auto [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    int d = 0;
    for (int x : deg) d = std::max(d, x);
    return d;
  }
};

// Point-id map of the reduced instance: vertex points first, then the
// per-vertex Q_v blocks, then edge points, then p_star last.
struct ReductionLayout {
  int n_vertices = 0;
  int n_edges = 0;
  int degree = 0;
  int k = 0;
  std::vector<int> p_v;
  std::vector<std::vector<int>> q_v;
  std::vector<int> p_e;
  int p_star = -1;
  std::vector<std::pair<int, int>> gadget_edges;

  int point_count() const { return n_vertices * (1 + degree) + n_edges + 1; }
};

// All-pairs unweighted shortest-path distances; errors on disconnected input.
inline MetricSpace shortest_path_metric(const std::vector<std::pair<int, int>>& edges,
                                        int n_nodes) {
  std::vector<std::vector<int>> adj(n_nodes);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_nodes || v >= n_nodes)
      throw std::invalid_argument("shortest_path_metric: endpoint out of range");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<double> d(static_cast<size_t>(n_nodes) * n_nodes, -1.0);
  std::vector<int> dist(n_nodes);
  for (int s = 0; s < n_nodes; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
    }
    for (int t = 0; t < n_nodes; ++t) {
      if (dist[t] < 0) throw std::runtime_error("shortest_path_metric: graph is disconnected");
      d[static_cast<size_t>(s) * n_nodes + t] = dist[t];
    }
  }
  return MetricSpace(n_nodes, std::move(d));
}

// Vertex-cover hardness gadget: one zero-capacity point per edge, a point of
// capacity 2d+1 per vertex with d zero-capacity satellites, and one hub of
// capacity n(d+1)/3 + 1; the metric is the shortest-path distance in the
// gadget graph and k = 2n/3 + 1.
inline std::pair<Instance, ReductionLayout> reduce_vc(const VcGraph& g) {
  const int n = g.vertex_count;
  const int m = static_cast<int>(g.edges.size());
  if (n % 3 != 0)
    throw std::invalid_argument("reduce_vc: vertex count must be divisible by 3");
  const int d = g.max_degree();

  ReductionLayout lay;
  lay.n_vertices = n;
  lay.n_edges = m;
  lay.degree = d;
  lay.k = 2 * n / 3 + 1;
  lay.p_v.resize(n);
  lay.q_v.assign(n, {});
  lay.p_e.resize(m);

  int next = 0;
  for (int v = 0; v < n; ++v) lay.p_v[v] = next++;
  for (int v = 0; v < n; ++v)
    for (int t = 0; t < d; ++t) lay.q_v[v].push_back(next++);
  for (int e = 0; e < m; ++e) lay.p_e[e] = next++;
  lay.p_star = next++;

  const int total = next;
  for (int v = 0; v < n; ++v) {
    lay.gadget_edges.push_back({lay.p_v[v], lay.p_star});
    for (int w : lay.q_v[v]) {
      lay.gadget_edges.push_back({w, lay.p_v[v]});
      lay.gadget_edges.push_back({w, lay.p_star});
    }
  }
  for (int e = 0; e < m; ++e) {
    lay.gadget_edges.push_back({lay.p_e[e], lay.p_v[g.edges[e].first]});
    lay.gadget_edges.push_back({lay.p_e[e], lay.p_v[g.edges[e].second]});
  }

  Instance inst;
  inst.metric = shortest_path_metric(lay.gadget_edges, total);
  inst.capacities.assign(total, 0);
  for (int v = 0; v < n; ++v) inst.capacities[lay.p_v[v]] = 2LL * d + 1;
  inst.capacities[lay.p_star] = static_cast<long long>(n) * (d + 1) / 3 + 1;
  inst.k = lay.k;
  inst.norm = PNorm::l1();
  return {std::move(inst), std::move(lay)};
}

// The explicit solution behind the completeness direction: centers at the
// cover's vertex points plus the hub, all radii 1. Throws when `cover` is
// not a vertex cover of size at most 2n/3.
inline Clustering vc_cover_solution(const VcGraph& g, std::vector<int> cover,
                                    const ReductionLayout& lay) {
  const int n = g.vertex_count;
  std::vector<char> in_cover(n, 0);
  for (int v : cover) {
    if (v < 0 || v >= n) throw std::invalid_argument("cover vertex out of range");
    in_cover[v] = 1;
  }
  for (auto [u, v] : g.edges)
    if (!in_cover[u] && !in_cover[v])
      throw std::invalid_argument("supplied set is not a vertex cover");
  int want = 2 * n / 3;
  if (static_cast<int>(cover.size()) > want)
    throw std::invalid_argument("cover larger than 2n/3");
  for (int v = 0; v < n && static_cast<int>(cover.size()) < want; ++v)
    if (!in_cover[v]) {
      in_cover[v] = 1;
      cover.push_back(v);
    }
  std::sort(cover.begin(), cover.end());

  Clustering sol;
  std::vector<int> cluster_of_vertex(n, -1);
  for (size_t i = 0; i < cover.size(); ++i) {
    cluster_of_vertex[cover[i]] = static_cast<int>(i);
    sol.centers.push_back(lay.p_v[cover[i]]);
    sol.members.push_back({});
    sol.nominal_radii.push_back(1.0);
  }
  int hub = static_cast<int>(sol.centers.size());
  sol.centers.push_back(lay.p_star);
  sol.members.push_back({});
  sol.nominal_radii.push_back(1.0);

  for (int v = 0; v < n; ++v) {
    int target = in_cover[v] ? cluster_of_vertex[v] : hub;
    sol.members[target].push_back(lay.p_v[v]);
    for (int w : lay.q_v[v]) sol.members[target].push_back(w);
  }
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    auto [u, v] = g.edges[e];
    int pick = in_cover[u] ? u : v;
    sol.members[cluster_of_vertex[pick]].push_back(lay.p_e[e]);
  }
  sol.members[hub].push_back(lay.p_star);
  return sol;
}

struct CapacityLaw {
  enum Kind { kConstant, kUniformRange } kind = kConstant;
  long long a = 1;
  long long b = 1;

  static CapacityLaw constant(long long u) { return {kConstant, u, u}; }
  static CapacityLaw uniform_range(long long lo, long long hi) { return {kUniformRange, lo, hi}; }
};

struct BlobInstance {
  std::vector<std::vector<double>> points;
  std::vector<long long> capacities;
  Instance instance;
};

// Euclidean test family: points sampled uniformly in balls of radius
// `spread` around the given centers. Capacities follow the law and, for the
// ranged law, are rescaled so the top-k sum reaches n. Deterministic under
// the seed: points blob by blob, then capacity draws.
inline BlobInstance gen_blobs(const std::vector<std::vector<double>>& blob_centers,
                              const std::vector<int>& blob_sizes, double spread,
                              CapacityLaw law, int k, uint64_t seed,
                              PNorm norm = PNorm::l1()) {
  if (blob_centers.size() != blob_sizes.size())
    throw std::invalid_argument("gen_blobs: centers/sizes length mismatch");
  if (blob_centers.empty()) throw std::invalid_argument("gen_blobs: need at least one blob");
  if (spread < 0.0) throw std::invalid_argument("gen_blobs: spread must be >= 0");
  Rng rng(seed);
  BlobInstance out;
  for (size_t b = 0; b < blob_centers.size(); ++b) {
    if (blob_sizes[b] < 1) throw std::invalid_argument("gen_blobs: blob size must be >= 1");
    const auto& c = blob_centers[b];
    const size_t dim = c.size();
    for (int i = 0; i < blob_sizes[b]; ++i) {
      std::vector<double> p(dim);
      if (spread == 0.0) {
        p = c;
      } else {
        // rejection sampling from the bounding cube
        while (true) {
          double norm2 = 0.0;
          for (size_t t = 0; t < dim; ++t) {
            p[t] = rng.next_real(-spread, spread);
            norm2 += p[t] * p[t];
          }
          if (norm2 <= spread * spread) break;
        }
        for (size_t t = 0; t < dim; ++t) p[t] += c[t];
      }
      out.points.push_back(std::move(p));
    }
  }
  const int n = static_cast<int>(out.points.size());
  out.capacities.resize(n);
  if (law.kind == CapacityLaw::kConstant) {
    for (int i = 0; i < n; ++i) out.capacities[i] = law.a;
  } else {
    if (law.a < 0 || law.b < law.a) throw std::invalid_argument("gen_blobs: bad capacity range");
    for (int i = 0; i < n; ++i)
      out.capacities[i] = law.a + static_cast<long long>(rng.next_below(law.b - law.a + 1));
    std::vector<long long> sorted = out.capacities;
    std::sort(sorted.begin(), sorted.end(), std::greater<long long>());
    long long top = 0;
    for (int j = 0; j < k && j < n; ++j) top += sorted[j];
    if (top < n && top > 0) {
      long long factor = (n + top - 1) / top;
      for (auto& c : out.capacities) c *= factor;
    }
  }
  out.instance.metric = MetricSpace::from_points(out.points);
  out.instance.capacities = out.capacities;
  out.instance.k = k;
  out.instance.norm = norm;
  return out;
}

}  // namespace capradii
