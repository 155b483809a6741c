#include "estmap/network/layout.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <random>

#include "estmap/network/components.hpp"
#include "estmap/util/error.hpp"

namespace estmap::network {

namespace {

using Matrix = std::vector<std::vector<double>>;

struct WeightedAdjacency {
  std::vector<std::vector<std::pair<std::size_t, double>>> out;
  bool unit = true;
};

WeightedAdjacency weighted_adjacency(const Graph& graph, const std::vector<double>* lengths) {
  WeightedAdjacency adj;
  adj.out.resize(graph.node_count());
  auto edges = graph.edges();
  if (lengths && lengths->size() != edges.size()) throw InputError("one edge length per edge is required");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    double len = lengths ? (*lengths)[k] : 1.0;
    if (!(len > 0.0) || !std::isfinite(len)) throw InputError("edge lengths must be positive and finite");
    if (len != 1.0) adj.unit = false;
    adj.out[edges[k].u].emplace_back(edges[k].v, len);
    adj.out[edges[k].v].emplace_back(edges[k].u, len);
  }
  for (auto& a : adj.out) std::sort(a.begin(), a.end());
  return adj;
}

/// Shortest-path distances inside one component (local indices): BFS for
/// unit lengths, Dijkstra otherwise.
Matrix path_distances(const std::vector<std::size_t>& members, const WeightedAdjacency& adj) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> local(adj.out.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = i;
  Matrix dist(members.size(), std::vector<double>(members.size(), kInf));
  for (std::size_t s = 0; s < members.size(); ++s) {
    auto& d = dist[s];
    d[s] = 0.0;
    if (adj.unit) {
      std::deque<std::size_t> queue{s};
      while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (const auto& [wg, len] : adj.out[members[v]]) {
          auto w = local[wg];
          if (d[w] == kInf) {
            d[w] = d[v] + 1.0;
            queue.push_back(w);
          }
        }
      }
      continue;
    }
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      auto [dv, v] = heap.top();
      heap.pop();
      if (dv > d[v]) continue;
      for (const auto& [wg, len] : adj.out[members[v]]) {
        auto w = local[wg];
        if (dv + len < d[w]) {
          d[w] = dv + len;
          heap.emplace(d[w], w);
        }
      }
    }
  }
  return dist;
}

double component_stress(const std::vector<Point>& x, const Matrix& d) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      double dij = d[i][j];
      double len = std::hypot(x[i].x - x[j].x, x[i].y - x[j].y);
      s += (len - dij) * (len - dij) / (dij * dij);
    }
  }
  return s;
}

/// Uniform in [0, 1) from the top 53 bits, identical on every platform.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Eigenvector of the largest eigenvalue of `b` orthogonal to `against`, by
/// shifted power iteration. Returns the eigenvalue.
double dominant_eigen(const std::vector<std::vector<double>>& b, double shift, const std::vector<double>* against,
                      std::mt19937_64& rng, std::vector<double>& v) {
  const std::size_t m = b.size();
  v.assign(m, 0.0);
  for (auto& e : v) e = unit_double(rng) - 0.5;
  auto orthonormalise = [&] {
    if (against) {
      double dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) dot += v[i] * (*against)[i];
      for (std::size_t i = 0; i < m; ++i) v[i] -= dot * (*against)[i];
    }
    double norm = 0.0;
    for (double e : v) norm += e * e;
    norm = std::sqrt(norm);
    if (norm == 0.0) return false;
    for (auto& e : v) e /= norm;
    return true;
  };
  if (!orthonormalise()) return 0.0;
  std::vector<double> w(m);
  for (int it = 0; it < 300; ++it) {
    for (std::size_t i = 0; i < m; ++i) {
      double acc = shift * v[i];
      for (std::size_t j = 0; j < m; ++j) acc += b[i][j] * v[j];
      w[i] = acc;
    }
    double change = 0.0;
    std::swap(v, w);
    if (!orthonormalise()) return 0.0;
    for (std::size_t i = 0; i < m; ++i) change = std::max(change, std::fabs(v[i] - w[i]));
    if (change < 1e-12) break;
  }
  double lambda = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double bi = 0.0;
    for (std::size_t j = 0; j < m; ++j) bi += b[i][j] * v[j];
    lambda += v[i] * bi;
  }
  return lambda;
}

/// Classical (Torgerson) scaling of the hop distances as the starting
/// configuration, plus a small seeded jitter so symmetric nodes can separate.
void classical_scaling(const Matrix& d, std::mt19937_64& rng, std::vector<Point>& out) {
  const std::size_t m = d.size();
  std::vector<std::vector<double>> b(m, std::vector<double>(m));
  std::vector<double> row(m, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      b[i][j] = d[i][j] * d[i][j];
      row[i] += b[i][j];
    }
    grand += row[i];
    row[i] /= static_cast<double>(m);
  }
  grand /= static_cast<double>(m) * static_cast<double>(m);
  double shift = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double abs_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      b[i][j] = -0.5 * (b[i][j] - row[i] - row[j] + grand);
      abs_sum += std::fabs(b[i][j]);
    }
    shift = std::max(shift, abs_sum);
  }
  std::vector<double> v1, v2;
  double l1 = dominant_eigen(b, shift, nullptr, rng, v1);
  double l2 = dominant_eigen(b, shift, &v1, rng, v2);
  double s1 = std::sqrt(std::max(l1, 0.0)), s2 = std::sqrt(std::max(l2, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    out[i].x = v1[i] * s1 + 1e-3 * (unit_double(rng) - 0.5);
    out[i].y = v2[i] * s2 + 1e-3 * (unit_double(rng) - 0.5);
  }
}

struct ComponentLayout {
  std::vector<Point> coords;
  std::vector<double> history;
};

ComponentLayout layout_component(const Matrix& d, std::mt19937_64& rng,
                                 const LayoutOptions& opt) {
  const std::size_t m = d.size();
  ComponentLayout out;
  out.coords.resize(m);
  if (m == 1) {
    out.history.push_back(0.0);
    return out;
  }
  classical_scaling(d, rng, out.coords);
  auto& x = out.coords;
  double stress = component_stress(x, d);
  out.history.push_back(stress);
  for (int it = 0; it < opt.max_iterations && stress > 0.0; ++it) {
    auto previous = x;
    for (std::size_t i = 0; i < m; ++i) {
      double nx = 0.0, ny = 0.0, wsum = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        double dij = d[i][j];
        double w = 1.0 / (dij * dij);
        double dx = x[i].x - x[j].x, dy = x[i].y - x[j].y;
        double len = std::hypot(dx, dy);
        nx += w * x[j].x;
        ny += w * x[j].y;
        if (len > 0.0) {
          nx += w * dij * dx / len;
          ny += w * dij * dy / len;
        }
        wsum += w;
      }
      x[i] = {nx / wsum, ny / wsum};
    }
    double next = component_stress(x, d);
    if (next > stress) {
      // Rounding noise at convergence; keep the better configuration.
      x = std::move(previous);
      break;
    }
    out.history.push_back(next);
    bool converged = stress - next <= opt.tolerance * stress || next < 1e-14;
    stress = next;
    if (converged) break;
  }
  return out;
}

}  // namespace

double stress_of(const Graph& graph, const std::vector<Point>& coords, const std::vector<double>* edge_lengths) {
  auto adj = weighted_adjacency(graph, edge_lengths);
  double total = 0.0;
  for (const auto& comp : connected_components(graph)) {
    std::vector<Point> local;
    for (auto v : comp) local.push_back(coords.at(v));
    total += component_stress(local, path_distances(comp, adj));
  }
  return total;
}

Layout layout_stress(const Graph& graph, const LayoutOptions& options, const std::vector<double>* edge_lengths) {
  Layout out;
  out.coords.resize(graph.node_count());
  auto comps = connected_components(graph);
  if (comps.empty()) {
    out.stress_history.push_back(0.0);
    return out;
  }
  auto adj = weighted_adjacency(graph, edge_lengths);
  std::mt19937_64 rng(options.seed);

  std::vector<ComponentLayout> parts;
  for (const auto& comp : comps) parts.push_back(layout_component(path_distances(comp, adj), rng, options));

  // Combined history: a finished component keeps its final stress.
  std::size_t sweeps = 0;
  for (const auto& p : parts) sweeps = std::max(sweeps, p.history.size());
  for (std::size_t k = 0; k < sweeps; ++k) {
    double s = 0.0;
    for (const auto& p : parts) s += p.history[std::min(k, p.history.size() - 1)];
    out.stress_history.push_back(s);
  }
  out.stress = out.stress_history.back();

  // Shelf packing, largest component first; rows wrap at a width that keeps
  // the overall shape roughly square.
  std::vector<std::size_t> order(comps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return comps[a].size() > comps[b].size(); });
  struct Box {
    double min_x, min_y, w, h;
  };
  std::vector<Box> boxes(comps.size());
  double area = 0.0, widest = 0.0;
  const double gap = options.component_gap;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
    for (const auto& p : parts[c].coords) {
      x0 = std::min(x0, p.x);
      y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
    boxes[c] = {x0, y0, x1 - x0, y1 - y0};
    area += (boxes[c].w + gap) * (boxes[c].h + gap);
    widest = std::max(widest, boxes[c].w);
  }
  const double row_limit = std::max(widest, std::sqrt(area));
  double cx = 0.0, cy = 0.0, row_h = 0.0;
  for (auto c : order) {
    const auto& b = boxes[c];
    if (cx > 0.0 && cx + b.w > row_limit) {
      cx = 0.0;
      cy += row_h + gap;
      row_h = 0.0;
    }
    for (std::size_t k = 0; k < comps[c].size(); ++k) {
      const auto& p = parts[c].coords[k];
      out.coords[comps[c][k]] = {p.x - b.min_x + cx, p.y - b.min_y + cy};
    }
    cx += b.w + gap;
    row_h = std::max(row_h, b.h);
  }
  return out;
}

}  // namespace estmap::network
