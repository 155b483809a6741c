#pragma once

#include <cstdint>
#include <vector>

#include "estmap/network/graph.hpp"

namespace estmap::network {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

struct LayoutOptions {
  std::uint64_t seed = 1;
  int max_iterations = 500;
  /// Stop once an iteration lowers stress by less than this fraction.
  double tolerance = 1e-9;
  /// Space between packed components, in units of one graph hop.
  double component_gap = 1.0;
};

struct Layout {
  std::vector<Point> coords;
  /// Total stress before the first sweep and after each sweep.
  std::vector<double> stress_history;
  double stress = 0.0;
};

/// Kamada-Kawai stress with w_ij = d_ij^-2 over shortest-path distances,
/// minimised by per-node majorization sweeps from a classical-scaling start.
/// `edge_lengths`, aligned with graph.edges(), defaults to one hop per edge.
/// Each component is laid out on its own and components are packed in rows,
/// largest first.
Layout layout_stress(const Graph& graph, const LayoutOptions& options = {},
                     const std::vector<double>* edge_lengths = nullptr);

/// Stress of `coords`, summed over pairs in the same component.
double stress_of(const Graph& graph, const std::vector<Point>& coords,
                 const std::vector<double>* edge_lengths = nullptr);

}  // namespace estmap::network
