#include "scenecrf/graph.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace scenecrf {

void GraphConfig::check() const {
  if (!(delta_d > 0.0) || !std::isfinite(delta_d))
    throw std::invalid_argument("GraphConfig: delta_d must be finite and > 0");
}

std::pair<double, double> pedestrian_center(const PedestrianObservation& obs,
                                            std::size_t frame_index) {
  if (frame_index >= obs.boxes.size())
    throw std::out_of_range("pedestrian_center: frame_index " + std::to_string(frame_index) +
                            " out of range for pedestrian " + obs.id);
  const BoundingBox& b = obs.boxes[frame_index];
  return {(b.x_min + b.x_max) / 2.0, (b.y_min + b.y_max) / 2.0};
}

double pairwise_distance(const PedestrianObservation& a, const PedestrianObservation& b,
                         const GraphConfig& cfg) {
  (void)cfg;  // only LastFrame is defined
  if (a.boxes.size() != b.boxes.size())
    throw std::invalid_argument("pairwise_distance: pedestrians " + a.id + " and " + b.id +
                                " have different sequence lengths");
  const auto [ax, ay] = pedestrian_center(a, a.boxes.size() - 1);
  const auto [bx, by] = pedestrian_center(b, b.boxes.size() - 1);
  return std::hypot(ax - bx, ay - by);
}

SceneGraph build_graph(const Scene& scene, const GraphConfig& cfg) {
  cfg.check();

  SceneGraph graph;
  for (const auto& ped : scene.pedestrians) {
    graph.ped_nodes.push_back(ped.id);
    graph.pe_edges.insert(ped.id);
  }

  const std::size_t n = scene.pedestrians.size();
  bool any_unknown = false;
  for (const auto& ped : scene.pedestrians) {
    if (ped.orientation == Orientation::Unknown) any_unknown = true;
  }

  if (any_unknown) {
    // Fallback: pure distance thresholding, no cluster logic.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (pairwise_distance(scene.pedestrians[i], scene.pedestrians[j], cfg) < cfg.delta_d)
          graph.pp_edges.emplace(scene.pedestrians[i].id, scene.pedestrians[j].id);
      }
    }
    return graph;
  }

  // Within-cluster edges under the threshold.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (scene.pedestrians[i].orientation != scene.pedestrians[j].orientation) continue;
      if (pairwise_distance(scene.pedestrians[i], scene.pedestrians[j], cfg) < cfg.delta_d)
        graph.pp_edges.emplace(scene.pedestrians[i].id, scene.pedestrians[j].id);
    }
  }

  // Single closest-pair link between the two clusters, unconditional on
  // delta_d. Ties broken by the lexicographically smallest id pair.
  double best_dist = std::numeric_limits<double>::infinity();
  const PedPair* best = nullptr;
  std::vector<PedPair> candidates;
  std::vector<double> distances;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (scene.pedestrians[i].orientation == scene.pedestrians[j].orientation) continue;
      candidates.emplace_back(scene.pedestrians[i].id, scene.pedestrians[j].id);
      distances.push_back(pairwise_distance(scene.pedestrians[i], scene.pedestrians[j], cfg));
    }
  }
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (distances[k] < best_dist ||
        (distances[k] == best_dist && best != nullptr && candidates[k] < *best)) {
      best_dist = distances[k];
      best = &candidates[k];
    }
  }
  if (best != nullptr) graph.pp_edges.insert(*best);

  return graph;
}

}  // namespace scenecrf
