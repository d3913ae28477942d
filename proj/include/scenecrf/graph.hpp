#pragma once

#include "scenecrf/scene.hpp"

namespace scenecrf {

enum class DistanceFrame { LastFrame };

struct GraphConfig {
  double delta_d = 50.0;  // spatial distance threshold, pixels
  DistanceFrame distance_frame = DistanceFrame::LastFrame;

  void check() const;
};

// Center of the pedestrian's box at the given frame.
// Throws std::out_of_range when frame_index >= sequence length.
std::pair<double, double> pedestrian_center(const PedestrianObservation& obs,
                                            std::size_t frame_index);

// Euclidean distance between the two pedestrians' reference-frame box
// centers. Throws std::invalid_argument on mismatched sequence lengths.
double pairwise_distance(const PedestrianObservation& a, const PedestrianObservation& b,
                         const GraphConfig& cfg);

// Builds the undirected scene graph.
//
// With known orientations pedestrians are split into Left and Right
// clusters: within a cluster an edge is added iff d_ij < delta_d, and
// when both clusters are non-empty the single globally closest
// inter-cluster pair is linked regardless of delta_d. If any pedestrian
// has Unknown orientation the whole scene falls back to pure
// thresholding: every pair with d_ij < delta_d is connected. The
// environment node connects to every pedestrian.
SceneGraph build_graph(const Scene& scene, const GraphConfig& cfg);

}  // namespace scenecrf
