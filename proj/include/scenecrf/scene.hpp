#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scenecrf/errors.hpp"

namespace scenecrf {

enum class Orientation { Left, Right, Unknown };

struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool operator==(const BoundingBox&) const = default;
};

// One tracked pedestrian with its per-frame boxes and the supplied
// crossing probability from the unary provider.
struct PedestrianObservation {
  std::string id;
  std::vector<BoundingBox> boxes;
  Orientation orientation = Orientation::Unknown;
  double unary_prob = 0.5;

  bool operator==(const PedestrianObservation&) const = default;
};

// Unordered pedestrian-id pair, stored normalized so (a,b) == (b,a).
struct PedPair {
  std::string first;
  std::string second;

  PedPair() = default;
  PedPair(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    first = std::move(a);
    second = std::move(b);
  }

  auto operator<=>(const PedPair&) const = default;
};

// A full scene: pedestrians plus all provider-supplied probabilities.
// Immutable by convention once constructed; every consumer treats it
// as read-only.
struct Scene {
  std::vector<PedestrianObservation> pedestrians;
  std::optional<std::vector<double>> ego_speed;
  std::map<PedPair, std::array<double, 3>> pp_probs;
  std::map<std::string, double> pe_probs;
  std::optional<std::map<std::string, int>> ground_truth;

  bool operator==(const Scene&) const = default;
};

// Undirected scene graph: ordered pedestrian nodes, one implicit
// environment node, P-P edges and P-E edges. The environment node
// carries no intention label.
struct SceneGraph {
  std::vector<std::string> ped_nodes;
  std::set<PedPair> pp_edges;
  std::set<std::string> pe_edges;

  bool operator==(const SceneGraph&) const = default;
};

// Weights of the global energy (alpha, beta, gamma) and of the
// inference-time consistency penalties (lambda1, lambda2).
struct EnergyWeights {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double lambda1 = 0.5;
  double lambda2 = 0.3;

  // Throws std::invalid_argument unless all weights are finite,
  // non-negative, and alpha strictly positive.
  void check() const;
};

// Binary intention assignment aligned with SceneGraph::ped_nodes.
// 1 = Crossing, 0 = Not Crossing.
struct LabelConfiguration {
  std::vector<int> labels;

  auto operator<=>(const LabelConfiguration&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Collects every invariant violation in the scene; an empty report
// means the scene is valid. Pure: never mutates the input.
ValidationReport validate_scene(const Scene& scene);

// JSON (de)serialization of the on-disk scene format. from/to_json
// throw ParseError on malformed documents; load_scene additionally
// throws ValidationError when the parsed scene fails validate_scene.
Scene scene_from_json_text(const std::string& text);
std::string scene_to_json_text(const Scene& scene);
Scene load_scene(const std::string& path);
void save_scene(const Scene& scene, const std::string& path);

std::string orientation_name(Orientation o);

}  // namespace scenecrf
