#pragma once

#include <cstdint>

#include "scenecrf/scene.hpp"

namespace scenecrf {

enum class OrientationMode { Clustered, Unknown };

struct GeneratorConfig {
  std::size_t n_pedestrians = 5;
  std::uint64_t rng_seed = 0;
  double confidence = 0.9;  // how peaked the generated probabilities are
  std::size_t frame_count = 16;
  double arena_width = 1920.0;
  double arena_height = 1080.0;
  OrientationMode orientation_mode = OrientationMode::Clustered;

  void check() const;
};

// Synthesizes a valid scene: random box tracks inside the arena, a
// hidden ground-truth intention per pedestrian, and probabilities
// sampled to agree with that truth with probability `confidence` per
// node/edge. P-P tables cover every pair and are peaked on the truth's
// interaction state. Deterministic given rng_seed.
Scene generate_scene(const GeneratorConfig& cfg);

// Per-trial seed derivation so benchmark trials stay independent and
// reproducible. splitmix64 over (master, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace scenecrf
