#pragma once

#include <string>

#include "scenecrf/generator.hpp"
#include "scenecrf/graph.hpp"
#include "scenecrf/inference.hpp"

namespace scenecrf {

struct BenchmarkReport {
  struct PerScene {
    std::string scene_id;
    std::size_t n = 0;
    std::string method;
    double e_exact = 0.0;
    double e_ussa = 0.0;
    std::size_t evaluations = 0;
  };

  std::size_t scenes = 0;
  double optimal_match_rate = 0.0;
  double mean_evaluations_to_best = 0.0;
  double mean_energy_gap = 0.0;
  std::vector<PerScene> per_scene;
};

// Index of the evaluation where the result's best energy was first
// reached (the seed counts as evaluation 0).
std::size_t evaluations_to_best(const InferenceResult& result);

// Per trial: generate a scene, build its graph, solve with both the
// exhaustive oracle and unary-seeded annealing on the identical
// inference energy, and aggregate. Per-trial seeds are derived from the
// config seeds and the trial index, so the report is deterministic.
BenchmarkReport run_benchmark(const GeneratorConfig& gen, std::size_t trials,
                              const EnergyWeights& w, const AnnealConfig& anneal,
                              const GraphConfig& graph_cfg,
                              const ProbClamp& clamp = ProbClamp());

// Report serialized as JSON with snake_case keys; stable across runs
// with identical seeds.
std::string report_to_json_text(const BenchmarkReport& report);

// Writes the trace as CSV: header
// `evaluation,candidate_energy,best_energy,temperature`, one row per
// entry. Re-emitting the same result is byte-identical.
void emit_trace(const InferenceResult& result, const std::string& path);

}  // namespace scenecrf
