#pragma once

#include <cstdint>
#include <optional>

#include "scenecrf/energy.hpp"

namespace scenecrf {

// Discrete predictions thresholded from the supplied probabilities:
// nodes and P-E edges by p > 0.5, P-P edges by argmax (ties to the
// smallest state).
struct HardLabels {
  std::map<std::string, int> node_hard;
  std::map<PedPair, int> pp_hard;
  std::map<std::string, int> pe_hard;
};

struct AnnealConfig {
  double tau0 = 1.0;
  double cooling = 0.95;
  // Total proposal count; when unset it resolves to max(64, 20*n).
  std::optional<std::uint64_t> max_iters;
  std::uint64_t rng_seed = 0;
  std::size_t exhaustive_threshold = 3;

  void check() const;
  std::uint64_t resolve_max_iters(std::size_t n) const;
};

enum class InferenceMethod { Exhaustive, USSA };

struct TraceEntry {
  std::size_t evaluation_index = 0;
  double candidate_energy = 0.0;
  double best_energy = 0.0;
  double temperature = 0.0;
};

struct InferenceResult {
  LabelConfiguration labels;
  double energy = 0.0;
  std::vector<TraceEntry> trace;
  std::size_t evaluations = 0;
  InferenceMethod method = InferenceMethod::Exhaustive;
};

const char* method_name(InferenceMethod m);

HardLabels hard_labels(const Scene& scene, const SceneGraph& graph);

// Counts of hard-label disagreements (E_pp, E_pe): P-P edges where the
// pair state differs from the edge's hard state, and nodes whose label
// differs from the P-E hard label.
std::pair<double, double> consistency_energy(const LabelConfiguration& y, const SceneGraph& graph,
                                             const HardLabels& hard);

// E_infer = base total + lambda1*E_pp + lambda2*E_pe.
double inference_energy(const Scene& scene, const SceneGraph& graph, const LabelConfiguration& y,
                        const EnergyWeights& w, const HardLabels& hard, const ProbClamp& clamp);

// Global minimizer of the inference energy over all 2^n configurations,
// ties broken by the lexicographically smallest label vector. The trace
// records every evaluation in enumeration order (temperature column 0).
InferenceResult exhaustive_map(const Scene& scene, const SceneGraph& graph,
                               const EnergyWeights& w, const HardLabels& hard,
                               const ProbClamp& clamp, std::size_t cap = kDefaultEnumerationCap);

// Simulated annealing from an explicit initial configuration:
// single-label-flip proposals, Metropolis acceptance, geometric cooling
// once per proposal. Returns the best configuration ever evaluated,
// seed included. Deterministic given cfg.rng_seed.
InferenceResult anneal_map(const Scene& scene, const SceneGraph& graph, const EnergyWeights& w,
                           const HardLabels& hard, const AnnealConfig& cfg, const ProbClamp& clamp,
                           const LabelConfiguration& initial);

// Unary-seeded annealing: anneal_map started from the thresholded
// unary predictions, so the result never falls behind the seed.
InferenceResult ussa_map(const Scene& scene, const SceneGraph& graph, const EnergyWeights& w,
                         const HardLabels& hard, const AnnealConfig& cfg, const ProbClamp& clamp);

// Dispatch: exhaustive search for n <= cfg.exhaustive_threshold,
// unary-seeded annealing otherwise.
InferenceResult infer(const Scene& scene, const SceneGraph& graph, const EnergyWeights& w,
                      const AnnealConfig& cfg, const ProbClamp& clamp);

}  // namespace scenecrf
