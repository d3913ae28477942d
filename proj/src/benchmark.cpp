#include "scenecrf/benchmark.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "scenecrf/format.hpp"

namespace scenecrf {

namespace {

constexpr double kMatchTolerance = 1e-9;

std::string scene_id_for(std::size_t trial) {
  std::string digits = std::to_string(trial);
  while (digits.size() < 4) digits.insert(digits.begin(), '0');
  return "scene-" + digits;
}

}  // namespace

std::size_t evaluations_to_best(const InferenceResult& result) {
  for (const auto& entry : result.trace) {
    if (entry.best_energy == result.energy) return entry.evaluation_index;
  }
  return result.trace.empty() ? 0 : result.trace.back().evaluation_index;
}

BenchmarkReport run_benchmark(const GeneratorConfig& gen, std::size_t trials,
                              const EnergyWeights& w, const AnnealConfig& anneal,
                              const GraphConfig& graph_cfg, const ProbClamp& clamp) {
  gen.check();
  w.check();
  anneal.check();
  if (gen.n_pedestrians > kDefaultEnumerationCap)
    throw std::invalid_argument("run_benchmark: n_pedestrians exceeds the exact-enumeration cap");

  BenchmarkReport report;
  report.scenes = trials;

  std::size_t matches = 0;
  double evals_sum = 0.0;
  double gap_sum = 0.0;

  for (std::size_t trial = 0; trial < trials; ++trial) {
    GeneratorConfig trial_gen = gen;
    trial_gen.rng_seed = derive_seed(gen.rng_seed, trial);
    const Scene scene = generate_scene(trial_gen);
    const SceneGraph graph = build_graph(scene, graph_cfg);
    const HardLabels hard = hard_labels(scene, graph);

    const InferenceResult exact = exhaustive_map(scene, graph, w, hard, clamp);

    AnnealConfig trial_anneal = anneal;
    trial_anneal.rng_seed = derive_seed(anneal.rng_seed, trial);
    const InferenceResult ussa = ussa_map(scene, graph, w, hard, trial_anneal, clamp);

    if (std::abs(ussa.energy - exact.energy) <= kMatchTolerance) ++matches;
    evals_sum += static_cast<double>(evaluations_to_best(ussa));
    gap_sum += ussa.energy - exact.energy;

    report.per_scene.push_back({scene_id_for(trial), graph.ped_nodes.size(),
                                method_name(ussa.method), exact.energy, ussa.energy,
                                ussa.evaluations});
  }

  if (trials > 0) {
    report.optimal_match_rate = static_cast<double>(matches) / static_cast<double>(trials);
    report.mean_evaluations_to_best = evals_sum / static_cast<double>(trials);
    report.mean_energy_gap = gap_sum / static_cast<double>(trials);
  }
  return report;
}

std::string report_to_json_text(const BenchmarkReport& report) {
  nlohmann::ordered_json doc;
  doc["scenes"] = report.scenes;
  doc["optimal_match_rate"] = report.optimal_match_rate;
  doc["mean_evaluations_to_best"] = report.mean_evaluations_to_best;
  doc["mean_energy_gap"] = report.mean_energy_gap;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.per_scene) {
    nlohmann::ordered_json jr;
    jr["scene_id"] = row.scene_id;
    jr["n"] = row.n;
    jr["method"] = row.method;
    jr["e_exact"] = row.e_exact;
    jr["e_ussa"] = row.e_ussa;
    jr["evaluations"] = row.evaluations;
    rows.push_back(std::move(jr));
  }
  doc["per_scene"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void emit_trace(const InferenceResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_trace: cannot open " + path);
  out << "evaluation,candidate_energy,best_energy,temperature\n";
  for (const auto& entry : result.trace) {
    out << entry.evaluation_index << ',' << format_double(entry.candidate_energy) << ','
        << format_double(entry.best_energy) << ',' << format_double(entry.temperature) << '\n';
  }
  if (!out) throw std::runtime_error("emit_trace: failed writing " + path);
}

}  // namespace scenecrf
