#include "scenecrf/inference.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace scenecrf {

void AnnealConfig::check() const {
  if (!(tau0 > 0.0) || !std::isfinite(tau0))
    throw std::invalid_argument("AnnealConfig: tau0 must be finite and > 0");
  if (!(cooling > 0.0 && cooling < 1.0))
    throw std::invalid_argument("AnnealConfig: cooling must lie in (0, 1)");
  if (max_iters && *max_iters < 1)
    throw std::invalid_argument("AnnealConfig: max_iters must be >= 1");
}

std::uint64_t AnnealConfig::resolve_max_iters(std::size_t n) const {
  if (max_iters) return *max_iters;
  return std::max<std::uint64_t>(64, 20 * static_cast<std::uint64_t>(n));
}

const char* method_name(InferenceMethod m) {
  return m == InferenceMethod::Exhaustive ? "exhaustive" : "ussa";
}

HardLabels hard_labels(const Scene& scene, const SceneGraph& graph) {
  const PotentialTable table = PotentialTable::build(scene, graph);

  HardLabels hard;
  for (std::size_t i = 0; i < graph.ped_nodes.size(); ++i) {
    hard.node_hard[graph.ped_nodes[i]] = table.unary[i] > 0.5 ? 1 : 0;
    hard.pe_hard[graph.ped_nodes[i]] = table.env[i] > 0.5 ? 1 : 0;
  }
  std::size_t e = 0;
  for (const auto& edge : graph.pp_edges) {
    const auto& probs = table.pp[e++].probs;
    int best_k = 0;
    for (int k = 1; k < 3; ++k) {
      if (probs[static_cast<std::size_t>(k)] > probs[static_cast<std::size_t>(best_k)]) best_k = k;
    }
    hard.pp_hard[edge] = best_k;
  }
  return hard;
}

std::pair<double, double> consistency_energy(const LabelConfiguration& y, const SceneGraph& graph,
                                             const HardLabels& hard) {
  if (y.labels.size() != graph.ped_nodes.size())
    throw std::invalid_argument("consistency_energy: label vector not aligned with graph");

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < graph.ped_nodes.size(); ++i) index[graph.ped_nodes[i]] = i;

  double e_pp = 0.0;
  for (const auto& edge : graph.pp_edges) {
    auto it = hard.pp_hard.find(edge);
    if (it == hard.pp_hard.end())
      throw MissingProbabilityError("consistency_energy: no hard label for edge (" + edge.first +
                                    "," + edge.second + ")");
    const int state = static_cast<int>(
        interaction_state(y.labels[index.at(edge.first)], y.labels[index.at(edge.second)]));
    if (state != it->second) e_pp += 1.0;
  }

  double e_pe = 0.0;
  for (std::size_t i = 0; i < graph.ped_nodes.size(); ++i) {
    auto it = hard.pe_hard.find(graph.ped_nodes[i]);
    if (it == hard.pe_hard.end())
      throw MissingProbabilityError("consistency_energy: no pe hard label for " +
                                    graph.ped_nodes[i]);
    if (y.labels[i] != it->second) e_pe += 1.0;
  }
  return {e_pp, e_pe};
}

double inference_energy(const Scene& scene, const SceneGraph& graph, const LabelConfiguration& y,
                        const EnergyWeights& w, const HardLabels& hard, const ProbClamp& clamp) {
  const EnergyBreakdown base = base_energy(scene, graph, y, w, clamp);
  const auto [e_pp, e_pe] = consistency_energy(y, graph, hard);
  return base.total + w.lambda1 * e_pp + w.lambda2 * e_pe;
}

namespace {

// Graph-indexed view of the inference energy for the solvers' inner
// loops; matches inference_energy term-for-term and in summation order.
class InferenceEvaluator {
 public:
  InferenceEvaluator(const Scene& scene, const SceneGraph& graph, const EnergyWeights& w,
                     const HardLabels& hard, const ProbClamp& clamp)
      : table_(PotentialTable::build(scene, graph)), weights_(w), clamp_(clamp) {
    pp_hard_.reserve(table_.pp.size());
    for (const auto& edge : graph.pp_edges) {
      auto it = hard.pp_hard.find(edge);
      if (it == hard.pp_hard.end())
        throw MissingProbabilityError("no hard label for edge (" + edge.first + "," + edge.second +
                                      ")");
      pp_hard_.push_back(it->second);
    }
    pe_hard_.reserve(graph.ped_nodes.size());
    for (const auto& id : graph.ped_nodes) {
      auto it = hard.pe_hard.find(id);
      if (it == hard.pe_hard.end())
        throw MissingProbabilityError("no pe hard label for " + id);
      pe_hard_.push_back(it->second);
    }
  }

  std::size_t node_count() const { return table_.unary.size(); }

  double operator()(const LabelConfiguration& y) const {
    const EnergyBreakdown base = base_energy(table_, y, weights_, clamp_);
    double e_pp = 0.0;
    for (std::size_t e = 0; e < table_.pp.size(); ++e) {
      const auto& entry = table_.pp[e];
      const int state = static_cast<int>(interaction_state(y.labels[entry.i], y.labels[entry.j]));
      if (state != pp_hard_[e]) e_pp += 1.0;
    }
    double e_pe = 0.0;
    for (std::size_t i = 0; i < pe_hard_.size(); ++i) {
      if (y.labels[i] != pe_hard_[i]) e_pe += 1.0;
    }
    return base.total + weights_.lambda1 * e_pp + weights_.lambda2 * e_pe;
  }

 private:
  PotentialTable table_;
  EnergyWeights weights_;
  ProbClamp clamp_;
  std::vector<int> pp_hard_;
  std::vector<int> pe_hard_;
};

}  // namespace

InferenceResult exhaustive_map(const Scene& scene, const SceneGraph& graph,
                               const EnergyWeights& w, const HardLabels& hard,
                               const ProbClamp& clamp, std::size_t cap) {
  const std::size_t n = graph.ped_nodes.size();
  if (n > cap)
    throw std::invalid_argument("exhaustive_map: " + std::to_string(n) +
                                " nodes exceed the enumeration cap of " + std::to_string(cap));

  const InferenceEvaluator eval(scene, graph, w, hard, clamp);
  const std::size_t count = std::size_t{1} << n;

  InferenceResult result;
  result.method = InferenceMethod::Exhaustive;
  result.energy = std::numeric_limits<double>::infinity();
  result.trace.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    LabelConfiguration y = configuration_at(c, n);
    const double energy = eval(y);
    // Strict improvement keeps the lexicographically smallest minimizer.
    if (energy < result.energy) {
      result.energy = energy;
      result.labels = std::move(y);
    }
    result.trace.push_back({c, energy, result.energy, 0.0});
  }
  result.evaluations = count;
  return result;
}

InferenceResult anneal_map(const Scene& scene, const SceneGraph& graph, const EnergyWeights& w,
                           const HardLabels& hard, const AnnealConfig& cfg, const ProbClamp& clamp,
                           const LabelConfiguration& initial) {
  cfg.check();
  const std::size_t n = graph.ped_nodes.size();
  if (n == 0) throw std::invalid_argument("anneal_map: graph has no pedestrian nodes");
  if (initial.labels.size() != n)
    throw std::invalid_argument("anneal_map: initial configuration not aligned with graph");

  const InferenceEvaluator eval(scene, graph, w, hard, clamp);
  const std::uint64_t iters = cfg.resolve_max_iters(n);

  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_int_distribution<std::size_t> pick_node(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  LabelConfiguration current = initial;
  double current_energy = eval(current);

  InferenceResult result;
  result.method = InferenceMethod::USSA;
  result.labels = current;
  result.energy = current_energy;
  result.trace.reserve(static_cast<std::size_t>(iters) + 1);
  result.trace.push_back({0, current_energy, current_energy, cfg.tau0});

  for (std::uint64_t t = 1; t <= iters; ++t) {
    const std::size_t flip = pick_node(rng);
    LabelConfiguration candidate = current;
    candidate.labels[flip] = 1 - candidate.labels[flip];
    const double candidate_energy = eval(candidate);
    const double delta = candidate_energy - current_energy;

    // Metropolis step at the pre-cooling temperature tau0*cooling^(t-1).
    bool accept = delta <= 0.0;
    if (!accept) {
      const double tau = cfg.tau0 * std::pow(cfg.cooling, static_cast<double>(t - 1));
      accept = unit(rng) < std::exp(-delta / tau);
    }
    if (accept) {
      current = candidate;
      current_energy = candidate_energy;
    }
    if (candidate_energy < result.energy) {
      result.energy = candidate_energy;
      result.labels = std::move(candidate);
    }
    result.trace.push_back({static_cast<std::size_t>(t), candidate_energy, result.energy,
                            cfg.tau0 * std::pow(cfg.cooling, static_cast<double>(t))});
  }
  result.evaluations = static_cast<std::size_t>(iters) + 1;
  return result;
}

InferenceResult ussa_map(const Scene& scene, const SceneGraph& graph, const EnergyWeights& w,
                         const HardLabels& hard, const AnnealConfig& cfg, const ProbClamp& clamp) {
  LabelConfiguration seed;
  for (const auto& id : graph.ped_nodes) {
    auto it = hard.node_hard.find(id);
    if (it == hard.node_hard.end())
      throw MissingProbabilityError("ussa_map: no unary hard label for " + id);
    seed.labels.push_back(it->second);
  }
  return anneal_map(scene, graph, w, hard, cfg, clamp, seed);
}

InferenceResult infer(const Scene& scene, const SceneGraph& graph, const EnergyWeights& w,
                      const AnnealConfig& cfg, const ProbClamp& clamp) {
  cfg.check();
  const HardLabels hard = hard_labels(scene, graph);
  if (graph.ped_nodes.size() <= cfg.exhaustive_threshold)
    return exhaustive_map(scene, graph, w, hard, clamp);
  return ussa_map(scene, graph, w, hard, cfg, clamp);
}

}  // namespace scenecrf
