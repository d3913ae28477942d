#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "scenecrf/potentials.hpp"
#include "scenecrf/scene.hpp"

namespace scenecrf {

// Probabilities of a scene re-indexed against a graph: one unary and
// one environment probability per pedestrian node, one 3-vector per
// P-P edge. Built once so repeated energy evaluations over the same
// scene avoid map lookups.
struct PotentialTable {
  std::vector<double> unary;  // p_i, in ped_nodes order
  std::vector<double> env;    // p_ie, in ped_nodes order
  struct PPEntry {
    std::size_t i = 0;
    std::size_t j = 0;
    std::array<double, 3> probs{};
  };
  std::vector<PPEntry> pp;  // in pp_edges iteration order

  // Throws MissingProbabilityError naming the node/edge when any graph
  // element lacks a probability entry.
  static PotentialTable build(const Scene& scene, const SceneGraph& graph);
};

struct EnergyBreakdown {
  double unary_sum = 0.0;
  double pp_sum = 0.0;
  double pe_sum = 0.0;
  double total = 0.0;
};

// Weighted global energy alpha*unary + beta*pp + gamma*pe at a label
// configuration.
EnergyBreakdown base_energy(const PotentialTable& table, const LabelConfiguration& y,
                            const EnergyWeights& w, const ProbClamp& clamp);
EnergyBreakdown base_energy(const Scene& scene, const SceneGraph& graph,
                            const LabelConfiguration& y, const EnergyWeights& w,
                            const ProbClamp& clamp);

constexpr std::size_t kDefaultEnumerationCap = 20;

// Full Gibbs distribution P(y) = exp(-E(y)) / Z over all 2^n
// configurations, normalized with a shift by the minimum energy so Z
// stays representable. Entries are in lexicographic label order.
// Throws std::invalid_argument when n exceeds the cap.
std::vector<std::pair<LabelConfiguration, double>> exact_distribution(
    const Scene& scene, const SceneGraph& graph, const EnergyWeights& w, const ProbClamp& clamp,
    std::size_t cap = kDefaultEnumerationCap);

// Data term of the training objective: the base energy evaluated at
// the ground-truth configuration. Throws ValidationError when ground
// truth is absent or incomplete.
double training_objective(const Scene& scene, const SceneGraph& graph, const EnergyWeights& w,
                          const ProbClamp& clamp);

// Lexicographic enumeration helper shared by the exact solvers:
// configuration `index` maps to the label vector whose leading node
// carries the most significant bit.
LabelConfiguration configuration_at(std::size_t index, std::size_t n);

}  // namespace scenecrf
