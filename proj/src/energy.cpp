#include "scenecrf/energy.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace scenecrf {

PotentialTable PotentialTable::build(const Scene& scene, const SceneGraph& graph) {
  std::map<std::string, std::size_t> index;
  std::map<std::string, double> unary_by_id;
  for (const auto& ped : scene.pedestrians) unary_by_id[ped.id] = ped.unary_prob;

  PotentialTable table;
  for (std::size_t i = 0; i < graph.ped_nodes.size(); ++i) {
    const std::string& id = graph.ped_nodes[i];
    index[id] = i;
    auto it = unary_by_id.find(id);
    if (it == unary_by_id.end())
      throw MissingProbabilityError("no pedestrian observation for graph node " + id);
    table.unary.push_back(it->second);
  }

  for (const auto& id : graph.pe_edges) {
    auto it = scene.pe_probs.find(id);
    if (it == scene.pe_probs.end())
      throw MissingProbabilityError("no pe_probs entry for pedestrian " + id);
  }
  table.env.resize(graph.ped_nodes.size());
  for (std::size_t i = 0; i < graph.ped_nodes.size(); ++i)
    table.env[i] = scene.pe_probs.at(graph.ped_nodes[i]);

  for (const auto& edge : graph.pp_edges) {
    auto it = scene.pp_probs.find(edge);
    if (it == scene.pp_probs.end())
      throw MissingProbabilityError("no pp_probs entry for edge (" + edge.first + "," +
                                    edge.second + ")");
    table.pp.push_back({index.at(edge.first), index.at(edge.second), it->second});
  }
  return table;
}

EnergyBreakdown base_energy(const PotentialTable& table, const LabelConfiguration& y,
                            const EnergyWeights& w, const ProbClamp& clamp) {
  if (y.labels.size() != table.unary.size())
    throw std::invalid_argument("base_energy: label vector length " +
                                std::to_string(y.labels.size()) + " does not match node count " +
                                std::to_string(table.unary.size()));

  EnergyBreakdown out;
  for (std::size_t i = 0; i < table.unary.size(); ++i)
    out.unary_sum += unary_potential(y.labels[i], table.unary[i], clamp);
  for (const auto& e : table.pp)
    out.pp_sum += pp_potential(y.labels[e.i], y.labels[e.j], e.probs, clamp);
  for (std::size_t i = 0; i < table.env.size(); ++i)
    out.pe_sum += pe_potential(y.labels[i], table.env[i], clamp);
  out.total = w.alpha * out.unary_sum + w.beta * out.pp_sum + w.gamma * out.pe_sum;
  return out;
}

EnergyBreakdown base_energy(const Scene& scene, const SceneGraph& graph,
                            const LabelConfiguration& y, const EnergyWeights& w,
                            const ProbClamp& clamp) {
  return base_energy(PotentialTable::build(scene, graph), y, w, clamp);
}

LabelConfiguration configuration_at(std::size_t index, std::size_t n) {
  LabelConfiguration y;
  y.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    y.labels[i] = static_cast<int>((index >> (n - 1 - i)) & 1u);
  return y;
}

std::vector<std::pair<LabelConfiguration, double>> exact_distribution(
    const Scene& scene, const SceneGraph& graph, const EnergyWeights& w, const ProbClamp& clamp,
    std::size_t cap) {
  const std::size_t n = graph.ped_nodes.size();
  if (n > cap)
    throw std::invalid_argument("exact_distribution: " + std::to_string(n) +
                                " nodes exceed the enumeration cap of " + std::to_string(cap));

  const PotentialTable table = PotentialTable::build(scene, graph);
  const std::size_t count = std::size_t{1} << n;

  std::vector<double> energies(count);
  double min_energy = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < count; ++c) {
    energies[c] = base_energy(table, configuration_at(c, n), w, clamp).total;
    min_energy = std::min(min_energy, energies[c]);
  }

  double z = 0.0;
  for (std::size_t c = 0; c < count; ++c) z += std::exp(-(energies[c] - min_energy));

  std::vector<std::pair<LabelConfiguration, double>> dist;
  dist.reserve(count);
  for (std::size_t c = 0; c < count; ++c)
    dist.emplace_back(configuration_at(c, n), std::exp(-(energies[c] - min_energy)) / z);
  return dist;
}

double training_objective(const Scene& scene, const SceneGraph& graph, const EnergyWeights& w,
                          const ProbClamp& clamp) {
  if (!scene.ground_truth)
    throw ValidationError("training_objective: scene has no ground_truth labels");
  LabelConfiguration y;
  for (const auto& id : graph.ped_nodes) {
    auto it = scene.ground_truth->find(id);
    if (it == scene.ground_truth->end())
      throw ValidationError("training_objective: ground_truth missing pedestrian " + id);
    y.labels.push_back(it->second);
  }
  return base_energy(scene, graph, y, w, clamp).total;
}

}  // namespace scenecrf
