#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "scenecrf/graph.hpp"
#include "scenecrf/potentials.hpp"
#include "scenecrf/scene.hpp"

namespace testutil {

using namespace scenecrf;

// Pedestrian with `frames` copies of a 10x10 box centered at (cx, cy).
inline PedestrianObservation ped_at(const std::string& id, double cx, double cy, Orientation o,
                                    double p, std::size_t frames = 1) {
  PedestrianObservation obs;
  obs.id = id;
  obs.boxes.assign(frames, BoundingBox{cx - 5.0, cy - 5.0, cx + 5.0, cy + 5.0});
  obs.orientation = o;
  obs.unary_prob = p;
  return obs;
}

inline void set_pp(Scene& s, const std::string& a, const std::string& b, double k0, double k1,
                   double k2) {
  s.pp_probs[PedPair(a, b)] = {k0, k1, k2};
}

// n pedestrians in a row, `spacing` px apart, uniform probabilities
// everywhere (p = 0.5, pp = (1/3,1/3,1/3) on all pairs, pe = 0.5).
inline Scene uniform_scene(std::size_t n, double spacing = 30.0,
                           Orientation o = Orientation::Left) {
  Scene s;
  for (std::size_t i = 0; i < n; ++i) {
    std::string id = "p" + std::to_string(i);
    s.pedestrians.push_back(ped_at(id, spacing * static_cast<double>(i), 0.0, o, 0.5));
    s.pe_probs[id] = 0.5;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      set_pp(s, s.pedestrians[i].id, s.pedestrians[j].id, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
  return s;
}

struct NaiveResult {
  std::vector<int> labels;
  double energy = 0.0;
};

// Independent brute-force minimizer of the inference energy, built only
// on the potential functions and the raw scene tables. Re-derives hard
// labels from the probabilities, decodes configurations by division
// rather than bit shifts, and keeps the first (lexicographically
// smallest) strict minimum.
inline NaiveResult naive_map(const Scene& scene, const SceneGraph& graph, const EnergyWeights& w,
                             double eps = 1e-7) {
  const ProbClamp clamp(eps);
  const std::size_t n = graph.ped_nodes.size();

  std::vector<double> p_node(n), p_env(n);
  std::vector<int> hard_node(n), hard_env(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& id = graph.ped_nodes[i];
    for (const auto& ped : scene.pedestrians)
      if (ped.id == id) p_node[i] = ped.unary_prob;
    p_env[i] = scene.pe_probs.at(id);
    hard_node[i] = p_node[i] > 0.5 ? 1 : 0;
    hard_env[i] = p_env[i] > 0.5 ? 1 : 0;
  }

  struct Edge {
    std::size_t i, j;
    std::array<double, 3> probs;
    int hard;
  };
  std::vector<Edge> edges;
  for (const auto& pair : graph.pp_edges) {
    Edge e;
    e.i = e.j = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (graph.ped_nodes[k] == pair.first) e.i = k;
      if (graph.ped_nodes[k] == pair.second) e.j = k;
    }
    e.probs = scene.pp_probs.at(pair);
    e.hard = 0;
    for (int k = 1; k < 3; ++k)
      if (e.probs[static_cast<std::size_t>(k)] > e.probs[static_cast<std::size_t>(e.hard)])
        e.hard = k;
    edges.push_back(e);
  }

  NaiveResult best;
  bool have_best = false;
  const std::size_t total = static_cast<std::size_t>(1) << n;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<int> y(n);
    std::size_t rem = idx;
    for (std::size_t i = n; i-- > 0;) {
      y[i] = static_cast<int>(rem % 2);
      rem /= 2;
    }

    double unary = 0.0, pp = 0.0, pe = 0.0, e_pp = 0.0, e_pe = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      unary += unary_potential(y[i], p_node[i], clamp);
      pe += pe_potential(y[i], p_env[i], clamp);
      if (y[i] != hard_env[i]) e_pe += 1.0;
    }
    for (const auto& e : edges) {
      pp += pp_potential(y[e.i], y[e.j], e.probs, clamp);
      if (static_cast<int>(interaction_state(y[e.i], y[e.j])) != e.hard) e_pp += 1.0;
    }
    const double energy =
        w.alpha * unary + w.beta * pp + w.gamma * pe + w.lambda1 * e_pp + w.lambda2 * e_pe;
    if (!have_best || energy < best.energy) {
      best.labels = y;
      best.energy = energy;
      have_best = true;
    }
  }
  return best;
}

}  // namespace testutil
