#include "scenecrf/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "scenecrf/potentials.hpp"

namespace scenecrf {

void GeneratorConfig::check() const {
  if (n_pedestrians < 1) throw std::invalid_argument("GeneratorConfig: n_pedestrians must be >= 1");
  if (!(confidence > 0.5 && confidence < 1.0))
    throw std::invalid_argument("GeneratorConfig: confidence must lie in (0.5, 1)");
  if (frame_count < 1) throw std::invalid_argument("GeneratorConfig: frame_count must be >= 1");
  if (!(arena_width > 0.0) || !(arena_height > 0.0))
    throw std::invalid_argument("GeneratorConfig: arena dimensions must be positive");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

constexpr double kProbMargin = 1e-3;

// Uniform draw from the half of [0,1] matching the target label,
// kept away from 0, 0.5 and 1 so thresholding is unambiguous.
double sample_side(std::mt19937_64& rng, int target) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  const double span = 0.5 - 2.0 * kProbMargin;
  if (target == 1) return 0.5 + kProbMargin + u * span;
  return kProbMargin + u * span;
}

std::string ped_id(std::size_t i) {
  std::string digits = std::to_string(i);
  while (digits.size() < 3) digits.insert(digits.begin(), '0');
  return "p" + digits;
}

}  // namespace

Scene generate_scene(const GeneratorConfig& cfg) {
  cfg.check();
  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Scene scene;
  std::map<std::string, int> truth;

  const double max_w = std::min(80.0, cfg.arena_width / 2.0);
  const double max_h = std::min(160.0, cfg.arena_height / 2.0);
  std::uniform_real_distribution<double> box_w(std::min(20.0, max_w / 2.0), max_w);
  std::uniform_real_distribution<double> box_h(std::min(40.0, max_h / 2.0), max_h);
  std::uniform_real_distribution<double> drift(-2.0, 2.0);

  for (std::size_t i = 0; i < cfg.n_pedestrians; ++i) {
    PedestrianObservation ped;
    ped.id = ped_id(i);
    truth[ped.id] = unit(rng) < 0.5 ? 1 : 0;

    const double w = box_w(rng);
    const double h = box_h(rng);
    double cx = w / 2.0 + unit(rng) * (cfg.arena_width - w);
    double cy = h / 2.0 + unit(rng) * (cfg.arena_height - h);
    for (std::size_t t = 0; t < cfg.frame_count; ++t) {
      if (t > 0) {
        cx = std::clamp(cx + drift(rng), w / 2.0, cfg.arena_width - w / 2.0);
        cy = std::clamp(cy + drift(rng), h / 2.0, cfg.arena_height - h / 2.0);
      }
      ped.boxes.push_back({cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0});
    }

    if (cfg.orientation_mode == OrientationMode::Unknown) {
      ped.orientation = Orientation::Unknown;
    } else {
      ped.orientation = unit(rng) < 0.5 ? Orientation::Left : Orientation::Right;
    }

    const bool agree = unit(rng) < cfg.confidence;
    const int target = agree ? truth[ped.id] : 1 - truth[ped.id];
    ped.unary_prob = sample_side(rng, target);

    scene.pedestrians.push_back(std::move(ped));
  }

  // P-P tables for every pair; graph construction ignores the unused ones.
  for (std::size_t i = 0; i < cfg.n_pedestrians; ++i) {
    for (std::size_t j = i + 1; j < cfg.n_pedestrians; ++j) {
      const std::string& a = scene.pedestrians[i].id;
      const std::string& b = scene.pedestrians[j].id;
      const int truth_state = static_cast<int>(interaction_state(truth[a], truth[b]));
      const bool agree = unit(rng) < cfg.confidence;
      int peak = truth_state;
      if (!agree) {
        // Pick uniformly between the two wrong states.
        const int other = unit(rng) < 0.5 ? 0 : 1;
        peak = (truth_state + 1 + other) % 3;
      }
      const double top = 0.5 + kProbMargin + unit(rng) * (0.5 - 2.0 * kProbMargin);
      const double split = kProbMargin + unit(rng) * (1.0 - 2.0 * kProbMargin);
      std::array<double, 3> probs{};
      probs[static_cast<std::size_t>(peak)] = top;
      std::size_t slot = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        if (static_cast<int>(k) == peak) continue;
        probs[k] = (slot++ == 0) ? (1.0 - top) * split : (1.0 - top) * (1.0 - split);
      }
      scene.pp_probs[PedPair(a, b)] = probs;
    }
  }

  for (const auto& ped : scene.pedestrians) {
    const bool agree = unit(rng) < cfg.confidence;
    const int target = agree ? truth.at(ped.id) : 1 - truth.at(ped.id);
    scene.pe_probs[ped.id] = sample_side(rng, target);
  }

  std::vector<double> speeds;
  double speed = unit(rng) * 15.0;
  for (std::size_t t = 0; t < cfg.frame_count; ++t) {
    speed = std::max(0.0, speed + (unit(rng) - 0.5));
    speeds.push_back(speed);
  }
  scene.ego_speed = std::move(speeds);

  scene.ground_truth = std::move(truth);
  return scene;
}

}  // namespace scenecrf
