#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>

#include "scenecrf/generator.hpp"
#include "scenecrf/scene.hpp"

using namespace scenecrf;

namespace {

GeneratorConfig config(std::size_t n, std::uint64_t seed, double confidence = 0.9) {
  GeneratorConfig cfg;
  cfg.n_pedestrians = n;
  cfg.rng_seed = seed;
  cfg.confidence = confidence;
  return cfg;
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
  CHECK(generate_scene(config(1, 7)) == generate_scene(config(1, 7)));
  CHECK(generate_scene(config(5, 7)) == generate_scene(config(5, 7)));
  CHECK_FALSE(generate_scene(config(5, 7)) == generate_scene(config(5, 8)));
}

TEST_CASE("generated scenes always validate") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::size_t n : {1, 2, 5, 9}) {
      Scene s = generate_scene(config(n, seed));
      ValidationReport r = validate_scene(s);
      CHECK(r.ok());
      CHECK(s.pedestrians.size() == n);
    }
  }
}

TEST_CASE("every pair and node gets a probability table") {
  Scene s = generate_scene(config(6, 3));
  CHECK(s.pp_probs.size() == 15);
  CHECK(s.pe_probs.size() == 6);
  REQUIRE(s.ground_truth.has_value());
  CHECK(s.ground_truth->size() == 6);
  for (const auto& [id, label] : *s.ground_truth) CHECK((label == 0 || label == 1));
  REQUIRE(s.ego_speed.has_value());
  CHECK(s.ego_speed->size() == 16);
  for (double v : *s.ego_speed) CHECK(v >= 0.0);
}

TEST_CASE("tracks stay inside the arena for the whole window") {
  GeneratorConfig cfg = config(4, 11);
  cfg.arena_width = 640;
  cfg.arena_height = 360;
  Scene s = generate_scene(cfg);
  for (const auto& p : s.pedestrians) {
    CHECK(p.boxes.size() == cfg.frame_count);
    for (const auto& b : p.boxes) {
      CHECK(b.x_min >= 0.0);
      CHECK(b.y_min >= 0.0);
      CHECK(b.x_max <= cfg.arena_width);
      CHECK(b.y_max <= cfg.arena_height);
      CHECK(b.x_min < b.x_max);
      CHECK(b.y_min < b.y_max);
    }
  }
}

TEST_CASE("orientation modes") {
  GeneratorConfig cfg = config(8, 2);
  cfg.orientation_mode = OrientationMode::Unknown;
  for (const auto& p : generate_scene(cfg).pedestrians)
    CHECK(p.orientation == Orientation::Unknown);

  cfg.orientation_mode = OrientationMode::Clustered;
  for (const auto& p : generate_scene(cfg).pedestrians)
    CHECK(p.orientation != Orientation::Unknown);
}

TEST_CASE("high confidence makes hard labels track the hidden truth") {
  std::size_t agree = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Scene s = generate_scene(config(5, seed, 0.95));
    for (const auto& p : s.pedestrians) {
      int hard = p.unary_prob > 0.5 ? 1 : 0;
      if (hard == s.ground_truth->at(p.id)) ++agree;
      ++total;
    }
  }
  CHECK(total == 5000);
  CHECK(agree >= total * 8 / 10);
}

TEST_CASE("pair tables are peaked on the truth's interaction state") {
  std::size_t agree = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Scene s = generate_scene(config(4, seed, 0.95));
    for (const auto& [pair, probs] : s.pp_probs) {
      int yi = s.ground_truth->at(pair.first);
      int yj = s.ground_truth->at(pair.second);
      int truth_state = yi != yj ? 0 : (yi == 0 ? 1 : 2);
      int argmax = 0;
      for (int k = 1; k < 3; ++k)
        if (probs[static_cast<std::size_t>(k)] > probs[static_cast<std::size_t>(argmax)])
          argmax = k;
      if (argmax == truth_state) ++agree;
      ++total;
    }
  }
  CHECK(agree >= total * 8 / 10);
}

TEST_CASE("probabilities stay strictly inside the open interval") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Scene s = generate_scene(config(5, seed, 0.99));
    for (const auto& p : s.pedestrians) {
      CHECK(p.unary_prob > 0.0);
      CHECK(p.unary_prob < 1.0);
    }
    for (const auto& [id, p] : s.pe_probs) {
      CHECK(p > 0.0);
      CHECK(p < 1.0);
    }
    for (const auto& [pair, probs] : s.pp_probs)
      for (double v : probs) {
        CHECK(v > 0.0);
        CHECK(v < 1.0);
      }
  }
}

TEST_CASE("pedestrian ids are unique and zero-padded") {
  Scene s = generate_scene(config(12, 1));
  std::set<std::string> ids;
  for (const auto& p : s.pedestrians) ids.insert(p.id);
  CHECK(ids.size() == 12);
  CHECK(s.pedestrians[0].id == "p000");
  CHECK(s.pedestrians[11].id == "p011");
}

TEST_CASE("config validation rejects out-of-range parameters") {
  GeneratorConfig cfg;
  CHECK_NOTHROW(cfg.check());
  cfg.n_pedestrians = 0;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  cfg = GeneratorConfig{};
  cfg.confidence = 0.5;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  cfg.confidence = 1.0;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  cfg = GeneratorConfig{};
  cfg.frame_count = 0;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  cfg = GeneratorConfig{};
  cfg.arena_width = 0.0;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
}

TEST_CASE("per-trial seed derivation spreads and repeats") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100; ++i) seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 100);
  CHECK(derive_seed(42, 5) == derive_seed(42, 5));
  CHECK(derive_seed(42, 5) != derive_seed(43, 5));
}
