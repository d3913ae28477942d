#include "scenecrf/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "scenecrf/benchmark.hpp"
#include "scenecrf/format.hpp"
#include "scenecrf/generator.hpp"
#include "scenecrf/graph.hpp"
#include "scenecrf/inference.hpp"
#include "scenecrf/scene.hpp"

namespace scenecrf {

namespace {

struct PresetWeights {
  double alpha;
  double beta;
  double gamma;
};

const std::map<std::string, PresetWeights>& presets() {
  static const std::map<std::string, PresetWeights> table = {
      {"jaad-train", {5.0, 0.5, 2.5}},
      {"jaad-infer", {5.3, 0.7, 2.5}},
      {"pie-train", {2.0, 1.5, 1.0}},
      {"pie-infer", {2.5, 1.6, 1.2}},
  };
  return table;
}

// Flags shared by the scene-consuming subcommands. Explicit weight flags
// take precedence over the preset.
struct CommonOpts {
  std::string preset = "jaad-infer";
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double lambda1 = 0.5;
  double lambda2 = 0.3;
  double delta_d = 50.0;
  double log_eps = 1e-7;
  double tau0 = 1.0;
  double cooling = 0.95;
  std::uint64_t max_iters = 0;
  std::uint64_t seed = 0;
  std::size_t exhaustive_threshold = 3;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* max_iters_opt = nullptr;

  void attach(CLI::App& cmd) {
    cmd.add_option("--preset", preset, "Weight preset (default jaad-infer)")
        ->check(CLI::IsMember({"jaad-train", "jaad-infer", "pie-train", "pie-infer"}));
    alpha_opt = cmd.add_option("--alpha", alpha, "Unary weight (overrides the preset)");
    beta_opt = cmd.add_option("--beta", beta, "Pairwise weight (overrides the preset)");
    gamma_opt = cmd.add_option("--gamma", gamma, "Environment weight (overrides the preset)");
    cmd.add_option("--lambda1", lambda1, "Pairwise consistency weight (default 0.5)");
    cmd.add_option("--lambda2", lambda2, "Environment consistency weight (default 0.3)");
    cmd.add_option("--delta-d", delta_d, "Proximity threshold in pixels (default 50)");
    cmd.add_option("--log-eps", log_eps, "Probability clamp epsilon (default 1e-7)");
    cmd.add_option("--tau0", tau0, "Initial annealing temperature (default 1.0)");
    cmd.add_option("--cooling", cooling, "Geometric cooling rate (default 0.95)");
    max_iters_opt =
        cmd.add_option("--max-iters", max_iters, "Annealing proposals (default max(64, 20n))");
    cmd.add_option("--seed", seed, "Annealing RNG seed (default 0)");
    cmd.add_option("--exhaustive-threshold", exhaustive_threshold,
                   "Enumerate exactly when the scene has at most this many pedestrians");
  }

  EnergyWeights weights() const {
    const PresetWeights& p = presets().at(preset);
    EnergyWeights w;
    w.alpha = alpha_opt->count() > 0 ? alpha : p.alpha;
    w.beta = beta_opt->count() > 0 ? beta : p.beta;
    w.gamma = gamma_opt->count() > 0 ? gamma : p.gamma;
    w.lambda1 = lambda1;
    w.lambda2 = lambda2;
    w.check();
    return w;
  }

  AnnealConfig anneal() const {
    AnnealConfig cfg;
    cfg.tau0 = tau0;
    cfg.cooling = cooling;
    if (max_iters_opt->count() > 0) cfg.max_iters = max_iters;
    cfg.rng_seed = seed;
    cfg.exhaustive_threshold = exhaustive_threshold;
    cfg.check();
    return cfg;
  }

  GraphConfig graph() const {
    GraphConfig cfg;
    cfg.delta_d = delta_d;
    cfg.check();
    return cfg;
  }

  ProbClamp clamp() const { return ProbClamp(log_eps); }
};

struct ResolvedOpts {
  EnergyWeights w;
  AnnealConfig anneal;
  GraphConfig graph;
  ProbClamp clamp;
};

ResolvedOpts resolve(const CommonOpts& opts) {
  return ResolvedOpts{opts.weights(), opts.anneal(), opts.graph(), opts.clamp()};
}

// Generator flags. `bench` renames the seed flag so it does not collide
// with the annealing seed.
struct GenOpts {
  std::size_t n = 5;
  std::uint64_t seed = 0;
  double confidence = 0.9;
  std::size_t frames = 16;
  double arena_width = 1920.0;
  double arena_height = 1080.0;
  std::string orientation = "clustered";

  void attach(CLI::App& cmd, const std::string& seed_flag) {
    cmd.add_option("--n", n, "Pedestrian count (default 5)");
    cmd.add_option(seed_flag, seed, "Generator RNG seed (default 0)");
    cmd.add_option("--confidence", confidence,
                   "Probability a sampled signal agrees with the hidden truth (default 0.9)");
    cmd.add_option("--frames", frames, "Frames per track (default 16)");
    cmd.add_option("--arena-width", arena_width, "Scene width in pixels (default 1920)");
    cmd.add_option("--arena-height", arena_height, "Scene height in pixels (default 1080)");
    cmd.add_option("--orientation-mode", orientation, "clustered or unknown")
        ->check(CLI::IsMember({"clustered", "unknown"}));
  }

  GeneratorConfig config() const {
    GeneratorConfig cfg;
    cfg.n_pedestrians = n;
    cfg.rng_seed = seed;
    cfg.confidence = confidence;
    cfg.frame_count = frames;
    cfg.arena_width = arena_width;
    cfg.arena_height = arena_height;
    cfg.orientation_mode =
        orientation == "unknown" ? OrientationMode::Unknown : OrientationMode::Clustered;
    cfg.check();
    return cfg;
  }
};

void warn_unused_pp(const Scene& scene, const SceneGraph& graph) {
  std::size_t unused = 0;
  for (const auto& [pair, probs] : scene.pp_probs) {
    (void)probs;
    if (graph.pp_edges.find(pair) == graph.pp_edges.end()) ++unused;
  }
  if (unused == 1) {
    std::cerr << "warning: 1 pp_probs entry is not used by the graph\n";
  } else if (unused > 1) {
    std::cerr << "warning: " << unused << " pp_probs entries are not used by the graph\n";
  }
}

void print_labels(const SceneGraph& graph, const LabelConfiguration& y, std::ostream& out) {
  for (std::size_t i = 0; i < graph.ped_nodes.size(); ++i) {
    out << graph.ped_nodes[i] << " -> " << (y.labels[i] == 1 ? "C" : "NC") << "\n";
  }
}

void print_energy(const Scene& scene, const SceneGraph& graph, const InferenceResult& result,
                  const ResolvedOpts& r, std::ostream& out) {
  EnergyBreakdown base = base_energy(scene, graph, result.labels, r.w, r.clamp);
  HardLabels hard = hard_labels(scene, graph);
  auto [e_pp, e_pe] = consistency_energy(result.labels, graph, hard);
  out << "base energy: unary=" << format_double(base.unary_sum)
      << " pp=" << format_double(base.pp_sum) << " pe=" << format_double(base.pe_sum)
      << " total=" << format_double(base.total) << "\n";
  out << "consistency: pp=" << format_double(e_pp) << " pe=" << format_double(e_pe) << "\n";
  out << "inference energy: " << format_double(result.energy) << "\n";
  out << "method: " << method_name(result.method) << "\n";
  out << "evaluations: " << result.evaluations << "\n";
}

int run_infer(const std::string& path, const ResolvedOpts& r) {
  Scene scene = load_scene(path);
  SceneGraph graph = build_graph(scene, r.graph);
  warn_unused_pp(scene, graph);
  InferenceResult result = infer(scene, graph, r.w, r.anneal, r.clamp);
  print_labels(graph, result.labels, std::cout);
  print_energy(scene, graph, result, r, std::cout);
  return 0;
}

// --distribution is capped well below the general enumeration limit:
// the table itself has 2^n rows and is only readable for small n.
constexpr std::size_t kDistributionCap = 12;

int run_exact(const std::string& path, bool want_distribution, const ResolvedOpts& r) {
  Scene scene = load_scene(path);
  SceneGraph graph = build_graph(scene, r.graph);
  warn_unused_pp(scene, graph);
  HardLabels hard = hard_labels(scene, graph);
  InferenceResult result = exhaustive_map(scene, graph, r.w, hard, r.clamp);
  print_labels(graph, result.labels, std::cout);
  print_energy(scene, graph, result, r, std::cout);
  if (want_distribution) {
    auto dist = exact_distribution(scene, graph, r.w, r.clamp, kDistributionCap);
    for (const auto& [cfg, prob] : dist) {
      std::cout << "y=";
      for (int label : cfg.labels) std::cout << label;
      std::cout << " P=" << format_double(prob) << "\n";
    }
  }
  return 0;
}

int run_generate(const GeneratorConfig& cfg, const std::string& out_path) {
  Scene scene = generate_scene(cfg);
  save_scene(scene, out_path);
  std::cout << "wrote " << out_path << " (n=" << cfg.n_pedestrians << ")\n";
  return 0;
}

int run_bench(const GeneratorConfig& gen, std::size_t trials, const ResolvedOpts& r,
              const std::string& out_path) {
  BenchmarkReport report = run_benchmark(gen, trials, r.w, r.anneal, r.graph, r.clamp);
  std::string text = report_to_json_text(report);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + out_path);
  std::cout << "scenes: " << report.scenes << "\n";
  std::cout << "optimal match rate: " << format_double(report.optimal_match_rate) << "\n";
  std::cout << "mean evaluations to best: " << format_double(report.mean_evaluations_to_best)
            << "\n";
  std::cout << "mean energy gap: " << format_double(report.mean_energy_gap) << "\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_trace(const std::string& path, const ResolvedOpts& r, const std::string& out_path) {
  Scene scene = load_scene(path);
  SceneGraph graph = build_graph(scene, r.graph);
  warn_unused_pp(scene, graph);
  HardLabels hard = hard_labels(scene, graph);
  InferenceResult result = ussa_map(scene, graph, r.w, hard, r.anneal, r.clamp);
  emit_trace(result, out_path);
  print_labels(graph, result.labels, std::cout);
  print_energy(scene, graph, result, r, std::cout);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int usage_fail(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return 1;
}

int data_fail(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return 2;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"Multi-pedestrian crossing-intention inference over scene graphs", "scenecrf"};
  app.require_subcommand(1);

  auto* infer_cmd = app.add_subcommand("infer", "Run MAP inference on a scene file");
  std::string infer_path;
  infer_cmd->add_option("scene", infer_path, "Scene JSON file")->required();
  CommonOpts infer_opts;
  infer_opts.attach(*infer_cmd);

  auto* exact_cmd =
      app.add_subcommand("exact", "Exhaustive MAP, optionally with the full Gibbs table");
  std::string exact_path;
  bool want_distribution = false;
  exact_cmd->add_option("scene", exact_path, "Scene JSON file")->required();
  exact_cmd->add_flag("--distribution", want_distribution,
                      "Print the full Gibbs distribution (up to 12 pedestrians)");
  CommonOpts exact_opts;
  exact_opts.attach(*exact_cmd);

  auto* gen_cmd = app.add_subcommand("generate", "Sample a synthetic scene and write it as JSON");
  GenOpts gen_opts;
  gen_opts.attach(*gen_cmd, "--seed");
  std::string gen_out = "scene.json";
  gen_cmd->add_option("-o,--output", gen_out, "Output path (default scene.json)");

  auto* bench_cmd = app.add_subcommand(
      "bench", "Compare annealing against exhaustive search on synthetic scenes");
  std::size_t trials = 100;
  bench_cmd->add_option("--trials", trials, "Number of synthetic scenes (default 100)");
  GenOpts bench_gen;
  bench_gen.attach(*bench_cmd, "--gen-seed");
  CommonOpts bench_opts;
  bench_opts.attach(*bench_cmd);
  std::string bench_out = "report.json";
  bench_cmd->add_option("-o,--output", bench_out, "Report path (default report.json)");

  auto* trace_cmd =
      app.add_subcommand("trace", "Run the annealer and write its evaluation trace as CSV");
  std::string trace_path;
  trace_cmd->add_option("scene", trace_path, "Scene JSON file")->required();
  CommonOpts trace_opts;
  trace_opts.attach(*trace_cmd);
  std::string trace_out = "trace.csv";
  trace_cmd->add_option("-o,--output", trace_out, "Trace path (default trace.csv)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*gen_cmd) {
    GeneratorConfig cfg;
    try {
      cfg = gen_opts.config();
    } catch (const std::exception& e) {
      return usage_fail(e);
    }
    try {
      return run_generate(cfg, gen_out);
    } catch (const std::exception& e) {
      return data_fail(e);
    }
  }

  if (*bench_cmd) {
    GeneratorConfig cfg;
    ResolvedOpts r;
    try {
      cfg = bench_gen.config();
      r = resolve(bench_opts);
    } catch (const std::exception& e) {
      return usage_fail(e);
    }
    try {
      return run_bench(cfg, trials, r, bench_out);
    } catch (const std::exception& e) {
      return data_fail(e);
    }
  }

  const CommonOpts* opts = nullptr;
  const std::string* scene_path = nullptr;
  if (*infer_cmd) {
    opts = &infer_opts;
    scene_path = &infer_path;
  } else if (*exact_cmd) {
    opts = &exact_opts;
    scene_path = &exact_path;
  } else {
    opts = &trace_opts;
    scene_path = &trace_path;
  }

  ResolvedOpts r;
  try {
    r = resolve(*opts);
  } catch (const std::exception& e) {
    return usage_fail(e);
  }

  try {
    if (*infer_cmd) return run_infer(*scene_path, r);
    if (*exact_cmd) return run_exact(*scene_path, want_distribution, r);
    return run_trace(*scene_path, r, trace_out);
  } catch (const std::exception& e) {
    return data_fail(e);
  }
}

}  // namespace scenecrf
