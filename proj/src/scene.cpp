#include "scenecrf/scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace scenecrf {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kSimplexTolerance = 1e-9;

std::string pair_name(const PedPair& p) {
  return "(" + p.first + "," + p.second + ")";
}

}  // namespace

void EnergyWeights::check() const {
  auto bad = [](double v) { return !std::isfinite(v) || v < 0.0; };
  if (bad(alpha) || alpha <= 0.0)
    throw std::invalid_argument("EnergyWeights: alpha must be finite and > 0");
  if (bad(beta)) throw std::invalid_argument("EnergyWeights: beta must be finite and >= 0");
  if (bad(gamma)) throw std::invalid_argument("EnergyWeights: gamma must be finite and >= 0");
  if (bad(lambda1)) throw std::invalid_argument("EnergyWeights: lambda1 must be finite and >= 0");
  if (bad(lambda2)) throw std::invalid_argument("EnergyWeights: lambda2 must be finite and >= 0");
}

std::string orientation_name(Orientation o) {
  switch (o) {
    case Orientation::Left: return "left";
    case Orientation::Right: return "right";
    case Orientation::Unknown: return "unknown";
  }
  return "unknown";
}

ValidationReport validate_scene(const Scene& scene) {
  ValidationReport report;
  auto add = [&report](const std::string& msg) { report.violations.push_back(msg); };

  if (scene.pedestrians.empty()) {
    add("pedestrians: scene has no pedestrians (n >= 1 required)");
    return report;
  }

  std::set<std::string> ids;
  for (const auto& ped : scene.pedestrians) {
    if (!ids.insert(ped.id).second) add("pedestrian " + ped.id + ": duplicate id");
  }

  const std::size_t seq_len = scene.pedestrians.front().boxes.size();
  for (const auto& ped : scene.pedestrians) {
    if (ped.boxes.empty()) {
      add("pedestrian " + ped.id + ": boxes sequence is empty");
    } else if (ped.boxes.size() != seq_len) {
      add("pedestrian " + ped.id + ": sequence length " + std::to_string(ped.boxes.size()) +
          " != " + std::to_string(seq_len) + " (all pedestrians must share one length)");
    }
    for (std::size_t t = 0; t < ped.boxes.size(); ++t) {
      const auto& b = ped.boxes[t];
      if (!(b.x_min < b.x_max))
        add("pedestrian " + ped.id + " box " + std::to_string(t) + ": x_min >= x_max");
      if (!(b.y_min < b.y_max))
        add("pedestrian " + ped.id + " box " + std::to_string(t) + ": y_min >= y_max");
    }
    if (!(ped.unary_prob >= 0.0 && ped.unary_prob <= 1.0))
      add("pedestrian " + ped.id + ": unary_prob outside [0,1]");
  }

  if (scene.ego_speed && scene.ego_speed->size() != seq_len) {
    add("ego_speed: length " + std::to_string(scene.ego_speed->size()) + " != sequence length " +
        std::to_string(seq_len));
  }

  for (const auto& [pair, probs] : scene.pp_probs) {
    if (pair.first == pair.second) add("pp_probs " + pair_name(pair) + ": self-pair");
    for (const auto& id : {pair.first, pair.second}) {
      if (!ids.count(id)) add("pp_probs " + pair_name(pair) + ": unknown pedestrian id " + id);
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (!(probs[k] >= 0.0)) add("pp_probs " + pair_name(pair) + ": component " + std::to_string(k) + " negative");
      sum += probs[k];
    }
    if (!(std::abs(sum - 1.0) <= kSimplexTolerance))
      add("pp_probs " + pair_name(pair) + ": components do not sum to 1 (not a probability simplex)");
  }

  for (const auto& [id, p] : scene.pe_probs) {
    if (!ids.count(id)) add("pe_probs " + id + ": unknown pedestrian id");
    if (!(p >= 0.0 && p <= 1.0)) add("pe_probs " + id + ": value outside [0,1]");
  }

  if (scene.ground_truth) {
    for (const auto& [id, y] : *scene.ground_truth) {
      if (!ids.count(id)) add("ground_truth " + id + ": unknown pedestrian id");
      if (y != 0 && y != 1) add("ground_truth " + id + ": label not in {0,1}");
    }
  }

  return report;
}

namespace {

double require_number(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

Scene parse_scene(const ordered_json& doc) {
  if (!doc.is_object()) throw ParseError("scene: top level must be a JSON object");
  Scene scene;

  if (!doc.contains("pedestrians")) throw ParseError("scene: missing required key 'pedestrians'");
  const auto& peds = doc.at("pedestrians");
  if (!peds.is_array()) throw ParseError("pedestrians: expected an array");

  for (const auto& jp : peds) {
    if (!jp.is_object()) throw ParseError("pedestrians: entries must be objects");
    PedestrianObservation ped;
    if (!jp.contains("id") || !jp.at("id").is_string())
      throw ParseError("pedestrian: missing or non-string 'id'");
    ped.id = jp.at("id").get<std::string>();

    if (!jp.contains("boxes")) throw ParseError("pedestrian " + ped.id + ": missing 'boxes'");
    const auto& boxes = jp.at("boxes");
    if (!boxes.is_array()) throw ParseError("pedestrian " + ped.id + ": 'boxes' must be an array");
    for (const auto& jb : boxes) {
      if (!jb.is_array() || jb.size() != 4)
        throw ParseError("pedestrian " + ped.id + ": each box must be a 4-number array");
      BoundingBox b;
      b.x_min = require_number(jb[0], "pedestrian " + ped.id + " box");
      b.y_min = require_number(jb[1], "pedestrian " + ped.id + " box");
      b.x_max = require_number(jb[2], "pedestrian " + ped.id + " box");
      b.y_max = require_number(jb[3], "pedestrian " + ped.id + " box");
      ped.boxes.push_back(b);
    }

    if (!jp.contains("orientation"))
      throw ParseError("pedestrian " + ped.id + ": missing 'orientation'");
    const auto& jo = jp.at("orientation");
    if (jo.is_null()) {
      ped.orientation = Orientation::Unknown;
    } else if (jo.is_string()) {
      const std::string name = jo.get<std::string>();
      if (name == "left") ped.orientation = Orientation::Left;
      else if (name == "right") ped.orientation = Orientation::Right;
      else throw ParseError("pedestrian " + ped.id + ": orientation must be \"left\", \"right\" or null");
    } else {
      throw ParseError("pedestrian " + ped.id + ": orientation must be \"left\", \"right\" or null");
    }

    if (!jp.contains("unary_prob"))
      throw ParseError("pedestrian " + ped.id + ": missing 'unary_prob'");
    ped.unary_prob = require_number(jp.at("unary_prob"), "pedestrian " + ped.id + " unary_prob");

    scene.pedestrians.push_back(std::move(ped));
  }

  if (doc.contains("ego_speed")) {
    const auto& js = doc.at("ego_speed");
    if (!js.is_array()) throw ParseError("ego_speed: expected an array of numbers");
    std::vector<double> speeds;
    for (const auto& v : js) speeds.push_back(require_number(v, "ego_speed"));
    scene.ego_speed = std::move(speeds);
  }

  if (doc.contains("pp_probs")) {
    const auto& jpp = doc.at("pp_probs");
    if (!jpp.is_array()) throw ParseError("pp_probs: expected an array");
    for (const auto& je : jpp) {
      if (!je.is_object() || !je.contains("a") || !je.contains("b") || !je.contains("probs"))
        throw ParseError("pp_probs: entries must be objects with keys 'a', 'b', 'probs'");
      if (!je.at("a").is_string() || !je.at("b").is_string())
        throw ParseError("pp_probs: 'a' and 'b' must be strings");
      const auto& jprobs = je.at("probs");
      if (!jprobs.is_array() || jprobs.size() != 3)
        throw ParseError("pp_probs: 'probs' must be a 3-number array");
      std::array<double, 3> probs{};
      for (std::size_t k = 0; k < 3; ++k) probs[k] = require_number(jprobs[k], "pp_probs probs");
      PedPair key(je.at("a").get<std::string>(), je.at("b").get<std::string>());
      if (scene.pp_probs.count(key))
        throw ParseError("pp_probs " + pair_name(key) + ": duplicate pair");
      scene.pp_probs.emplace(std::move(key), probs);
    }
  }

  if (doc.contains("pe_probs")) {
    const auto& jpe = doc.at("pe_probs");
    if (!jpe.is_object()) throw ParseError("pe_probs: expected an object of id -> number");
    for (const auto& [id, v] : jpe.items()) scene.pe_probs[id] = require_number(v, "pe_probs " + id);
  }

  if (doc.contains("ground_truth") && !doc.at("ground_truth").is_null()) {
    const auto& jgt = doc.at("ground_truth");
    if (!jgt.is_object()) throw ParseError("ground_truth: expected an object of id -> 0/1");
    std::map<std::string, int> gt;
    for (const auto& [id, v] : jgt.items()) {
      if (!v.is_number_integer()) throw ParseError("ground_truth " + id + ": label must be 0 or 1");
      gt[id] = v.get<int>();
    }
    scene.ground_truth = std::move(gt);
  }

  return scene;
}

}  // namespace

Scene scene_from_json_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scene: invalid JSON: ") + e.what());
  }
  return parse_scene(doc);
}

std::string scene_to_json_text(const Scene& scene) {
  ordered_json doc;

  ordered_json peds = ordered_json::array();
  for (const auto& ped : scene.pedestrians) {
    ordered_json jp;
    jp["id"] = ped.id;
    ordered_json boxes = ordered_json::array();
    for (const auto& b : ped.boxes) boxes.push_back({b.x_min, b.y_min, b.x_max, b.y_max});
    jp["boxes"] = std::move(boxes);
    if (ped.orientation == Orientation::Unknown) jp["orientation"] = nullptr;
    else jp["orientation"] = orientation_name(ped.orientation);
    jp["unary_prob"] = ped.unary_prob;
    peds.push_back(std::move(jp));
  }
  doc["pedestrians"] = std::move(peds);

  if (scene.ego_speed) doc["ego_speed"] = *scene.ego_speed;

  ordered_json pp = ordered_json::array();
  for (const auto& [pair, probs] : scene.pp_probs) {
    ordered_json je;
    je["a"] = pair.first;
    je["b"] = pair.second;
    je["probs"] = probs;
    pp.push_back(std::move(je));
  }
  doc["pp_probs"] = std::move(pp);

  ordered_json pe = ordered_json::object();
  for (const auto& [id, p] : scene.pe_probs) pe[id] = p;
  doc["pe_probs"] = std::move(pe);

  if (scene.ground_truth) {
    ordered_json gt = ordered_json::object();
    for (const auto& [id, y] : *scene.ground_truth) gt[id] = y;
    doc["ground_truth"] = std::move(gt);
  }

  return doc.dump(2) + "\n";
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scene file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Scene scene = scene_from_json_text(buf.str());
  ValidationReport report = validate_scene(scene);
  if (!report.ok()) {
    std::string msg = "scene " + path + " failed validation:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  return scene;
}

void save_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << scene_to_json_text(scene);
  if (!out) throw ParseError("failed writing scene file: " + path);
}

}  // namespace scenecrf
