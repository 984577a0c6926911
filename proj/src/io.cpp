#include "swaplab/io.hpp"

#include <fstream>
#include <sstream>

namespace swaplab {
namespace {

template <typename T>
T require_field(const Json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) throw ParseError(std::string("instance JSON lacks '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

Json rational_array(const Eigen::Ref<const Eigen::Matrix<Rational, Eigen::Dynamic, 1>>& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_string(v(i)));
  return arr;
}

}  // namespace

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_number_unsigned()) return Rational(value.get<unsigned long long>());
  if (value.is_number_float()) return parse_rational(value.dump());
  throw ParseError("expected a rational, got " + value.dump());
}

Json instance_to_json(const ExactInstance& inst) {
  Json doc;
  const int n = inst.num_points();
  doc["kind"] = to_string(inst.kind());
  doc["n_points"] = n;
  doc["weights"] = inst.weights();
  Json dist = Json::array();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) dist.push_back(to_string(inst.dist(i, j)));
  }
  doc["dist"] = std::move(dist);
  if (inst.kind() == ProblemKind::Mufl) {
    doc["facility_indices"] = inst.facilities();
    doc["opening_costs"] = rational_array(inst.opening_costs());
    doc["k"] = nullptr;
  } else {
    doc["facility_indices"] = nullptr;
    doc["opening_costs"] = nullptr;
    doc["k"] = inst.k();
  }
  if (inst.labels().empty()) {
    doc["labels"] = nullptr;
  } else {
    Json labels = Json::array();
    for (const auto& l : inst.labels()) labels.push_back(to_string(l));
    doc["labels"] = std::move(labels);
  }
  return doc;
}

ExactInstance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("instance JSON must be an object");
  const ProblemKind kind = parse_problem_kind(require_field<std::string>(doc, "kind"));
  const int n = require_field<int>(doc, "n_points");
  if (n < 1) throw ParseError("n_points must be positive");
  auto weights = require_field<std::vector<std::int64_t>>(doc, "weights");
  const auto& dist_json = doc.at("dist");
  if (!dist_json.is_array() || dist_json.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw ParseError("dist must be a row-major array of n_points^2 entries");
  }
  ExactInstance::Matrix dist(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) dist(i, j) = rational_from_json(dist_json[static_cast<std::size_t>(i * n + j)]);
  }
  std::vector<PointLabel> labels;
  if (doc.contains("labels") && !doc.at("labels").is_null()) {
    for (const auto& l : doc.at("labels")) labels.push_back(parse_point_label(l.get<std::string>()));
  }
  if (kind == ProblemKind::Mufl) {
    auto facilities = require_field<std::vector<int>>(doc, "facility_indices");
    const auto& costs_json = doc.at("opening_costs");
    if (!costs_json.is_array()) throw ParseError("opening_costs must be an array");
    ExactInstance::Vector costs(static_cast<Eigen::Index>(costs_json.size()));
    for (std::size_t i = 0; i < costs_json.size(); ++i) costs(static_cast<Eigen::Index>(i)) = rational_from_json(costs_json[i]);
    return ExactInstance::facility_location(std::move(dist), std::move(weights), std::move(facilities),
                                            std::move(costs), std::move(labels));
  }
  return ExactInstance::clustering(kind, std::move(dist), std::move(weights), require_field<int>(doc, "k"),
                                   std::move(labels));
}

Json artifact_to_json(const ReductionArtifact& art) {
  Json doc = instance_to_json(art.target);
  Json red;
  red["source_file_hash"] = art.source_hash;
  red["target_kind"] = to_string(art.kind());
  red["W"] = art.constants.literal_weight;
  const bool kmeans = art.kind() != ProblemKind::Mufl;
  red["epsilon"] = kmeans ? Json(to_string(art.constants.epsilon)) : Json(nullptr);
  red["c"] = kmeans ? Json(to_string(art.constants.c)) : Json(nullptr);
  Json literals = Json::array();
  for (const auto& pair : art.label_map.literal_points) literals.push_back({pair[0], pair[1]});
  Json clauses = Json::array();
  for (const auto& pts : art.label_map.clause_points) clauses.push_back(pts);
  red["label_map"] = {{"literals", std::move(literals)}, {"clauses", std::move(clauses)}};
  red["source"] = to_wsat2(art.source);
  doc["reduction"] = std::move(red);
  return doc;
}

bool has_reduction_block(const Json& doc) { return doc.is_object() && doc.contains("reduction"); }

ReductionArtifact artifact_from_json(const Json& doc) {
  if (!has_reduction_block(doc)) throw ParseError("document has no 'reduction' block");
  const Json& red = doc.at("reduction");
  ExactInstance target = instance_from_json(doc);
  SatInstance source = parse_wsat2(require_field<std::string>(red, "source"));
  if (parse_problem_kind(require_field<std::string>(red, "target_kind")) != target.kind()) {
    throw ParseError("reduction.target_kind disagrees with instance kind");
  }

  ReductionConstants k;
  k.kind = target.kind();
  k.literal_weight = require_field<std::int64_t>(red, "W");
  if (target.kind() == ProblemKind::Mufl) {
    k.formula_clauses = source.num_clauses();
    k.opening_cost = target.opening_costs().size() > 0 ? target.opening_costs()(0) : Rational(0);
  } else {
    k.formula_clauses = target.kind() == ProblemKind::Dfkm ? 2 * source.num_clauses() : source.num_clauses();
    k.k = target.k();
    k.epsilon = rational_from_json(red.at("epsilon"));
    k.c = rational_from_json(red.at("c"));
  }

  LabelMap map;
  const Json& lm = red.at("label_map");
  for (const auto& pair : lm.at("literals")) map.literal_points.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
  for (const auto& pts : lm.at("clauses")) map.clause_points.push_back(pts.get<std::vector<int>>());
  if (map.literal_points.size() != static_cast<std::size_t>(source.num_vars())) {
    throw ParseError("label_map.literals must have one entry per source variable");
  }
  for (const auto& pair : map.literal_points) {
    for (int p : pair) {
      if (p < 0 || p >= target.num_points()) throw ParseError("label_map references a missing point");
    }
  }
  return ReductionArtifact{std::move(source), std::move(target), std::move(k), std::move(map),
                           require_field<std::string>(red, "source_file_hash")};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InvalidArgument("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace swaplab
