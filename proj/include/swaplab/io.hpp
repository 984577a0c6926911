#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "swaplab/facility.hpp"
#include "swaplab/reduce.hpp"

namespace swaplab {

using Json = nlohmann::ordered_json;

/// Instance document: kind, n_points, weights, dist (row-major "p/q" strings),
/// facility_indices, opening_costs, k, labels.
Json instance_to_json(const ExactInstance& inst);
ExactInstance instance_from_json(const Json& doc);

/// Instance document plus a `reduction` block carrying source_file_hash,
/// target_kind, W, epsilon, c, label_map and the wsat2 source text.
Json artifact_to_json(const ReductionArtifact& art);
ReductionArtifact artifact_from_json(const Json& doc);
bool has_reduction_block(const Json& doc);

/// Accepts a JSON string ("p/q", decimal) or number.
Rational rational_from_json(const Json& value);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace swaplab
