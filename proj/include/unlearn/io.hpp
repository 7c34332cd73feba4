#pragma once

#include <json.hpp>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "unlearn/compression.hpp"
#include "unlearn/core.hpp"
#include "unlearn/dimensions.hpp"

namespace unlearn {

// Bad invocation or unreadable input file (CLI exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

json read_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& origin);

// Seeded from UNLEARN_LAB_SEED when set.
std::mt19937_64 seeded_rng();
std::uint64_t lab_seed();

ClassHandle class_from_json(const json& j, std::mt19937_64& rng);
Dataset dataset_from_json(const json& j);
std::vector<Query> queries_from_json(const json& j);
VsEncoding encoding_from_json(const json& j);

json to_json(const LabeledPair& z);
json to_json(const std::vector<LabeledPair>& zs);
json to_json(const VsEncoding& e);
json to_json(const DimValue& v, bool witness);
json to_json(const DimReport& r, bool witness);

// Loaders that attach the file name to any format error.
ClassHandle load_class(const std::string& path, std::mt19937_64& rng);
Dataset load_dataset(const std::string& path);
std::vector<Query> load_queries(const std::string& path);
VsEncoding load_encoding(const std::string& path);

}  // namespace unlearn
