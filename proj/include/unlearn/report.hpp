#pragma once

#include <random>
#include <string>
#include <vector>

#include "unlearn/dimensions.hpp"
#include "unlearn/io.hpp"
#include "unlearn/scheme.hpp"

namespace unlearn {

struct BoundCheck {
    std::string name;
    std::string formula;
    double bound = 0;
    double measured = 0;
    bool pass = false;
};

struct RunRecord {
    std::string scheme;
    std::string cls;
    std::size_t n = 0;
    int k = 0;
    std::uint64_t aux_bits = 0;
    std::uint64_t max_ticket_bits = 0;
    double mean_ticket_bits = 0;
    std::vector<BoundCheck> bounds;
    json dims;
};

// Evaluates the bit bounds for one learned state, with dimensions computed by the caller.
RunRecord record_run(const std::string& scheme, const ClassHandle& cls, const LearnedState& state, const Dataset& data,
                     const SchemeOptions& opt, const DimReport& dims);

json to_json(const RunRecord& r);
RunRecord record_from_json(const json& j);

// Sorted by (scheme, class, n); deterministic.
json report_json(std::vector<RunRecord> records);
std::string report_table(std::vector<RunRecord> records);

// The built-in bound-check suite.
std::vector<RunRecord> standard_suite(std::mt19937_64& rng);

}  // namespace unlearn
