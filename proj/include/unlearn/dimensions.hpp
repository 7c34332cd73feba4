#pragma once

#include <optional>
#include <vector>

#include "unlearn/core.hpp"

namespace unlearn {

struct DimValue {
    int value = 0;
    // When set, value == cap + 1 and is only a lower bound.
    bool cap_exceeded = false;
    // vc / mis: points carry y = 0. star / hollow / eluder: labeled pairs.
    std::vector<LabeledPair> witness;
    // littlestone only: complete mistake tree in heap order (children of i are 2i+1, 2i+2).
    std::vector<Point> tree;
};

struct DimReport {
    DimValue vc;
    DimValue star;
    DimValue hollow_star;
    DimValue eluder;
    // These two need the hypotheses; unavailable for oracle classes too large to materialize.
    std::optional<DimValue> littlestone;
    std::optional<DimValue> mis;
};

constexpr int kDefaultDimCap = 32;

DimValue vc_dimension(const ClassHandle& cls, int cap = kDefaultDimCap);
DimValue star_number(const ClassHandle& cls, int cap = kDefaultDimCap);
DimValue hollow_star_number(const ClassHandle& cls, int cap = kDefaultDimCap);
DimValue eluder_dimension(const ClassHandle& cls, int cap = kDefaultDimCap);
DimValue littlestone_dimension(const FiniteClass& cls);
DimValue mis_size(const FiniteClass& cls);

DimReport compute_dimensions(const ClassHandle& cls, int cap = kDefaultDimCap);

// Enumerates every full labeling of the domain that the class realizes.
// Throws CapExceeded past `limit` hypotheses.
FiniteClass materialize(const ClassHandle& cls, int limit = FiniteClass::kMaxHypotheses);

// Witness checkers.
bool is_shattered(const ClassHandle& cls, const std::vector<Point>& pts);
bool is_star_set(const ClassHandle& cls, const std::vector<LabeledPair>& s);
bool is_hollow_star_set(const ClassHandle& cls, const std::vector<LabeledPair>& s);
bool is_eluder_sequence(const ClassHandle& cls, const std::vector<LabeledPair>& seq);
bool is_injective_set(const FiniteClass& cls, const std::vector<Point>& pts);
bool is_mistake_tree(const ClassHandle& cls, const std::vector<Point>& tree, int depth);

bool verify(const ClassHandle& cls, const DimReport& r);

std::vector<Point> points_of(const std::vector<LabeledPair>& w);

}  // namespace unlearn
