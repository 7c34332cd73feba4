#pragma once

#include <memory>
#include <vector>

#include "unlearn/compression.hpp"
#include "unlearn/scheme.hpp"

namespace unlearn {

// Turns a central realizability scheme into a version-space compression.
// Enc learns on S' + {(x,0),(x,1) : x in T} where S' is the eluder
// subsequence of S and T a minimum identification set; Dec asks, for each h,
// whether deleting {(x,1-h(x)) : x in T} leaves a realizable dataset.
struct LuVsEncoding {
    std::unique_ptr<LearnedState> state;
    std::size_t prefix = 0;      // |S'|, fixes the item ids of the T block
    std::vector<Point> T;
    std::size_t dataset_size = 0;
};

LuVsEncoding lu_to_vs_encode(const Scheme& scheme, const FiniteClass& cls, const std::vector<LabeledPair>& s);
HypMask lu_to_vs_decode(const FiniteClass& cls, const LuVsEncoding& e);

}  // namespace unlearn
