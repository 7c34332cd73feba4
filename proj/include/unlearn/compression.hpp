#pragma once

#include <functional>
#include <vector>

#include "unlearn/core.hpp"

namespace unlearn {

// Either a realizable labeled set (canonical order) or the unrealizable
// marker {(x_min,0),(x_min,1)}.
struct VsEncoding {
    bool realizable = true;
    std::vector<LabeledPair> pairs;

    static VsEncoding unrealizable_marker();
    auto operator<=>(const VsEncoding&) const = default;
};

std::uint64_t encoding_bits(const VsEncoding& e, const CostModel& cost);

// Keeps each item the version space of the kept prefix is still undecided on;
// stops after the first item that contradicts a forced label.
std::vector<LabeledPair> eluder_subsequence(const ClassHandle& cls, const std::vector<LabeledPair>& items);

// Drops, in order, every pair whose removal leaves the version space unchanged.
std::vector<LabeledPair> star_prune(const ClassHandle& cls, std::vector<LabeledPair> pairs);

VsEncoding vs_encode(const ClassHandle& cls, const std::vector<LabeledPair>& items);
inline VsEncoding vs_encode(const ClassHandle& cls, const Dataset& data) { return vs_encode(cls, data.pairs()); }
HypMask vs_decode(const FiniteClass& cls, const VsEncoding& e);

// Canonical encoding of a version space given as a hypothesis mask.
VsEncoding canonical_dataset(const FiniteClass& cls, HypMask vs);

VsEncoding merge(const ClassHandle& cls, const VsEncoding& a, const VsEncoding& b);
inline bool mergeable_decode(const VsEncoding& e) { return e.realizable; }

// A mergeable realizability scheme as three callables.
struct MergeableScheme {
    std::function<VsEncoding(const std::vector<LabeledPair>&)> encode;
    std::function<VsEncoding(const VsEncoding&, const VsEncoding&)> merge;
    std::function<bool(const VsEncoding&)> decode;
};
MergeableScheme vs_mergeable_scheme(const ClassHandle& cls);

// Recovers the version space from any mergeable scheme by probing every hypothesis.
HypMask mergeable_to_vs_decode(const FiniteClass& cls, const MergeableScheme& scheme, const VsEncoding& e);

}  // namespace unlearn
