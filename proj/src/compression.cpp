#include "unlearn/compression.hpp"

#include <algorithm>

namespace unlearn {

namespace {

std::vector<LabeledPair> with(std::vector<LabeledPair> s, LabeledPair z) {
    s.push_back(z);
    return s;
}

}  // namespace

VsEncoding VsEncoding::unrealizable_marker() { return {false, {{0, 0}, {0, 1}}}; }

std::uint64_t encoding_bits(const VsEncoding& e, const CostModel& cost) { return cost.encoding_bits(e.pairs.size()); }

std::vector<LabeledPair> eluder_subsequence(const ClassHandle& cls, const std::vector<LabeledPair>& items) {
    std::vector<LabeledPair> kept;
    for (const auto& z : items) {
        const bool can_match = cls.realizable(with(kept, z));
        const bool can_flip = cls.realizable(with(kept, flip(z)));
        if (can_match && can_flip) {
            kept.push_back(z);
        } else if (!can_match) {
            kept.push_back(z);  // forced to the other label
            break;
        }
    }
    return kept;
}

std::vector<LabeledPair> star_prune(const ClassHandle& cls, std::vector<LabeledPair> pairs) {
    // Removing z leaves the version space unchanged iff nothing consistent
    // with the rest labels z.x differently.
    std::size_t i = 0;
    while (i < pairs.size()) {
        auto rest = pairs;
        const LabeledPair z = rest[i];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        if (!cls.realizable(with(rest, flip(z)))) {
            pairs = std::move(rest);
        } else {
            ++i;
        }
    }
    return pairs;
}

namespace {

// Lexicographic scan: keep (x, y) when the version space represented by `rep`
// forces y but the class does not.
std::vector<LabeledPair> canonical_scan(const ClassHandle& cls, const std::vector<LabeledPair>& rep) {
    std::vector<LabeledPair> out;
    const int m = cls.domain_size();
    for (int x = 0; x < m; ++x) {
        const bool r0 = cls.realizable(with(rep, {x, 0}));
        const bool r1 = cls.realizable(with(rep, {x, 1}));
        if (r0 == r1) continue;
        const int y = r1 ? 1 : 0;
        const LabeledPair other{x, 1 - y};
        if (cls.realizable(std::vector<LabeledPair>{other})) out.push_back({x, y});
    }
    return out;
}

}  // namespace

VsEncoding vs_encode(const ClassHandle& cls, const std::vector<LabeledPair>& items) {
    if (cls.is_finite()) return canonical_dataset(cls.finite(), cls.finite().version_space(items));
    auto rep = eluder_subsequence(cls, items);
    if (!cls.realizable(rep)) return VsEncoding::unrealizable_marker();
    return {true, star_prune(cls, canonical_scan(cls, rep))};
}

HypMask vs_decode(const FiniteClass& cls, const VsEncoding& e) {
    if (!e.realizable) return 0;
    return cls.version_space(e.pairs);
}

VsEncoding canonical_dataset(const FiniteClass& cls, HypMask vs) {
    if (vs & ~cls.all()) throw InvalidInput("version space mentions unknown hypotheses");
    if (vs == 0) return VsEncoding::unrealizable_marker();
    const int m = cls.domain_size();
    std::vector<LabeledPair> s;
    for (int x = 0; x < m; ++x) {
        const std::uint64_t bit = 1ULL << x;
        bool any1 = false, any0 = false;
        for (int h : members(vs)) (cls.row(h) & bit ? any1 : any0) = true;
        if (any1 && any0) continue;
        const int y = any1 ? 1 : 0;
        bool class_disagrees = false;
        for (auto r : cls.rows()) {
            if (static_cast<int>((r >> x) & 1U) != y) {
                class_disagrees = true;
                break;
            }
        }
        if (class_disagrees) s.push_back({x, y});
    }
    if (cls.version_space(s) != vs) throw NotAVersionSpace("hypothesis set is not a version space of the class");
    return {true, star_prune(ClassHandle(cls), s)};
}

VsEncoding merge(const ClassHandle& cls, const VsEncoding& a, const VsEncoding& b) {
    if (cls.is_finite()) {
        const auto& fc = cls.finite();
        return canonical_dataset(fc, vs_decode(fc, a) & vs_decode(fc, b));
    }
    auto cat = a.pairs;
    cat.insert(cat.end(), b.pairs.begin(), b.pairs.end());
    return vs_encode(cls, cat);
}

MergeableScheme vs_mergeable_scheme(const ClassHandle& cls) {
    MergeableScheme s;
    s.encode = [cls](const std::vector<LabeledPair>& items) { return vs_encode(cls, items); };
    s.merge = [cls](const VsEncoding& a, const VsEncoding& b) { return merge(cls, a, b); };
    s.decode = [](const VsEncoding& e) { return mergeable_decode(e); };
    return s;
}

HypMask mergeable_to_vs_decode(const FiniteClass& cls, const MergeableScheme& scheme, const VsEncoding& e) {
    HypMask out = 0;
    for (int h = 0; h < cls.size(); ++h) {
        std::vector<LabeledPair> graph;
        for (int x = 0; x < cls.domain_size(); ++x) graph.push_back({x, cls.label(h, x)});
        if (scheme.decode(scheme.merge(e, scheme.encode(graph)))) out |= (1ULL << h);
    }
    return out;
}

}  // namespace unlearn
