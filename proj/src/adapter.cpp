#include "unlearn/adapter.hpp"

#include "unlearn/dimensions.hpp"

namespace unlearn {

LuVsEncoding lu_to_vs_encode(const Scheme& scheme, const FiniteClass& cls, const std::vector<LabeledPair>& s) {
    if (scheme.task() != Task::realizability) throw PreconditionViolation("adapter needs a realizability scheme");
    LuVsEncoding e;
    e.T = points_of(mis_size(cls).witness);
    std::vector<LabeledPair> d = eluder_subsequence(cls, s);
    e.prefix = d.size();
    for (Point x : e.T) {
        d.push_back({x, 0});
        d.push_back({x, 1});
    }
    e.dataset_size = d.size();
    e.state = scheme.learn(Dataset(d));
    return e;
}

HypMask lu_to_vs_decode(const FiniteClass& cls, const LuVsEncoding& e) {
    if (!e.state) throw InvalidInput("empty adapter encoding");
    HypMask out = 0;
    for (int h = 0; h < cls.size(); ++h) {
        Deletion q;
        for (std::size_t i = 0; i < e.T.size(); ++i) {
            const int wrong = 1 - cls.label(h, e.T[i]);
            // (x,0) sits at prefix+2i+1, (x,1) right after
            const auto id = static_cast<ItemId>(e.prefix + 2 * i + 1 + static_cast<std::size_t>(wrong));
            q.push_back({id, {e.T[i], wrong}});
        }
        Answer a = e.state->unlearn(q);
        if (std::get<bool>(a)) out |= 1ULL << h;
    }
    return out;
}

}  // namespace unlearn
