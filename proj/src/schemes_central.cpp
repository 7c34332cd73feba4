#include "unlearn/schemes_central.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace unlearn {

TrivialLearn trivial_learn(const ClassHandle& cls, const Dataset& data) {
    return {is_realizable(cls, data), {cls, data}};
}

namespace {

Dataset survivors(const Deletion& q, const Dataset& data) {
    std::vector<ItemId> ids;
    for (const auto& it : q) {
        if (data.item(it.id).pair != it.pair) throw InvalidInput("deleted item does not match the stored dataset");
        ids.push_back(it.id);
    }
    return remove(data, Query(ids));
}

PairSet minus(const PairSet& support, const PairSet& removed) {
    PairSet out;
    std::set_difference(support.begin(), support.end(), removed.begin(), removed.end(), std::back_inserter(out));
    return out;
}

}  // namespace

bool trivial_unlearn(const Deletion& q, const TrivialAux& aux) {
    return is_realizable(aux.cls, survivors(q, aux.data));
}

int trivial_erm_unlearn(const Deletion& q, const TrivialAux& aux) {
    return erm_lexmin(aux.cls.finite(), survivors(q, aux.data));
}

std::uint64_t trivial_aux_bits(const TrivialAux& aux) {
    CostModel c{aux.cls.domain_size(), 0};
    return aux.data.size() * static_cast<std::uint64_t>(c.z_bits()) + count_bits(aux.data.size());
}

PairSet minimal_unrealizable_core(const ClassHandle& cls, const PairSet& support) {
    if (cls.realizable(support)) throw PreconditionViolation("dataset is realizable; it has no unrealizable core");
    PairSet core = support;
    std::sort(core.begin(), core.end());
    core.erase(std::unique(core.begin(), core.end()), core.end());
    std::size_t i = 0;
    while (i < core.size()) {
        PairSet rest = core;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        if (!cls.realizable(rest)) {
            core = std::move(rest);
        } else {
            ++i;
        }
    }
    return core;
}

std::vector<PairSet> enumerate_critical_sets(const ClassHandle& cls, const PairSet& support_in, int k) {
    PairSet support = support_in;
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    std::set<PairSet> found;
    if (k <= 0 || cls.realizable(support)) return {};

    auto minimal = [&](const PairSet& q) {
        for (std::size_t i = 0; i < q.size(); ++i) {
            PairSet sub = q;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
            if (cls.realizable(minus(support, sub))) return false;
        }
        return true;
    };

    // Any removal set that fixes D \ P must hit the core of D \ P, so branching
    // on core elements reaches every critical set.
    std::set<PairSet> seen{{}};
    std::deque<PairSet> frontier{{}};
    while (!frontier.empty()) {
        PairSet p = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& c : minimal_unrealizable_core(cls, minus(support, p))) {
            PairSet next = p;
            next.insert(std::upper_bound(next.begin(), next.end(), c), c);
            if (!seen.insert(next).second) continue;
            if (cls.realizable(minus(support, next))) {
                if (minimal(next)) found.insert(next);
            } else if (static_cast<int>(next.size()) < k) {
                frontier.push_back(std::move(next));
            }
        }
    }
    return {found.begin(), found.end()};
}

BoundedLearn bounded_learn(const ClassHandle& cls, const Dataset& data, int k) {
    if (k < 0) throw InvalidInput("k must be non-negative");
    BoundedLearn out;
    out.aux.k = k;
    out.aux.n = data.size();
    out.aux.m = cls.domain_size();
    out.answer = is_realizable(cls, data);
    out.aux.base_realizable = out.answer;
    if (out.answer) return out;
    out.aux.sets = enumerate_critical_sets(cls, data.distinct(), k);
    auto sup = data.support();
    for (const auto& q : out.aux.sets) {
        for (const auto& z : q) out.aux.pair_counts[z] = sup.at(z);
    }
    return out;
}

bool bounded_unlearn(const Deletion& q, const CriticalIndex& aux) {
    if (static_cast<int>(q.size()) > aux.k) {
        throw QueryTooLarge("query has " + std::to_string(q.size()) + " items, scheme supports " + std::to_string(aux.k));
    }
    if (aux.base_realizable) return true;
    std::map<LabeledPair, int> removed;
    for (const auto& it : q) ++removed[it.pair];
    PairSet gone;
    for (const auto& [z, c] : removed) {
        auto it = aux.pair_counts.find(z);
        if (it != aux.pair_counts.end() && it->second == c) gone.push_back(z);
    }
    for (const auto& s : aux.sets) {
        if (std::includes(gone.begin(), gone.end(), s.begin(), s.end())) return true;
    }
    return false;
}

std::uint64_t bounded_aux_bits(const CriticalIndex& aux) {
    std::uint64_t bits = 1;  // realizable flag
    if (aux.base_realizable) return bits;
    CostModel c{aux.m, 0};
    // per-size set counts, then the sets, then one count per pair in their union
    bits += static_cast<std::uint64_t>(aux.k) * count_bits(aux.sets.size());
    for (const auto& s : aux.sets) bits += s.size() * static_cast<std::uint64_t>(c.z_bits());
    bits += aux.pair_counts.size() * static_cast<std::uint64_t>(count_bits(aux.n));
    return bits;
}

double bounded_aux_bound(int hollow_star, int k, int m, std::size_t n) {
    CostModel c{m, 0};
    return std::pow(static_cast<double>(hollow_star), k + 1) * (k * c.z_bits() + count_bits(n)) + 1.0;
}

}  // namespace unlearn
