#include "unlearn/schemes_ticketed.hpp"

#include <algorithm>
#include <map>

namespace unlearn {

namespace {

struct Tree {
    int depth = 0;
    std::vector<std::vector<VsEncoding>> nodes;
    std::vector<MerkleTicket> tickets;
};

Tree build_tree(const ClassHandle& cls, const Dataset& data) {
    Tree t;
    const std::size_t n = data.size();
    std::size_t width = 1;
    while (width < n) {
        width *= 2;
        ++t.depth;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (data.items()[i].id != static_cast<ItemId>(i + 1)) throw InvalidInput("tree schemes need positional item ids");
    }
    t.nodes.resize(static_cast<std::size_t>(t.depth) + 1);
    auto& leaves = t.nodes[static_cast<std::size_t>(t.depth)];
    const VsEncoding empty = vs_encode(cls, std::vector<LabeledPair>{});
    for (std::size_t i = 0; i < width; ++i) {
        leaves.push_back(i < n ? vs_encode(cls, std::vector<LabeledPair>{data.items()[i].pair}) : empty);
    }
    for (int level = t.depth - 1; level >= 0; --level) {
        const auto& below = t.nodes[static_cast<std::size_t>(level) + 1];
        auto& here = t.nodes[static_cast<std::size_t>(level)];
        for (std::size_t j = 0; j < below.size() / 2; ++j) here.push_back(merge(cls, below[2 * j], below[2 * j + 1]));
    }
    for (std::size_t i = 0; i < n; ++i) {
        MerkleTicket tk;
        tk.leaf = static_cast<int>(i);
        for (int level = 1; level <= t.depth; ++level) {
            std::size_t sib = (i >> (t.depth - level)) ^ 1U;
            tk.siblings.push_back(t.nodes[static_cast<std::size_t>(level)][sib]);
        }
        t.tickets.push_back(std::move(tk));
    }
    return t;
}

// Merges the encodings of the maximal subtrees that avoid every deleted leaf.
VsEncoding fold_survivors(const ClassHandle& cls, const Deletion& q, const std::vector<MerkleTicket>& tickets) {
    if (tickets.size() != q.size()) throw TicketError("one ticket per deleted item is required");
    const std::size_t depth = tickets.front().siblings.size();
    std::vector<std::size_t> deleted;
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (tickets[j].leaf != q[j].id - 1) throw TicketError("ticket does not belong to item " + std::to_string(q[j].id));
        if (tickets[j].siblings.size() != depth) throw TicketError("tickets disagree on tree depth");
        if (depth < 63 && static_cast<std::size_t>(tickets[j].leaf) >= (std::size_t{1} << depth)) {
            throw TicketError("ticket leaf outside the tree");
        }
        deleted.push_back(static_cast<std::size_t>(tickets[j].leaf));
    }
    std::map<std::pair<std::size_t, std::size_t>, VsEncoding> parts;
    for (std::size_t j = 0; j < q.size(); ++j) {
        const std::size_t leaf = deleted[j];
        for (std::size_t level = 1; level <= depth; ++level) {
            const std::size_t shift = depth - level;
            const std::size_t sib = (leaf >> shift) ^ 1U;
            const bool touched = std::any_of(deleted.begin(), deleted.end(), [&](std::size_t d) { return (d >> shift) == sib; });
            if (touched) continue;
            auto [it, fresh] = parts.emplace(std::make_pair(level, sib), tickets[j].siblings[level - 1]);
            if (!fresh && it->second != tickets[j].siblings[level - 1]) throw TicketError("tickets disagree on a subtree");
        }
    }
    VsEncoding acc = vs_encode(cls, std::vector<LabeledPair>{});
    for (const auto& [key, enc] : parts) acc = merge(cls, acc, enc);
    return acc;
}

}  // namespace

MerkleLearn merkle_learn(const ClassHandle& cls, const Dataset& data) {
    Tree t = build_tree(cls, data);
    MerkleLearn out;
    out.aux = mergeable_decode(t.nodes[0][0]);
    out.answer = out.aux;
    out.tickets = std::move(t.tickets);
    out.depth = t.depth;
    out.nodes = std::move(t.nodes);
    return out;
}

bool merkle_unlearn(const ClassHandle& cls, const Deletion& q, bool aux, const std::vector<MerkleTicket>& tickets) {
    if (q.empty()) return aux;
    return mergeable_decode(fold_survivors(cls, q, tickets));
}

std::uint64_t merkle_ticket_bits(const MerkleTicket& t, const CostModel& cost) {
    std::uint64_t bits = t.siblings.size();  // leaf index
    for (const auto& e : t.siblings) bits += encoding_bits(e, cost);
    return bits;
}

ErmMerkleLearn erm_merkle_learn(const FiniteClass& cls, const Dataset& data) {
    if (version_space(cls, data) == 0) throw PreconditionViolation("ERM tree scheme needs a realizable dataset");
    Tree t = build_tree(ClassHandle(cls), data);
    ErmMerkleLearn out;
    out.aux = erm_lexmin_within(cls, vs_decode(cls, t.nodes[0][0]));
    out.answer = out.aux;
    out.tickets = std::move(t.tickets);
    out.depth = t.depth;
    return out;
}

int erm_merkle_unlearn(const FiniteClass& cls, const Deletion& q, int aux, const std::vector<MerkleTicket>& tickets) {
    if (q.empty()) return aux;
    HypMask vs = vs_decode(cls, fold_survivors(ClassHandle(cls), q, tickets));
    if (vs == 0) throw PreconditionViolation("survivors are unrealizable");
    return erm_lexmin_within(cls, vs);
}

std::uint64_t erm_merkle_aux_bits(const FiniteClass& cls) { return static_cast<std::uint64_t>(ceil_log2(cls.size())); }

// ---- chain scheme

namespace {

void check_params(const ChainParams& p) {
    if (p.d < 1 || p.domain < p.d) throw InvalidInput("chain scheme needs 1 <= d <= |X|");
}

bool on_chain(const ChainParams& p, Point x, int n0, int n1) { return x < p.d ? (n0 > 0 && n1 > 0) : n1 > 0; }

int entry_bits(const ChainParams& p, std::size_t n) {
    return count_bits(static_cast<std::uint64_t>(p.domain)) + 2 * count_bits(n);
}

}  // namespace

ChainLearn chain_learn(const ChainParams& p, const Dataset& data) {
    check_params(p);
    std::map<Point, ChainEntry> counts;
    for (const auto& it : data.items()) {
        if (it.pair.x < 0 || it.pair.x >= p.domain) throw InvalidInput("point outside domain");
        auto& e = counts[it.pair.x];
        e.x = it.pair.x;
        (it.pair.y ? e.n1 : e.n0) += 1;
    }
    std::vector<ChainEntry> chain;
    for (const auto& [x, e] : counts) {
        if (on_chain(p, x, e.n0, e.n1)) chain.push_back(e);
    }
    ChainLearn out;
    out.answer = chain.empty();
    if (!chain.empty()) out.aux.first = chain[0];
    if (chain.size() > 1) out.aux.second = chain[1];
    std::map<Point, std::size_t> pos;
    for (std::size_t i = 0; i < chain.size(); ++i) pos[chain[i].x] = i;
    for (const auto& it : data.items()) {
        ChainTicket t;
        auto f = pos.find(it.pair.x);
        if (f != pos.end()) {
            t.self = chain[f->second];
            if (f->second + 1 < chain.size()) t.next = chain[f->second + 1];
        }
        out.tickets.push_back(t);
    }
    return out;
}

bool chain_unlearn(const ChainParams& p, const Deletion& q, const ChainAux& aux, const std::vector<ChainTicket>& tickets) {
    check_params(p);
    if (tickets.size() != q.size()) throw TicketError("one ticket per deleted item is required");
    std::map<Point, std::pair<int, int>> removed;
    for (const auto& it : q) {
        auto& r = removed[it.pair.x];
        (it.pair.y ? r.second : r.first) += 1;
    }
    // A chain point stops blocking once one of its conflicting label groups is gone entirely.
    auto discharged = [&](const ChainEntry& e) {
        auto r = removed[e.x];
        if (e.x < p.d) return r.first == e.n0 || r.second == e.n1;
        return r.second == e.n1;
    };
    if (!aux.first) return true;
    if (!discharged(*aux.first)) return false;
    std::optional<ChainEntry> cur = aux.second;
    while (cur) {
        if (!discharged(*cur)) return false;
        // some item at cur->x was deleted, so its ticket names the successor
        const ChainTicket* found = nullptr;
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (q[j].pair.x == cur->x) {
                found = &tickets[j];
                break;
            }
        }
        if (!found || !found->self || *found->self != *cur) throw TicketError("missing or inconsistent chain ticket");
        cur = found->next;
    }
    return true;
}

std::uint64_t chain_aux_bits(const ChainParams& p, std::size_t n, const ChainAux& /*aux*/) {
    // two entries; an absent entry uses the sentinel point value |X|
    return 2ULL * static_cast<std::uint64_t>(entry_bits(p, n));
}

std::uint64_t chain_ticket_bits(const ChainParams& p, std::size_t n, const ChainTicket& t) {
    std::uint64_t bits = 1;
    if (t.self) bits += static_cast<std::uint64_t>(entry_bits(p, n));
    if (t.next) bits += static_cast<std::uint64_t>(entry_bits(p, n));
    return bits;
}

}  // namespace unlearn
