#include "unlearn/core.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

namespace unlearn {

Dataset::Dataset(const std::vector<LabeledPair>& pairs) {
    items_.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].y != 0 && pairs[i].y != 1) throw InvalidInput("label must be 0 or 1");
        items_.push_back({static_cast<ItemId>(i + 1), pairs[i]});
    }
}

Dataset Dataset::from_items(std::vector<Item> items) {
    std::set<ItemId> seen;
    for (const auto& it : items) {
        if (it.id < 1 || !seen.insert(it.id).second) {
            throw InvalidInput("dataset item ids must be positive and unique");
        }
        if (it.pair.y != 0 && it.pair.y != 1) throw InvalidInput("label must be 0 or 1");
    }
    Dataset d;
    d.items_ = std::move(items);
    return d;
}

std::vector<LabeledPair> Dataset::pairs() const {
    std::vector<LabeledPair> out;
    out.reserve(items_.size());
    for (const auto& it : items_) out.push_back(it.pair);
    return out;
}

std::map<LabeledPair, int> Dataset::support() const {
    std::map<LabeledPair, int> s;
    for (const auto& it : items_) ++s[it.pair];
    return s;
}

std::vector<LabeledPair> Dataset::distinct() const {
    auto p = pairs();
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
}

const Item& Dataset::item(ItemId id) const {
    // ids are positional unless items were removed, so try the fast path first
    if (id >= 1 && static_cast<std::size_t>(id) <= items_.size() && items_[id - 1].id == id) {
        return items_[id - 1];
    }
    for (const auto& it : items_) {
        if (it.id == id) return it;
    }
    throw InvalidInput("unknown item id " + std::to_string(id));
}

bool Dataset::has_id(ItemId id) const {
    try {
        (void)item(id);
        return true;
    } catch (const InvalidInput&) {
        return false;
    }
}

Query::Query(std::vector<ItemId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
        throw InvalidInput("duplicate item id in query");
    }
}

Deletion deletion_of(const Dataset& data, const Query& q) {
    Deletion out;
    out.reserve(q.size());
    for (ItemId id : q.ids()) out.push_back(data.item(id));
    return out;
}

Dataset remove(const Dataset& data, const Query& q) {
    for (ItemId id : q.ids()) (void)data.item(id);
    std::vector<Item> kept;
    for (const auto& it : data.items()) {
        if (!std::binary_search(q.ids().begin(), q.ids().end(), it.id)) kept.push_back(it);
    }
    return Dataset::from_items(std::move(kept));
}

FiniteClass::FiniteClass(int m, const std::vector<std::vector<int>>& rows) {
    std::vector<std::uint64_t> masks;
    masks.reserve(rows.size());
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != m) throw InvalidInput("hypothesis row length differs from domain size");
        std::uint64_t mask = 0;
        for (int x = 0; x < m; ++x) {
            if (r[x] != 0 && r[x] != 1) throw InvalidInput("hypothesis entries must be 0 or 1");
            if (r[x]) mask |= (1ULL << x);
        }
        masks.push_back(mask);
    }
    *this = from_masks(m, masks);
}

FiniteClass FiniteClass::from_masks(int m, const std::vector<std::uint64_t>& rows) {
    if (m < 1 || m > kMaxDomain) throw InvalidInput("domain size must be in 1..64");
    FiniteClass c;
    c.m_ = m;
    std::uint64_t valid = (m == 64) ? ~0ULL : ((1ULL << m) - 1);
    std::set<std::uint64_t> seen;
    for (auto r : rows) {
        if (r & ~valid) throw InvalidInput("hypothesis labels a point outside the domain");
        if (seen.insert(r).second) c.rows_.push_back(r);
    }
    if (c.rows_.empty()) throw InvalidInput("class has no hypotheses");
    if (static_cast<int>(c.rows_.size()) > kMaxHypotheses) throw InvalidInput("more than 64 distinct hypotheses");
    return c;
}

HypMask FiniteClass::all() const {
    return rows_.size() == 64 ? ~0ULL : ((1ULL << rows_.size()) - 1);
}

HypMask FiniteClass::version_space(std::span<const LabeledPair> pairs) const {
    std::uint64_t pos = 0, neg = 0;
    for (const auto& z : pairs) {
        if (z.x < 0 || z.x >= m_) throw InvalidInput("point " + std::to_string(z.x) + " outside domain");
        (z.y ? pos : neg) |= (1ULL << z.x);
    }
    if (pos & neg) return 0;
    HypMask vs = 0;
    for (std::size_t h = 0; h < rows_.size(); ++h) {
        if ((rows_[h] & pos) == pos && (rows_[h] & neg) == 0) vs |= (1ULL << h);
    }
    return vs;
}

bool FiniteClass::realizable(std::span<const LabeledPair> pairs) const {
    return version_space(pairs) != 0;
}

ClassHandle::ClassHandle(std::shared_ptr<const RealizabilityOracle> o) : impl_(std::move(o)) {
    if (!std::get<1>(impl_)) throw InvalidInput("null oracle");
}

const FiniteClass& ClassHandle::finite() const {
    if (!is_finite()) throw PreconditionViolation("operation needs an explicit finite class");
    return std::get<FiniteClass>(impl_);
}

const RealizabilityOracle& ClassHandle::oracle() const {
    if (is_finite()) throw PreconditionViolation("class is not oracle-backed");
    return *std::get<1>(impl_);
}

int ClassHandle::domain_size() const {
    return is_finite() ? finite().domain_size() : oracle().domain_size();
}

std::string ClassHandle::describe() const {
    if (is_finite()) {
        const auto& c = finite();
        return "finite(m=" + std::to_string(c.domain_size()) + ",h=" + std::to_string(c.size()) + ")";
    }
    return oracle().describe();
}

bool ClassHandle::realizable(std::span<const LabeledPair> pairs) const {
    if (is_finite()) return finite().realizable(pairs);
    const int m = oracle().domain_size();
    std::vector<LabeledPair> d(pairs.begin(), pairs.end());
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].x < 0 || d[i].x >= m) throw InvalidInput("point " + std::to_string(d[i].x) + " outside domain");
        if (i > 0 && d[i].x == d[i - 1].x) return false;
    }
    if (d.empty()) return true;
    return oracle().realizable(d);
}

bool is_realizable(const ClassHandle& cls, const Dataset& data) {
    auto p = data.pairs();
    return cls.realizable(p);
}

HypMask version_space(const FiniteClass& cls, const Dataset& data) {
    auto p = data.pairs();
    return cls.version_space(p);
}

int erm_lexmin(const FiniteClass& cls, const Dataset& data) {
    auto sup = data.support();
    long best = std::numeric_limits<long>::max();
    int arg = 0;
    for (int h = 0; h < cls.size(); ++h) {
        long loss = 0;
        for (const auto& [z, c] : sup) {
            if (z.x < 0 || z.x >= cls.domain_size()) throw InvalidInput("point outside domain");
            if (cls.label(h, z.x) != z.y) loss += c;
        }
        if (loss < best) {
            best = loss;
            arg = h;
        }
    }
    return arg;
}

int erm_lexmin_within(const FiniteClass& /*cls*/, HypMask vs) {
    if (vs == 0) throw PreconditionViolation("empty version space has no minimizer");
    return std::countr_zero(vs);
}

int popcount(HypMask v) { return std::popcount(v); }

std::vector<int> members(HypMask v) {
    std::vector<int> out;
    while (v) {
        out.push_back(std::countr_zero(v));
        v &= v - 1;
    }
    return out;
}

int ceil_log2(std::uint64_t v) {
    if (v <= 1) return 0;
    return 64 - std::countl_zero(v - 1);
}

int count_bits(std::uint64_t n) { return ceil_log2(n + 1); }

std::uint64_t CostModel::encoding_bits(std::size_t pairs) const {
    if (static_cast<int>(pairs) > cap) {
        throw CapExceeded("encoding has " + std::to_string(pairs) + " pairs, cap is " + std::to_string(cap));
    }
    return static_cast<std::uint64_t>(header_bits()) + pairs * static_cast<std::uint64_t>(z_bits());
}

std::string to_string(const LabeledPair& z) {
    return "(" + std::to_string(z.x) + "," + std::to_string(z.y) + ")";
}

std::string to_string(const std::vector<LabeledPair>& zs) {
    std::string s = "[";
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (i) s += ",";
        s += to_string(zs[i]);
    }
    return s + "]";
}

}  // namespace unlearn
