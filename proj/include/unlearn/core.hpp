#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace unlearn {

// Domain errors. Everything the library rejects derives from Error so the
// CLI can map it to one exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidInput : Error {
    using Error::Error;
};
struct OracleFailure : Error {
    using Error::Error;
};
struct CapExceeded : Error {
    using Error::Error;
};
struct NotAVersionSpace : Error {
    using Error::Error;
};
struct PreconditionViolation : Error {
    using Error::Error;
};
struct QueryTooLarge : Error {
    using Error::Error;
};
struct TicketError : Error {
    using Error::Error;
};

using Point = int;   // domain ids are 0..m-1
using ItemId = int;  // dataset item ids are 1..n, positional

struct LabeledPair {
    Point x = 0;
    int y = 0;
    auto operator<=>(const LabeledPair&) const = default;
};

inline LabeledPair flip(LabeledPair z) { return {z.x, 1 - z.y}; }

struct Item {
    ItemId id = 0;
    LabeledPair pair;
    auto operator<=>(const Item&) const = default;
};

class Dataset {
public:
    Dataset() = default;
    // Assigns ids 1..n in order.
    explicit Dataset(const std::vector<LabeledPair>& pairs);
    static Dataset from_items(std::vector<Item> items);

    const std::vector<Item>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    std::vector<LabeledPair> pairs() const;
    // Multiset support: distinct pair -> multiplicity.
    std::map<LabeledPair, int> support() const;
    // Distinct pairs in canonical order.
    std::vector<LabeledPair> distinct() const;
    const Item& item(ItemId id) const;
    bool has_id(ItemId id) const;

private:
    std::vector<Item> items_;
};

class Query {
public:
    Query() = default;
    explicit Query(std::vector<ItemId> ids);
    const std::vector<ItemId>& ids() const { return ids_; }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }

private:
    std::vector<ItemId> ids_;  // sorted, unique
};

// What the deleting users hand over: their items, ids included.
using Deletion = std::vector<Item>;

Deletion deletion_of(const Dataset& data, const Query& q);
Dataset remove(const Dataset& data, const Query& q);

using HypMask = std::uint64_t;  // version spaces of finite classes

class FiniteClass {
public:
    static constexpr int kMaxDomain = 64;
    static constexpr int kMaxHypotheses = 64;

    FiniteClass() = default;
    // Rows are deduplicated keeping first occurrence.
    FiniteClass(int m, const std::vector<std::vector<int>>& rows);
    static FiniteClass from_masks(int m, const std::vector<std::uint64_t>& rows);

    int domain_size() const { return m_; }
    int size() const { return static_cast<int>(rows_.size()); }
    int label(int h, Point x) const { return static_cast<int>((rows_[h] >> x) & 1U); }
    std::uint64_t row(int h) const { return rows_[h]; }
    const std::vector<std::uint64_t>& rows() const { return rows_; }
    HypMask all() const;

    HypMask version_space(std::span<const LabeledPair> pairs) const;
    bool realizable(std::span<const LabeledPair> pairs) const;

private:
    int m_ = 0;
    std::vector<std::uint64_t> rows_;
};

class RealizabilityOracle {
public:
    virtual ~RealizabilityOracle() = default;
    virtual int domain_size() const = 0;
    // Receives distinct pairs in canonical order with no point labeled twice.
    virtual bool realizable(const std::vector<LabeledPair>& pairs) const = 0;
    virtual std::string describe() const = 0;
};

class ClassHandle {
public:
    ClassHandle() = default;
    ClassHandle(FiniteClass c) : impl_(std::move(c)) {}
    ClassHandle(std::shared_ptr<const RealizabilityOracle> o);

    bool is_finite() const { return std::holds_alternative<FiniteClass>(impl_); }
    const FiniteClass& finite() const;
    const RealizabilityOracle& oracle() const;
    int domain_size() const;
    std::string describe() const;

    bool realizable(std::span<const LabeledPair> pairs) const;

private:
    std::variant<FiniteClass, std::shared_ptr<const RealizabilityOracle>> impl_;
};

bool is_realizable(const ClassHandle& cls, const Dataset& data);
HypMask version_space(const FiniteClass& cls, const Dataset& data);
// Count-weighted 0-1 loss, smallest index on ties.
int erm_lexmin(const FiniteClass& cls, const Dataset& data);
int erm_lexmin_within(const FiniteClass& cls, HypMask vs);

int popcount(HypMask v);
std::vector<int> members(HypMask v);

// Bit accounting used by every scheme.
int ceil_log2(std::uint64_t v);  // ceil(log2 v), 0 for v <= 1
int count_bits(std::uint64_t n); // ceil(log2(n+1))

struct CostModel {
    int m = 1;
    int cap = 2;
    int z_bits() const { return ceil_log2(2ULL * static_cast<std::uint64_t>(m)); }
    int header_bits() const { return count_bits(static_cast<std::uint64_t>(cap)); }
    std::uint64_t encoding_bits(std::size_t pairs) const;
};

std::string to_string(const LabeledPair& z);
std::string to_string(const std::vector<LabeledPair>& zs);

}  // namespace unlearn
