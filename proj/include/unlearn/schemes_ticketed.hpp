#pragma once

#include <optional>
#include <vector>

#include "unlearn/compression.hpp"
#include "unlearn/core.hpp"

namespace unlearn {

// ---- Merkle tree over mergeable encodings

struct MerkleTicket {
    int leaf = 0;                       // 0-based leaf index (item id - 1)
    std::vector<VsEncoding> siblings;   // one per level, root side first
};

struct MerkleLearn {
    bool answer = false;
    bool aux = false;  // the 1-bit server state
    std::vector<MerkleTicket> tickets;  // tickets[i] belongs to item id i+1
    int depth = 0;
    // node encodings by level (level 0 = root); kept for inspection only
    std::vector<std::vector<VsEncoding>> nodes;
};

MerkleLearn merkle_learn(const ClassHandle& cls, const Dataset& data);
// `tickets` must hold exactly the tickets of the deleted items, in deletion order.
bool merkle_unlearn(const ClassHandle& cls, const Deletion& q, bool aux, const std::vector<MerkleTicket>& tickets);
std::uint64_t merkle_ticket_bits(const MerkleTicket& t, const CostModel& cost);

// ERM variant: aux is the lex-min consistent hypothesis; realizable inputs only.
struct ErmMerkleLearn {
    int answer = 0;
    int aux = 0;
    std::vector<MerkleTicket> tickets;
    int depth = 0;
};

ErmMerkleLearn erm_merkle_learn(const FiniteClass& cls, const Dataset& data);
int erm_merkle_unlearn(const FiniteClass& cls, const Deletion& q, int aux, const std::vector<MerkleTicket>& tickets);
std::uint64_t erm_merkle_aux_bits(const FiniteClass& cls);

// ---- chain scheme for the class of all labelings on the first d points,
// forced to 0 beyond them

struct ChainEntry {
    Point x = 0;
    int n0 = 0;
    int n1 = 0;
    auto operator<=>(const ChainEntry&) const = default;
};

struct ChainAux {
    std::optional<ChainEntry> first;
    std::optional<ChainEntry> second;
};

struct ChainTicket {
    std::optional<ChainEntry> self;  // set only for items sitting on the chain
    std::optional<ChainEntry> next;
};

struct ChainLearn {
    bool answer = false;
    ChainAux aux;
    std::vector<ChainTicket> tickets;  // tickets[i] belongs to item id i+1
};

struct ChainParams {
    int d = 1;
    int domain = 1;
};

ChainLearn chain_learn(const ChainParams& p, const Dataset& data);
bool chain_unlearn(const ChainParams& p, const Deletion& q, const ChainAux& aux, const std::vector<ChainTicket>& tickets);
std::uint64_t chain_aux_bits(const ChainParams& p, std::size_t n, const ChainAux& aux);
std::uint64_t chain_ticket_bits(const ChainParams& p, std::size_t n, const ChainTicket& t);
// Constant c in max(aux, ticket) <= c * (log2 d + log2 n + log2 |X|).
constexpr double kChainCostConstant = 4.0;

}  // namespace unlearn
