#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unlearn/core.hpp"
#include "unlearn/schemes_ticketed.hpp"

namespace unlearn {

// Runtime-selectable view over every scheme, used by the adversary and the CLI.

enum class Task { realizability, erm };

struct HypothesisId {
    int index = 0;
    auto operator<=>(const HypothesisId&) const = default;
};

using Answer = std::variant<bool, HypothesisId>;

std::string to_string(const Answer& a);

// Server state plus the tickets held by the data owners. unlearn() hands the
// scheme only the aux and the tickets of the deleted items.
class LearnedState {
public:
    virtual ~LearnedState() = default;
    virtual Answer answer() const = 0;
    virtual Answer unlearn(const Deletion& q) const = 0;
    virtual std::uint64_t aux_bits() const = 0;
    virtual std::vector<std::uint64_t> ticket_bits() const { return {}; }
};

class Scheme {
public:
    virtual ~Scheme() = default;
    virtual std::string name() const = 0;
    virtual Task task() const = 0;
    virtual std::unique_ptr<LearnedState> learn(const Dataset& data) const = 0;
};

struct SchemeOptions {
    int k = 1;                          // bounded scheme only
    std::optional<int> cap;             // encoding cap for tree schemes; defaults to max(2, star number)
    std::optional<ChainParams> chain;   // chain scheme; detected from the class when absent
};

// Names: trivial, bounded, merkle, chain, erm-merkle, erm-trivial.
std::unique_ptr<Scheme> make_scheme(const std::string& name, const ClassHandle& cls, const SchemeOptions& opt = {});
std::vector<std::string> scheme_names();

// Recovers (d, |X|) when the class is exactly the chain scheme's class.
std::optional<ChainParams> detect_chain_params(const FiniteClass& cls);

}  // namespace unlearn
