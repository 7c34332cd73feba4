#include "unlearn/scheme.hpp"

#include <algorithm>

#include "unlearn/dimensions.hpp"
#include "unlearn/instances.hpp"
#include "unlearn/schemes_central.hpp"

namespace unlearn {

std::string to_string(const Answer& a) {
    if (std::holds_alternative<bool>(a)) return std::get<bool>(a) ? "yes" : "no";
    return "h" + std::to_string(std::get<HypothesisId>(a).index);
}

namespace {

class TrivialState : public LearnedState {
public:
    TrivialState(TrivialLearn l, bool erm) : l_(std::move(l)), erm_(erm) {}
    Answer answer() const override {
        if (erm_) return HypothesisId{erm_lexmin(l_.aux.cls.finite(), l_.aux.data)};
        return l_.answer;
    }
    Answer unlearn(const Deletion& q) const override {
        if (erm_) return HypothesisId{trivial_erm_unlearn(q, l_.aux)};
        return trivial_unlearn(q, l_.aux);
    }
    std::uint64_t aux_bits() const override { return trivial_aux_bits(l_.aux); }

private:
    TrivialLearn l_;
    bool erm_;
};

class TrivialScheme : public Scheme {
public:
    TrivialScheme(ClassHandle cls, bool erm) : cls_(std::move(cls)), erm_(erm) {
        if (erm_) (void)cls_.finite();
    }
    std::string name() const override { return erm_ ? "erm-trivial" : "trivial"; }
    Task task() const override { return erm_ ? Task::erm : Task::realizability; }
    std::unique_ptr<LearnedState> learn(const Dataset& data) const override {
        return std::make_unique<TrivialState>(trivial_learn(cls_, data), erm_);
    }

private:
    ClassHandle cls_;
    bool erm_;
};

class BoundedState : public LearnedState {
public:
    explicit BoundedState(BoundedLearn l) : l_(std::move(l)) {}
    Answer answer() const override { return l_.answer; }
    Answer unlearn(const Deletion& q) const override { return bounded_unlearn(q, l_.aux); }
    std::uint64_t aux_bits() const override { return bounded_aux_bits(l_.aux); }

private:
    BoundedLearn l_;
};

class BoundedScheme : public Scheme {
public:
    BoundedScheme(ClassHandle cls, int k) : cls_(std::move(cls)), k_(k) {}
    std::string name() const override { return "bounded"; }
    Task task() const override { return Task::realizability; }
    std::unique_ptr<LearnedState> learn(const Dataset& data) const override {
        return std::make_unique<BoundedState>(bounded_learn(cls_, data, k_));
    }

private:
    ClassHandle cls_;
    int k_;
};

template <class Ticket>
std::vector<Ticket> tickets_for(const Deletion& q, const std::vector<Ticket>& all) {
    std::vector<Ticket> out;
    for (const auto& it : q) {
        if (it.id < 1 || static_cast<std::size_t>(it.id) > all.size()) throw TicketError("no ticket for item " + std::to_string(it.id));
        out.push_back(all[static_cast<std::size_t>(it.id) - 1]);
    }
    return out;
}

class MerkleState : public LearnedState {
public:
    MerkleState(ClassHandle cls, MerkleLearn l, CostModel cost) : cls_(std::move(cls)), l_(std::move(l)), cost_(cost) {}
    Answer answer() const override { return l_.answer; }
    Answer unlearn(const Deletion& q) const override {
        return merkle_unlearn(cls_, q, l_.aux, tickets_for(q, l_.tickets));
    }
    std::uint64_t aux_bits() const override { return 1; }
    std::vector<std::uint64_t> ticket_bits() const override {
        std::vector<std::uint64_t> out;
        for (const auto& t : l_.tickets) out.push_back(merkle_ticket_bits(t, cost_));
        return out;
    }

private:
    ClassHandle cls_;
    MerkleLearn l_;
    CostModel cost_;
};

class MerkleScheme : public Scheme {
public:
    MerkleScheme(ClassHandle cls, CostModel cost) : cls_(std::move(cls)), cost_(cost) {}
    std::string name() const override { return "merkle"; }
    Task task() const override { return Task::realizability; }
    std::unique_ptr<LearnedState> learn(const Dataset& data) const override {
        return std::make_unique<MerkleState>(cls_, merkle_learn(cls_, data), cost_);
    }

private:
    ClassHandle cls_;
    CostModel cost_;
};

class ErmMerkleState : public LearnedState {
public:
    ErmMerkleState(FiniteClass cls, ErmMerkleLearn l, CostModel cost) : cls_(std::move(cls)), l_(std::move(l)), cost_(cost) {}
    Answer answer() const override { return HypothesisId{l_.answer}; }
    Answer unlearn(const Deletion& q) const override {
        return HypothesisId{erm_merkle_unlearn(cls_, q, l_.aux, tickets_for(q, l_.tickets))};
    }
    std::uint64_t aux_bits() const override { return erm_merkle_aux_bits(cls_); }
    std::vector<std::uint64_t> ticket_bits() const override {
        std::vector<std::uint64_t> out;
        for (const auto& t : l_.tickets) out.push_back(merkle_ticket_bits(t, cost_));
        return out;
    }

private:
    FiniteClass cls_;
    ErmMerkleLearn l_;
    CostModel cost_;
};

class ErmMerkleScheme : public Scheme {
public:
    ErmMerkleScheme(FiniteClass cls, CostModel cost) : cls_(std::move(cls)), cost_(cost) {}
    std::string name() const override { return "erm-merkle"; }
    Task task() const override { return Task::erm; }
    std::unique_ptr<LearnedState> learn(const Dataset& data) const override {
        return std::make_unique<ErmMerkleState>(cls_, erm_merkle_learn(cls_, data), cost_);
    }

private:
    FiniteClass cls_;
    CostModel cost_;
};

class ChainState : public LearnedState {
public:
    ChainState(ChainParams p, std::size_t n, ChainLearn l) : p_(p), n_(n), l_(std::move(l)) {}
    Answer answer() const override { return l_.answer; }
    Answer unlearn(const Deletion& q) const override { return chain_unlearn(p_, q, l_.aux, tickets_for(q, l_.tickets)); }
    std::uint64_t aux_bits() const override { return chain_aux_bits(p_, n_, l_.aux); }
    std::vector<std::uint64_t> ticket_bits() const override {
        std::vector<std::uint64_t> out;
        for (const auto& t : l_.tickets) out.push_back(chain_ticket_bits(p_, n_, t));
        return out;
    }

private:
    ChainParams p_;
    std::size_t n_;
    ChainLearn l_;
};

class ChainScheme : public Scheme {
public:
    explicit ChainScheme(ChainParams p) : p_(p) {}
    std::string name() const override { return "chain"; }
    Task task() const override { return Task::realizability; }
    std::unique_ptr<LearnedState> learn(const Dataset& data) const override {
        return std::make_unique<ChainState>(p_, data.size(), chain_learn(p_, data));
    }

private:
    ChainParams p_;
};

CostModel tree_cost(const ClassHandle& cls, const SchemeOptions& opt) {
    int cap = opt.cap ? *opt.cap : std::max(2, star_number(cls).value);
    return CostModel{cls.domain_size(), cap};
}

}  // namespace

std::optional<ChainParams> detect_chain_params(const FiniteClass& cls) {
    const int m = cls.domain_size();
    for (int d = 1; d <= std::min(m, 4); ++d) {
        FiniteClass ref = tilu_ub_class(d, m);
        if (ref.size() != cls.size()) continue;
        auto a = ref.rows(), b = cls.rows();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a == b) return ChainParams{d, m};
    }
    return std::nullopt;
}

std::unique_ptr<Scheme> make_scheme(const std::string& name, const ClassHandle& cls, const SchemeOptions& opt) {
    if (name == "trivial") return std::make_unique<TrivialScheme>(cls, false);
    if (name == "erm-trivial") return std::make_unique<TrivialScheme>(cls, true);
    if (name == "bounded") return std::make_unique<BoundedScheme>(cls, opt.k);
    if (name == "merkle") return std::make_unique<MerkleScheme>(cls, tree_cost(cls, opt));
    if (name == "erm-merkle") return std::make_unique<ErmMerkleScheme>(cls.finite(), tree_cost(cls, opt));
    if (name == "chain") {
        std::optional<ChainParams> p = opt.chain;
        if (!p && cls.is_finite()) p = detect_chain_params(cls.finite());
        if (!p) throw PreconditionViolation("chain scheme only runs on its own class");
        return std::make_unique<ChainScheme>(*p);
    }
    throw InvalidInput("unknown scheme '" + name + "'");
}

std::vector<std::string> scheme_names() { return {"trivial", "bounded", "merkle", "chain", "erm-merkle", "erm-trivial"}; }

}  // namespace unlearn
