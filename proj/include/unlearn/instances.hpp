#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "unlearn/core.hpp"
#include "unlearn/scheme.hpp"

namespace unlearn {

// ---- class generators

// Points 1..m are ids 0..m-1; hypothesis t-1 labels x 1 iff x >= t, t = 1..m+1.
FiniteClass thresholds_1d(int m);
// Point and hypothesis ids are the bit strings read as integers; f_a(x) = <a, x> mod 2.
FiniteClass parity_class(int d);
FiniteClass all_labelings(int m);
// All labelings on the first d points, 0 on the rest. d <= 4.
FiniteClass tilu_ub_class(int d, int domain);
// Random class with up to h distinct rows (at least one).
FiniteClass random_class(int m, int h, std::mt19937_64& rng);

// Everything is realizable except a point carrying both labels.
class AllLabelingsOracle : public RealizabilityOracle {
public:
    explicit AllLabelingsOracle(int m) : m_(m) {}
    int domain_size() const override { return m_; }
    bool realizable(const std::vector<LabeledPair>&) const override { return true; }
    std::string describe() const override { return "all-labelings(m=" + std::to_string(m_) + ")"; }

private:
    int m_;
};

// ---- lower-bound instances

using Secret = std::vector<int>;

// Instances of the form D(z) = base + {planted_i : z_i = 1}. Position i's
// query removes base items `queries[i]` and, when `drop_earlier`, every
// planted pair of an earlier position; the survivors are realizable iff z_i = 0.
struct Recipe {
    std::vector<LabeledPair> base;
    std::vector<LabeledPair> planted;       // in recovery order
    std::vector<std::vector<ItemId>> queries;  // ids into base (1-based)
    bool drop_earlier = false;
    std::vector<int> secret_index;          // recovery position -> secret coordinate
};

struct LbInstance {
    std::string name;
    Task task = Task::realizability;
    ClassHandle cls;
    int p = 0;  // secret length
    std::function<Dataset(const Secret&)> dataset_of;
    // secret coordinates in the order they are recovered
    std::vector<int> order;
    // query for coordinate order[step]; `known` holds every bit recovered so far
    std::function<Query(int step, const Secret& known)> query;
    std::function<int(int step, const Answer& a)> decode;
    std::optional<Recipe> recipe;
    // bits of the secret that are fixed by the construction (value per coordinate, -1 if free)
    std::vector<int> fixed;
};

// vclb: points x_1..x_m then a code block of s points; inv_beta = 1/beta.
LbInstance vclb_instance(int inv_beta, int m);
int vclb_code_size(int inv_beta, int m);
LbInstance eluder_lb_instance(const ClassHandle& cls, const std::vector<LabeledPair>& witness, int n);
LbInstance shatter_lb_instance(const ClassHandle& cls, const std::vector<Point>& shattered);
LbInstance halfspace_lb_instance(int d, int k);
// ERM version of a recipe instance; coordinate 0 of the new secret is fixed to 0.
LbInstance whitebox_erm_reduction(const LbInstance& inst);

// Checks the recipe's realizability promise for every secret (p <= 12).
bool verify_recipe(const ClassHandle& cls, const Recipe& r);
bool verify_recipe(const ClassHandle& cls, const Recipe& r, bool drop_earlier);

struct AdversaryRun {
    Secret recovered;
    std::uint64_t aux_bits = 0;
    std::uint64_t max_ticket_bits = 0;
    std::size_t n = 0;
    std::vector<std::pair<Query, Answer>> transcript;
};

AdversaryRun run_adversary(const LbInstance& inst, const Scheme& scheme, const Secret& z);

}  // namespace unlearn
