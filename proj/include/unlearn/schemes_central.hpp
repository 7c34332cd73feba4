#pragma once

#include <map>
#include <set>
#include <vector>

#include "unlearn/core.hpp"

namespace unlearn {

using PairSet = std::vector<LabeledPair>;  // sorted, distinct

// ---- trivial scheme: keep the whole dataset

struct TrivialAux {
    ClassHandle cls;
    Dataset data;
};

struct TrivialLearn {
    bool answer = false;
    TrivialAux aux;
};

TrivialLearn trivial_learn(const ClassHandle& cls, const Dataset& data);
bool trivial_unlearn(const Deletion& q, const TrivialAux& aux);
std::uint64_t trivial_aux_bits(const TrivialAux& aux);

// ERM flavour of the trivial scheme.
int trivial_erm_unlearn(const Deletion& q, const TrivialAux& aux);

// ---- k-bounded scheme via critical sets

// Greedy over distinct pairs in canonical order; `support` must be unrealizable.
PairSet minimal_unrealizable_core(const ClassHandle& cls, const PairSet& support);

// All removal sets Q with |Q| <= k such that support \ Q is realizable and no
// proper subset of Q has that property. Sorted, deduplicated.
std::vector<PairSet> enumerate_critical_sets(const ClassHandle& cls, const PairSet& support, int k);

struct CriticalIndex {
    bool base_realizable = true;
    std::vector<PairSet> sets;
    // multiplicity of every pair that occurs in some stored set
    std::map<LabeledPair, int> pair_counts;
    int k = 0;
    std::size_t n = 0;
    int m = 1;
};

struct BoundedLearn {
    bool answer = false;
    CriticalIndex aux;
};

BoundedLearn bounded_learn(const ClassHandle& cls, const Dataset& data, int k);
bool bounded_unlearn(const Deletion& q, const CriticalIndex& aux);
std::uint64_t bounded_aux_bits(const CriticalIndex& aux);
// Closed-form ceiling in terms of the hollow star number.
double bounded_aux_bound(int hollow_star, int k, int m, std::size_t n);

}  // namespace unlearn
