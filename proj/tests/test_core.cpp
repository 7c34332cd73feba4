#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/gen.hpp"
#include "support/oracles.hpp"
#include "unlearn/core.hpp"
#include "unlearn/instances.hpp"

using namespace unlearn;

namespace {

// Worked examples use points 1..m; ids are 0-based.
LabeledPair P(int x, int y) { return {x - 1, y}; }
Dataset D(std::initializer_list<LabeledPair> zs) { return Dataset(std::vector<LabeledPair>(zs)); }
HypMask H(std::initializer_list<int> ts) {
    HypMask v = 0;
    for (int t : ts) v |= 1ULL << (t - 1);
    return v;
}

}  // namespace

TEST_CASE("is_realizable worked examples") {
    ClassHandle t4 = thresholds_1d(4);
    CHECK(is_realizable(t4, D({P(2, 1)})));
    CHECK_FALSE(is_realizable(t4, D({P(3, 0), P(3, 1)})));
    CHECK_FALSE(is_realizable(all_labelings(3), D({P(2, 0), P(2, 1)})));
    CHECK_FALSE(is_realizable(t4, D({P(1, 1), P(2, 0)})));
    CHECK(is_realizable(t4, Dataset()));
}

TEST_CASE("version_space worked examples") {
    FiniteClass t4 = thresholds_1d(4);
    CHECK(t4.size() == 5);
    CHECK(version_space(t4, Dataset()) == H({1, 2, 3, 4, 5}));
    CHECK(version_space(t4, D({P(2, 1)})) == H({1, 2}));
    CHECK(version_space(t4, D({P(1, 1), P(2, 0)})) == 0);
}

TEST_CASE("remove worked examples") {
    Dataset d = D({P(1, 1), P(2, 0), P(3, 1)});
    Dataset r = remove(d, Query({2}));
    CHECK(r.size() == 2);
    CHECK_FALSE(r.has_id(2));
    CHECK(remove(d, Query()).items() == d.items());

    Dataset twice = D({P(1, 1), P(1, 1)});
    Dataset one = remove(twice, Query({1}));
    CHECK(one.support().at(P(1, 1)) == 1);
    CHECK_THROWS_AS(remove(d, Query({7})), InvalidInput);
    CHECK_THROWS_AS(Query({1, 1}), InvalidInput);
}

TEST_CASE("erm_lexmin worked examples") {
    FiniteClass t4 = thresholds_1d(4);
    CHECK(erm_lexmin(t4, D({P(2, 1)})) == 0);
    CHECK(erm_lexmin(t4, Dataset()) == 0);
    // h_1 errs only on x=2, h_2 on both
    CHECK(erm_lexmin(t4, D({P(1, 1), P(2, 0)})) == ref::erm(t4, {P(1, 1), P(2, 0)}));
    CHECK(erm_lexmin(t4, D({P(1, 1), P(2, 0)})) == 0);
}

TEST_CASE("cost model worked examples") {
    CostModel c{4, 7};
    CHECK(c.z_bits() == 3);
    CHECK(c.encoding_bits(0) == 3);
    CHECK(c.encoding_bits(2) == 9);
    CHECK_THROWS_AS(c.encoding_bits(8), CapExceeded);
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(64) == 6);
    CHECK(ceil_log2(65) == 7);
    CHECK(count_bits(0) == 0);
    CHECK(count_bits(7) == 3);
    CHECK(count_bits(8) == 4);
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(Dataset({{0, 2}}), InvalidInput);
    CHECK_THROWS_AS(FiniteClass(3, {{0, 1}}), InvalidInput);
    CHECK_THROWS_AS(FiniteClass(2, {}), InvalidInput);
    FiniteClass dup(2, {{0, 1}, {0, 1}, {1, 1}});
    CHECK(dup.size() == 2);
}

TEST_CASE("property: monotonicity, intersection, ERM on realizable data") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 400; ++trial) {
        const int m = gen::uniform(rng, 1, 6);
        FiniteClass c = random_class(m, gen::uniform(rng, 1, 20), rng);
        Dataset d1 = gen::random_dataset(m, gen::uniform(rng, 0, 8), rng);
        Dataset d2 = gen::random_dataset(m, gen::uniform(rng, 0, 8), rng);
        auto p1 = d1.pairs(), p2 = d2.pairs();
        CHECK(is_realizable(c, d1) == ref::realizable(c, p1));
        CHECK((version_space(c, d1) != 0) == is_realizable(c, d1));
        auto both = p1;
        both.insert(both.end(), p2.begin(), p2.end());
        CHECK(version_space(c, Dataset(both)) == (version_space(c, d1) & version_space(c, d2)));
        if (!d1.empty()) {
            Dataset rest = remove(d1, gen::random_query(static_cast<int>(d1.size()), 3, rng));
            if (is_realizable(c, d1)) CHECK(is_realizable(c, rest));
        }
        std::vector<int> vs = ref::version_space(c, p1);
        HypMask mask = version_space(c, d1);
        CHECK(members(mask) == vs);
        CHECK(erm_lexmin(c, d1) == ref::erm(c, p1));
        if (!vs.empty()) CHECK(erm_lexmin(c, d1) == vs.front());
        Dataset rd = gen::realizable_dataset(c, gen::uniform(rng, 1, 10), rng);
        CHECK(is_realizable(c, rd));
    }
}

TEST_CASE("property: oracle and finite paths agree exhaustively") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = gen::uniform(rng, 1, 5);
        FiniteClass c = random_class(m, gen::uniform(rng, 1, 16), rng);
        ClassHandle fin = c, orc = ref::as_oracle(c);
        // every set of labeled pairs over the domain
        for (std::uint64_t s = 0; s < (1ULL << (2 * m)); ++s) {
            std::vector<LabeledPair> zs;
            for (int i = 0; i < 2 * m; ++i) {
                if ((s >> i) & 1U) zs.push_back({i / 2, i % 2});
            }
            REQUIRE(fin.realizable(zs) == orc.realizable(zs));
        }
    }
}
