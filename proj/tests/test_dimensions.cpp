#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "support/gen.hpp"
#include "support/oracles.hpp"
#include "unlearn/dimensions.hpp"
#include "unlearn/geometry.hpp"
#include "unlearn/instances.hpp"

using namespace unlearn;

namespace {

LabeledPair P(int x, int y) { return {x - 1, y}; }

FiniteClass singleton() { return FiniteClass(3, {{0, 1, 0}}); }

ClassHandle collinear(int count) {
    std::vector<RationalPoint> pts;
    for (int i = 1; i <= count; ++i) pts.push_back({Rational(i)});
    return ClassHandle(std::shared_ptr<const RealizabilityOracle>(std::make_shared<HalfspaceOracle>(1, pts)));
}

}  // namespace

TEST_CASE("vc worked examples") {
    CHECK(vc_dimension(thresholds_1d(4)).value == 1);
    CHECK(vc_dimension(all_labelings(3)).value == 3);
    auto inst = vclb_instance(2, 4);
    CHECK(vc_dimension(inst.cls).value <= 3);
    CHECK(littlestone_dimension(inst.cls.finite()).value <= 3);
}

TEST_CASE("littlestone worked examples") {
    DimValue l = littlestone_dimension(thresholds_1d(4));
    CHECK(l.value == 2);
    CHECK(is_mistake_tree(thresholds_1d(4), l.tree, 2));
    CHECK(littlestone_dimension(singleton()).value == 0);
}

TEST_CASE("star worked examples") {
    DimValue s = star_number(thresholds_1d(8));
    CHECK(s.value == 2);
    CHECK(is_star_set(thresholds_1d(8), s.witness));
    CHECK(is_star_set(thresholds_1d(8), {P(3, 0), P(6, 1)}));
    CHECK(star_number(all_labelings(3)).value == 3);
    CHECK(star_number(collinear(5)).value >= 2);
}

TEST_CASE("hollow star worked examples") {
    DimValue h = hollow_star_number(thresholds_1d(8));
    CHECK(h.value == 2);
    CHECK(is_hollow_star_set(thresholds_1d(8), {P(2, 1), P(5, 0)}));
    DimValue hs = hollow_star_number(collinear(5));
    CHECK(hs.value == 3);
    CHECK(is_hollow_star_set(collinear(5), hs.witness));
    // a point labeled both ways is the only unrealizable shape here; it still counts
    DimValue al = hollow_star_number(all_labelings(3));
    CHECK(al.value == 2);
    REQUIRE(al.witness.size() == 2);
    CHECK(al.witness[0].x == al.witness[1].x);
}

TEST_CASE("eluder worked examples") {
    FiniteClass t4 = thresholds_1d(4);
    DimValue e = eluder_dimension(t4);
    CHECK(e.value == 4);
    CHECK(is_eluder_sequence(t4, e.witness));
    CHECK(is_eluder_sequence(t4, {P(4, 1), P(3, 1), P(2, 1), P(1, 1)}));
    CHECK_FALSE(is_eluder_sequence(t4, {P(1, 1), P(2, 1)}));
    CHECK(eluder_dimension(parity_class(2)).value == 2);
    CHECK(eluder_dimension(singleton()).value == 0);
}

TEST_CASE("mis worked examples") {
    DimValue p = mis_size(parity_class(2));
    CHECK(p.value == 2);
    CHECK(is_injective_set(parity_class(2), points_of(p.witness)));
    CHECK(mis_size(thresholds_1d(4)).value == 4);
    DimValue s = mis_size(singleton());
    CHECK(s.value == 0);
    CHECK(s.witness.empty());
}

TEST_CASE("caps report a lower bound") {
    DimValue e = eluder_dimension(thresholds_1d(8), 3);
    CHECK(e.cap_exceeded);
    CHECK(e.value == 4);
    CHECK(is_eluder_sequence(thresholds_1d(8), e.witness));
}

TEST_CASE("full report verifies") {
    FiniteClass t4 = thresholds_1d(4);
    DimReport r = compute_dimensions(t4);
    CHECK(r.vc.value == 1);
    CHECK(r.star.value == 2);
    CHECK(r.hollow_star.value == 2);
    CHECK(r.eluder.value == 4);
    REQUIRE(r.littlestone);
    CHECK(r.littlestone->value == 2);
    REQUIRE(r.mis);
    CHECK(r.mis->value == 4);
    CHECK(verify(t4, r));
}

TEST_CASE("materialize recovers the rows of a wrapped class") {
    std::mt19937_64 rng(3);
    FiniteClass c = random_class(5, 9, rng);
    FiniteClass back = materialize(ref::as_oracle(c));
    std::vector<std::uint64_t> a = c.rows(), b = back.rows();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK_THROWS_AS(materialize(ClassHandle(std::make_shared<const AllLabelingsOracle>(7))), CapExceeded);
}

TEST_CASE("property: dimensions match brute force and obey the chain") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        const int m = gen::uniform(rng, 1, 6);
        FiniteClass c = random_class(m, gen::uniform(rng, 1, 20), rng);
        DimReport r = compute_dimensions(c);
        INFO("trial " << trial);
        REQUIRE(verify(c, r));
        CHECK(r.vc.value == ref::vc(c));
        CHECK(r.star.value == ref::star(c));
        CHECK(r.hollow_star.value == ref::hollow_star(c));
        CHECK(r.eluder.value == ref::eluder(c));
        CHECK(r.littlestone->value == ref::littlestone(c));
        CHECK(r.mis->value == ref::mis(c));

        CHECK(r.vc.value <= r.star.value);
        CHECK(r.star.value <= r.eluder.value);
        CHECK(r.eluder.value <= c.size() - 1);
        CHECK(r.littlestone->value <= r.eluder.value);
        CHECK(ceil_log2(static_cast<std::uint64_t>(c.size())) <= r.eluder.value);
        CHECK(r.hollow_star.value - 1 <= r.star.value);
    }
}

TEST_CASE("property: oracle-backed search agrees with the explicit class") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = gen::uniform(rng, 1, 5);
        FiniteClass c = random_class(m, gen::uniform(rng, 1, 16), rng);
        ClassHandle o = ref::as_oracle(c);
        CHECK(vc_dimension(o).value == vc_dimension(c).value);
        CHECK(star_number(o).value == star_number(c).value);
        CHECK(hollow_star_number(o).value == hollow_star_number(c).value);
        CHECK(eluder_dimension(o).value == eluder_dimension(c).value);
    }
}
