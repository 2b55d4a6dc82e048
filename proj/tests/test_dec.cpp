#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "groupoids/decalage.hpp"
#include "groupoids/sweep.hpp"

using namespace dec;
using gpd::compose_functors;
using gpd::identity_functor;
using gpd::InternalFunctor;
using gpd::validate_functor;
using gpd::validate_groupoid;
using oracle::enumerate_functors;
using oracle::enumerate_groupoids;
using oracle::iso_search;

namespace {

InternalFunctor unit_into_codiscrete2() { return from_unit(codiscrete2(), 0); }

InternalFunctor d2_to_i2() {
    gpd::Groupoid d2 = discrete2();
    gpd::Groupoid i2 = codiscrete2();
    auto f0 = fm(d2.obj(), i2.obj(), {{"c0x0", "x0"}, {"c1x0", "x1"}});
    auto f1 = fm(d2.arr(), i2.arr(), {{"c0a0_0_e", "a0_0_e"}, {"c1a0_0_e", "a1_1_e"}});
    return {d2, i2, f0, f1};
}

InternalFunctor empty_into(const gpd::Groupoid& g) {
    gpd::Groupoid none = empty_groupoid();
    return {none, g, setcore::FinMap(none.obj(), g.obj(), {}),
            setcore::FinMap(none.arr(), g.arr(), {})};
}

}  // namespace

TEST_CASE("decalage of the standard examples") {
    CHECK(iso_search(decalage(unit_groupoid()), unit_groupoid()).has_value());
    CHECK(iso_search(decalage(bz2()), codiscrete2()).has_value());
    CHECK(iso_search(decalage(discrete2()), discrete2()).has_value());
    for (const auto& g : enumerate_groupoids({2, 2, 3, 6})) {
        auto d = decalage(g);
        CHECK(validate_groupoid(d).empty());
        CHECK(gpd::is_equivalence_relation(d));
    }
}

TEST_CASE("decalage functor") {
    CHECK(decalage_functor(identity_functor(bz2())) == identity_functor(decalage(bz2())));

    auto df = decalage_functor(from_unit(bz2(), 0));
    CHECK(validate_functor(df).empty());
    // The single object (the unit arrow) lands on the unit arrow of BZ2.
    CHECK(df.cod.obj().label(df.f0(0)) == "a0_0_e");

    SUBCASE("functoriality on composites") {
        for (const auto& f : enumerate_functors(bz2(), codiscrete2()))
            for (const auto& g : enumerate_functors(codiscrete2(), discrete2()))
                CHECK(decalage_functor(compose_functors(f, g)) ==
                      compose_functors(decalage_functor(f), decalage_functor(g)));
    }
}

TEST_CASE("epsilon is a discrete fibration with object part d") {
    for (const auto& g : enumerate_groupoids({2, 2, 4, 8})) {
        auto eps = epsilon(g);
        CHECK(validate_functor(eps).empty());
        CHECK(gpd::is_discrete_fibration(eps));
        CHECK(eps.f0 == g.d());
    }
    CHECK(gpd::is_iso_functor(epsilon(unit_groupoid())));
    CHECK(gpd::is_iso_functor(epsilon(discrete2())));

    SUBCASE("the counit of BZ2 is the two-fold cover") {
        auto eps = epsilon(bz2());
        CHECK(eps.dom.obj().size() == 2);
        CHECK(eps.dom.arr().size() == 4);
        CHECK_FALSE(gpd::is_iso_functor(eps));
        CHECK(iso_search(eps.dom, codiscrete2()).has_value());
    }
}

TEST_CASE("pi0 collapses the decalage tower back onto the groupoid") {
    for (const auto& g : enumerate_groupoids({2, 2, 3, 6})) {
        auto d = decalage(g);
        auto q = gpd::pi0(d);
        // Components of Dec G correspond to objects through c.
        CHECK(setcore::is_iso(setcore::induce_on_quotient(q.q, g.c())));
        auto d2 = decalage(d);
        auto q2 = gpd::pi0(d2);
        CHECK(setcore::is_iso(setcore::induce_on_quotient(q2.q, d.c())));
    }
}

TEST_CASE("exact fork") {
    CHECK(exact_fork_check(unit_groupoid()));
    CHECK(exact_fork_check(bz2()));
    CHECK(exact_fork_check(empty_groupoid()));
    for (const auto& g : enumerate_groupoids({2, 2, 3, 6})) CHECK(exact_fork_check(g));
}

TEST_CASE("comprehensive factorization of the point into BZ2") {
    auto f = from_unit(bz2(), 0);
    auto fr = comprehensive_factorize(f);
    CHECK(fr.t.obj().size() == 2);
    CHECK(fr.t.arr().size() == 4);
    CHECK(validate_groupoid(fr.t).empty());
    CHECK(iso_search(fr.t, codiscrete2()).has_value());
    CHECK(validate_functor(fr.j).empty());
    CHECK(validate_functor(fr.k).empty());
    CHECK(compose_functors(fr.j, fr.k) == f);
    CHECK(gpd::is_discrete_fibration(fr.k));
    CHECK(is_final_by_decalage(fr.j));
    // K is the double cover: both objects of T sit over the one object.
    CHECK(fr.k.f0(0) == fr.k.f0(1));
    // E here is the two-point discrete groupoid.
    CHECK(fr.e.obj().size() == 2);
    CHECK(fr.e.arr().size() == 2);
    CHECK(iso_search(fr.e, discrete2()).has_value());
}

TEST_CASE("factorization of a discrete fibration has an isomorphism for J") {
    for (auto f : {epsilon(bz2()), identity_functor(bz2()), epsilon(codiscrete2())}) {
        REQUIRE(gpd::is_discrete_fibration(f));
        auto fr = comprehensive_factorize(f);
        CHECK(gpd::is_iso_functor(fr.j));
        CHECK(compose_functors(fr.j, fr.k) == f);
    }
}

TEST_CASE("factorization of a final functor has an isomorphism for K") {
    auto incl = unit_into_codiscrete2();
    REQUIRE(is_final_by_fullness(incl));
    auto fr = comprehensive_factorize(incl);
    CHECK(gpd::is_iso_functor(fr.k));

    auto id = identity_functor(bz2());
    auto fri = comprehensive_factorize(id);
    CHECK(gpd::is_iso_functor(fri.j));
    CHECK(gpd::is_iso_functor(fri.k));
}

TEST_CASE("finality criteria on the named examples") {
    auto check_all = [](const InternalFunctor& f, bool expected) {
        CHECK(is_final_by_decalage(f) == expected);
        CHECK(is_final_by_fullness(f) == expected);
        CHECK(is_final_by_support(f) == expected);
        CHECK(oracle::is_final_by_comma(f) == expected);
    };
    check_all(identity_functor(bz2()), true);
    check_all(from_unit(bz2(), 0), false);
    check_all(unit_into_codiscrete2(), true);
    check_all(to_unit(bz2()), true);
    check_all(d2_to_i2(), false);
    check_all(empty_into(empty_groupoid()), true);
    check_all(empty_into(bz2()), false);
}

TEST_CASE("factorizing J and K again is idempotent") {
    std::vector<InternalFunctor> fs = {from_unit(bz2(), 0), d2_to_i2(), to_unit(codiscrete2())};
    for (const auto& f : fs) {
        auto fr = comprehensive_factorize(f);
        auto fr_j = comprehensive_factorize(fr.j);
        CHECK(gpd::is_iso_functor(fr_j.k));
        auto fr_k = comprehensive_factorize(fr.k);
        CHECK(gpd::is_iso_functor(fr_k.j));
    }
}

TEST_CASE("factorization agrees with the elements oracle on a small sweep") {
    sweep::SweepStats stats;
    auto zoo = enumerate_groupoids({2, 1, 2, 4});
    for (const auto& h : zoo)
        for (const auto& g : zoo)
            for (const auto& f : enumerate_functors(h, g))
                sweep::check_instance(f, "small", stats);
    CHECK(stats.functors > 0);
    CHECK(stats.finality_disagreements == 0);
    CHECK(stats.factorization_failures == 0);
    CHECK(stats.oracle_mismatches == 0);
}
