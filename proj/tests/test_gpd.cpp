#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"

using namespace gpd;
using oracle::enumerate_functors;
using oracle::enumerate_groupoids;
using oracle::iso_search;
using setcore::FinMap;
using setcore::FinSet;

namespace {

InternalFunctor d2_to_i2() {
    Groupoid d2 = discrete2();
    Groupoid i2 = codiscrete2();
    auto f0 = fm(d2.obj(), i2.obj(), {{"c0x0", "x0"}, {"c1x0", "x1"}});
    auto f1 = fm(d2.arr(), i2.arr(), {{"c0a0_0_e", "a0_0_e"}, {"c1a0_0_e", "a1_1_e"}});
    return {d2, i2, f0, f1};
}

std::vector<Groupoid> small_zoo() {
    return {unit_groupoid(), bz2(), discrete2(), codiscrete2(), bz3()};
}

}  // namespace

TEST_CASE("groupoid validation accepts the standard examples") {
    CHECK(validate_groupoid(unit_groupoid()).empty());
    CHECK(validate_groupoid(bz2()).empty());
    CHECK(validate_groupoid(discrete2()).empty());
    CHECK(validate_groupoid(codiscrete2()).empty());
    CHECK(validate_groupoid(empty_groupoid()).empty());
    for (const auto& g : enumerate_groupoids({2, 2, 6, 8})) CHECK(validate_groupoid(g).empty());
}

TEST_CASE("a mutated composition table is reported") {
    Groupoid g = bz2();
    // Redefine m(s, s) = s.
    std::vector<int> m = g.m().table();
    m[3] = 1;
    Groupoid broken(g.obj(), g.arr(), g.d(), g.c(), g.e(),
                    FinMap(g.m().dom(), g.arr(), m), g.i());
    auto bad = validate_groupoid(broken);
    REQUIRE_FALSE(bad.empty());
    bool mentions_inverse = false;
    for (const auto& v : bad) mentions_inverse |= v.find("unit") != std::string::npos;
    CHECK(mentions_inverse);
}

TEST_CASE("functor validation") {
    CHECK(validate_functor(identity_functor(bz2())).empty());
    CHECK(validate_functor(to_unit(bz2())).empty());

    // Swapping the unit with the involution on BZ2 breaks unit preservation.
    Groupoid g = bz2();
    auto swap = fm(g.arr(), g.arr(), {{"a0_0_e", "a0_0_g"}, {"a0_0_g", "a0_0_e"}});
    InternalFunctor broken{g, g, setcore::identity(g.obj()), swap};
    auto bad = validate_functor(broken);
    REQUIRE_FALSE(bad.empty());
    bool mentions_unit = false;
    for (const auto& v : bad) mentions_unit |= v.find("unit") != std::string::npos;
    CHECK(mentions_unit);
}

TEST_CASE("discrete fibration examples") {
    CHECK(is_discrete_fibration(identity_functor(bz2())));
    CHECK(is_discrete_fibration(to_unit(discrete2())));
    CHECK_FALSE(is_discrete_fibration(from_unit(bz2(), 0)));
}

TEST_CASE("cartesian lift along the identity is the groupoid itself") {
    for (const auto& g : small_zoo()) {
        auto lift = cartesian_lift(setcore::identity(g.obj()), g);
        CHECK(validate_groupoid(lift.lifted).empty());
        CHECK(validate_functor(lift.to_base).empty());
        CHECK(iso_search(lift.lifted, g).has_value());
    }
}

TEST_CASE("cartesian lift of a point and of two points into BZ2") {
    Groupoid g = bz2();
    auto x1 = fs({"p"});
    auto single = cartesian_lift(FinMap(x1, g.obj(), {0}), g);
    CHECK(iso_search(single.lifted, g).has_value());

    auto x2 = fs({"p", "q"});
    auto twofold = cartesian_lift(FinMap(x2, g.obj(), {0, 0}), g);
    CHECK(twofold.lifted.obj().size() == 2);
    CHECK(twofold.lifted.arr().size() == 8);
    CHECK(validate_groupoid(twofold.lifted).empty());
    CHECK(is_full(twofold.to_base));
    CHECK(is_faithful(twofold.to_base));
}

TEST_CASE("boff factorization") {
    SUBCASE("fully faithful functor gives a bijective comparison") {
        auto b = boff_factorize(identity_functor(bz2()));
        CHECK(setcore::is_iso(b.phi));
        CHECK(compose_functors(b.bo, b.ff) == identity_functor(bz2()));
    }
    SUBCASE("point into BZ2: mono but not regular epi") {
        auto b = boff_factorize(from_unit(bz2(), 0));
        CHECK(b.phi.dom().size() == 1);
        CHECK(b.phi.cod().size() == 2);
        CHECK(setcore::is_mono(b.phi));
        CHECK_FALSE(setcore::is_regular_epi(b.phi));
    }
    SUBCASE("discrete into codiscrete: 2 -> 4, not surjective") {
        auto b = boff_factorize(d2_to_i2());
        CHECK(b.phi.dom().size() == 2);
        CHECK(b.phi.cod().size() == 4);
        CHECK_FALSE(setcore::is_regular_epi(b.phi));
        CHECK(setcore::is_mono(b.phi));
    }
    SUBCASE("bo is bijective on objects and ff is fully faithful") {
        for (const auto& f : enumerate_functors(bz2(), bz2())) {
            auto b = boff_factorize(f);
            CHECK(setcore::is_iso(b.bo.f0));
            CHECK(is_full(b.ff));
            CHECK(is_faithful(b.ff));
            CHECK(compose_functors(b.bo, b.ff) == f);
            CHECK(validate_functor(b.bo).empty());
            CHECK(validate_functor(b.ff).empty());
        }
    }
}

TEST_CASE("fullness and faithfulness") {
    CHECK(is_full(identity_functor(bz2())));
    CHECK(is_faithful(identity_functor(bz2())));

    auto point = from_unit(bz2(), 0);
    CHECK_FALSE(is_full(point));
    CHECK(is_faithful(point));

    auto collapse = to_unit(bz2());
    CHECK(is_full(collapse));
    CHECK_FALSE(is_faithful(collapse));
}

TEST_CASE("fullness matches the comparison map route") {
    auto zoo = small_zoo();
    for (const auto& h : zoo)
        for (const auto& g : zoo)
            for (const auto& f : enumerate_functors(h, g)) {
                auto b = boff_factorize(f);
                CHECK(is_full(f) == setcore::is_regular_epi(b.phi));
                CHECK(is_faithful(f) == setcore::is_mono(b.phi));
            }
}

TEST_CASE("essential surjectivity") {
    CHECK(is_essentially_surjective(identity_functor(bz2())));
    CHECK(is_essentially_surjective(from_unit(bz2(), 0)));
    CHECK_FALSE(is_essentially_surjective(from_unit(discrete2(), 0)));

    SUBCASE("the witness pullback for a point into BZ2 has two objects") {
        auto w = es_witness(from_unit(bz2(), 0));
        CHECK(w.e0.size() == 2);
        CHECK(setcore::is_regular_epi(w.c_fbar0));
    }
}

TEST_CASE("support") {
    SUBCASE("of an equivalence relation: sigma is bijective") {
        for (const auto& g : {discrete2(), codiscrete2()}) {
            auto s = support(g);
            CHECK(setcore::is_iso(s.sigma));
        }
    }
    SUBCASE("of BZ2: a single related pair") {
        auto s = support(bz2());
        CHECK(s.relation.arr().size() == 1);
        CHECK(s.sigma.dom().size() == 2);
        CHECK(setcore::is_regular_epi(s.sigma));
    }
    SUBCASE("of the discrete groupoid: the diagonal") {
        auto s = support(discrete2());
        CHECK(s.relation.arr().size() == 2);
    }
    SUBCASE("invariants over the enumeration") {
        for (const auto& g : enumerate_groupoids({2, 2, 3, 6})) {
            auto s = support(g);
            CHECK(setcore::is_regular_epi(s.sigma));
            CHECK(setcore::is_jointly_monic(s.r1, s.r2));
            CHECK(is_equivalence_relation(s.relation));
            CHECK(validate_groupoid(s.relation).empty());
            auto q = pi0(g);
            CHECK(setcore::compose(g.d(), q.q) == setcore::compose(g.c(), q.q));
        }
    }
}

TEST_CASE("pi0") {
    CHECK(pi0(codiscrete2()).components.size() == 1);
    CHECK(pi0(discrete2()).components.size() == 2);
    CHECK(pi0(empty_groupoid()).components.empty());

    auto id_map = pi0_map(identity_functor(bz2()));
    CHECK(id_map == setcore::identity(pi0(bz2()).components));

    SUBCASE("functoriality over composable enumerated pairs") {
        for (const auto& f : enumerate_functors(bz2(), codiscrete2()))
            for (const auto& g : enumerate_functors(codiscrete2(), discrete2()))
                CHECK(pi0_map(compose_functors(f, g)) ==
                      setcore::compose(pi0_map(f), pi0_map(g)));
    }
}

TEST_CASE("equivalence relation predicate") {
    CHECK(is_equivalence_relation(discrete2()));
    CHECK(is_equivalence_relation(codiscrete2()));
    CHECK_FALSE(is_equivalence_relation(bz2()));
}

TEST_CASE("groupoid pullbacks") {
    SUBCASE("along the identity recovers the domain") {
        auto f = d2_to_i2();
        auto pb = pullback_groupoid(f, identity_functor(f.cod));
        CHECK(validate_groupoid(pb.pb).empty());
        CHECK(is_iso_functor(pb.proj1));
        CHECK(iso_search(pb.pb, f.dom).has_value());
    }
    SUBCASE("the self-pullback of the point inclusion into BZ2 is the unit") {
        auto f = from_unit(bz2(), 0);
        auto pb = pullback_groupoid(f, f);
        CHECK(pb.pb.obj().size() == 1);
        CHECK(pb.pb.arr().size() == 1);
        CHECK(iso_search(pb.pb, unit_groupoid()).has_value());
    }
    SUBCASE("projections are functors and the square commutes") {
        auto zoo = small_zoo();
        for (const auto& h : zoo)
            for (const auto& f : enumerate_functors(h, bz2()))
                for (const auto& fp : enumerate_functors(codiscrete2(), bz2())) {
                    auto pb = pullback_groupoid(f, fp);
                    CHECK(validate_groupoid(pb.pb).empty());
                    CHECK(validate_functor(pb.proj1).empty());
                    CHECK(validate_functor(pb.proj2).empty());
                    CHECK(compose_functors(pb.proj1, f) == compose_functors(pb.proj2, fp));
                }
    }
    SUBCASE("discrete fibrations are stable under pullback") {
        auto zoo = small_zoo();
        for (const auto& g : zoo)
            for (const auto& h : zoo)
                for (const auto& f : enumerate_functors(h, g)) {
                    if (!is_discrete_fibration(f)) continue;
                    for (const auto& hp : zoo)
                        for (const auto& fp : enumerate_functors(hp, g))
                            CHECK(is_discrete_fibration(pullback_groupoid(f, fp).proj2));
                }
    }
}

TEST_CASE("psi comparison") {
    SUBCASE("identity: bijective") {
        auto p = psi(identity_functor(bz2()));
        CHECK(setcore::is_iso(p.psi));
    }
    SUBCASE("point into BZ2: 1 -> 2, not onto") {
        auto p = psi(from_unit(bz2(), 0));
        CHECK(p.psi.dom().size() == 1);
        CHECK(p.set.size() == 2);
        CHECK_FALSE(setcore::is_regular_epi(p.psi));
    }
    SUBCASE("discrete into codiscrete: bijective, since sigma_G is an iso") {
        // Both supports have monic (d,c), so the pullback collapses onto
        // Sigma H1; finality still fails through the pi0 condition.
        auto p = psi(d2_to_i2());
        CHECK(p.psi.dom().size() == 2);
        CHECK(p.set.size() == 2);
        CHECK(setcore::is_iso(p.psi));
        CHECK_FALSE(setcore::is_iso(pi0_map(d2_to_i2())));
    }
}

TEST_CASE("psi agrees with phi when pi0 of the functor is injective") {
    auto zoo = small_zoo();
    for (const auto& h : zoo)
        for (const auto& g : zoo)
            for (const auto& f : enumerate_functors(h, g)) {
                if (!setcore::is_mono(pi0_map(f))) continue;
                auto p = psi(f);
                auto b = boff_factorize(f);
                auto sh = support(f.dom);
                const Groupoid& lift = b.ff.dom;
                // The canonical comparison sends a pair (s, k) to the lift
                // arrow over the boundary of s with base arrow k.
                std::vector<int> gamma(p.set.size(), -1);
                for (std::size_t t = 0; t < p.set.size(); ++t) {
                    int s = p.sigma_leg(static_cast<int>(t));
                    int x = sh.r1(s), y = sh.r2(s);
                    for (std::size_t a = 0; a < lift.arr().size(); ++a)
                        if (lift.d()(static_cast<int>(a)) == x &&
                            lift.c()(static_cast<int>(a)) == y &&
                            setcore::pair_label(
                                sh.relation.arr().label(s),
                                b.ff.cod.arr().label(b.ff.f1(static_cast<int>(a)))) ==
                                p.set.label(static_cast<int>(t))) {
                            gamma[t] = static_cast<int>(a);
                            break;
                        }
                    REQUIRE(gamma[t] >= 0);
                }
                FinMap comparison(p.set, lift.arr(), gamma);
                CHECK(setcore::is_iso(comparison));
                CHECK(setcore::compose(p.psi, comparison) == b.phi);
            }
}
