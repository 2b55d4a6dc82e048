#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "groupoids/oracle.hpp"

// Small builders shared by the test binaries.

inline setcore::FinSet fs(std::initializer_list<std::string> labels) {
    return setcore::FinSet(std::vector<std::string>(labels));
}

inline setcore::FinMap fm(const setcore::FinSet& dom, const setcore::FinSet& cod,
                          std::initializer_list<std::pair<std::string, std::string>> pairs) {
    std::vector<int> table(dom.size(), -1);
    for (const auto& [from, to] : pairs) table[static_cast<std::size_t>(dom.index_of(from))] = cod.index_of(to);
    return setcore::FinMap(dom, cod, std::move(table));
}

inline const oracle::GroupTable& group(const std::string& name) {
    for (const auto& g : oracle::group_tables())
        if (g.name == name) return g;
    throw std::runtime_error("no such group: " + name);
}

// Standard small groupoids.
inline gpd::Groupoid unit_groupoid() { return oracle::connected_groupoid(1, group("Z1")); }
inline gpd::Groupoid bz2() { return oracle::connected_groupoid(1, group("Z2")); }
inline gpd::Groupoid bz3() { return oracle::connected_groupoid(1, group("Z3")); }
inline gpd::Groupoid bz4() { return oracle::connected_groupoid(1, group("Z4")); }
inline gpd::Groupoid bv4() { return oracle::connected_groupoid(1, group("V4")); }
inline gpd::Groupoid codiscrete2() { return oracle::connected_groupoid(2, group("Z1")); }
inline gpd::Groupoid discrete2() {
    return oracle::disjoint_union(oracle::connected_groupoid(1, group("Z1"), "c0"),
                                  oracle::connected_groupoid(1, group("Z1"), "c1"));
}
inline gpd::Groupoid empty_groupoid() {
    setcore::FinSet none;
    setcore::FinMap nothing(none, none, {});
    return gpd::Groupoid(none, none, nothing, nothing, nothing,
                         setcore::FinMap(setcore::FinSet(), none, {}), nothing);
}

/// The unique functor into the one-object one-arrow groupoid.
inline gpd::InternalFunctor to_unit(const gpd::Groupoid& h) {
    gpd::Groupoid one = unit_groupoid();
    return {h, one, setcore::FinMap(h.obj(), one.obj(), std::vector<int>(h.obj().size(), 0)),
            setcore::FinMap(h.arr(), one.arr(), std::vector<int>(h.arr().size(), 0))};
}

/// The unique functor from the unit groupoid picking object x of G.
inline gpd::InternalFunctor from_unit(const gpd::Groupoid& g, int x) {
    gpd::Groupoid one = unit_groupoid();
    return {one, g, setcore::FinMap(one.obj(), g.obj(), {x}),
            setcore::FinMap(one.arr(), g.arr(), {g.e()(x)})};
}
