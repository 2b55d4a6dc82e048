#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupoids/groupoid.hpp"

// Ground truth computed by elementary set-level means: comma-groupoid
// finality, the classical elements-style factorization, exhaustive
// enumeration of small groupoids and functors, isomorphism search and the
// orthogonality diagonal-fill check.  Everything here is deliberately
// independent of the decalage-based constructions it is used to verify.

namespace oracle {

using gpd::Groupoid;
using gpd::InternalFunctor;
using setcore::FinMap;
using setcore::FinSet;

class no_diagonal_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite group given by a literal multiplication table.
struct GroupTable {
    std::string name;
    std::vector<std::string> elems;
    std::vector<int> mul;  // row-major: mul[a * order + b] = a.b

    int order() const { return static_cast<int>(elems.size()); }
    int product(int a, int b) const { return mul[static_cast<std::size_t>(a) * elems.size() + b]; }
    int inverse(int a) const;
};

/// Groups of order up to 6: Z1..Z6, the Klein four-group, and the
/// symmetric group on three letters, in that order (by order, then name).
const std::vector<GroupTable>& group_tables();

/// The connected groupoid with n objects and the given vertex group:
/// arrows (i -> j, a) for every object pair and group element.
Groupoid connected_groupoid(int n_objects, const GroupTable& group,
                            const std::string& label_prefix = "");

/// Disjoint union; label sets must already be disjoint.
Groupoid disjoint_union(const Groupoid& a, const Groupoid& b);

struct EnumerationBounds {
    int max_components = 2;
    int max_objects_per_component = 2;
    int max_vertex_group_order = 4;
    int max_total_arrows = 8;
};

/// One representative per isomorphism class of groupoids within bounds:
/// disjoint unions of (objects x vertex group) blocks, in deterministic
/// order (component count, then component shapes).
std::vector<Groupoid> enumerate_groupoids(const EnumerationBounds& bounds);

/// All functors H -> G, by backtracking with unit/inverse/composition
/// propagation; exhaustive and deterministic.
void for_each_functor(const Groupoid& h, const Groupoid& g,
                      const std::function<void(const InternalFunctor&)>& yield);
std::vector<InternalFunctor> enumerate_functors(const Groupoid& h, const Groupoid& g);

struct IsoConstraints {
    std::vector<std::pair<int, int>> obj_pre;  // forced object assignments
    std::vector<std::pair<int, int>> arr_pre;  // forced arrow assignments
    std::function<bool(int, int)> obj_ok;      // extra candidate filters
    std::function<bool(int, int)> arr_ok;
};

/// An isomorphism of groupoids if one exists.
std::optional<InternalFunctor> iso_search(const Groupoid& a, const Groupoid& b,
                                          const IsoConstraints* constraints = nullptr);

/// The comma groupoid (y down F): objects (g, x) with g : y -> F x,
/// arrows h : x -> x' with m(g, f1 h) = g'.
struct CommaGroupoid {
    int base_object;
    Groupoid gpd;
    std::vector<std::pair<int, int>> objects;  // (arrow of G, object of H)
    std::vector<std::pair<int, int>> arrows;   // (comma object, arrow of H)
};
CommaGroupoid comma_groupoid(int y, const InternalFunctor& f);

/// Set-level finality: every comma groupoid non-empty and connected.
bool is_final_by_comma(const InternalFunctor& f);

/// Classical elements-style comprehensive factorization, built with plain
/// union-find over pairs (x, arrow out of f0 x).
struct ElementsFactorization {
    Groupoid t;
    InternalFunctor j;  // H -> T, final
    InternalFunctor k;  // T -> G, discrete fibration
};
ElementsFactorization elements_factorization(const InternalFunctor& f);

/// The unique diagonal of a commuting square from J to D, found by
/// exhaustive functor search.  Throws no_diagonal_error if none exists and
/// internal_consistency_error if more than one does.
InternalFunctor orthogonal_fill(const InternalFunctor& j, const InternalFunctor& d,
                                const InternalFunctor& top, const InternalFunctor& bottom);

/// Number of diagonals of the square (for probing non-orthogonal pairs).
int count_diagonals(const InternalFunctor& j, const InternalFunctor& d,
                    const InternalFunctor& top, const InternalFunctor& bottom);

}  // namespace oracle
