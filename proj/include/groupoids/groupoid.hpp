#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "groupoids/setcore.hpp"

// Internal groupoids in finite sets and internal functors between them,
// together with the functor classes used throughout: discrete fibrations,
// full / faithful functors (via the comparison into a cartesian lifting),
// essential surjectivity, supports, connected components and levelwise
// groupoid pullbacks.

namespace gpd {

using setcore::FinMap;
using setcore::FinSet;
using setcore::internal_consistency_error;

/// An internal groupoid: objects, arrows, boundary maps d and c, units e,
/// composition m over the canonical composable-pair set, and inversion i.
/// Composition is diagrammatic: m(g,h) is defined when c(g) = d(h), with
/// d(m(g,h)) = d(g) and c(m(g,h)) = c(h).
///
/// Construction checks the wiring only (map boundaries and that m's domain
/// is the canonical pullback of (c,d)); the axioms are the business of
/// validate().  Copies are cheap (shared immutable payload).
class Groupoid {
public:
    Groupoid(FinSet obj, FinSet arr, FinMap d, FinMap c, FinMap e, FinMap m, FinMap i);

    const FinSet& obj() const { return data_->obj; }
    const FinSet& arr() const { return data_->arr; }
    const FinMap& d() const { return data_->d; }
    const FinMap& c() const { return data_->c; }
    const FinMap& e() const { return data_->e; }
    const FinMap& m() const { return data_->m; }
    const FinMap& i() const { return data_->i; }

    /// Projections of the composable-pair set (the domain of m).
    const FinMap& cp1() const { return data_->cp1; }
    const FinMap& cp2() const { return data_->cp2; }

    /// Index of the composable pair (g,h) in m's domain, or -1.
    int pair_of(int g, int h) const { return data_->comp.at(g, h); }
    /// m(g,h) for a composable pair; throws internal_consistency_error otherwise.
    int compose_arrows(int g, int h) const { return data_->m(data_->comp.require(g, h)); }

    bool operator==(const Groupoid& other) const;
    bool operator!=(const Groupoid& other) const { return !(*this == other); }

private:
    struct Data {
        FinSet obj, arr;
        FinMap d, c, e, m, i;
        FinMap cp1, cp2;
        setcore::PairIndex comp;
    };
    std::shared_ptr<const Data> data_;
};

/// Builds the m table over the canonical composable-pair set from an
/// integer composer (g,h) -> m(g,h).
Groupoid make_groupoid(FinSet obj, FinSet arr, FinMap d, FinMap c, FinMap e, FinMap i,
                       const std::function<int(int, int)>& composer);

/// Every violated axiom, in a fixed order; empty means valid.
std::vector<std::string> validate_groupoid(const Groupoid& g);

struct InternalFunctor {
    Groupoid dom, cod;
    FinMap f0, f1;

    bool operator==(const InternalFunctor& other) const;
    bool operator!=(const InternalFunctor& other) const { return !(*this == other); }
};

std::vector<std::string> validate_functor(const InternalFunctor& f);

InternalFunctor identity_functor(const Groupoid& g);

/// Diagrammatic composition: (F then G), defined when F.cod = G.dom.
InternalFunctor compose_functors(const InternalFunctor& f, const InternalFunctor& g);

bool is_iso_functor(const InternalFunctor& f);  // bijective on objects and arrows

/// True iff (c, f1) compares H1 bijectively with the pullback of c along f0.
/// The d-side comparison is cross-checked and must agree for groupoids.
bool is_discrete_fibration(const InternalFunctor& f);

struct CartesianLift {
    Groupoid lifted;            // f*G, arrows the joint pullback of (d,c) along f
    InternalFunctor to_base;    // (f, p2) : f*G -> G, fully faithful
};
CartesianLift cartesian_lift(const FinMap& f, const Groupoid& g);

struct BoffFactorization {
    InternalFunctor bo;   // identity on objects, arrow map phi
    InternalFunctor ff;   // the cartesian lifting functor
    FinMap phi;           // comparison H1 -> P
};
/// Factors F as (bijective on objects) then (fully faithful) through f0*G.
BoffFactorization boff_factorize(const InternalFunctor& f);

/// Surjectivity / injectivity of the comparison phi (computed directly;
/// agrees with boff_factorize().phi).
bool is_full(const InternalFunctor& f);
bool is_faithful(const InternalFunctor& f);

struct EsWitness {
    FinSet e0;        // pullback of d along f0
    FinMap fbar0;     // E0 -> G1
    FinMap c_fbar0;   // E0 -> G0
};
EsWitness es_witness(const InternalFunctor& f);
bool is_essentially_surjective(const InternalFunctor& f);

/// The support of a groupoid: the regular image of (d,c) in H0 x H0,
/// carrying its unique equivalence-relation groupoid structure.
struct SupportData {
    Groupoid relation;   // objects H0, arrows the image of (d,c)
    FinMap sigma;        // H1 ->> relation arrows
    FinMap r1, r2;       // jointly monic legs to H0
};
SupportData support(const Groupoid& g);

struct Pi0Data {
    FinSet components;
    FinMap q;            // coequalizer of (d, c)
};
Pi0Data pi0(const Groupoid& g);

/// The induced map pi0(dom F) -> pi0(cod F); functorial.
FinMap pi0_map(const InternalFunctor& f);

/// True iff (d,c) is jointly monic.
bool is_equivalence_relation(const Groupoid& g);

struct GroupoidPullback {
    Groupoid pb;             // levelwise pullback
    InternalFunctor proj1;   // pb -> dom of the first functor's domain side (H)
    InternalFunctor proj2;   // pb -> H'
};
GroupoidPullback pullback_groupoid(const InternalFunctor& f, const InternalFunctor& fp);

/// Mediating functor into a levelwise pullback from functors a : X -> H and
/// b : X -> H' with f . a = f' . b.
InternalFunctor into_pullback_groupoid(const GroupoidPullback& pb, const InternalFunctor& a,
                                       const InternalFunctor& b);

struct PsiData {
    FinSet set;          // pullback of sigma_G along the support map of f1
    FinMap psi;          // H1 -> set
    FinMap sigma_leg;    // set -> Sigma H1
};
PsiData psi(const InternalFunctor& f);

/// Arrow map of the support functor applied to F (well-definedness checked).
FinMap support_map(const InternalFunctor& f, const SupportData& sh, const SupportData& sg);

}  // namespace gpd
