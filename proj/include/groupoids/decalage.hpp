#pragma once

#include "groupoids/groupoid.hpp"

// The decalage construction Dec H (objects the arrows of H, arrows the
// kernel pair of c), its counit eps : Dec H -> H, the exact fork it sits
// in, and the comprehensive factorization of a functor into a final
// functor followed by a discrete fibration, obtained by applying pi0 to
// the pullback of the counit.  Three finality tests live here; the fourth,
// comma-based one is in the oracle module.

namespace dec {

using gpd::Groupoid;
using gpd::InternalFunctor;
using setcore::FinMap;
using setcore::FinSet;

/// Dec H: objects H1, arrows the kernel pair of c, with the diagonal as
/// unit.  Always an equivalence relation.
Groupoid decalage(const Groupoid& h);

/// Dec applied to a functor: object map f1, arrow map f1 x f1.
InternalFunctor decalage_functor(const InternalFunctor& f);

/// The counit eps H : Dec H -> H, a discrete fibration; object part d,
/// arrow part (g, g') |-> m(g, i g').
InternalFunctor epsilon(const Groupoid& h);

/// Levelwise check that Dec^2 H => Dec H -> H is an exact fork: the
/// parallel pair is the kernel pair of eps H, and eps H is its coequalizer.
bool exact_fork_check(const Groupoid& h);

struct FactorizationResult {
    Groupoid e;                  // pullback of F along eps G
    InternalFunctor fbar;        // E -> Dec G
    InternalFunctor delta;       // E -> H
    Groupoid r_delta;            // pullback of Fbar along eps Dec G
    InternalFunctor par1, par2;  // the parallel pair R_Delta => E
    Groupoid t;                  // pi0 of the column R_Delta => E, levelwise
    InternalFunctor j;           // H -> T, final
    InternalFunctor k;           // T -> G, discrete fibration
};

/// The comprehensive factorization F = K . J.  All induced maps are
/// constructed by representative lifting and verified independent of the
/// choice; a violation throws internal_consistency_error (it cannot fire
/// on a valid functor).
FactorizationResult comprehensive_factorize(const InternalFunctor& f);

/// Final iff the pullback of F along eps G is inverted by pi0.
bool is_final_by_decalage(const InternalFunctor& f);

/// Final iff full and essentially surjective.
bool is_final_by_fullness(const InternalFunctor& f);

/// Final iff pi0(F) is an isomorphism and the support comparison psi_F is
/// a regular epimorphism.
bool is_final_by_support(const InternalFunctor& f);

}  // namespace dec
