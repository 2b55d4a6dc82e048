#pragma once

#include <string>
#include <vector>

#include "groupoids/decalage.hpp"
#include "groupoids/oracle.hpp"

// Exhaustive verification sweep: enumerates all groupoids within bounds and
// all functors between them, and checks on every instance that the four
// finality tests agree, that the comprehensive factorization is sound, and
// that it matches the elements-style oracle up to isomorphism.

namespace sweep {

struct SweepOptions {
    oracle::EnumerationBounds bounds;
    int jobs = 1;
};

struct SweepStats {
    long groupoids = 0;
    long functors = 0;
    long finality_disagreements = 0;
    long factorization_failures = 0;
    long oracle_mismatches = 0;
    std::vector<std::string> failures;  // one line per failing instance

    bool clean() const {
        return finality_disagreements == 0 && factorization_failures == 0 &&
               oracle_mismatches == 0;
    }
};

SweepStats run_sweep(const SweepOptions& options);

/// Checks one functor; appends failure descriptions and updates counters.
void check_instance(const gpd::InternalFunctor& f, const std::string& name, SweepStats& stats);

/// True iff (d_T, k1) compares T1 bijectively with the pullback of d along k0.
bool fibration_pullback_square_ok(const dec::FactorizationResult& fr);

/// Searches for an isomorphism T -> T' compatible with both factorizations.
bool factorizations_isomorphic(const dec::FactorizationResult& fr,
                               const oracle::ElementsFactorization& ef);

}  // namespace sweep
