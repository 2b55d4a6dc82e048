#include "groupoids/sweep.hpp"

#include <algorithm>
#include <thread>

namespace sweep {

using gpd::InternalFunctor;
using setcore::PairIndex;

bool fibration_pullback_square_ok(const dec::FactorizationResult& fr) {
    const auto& t = fr.t;
    const auto& g = fr.k.cod;
    auto pb = setcore::pullback(fr.k.f0, g.d());
    if (pb.set.size() != t.arr().size()) return false;
    PairIndex idx(pb.p1, pb.p2);
    std::vector<char> hit(pb.set.size(), 0);
    for (std::size_t a = 0; a < t.arr().size(); ++a) {
        int cell = idx.at(t.d()(static_cast<int>(a)), fr.k.f1(static_cast<int>(a)));
        if (cell < 0 || hit[static_cast<std::size_t>(cell)]) return false;
        hit[static_cast<std::size_t>(cell)] = 1;
    }
    return true;
}

bool factorizations_isomorphic(const dec::FactorizationResult& fr,
                               const oracle::ElementsFactorization& ef) {
    oracle::IsoConstraints cs;
    const auto& h = fr.j.dom;
    for (int x = 0; x < static_cast<int>(h.obj().size()); ++x)
        cs.obj_pre.emplace_back(fr.j.f0(x), ef.j.f0(x));
    for (int a = 0; a < static_cast<int>(h.arr().size()); ++a)
        cs.arr_pre.emplace_back(fr.j.f1(a), ef.j.f1(a));
    cs.obj_ok = [&](int t, int tp) { return ef.k.f0(tp) == fr.k.f0(t); };
    cs.arr_ok = [&](int t, int tp) { return ef.k.f1(tp) == fr.k.f1(t); };
    auto phi = oracle::iso_search(fr.t, ef.t, &cs);
    if (!phi) return false;
    return gpd::compose_functors(fr.j, *phi) == ef.j &&
           gpd::compose_functors(*phi, ef.k) == fr.k;
}

void check_instance(const InternalFunctor& f, const std::string& name, SweepStats& stats) {
    ++stats.functors;

    bool by_comma = oracle::is_final_by_comma(f);
    bool by_decalage = dec::is_final_by_decalage(f);
    bool by_fullness = dec::is_final_by_fullness(f);
    bool by_support = dec::is_final_by_support(f);
    if (by_comma != by_decalage || by_comma != by_fullness || by_comma != by_support) {
        ++stats.finality_disagreements;
        stats.failures.push_back(name + ": finality criteria disagree (comma=" +
                                 std::to_string(by_comma) + " decalage=" +
                                 std::to_string(by_decalage) + " fullness=" +
                                 std::to_string(by_fullness) + " support=" +
                                 std::to_string(by_support) + ")");
    }

    dec::FactorizationResult fr = dec::comprehensive_factorize(f);
    bool sound = gpd::compose_functors(fr.j, fr.k) == f && gpd::is_discrete_fibration(fr.k) &&
                 dec::is_final_by_decalage(fr.j) && fibration_pullback_square_ok(fr) &&
                 gpd::validate_groupoid(fr.t).empty() && gpd::validate_functor(fr.j).empty() &&
                 gpd::validate_functor(fr.k).empty();
    if (!sound) {
        ++stats.factorization_failures;
        stats.failures.push_back(name + ": comprehensive factorization unsound");
    }

    oracle::ElementsFactorization ef = oracle::elements_factorization(f);
    if (!factorizations_isomorphic(fr, ef)) {
        ++stats.oracle_mismatches;
        stats.failures.push_back(name + ": factorization differs from the elements oracle");
    }
}

SweepStats run_sweep(const SweepOptions& options) {
    auto groupoids = oracle::enumerate_groupoids(options.bounds);
    SweepStats total;
    total.groupoids = static_cast<long>(groupoids.size());

    const int n = static_cast<int>(groupoids.size());
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pairs.emplace_back(i, j);

    int jobs = std::max(1, options.jobs);
    std::vector<SweepStats> partial(pairs.size());
    auto work = [&](int worker) {
        for (std::size_t p = static_cast<std::size_t>(worker); p < pairs.size();
             p += static_cast<std::size_t>(jobs)) {
            auto [i, j] = pairs[p];
            std::string name = "H#" + std::to_string(i) + "->G#" + std::to_string(j);
            int fi = 0;
            oracle::for_each_functor(groupoids[static_cast<std::size_t>(i)],
                                     groupoids[static_cast<std::size_t>(j)],
                                     [&](const InternalFunctor& f) {
                                         check_instance(f, name + "/f" + std::to_string(fi++),
                                                        partial[p]);
                                     });
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(jobs));
        for (int w = 0; w < jobs; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }

    for (const auto& part : partial) {
        total.functors += part.functors;
        total.finality_disagreements += part.finality_disagreements;
        total.factorization_failures += part.factorization_failures;
        total.oracle_mismatches += part.oracle_mismatches;
        total.failures.insert(total.failures.end(), part.failures.begin(), part.failures.end());
    }
    return total;
}

}  // namespace sweep
