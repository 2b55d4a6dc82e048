#include "groupoids/decalage.hpp"

#include <array>
#include <vector>

namespace dec {

using gpd::compose_functors;
using gpd::identity_functor;
using gpd::into_pullback_groupoid;
using gpd::pullback_groupoid;
using setcore::internal_consistency_error;
using setcore::PairIndex;

Groupoid decalage(const Groupoid& h) {
    auto rc = setcore::kernel_pair(h.c());
    PairIndex idx(rc.p1, rc.p2);

    std::vector<int> etab(h.arr().size());
    for (std::size_t g = 0; g < etab.size(); ++g)
        etab[g] = idx.require(static_cast<int>(g), static_cast<int>(g));
    FinMap e(h.arr(), rc.set, std::move(etab));

    std::vector<int> itab(rc.set.size());
    for (std::size_t p = 0; p < itab.size(); ++p)
        itab[p] = idx.require(rc.p2(static_cast<int>(p)), rc.p1(static_cast<int>(p)));
    FinMap i(rc.set, rc.set, std::move(itab));

    auto composer = [&](int p, int q) { return idx.require(rc.p1(p), rc.p2(q)); };
    return gpd::make_groupoid(h.arr(), rc.set, rc.p1, rc.p2, e, i, composer);
}

InternalFunctor decalage_functor(const InternalFunctor& f) {
    Groupoid dh = decalage(f.dom);
    Groupoid dg = decalage(f.cod);
    PairIndex idx(dg.d(), dg.c());
    std::vector<int> f1tab(dh.arr().size());
    for (std::size_t p = 0; p < f1tab.size(); ++p)
        f1tab[p] = idx.require(f.f1(dh.d()(static_cast<int>(p))),
                               f.f1(dh.c()(static_cast<int>(p))));
    return {dh, dg, f.f1, FinMap(dh.arr(), dg.arr(), std::move(f1tab))};
}

InternalFunctor epsilon(const Groupoid& h) {
    Groupoid dh = decalage(h);
    std::vector<int> f1tab(dh.arr().size());
    for (std::size_t p = 0; p < f1tab.size(); ++p) {
        int g = dh.d()(static_cast<int>(p));
        int gp = dh.c()(static_cast<int>(p));
        f1tab[p] = h.compose_arrows(g, h.i()(gp));
    }
    return {dh, h, h.d(), FinMap(dh.arr(), h.arr(), std::move(f1tab))};
}

namespace {

bool fork_level(const FinMap& u, const FinMap& v, const FinMap& w) {
    if (setcore::compose(u, w) != setcore::compose(v, w)) return false;
    // (u, v) is the kernel pair of w.
    auto kp = setcore::kernel_pair(w);
    PairIndex idx(kp.p1, kp.p2);
    std::vector<char> hit(kp.set.size(), 0);
    for (std::size_t t = 0; t < u.dom().size(); ++t) {
        int cell = idx.at(u(static_cast<int>(t)), v(static_cast<int>(t)));
        if (cell < 0 || hit[static_cast<std::size_t>(cell)]) return false;
        hit[static_cast<std::size_t>(cell)] = 1;
    }
    if (u.dom().size() != kp.set.size()) return false;
    // w is the coequalizer of (u, v).
    auto coeq = setcore::coequalizer(u, v);
    return setcore::is_iso(setcore::induce_on_quotient(coeq.q, w));
}

}  // namespace

bool exact_fork_check(const Groupoid& h) {
    Groupoid dh = decalage(h);
    InternalFunctor eps_h = epsilon(h);
    InternalFunctor eps_dh = epsilon(dh);
    InternalFunctor dec_eps = decalage_functor(eps_h);
    return fork_level(eps_dh.f0, dec_eps.f0, eps_h.f0) &&
           fork_level(eps_dh.f1, dec_eps.f1, eps_h.f1);
}

namespace {

// The splitting Dec G -> Dec^2 G of the parallel pair (eps Dec G, Dec eps G):
// g |-> (g, e(c g)) on objects.
InternalFunctor decalage_splitting(const Groupoid& g, const Groupoid& dg, const Groupoid& d2g) {
    PairIndex rc(dg.d(), dg.c());
    PairIndex rc2(d2g.d(), d2g.c());
    std::vector<int> f0tab(dg.obj().size());
    for (std::size_t a = 0; a < f0tab.size(); ++a)
        f0tab[a] = rc.require(static_cast<int>(a), g.e()(g.c()(static_cast<int>(a))));
    FinMap f0(dg.obj(), d2g.obj(), f0tab);
    std::vector<int> f1tab(dg.arr().size());
    for (std::size_t p = 0; p < f1tab.size(); ++p)
        f1tab[p] = rc2.require(f0(dg.d()(static_cast<int>(p))), f0(dg.c()(static_cast<int>(p))));
    return {dg, d2g, std::move(f0), FinMap(dg.arr(), d2g.arr(), std::move(f1tab))};
}

// The leg swap on Dec^2 G: (g, g') |-> (m(g, i g'), i g'), exchanging
// eps Dec G with Dec eps G.
InternalFunctor decalage_symmetry(const Groupoid& g, const Groupoid& dg, const Groupoid& d2g) {
    PairIndex rc(dg.d(), dg.c());
    PairIndex rc2(d2g.d(), d2g.c());
    std::vector<int> f0tab(d2g.obj().size());
    for (std::size_t p = 0; p < f0tab.size(); ++p) {
        int a = dg.d()(static_cast<int>(p));
        int b = dg.c()(static_cast<int>(p));
        f0tab[p] = rc.require(g.compose_arrows(a, g.i()(b)), g.i()(b));
    }
    FinMap f0(d2g.obj(), d2g.obj(), f0tab);
    std::vector<int> f1tab(d2g.arr().size());
    for (std::size_t q = 0; q < f1tab.size(); ++q)
        f1tab[q] = rc2.require(f0(d2g.d()(static_cast<int>(q))), f0(d2g.c()(static_cast<int>(q))));
    return {d2g, d2g, std::move(f0), FinMap(d2g.arr(), d2g.arr(), std::move(f1tab))};
}

}  // namespace

FactorizationResult comprehensive_factorize(const InternalFunctor& f) {
    const Groupoid& h = f.dom;
    const Groupoid& g = f.cod;

    InternalFunctor eps_g = epsilon(g);
    const Groupoid& dg = eps_g.dom;
    auto eg = pullback_groupoid(f, eps_g);
    const Groupoid& e = eg.pb;
    InternalFunctor delta = eg.proj1;
    InternalFunctor fbar = eg.proj2;

    InternalFunctor eps_dg = epsilon(dg);
    const Groupoid& d2g = eps_dg.dom;
    auto rd = pullback_groupoid(fbar, eps_dg);
    const Groupoid& r_delta = rd.pb;
    InternalFunctor par1 = rd.proj1;
    InternalFunctor dec_eps_g = decalage_functor(eps_g);
    InternalFunctor par2 = into_pullback_groupoid(
        eg, compose_functors(par1, delta), compose_functors(rd.proj2, dec_eps_g));

    InternalFunctor split = decalage_splitting(g, dg, d2g);
    InternalFunctor refl = into_pullback_groupoid(rd, identity_functor(e),
                                                  compose_functors(fbar, split));
    InternalFunctor sym = into_pullback_groupoid(
        rd, par2, compose_functors(rd.proj2, decalage_symmetry(g, dg, d2g)));

    auto q_e = gpd::pi0(e);
    auto q_r = gpd::pi0(r_delta);
    const FinSet& t0 = q_e.components;
    const FinSet& t1 = q_r.components;

    FinMap d_t = setcore::induce_on_quotient(q_r.q, setcore::compose(par2.f0, q_e.q));
    FinMap c_t = setcore::induce_on_quotient(q_r.q, setcore::compose(par1.f0, q_e.q));
    FinMap e_t = setcore::induce_on_quotient(q_e.q, setcore::compose(refl.f0, q_r.q));
    FinMap i_t = setcore::induce_on_quotient(q_r.q, setcore::compose(sym.f0, q_r.q));

    // Coordinates for representative lifting: an R_Delta object decodes to
    // (x in H0, g and g' in G1) with f0 x = d g and c g = c g'.
    PairIndex e_idx(delta.f0, fbar.f0);
    PairIndex rc_idx(dg.d(), dg.c());
    PairIndex rd_idx(rd.proj1.f0, rd.proj2.f0);
    auto decode = [&](int rho) {
        int e_part = rd.proj1.f0(rho);
        int d2_part = rd.proj2.f0(rho);
        return std::array<int, 3>{delta.f0(e_part), dg.d()(d2_part), dg.c()(d2_part)};
    };
    std::vector<std::vector<int>> members(t1.size());
    for (std::size_t rho = 0; rho < r_delta.obj().size(); ++rho)
        members[static_cast<std::size_t>(q_r.q(static_cast<int>(rho)))].push_back(
            static_cast<int>(rho));

    // Composition on T, lifted through representatives and checked to be
    // independent of the choice.
    auto composer = [&](int tau, int tau_p) {
        int result = -1;
        for (int rho : members[static_cast<std::size_t>(tau)])
            for (int rho_p : members[static_cast<std::size_t>(tau_p)]) {
                auto [x, ga, gb] = decode(rho);
                auto [u, ka, kb] = decode(rho_p);
                (void)u;
                if (g.c()(ga) != g.d()(kb))
                    throw internal_consistency_error(
                        "factorization: representatives of composable classes do not compose");
                int gnew = g.compose_arrows(ga, kb);
                int gpnew = g.compose_arrows(gb, kb);
                int composite = rd_idx.require(e_idx.require(x, gnew),
                                               rc_idx.require(gnew, gpnew));
                int cls = q_r.q(composite);
                if (result < 0)
                    result = cls;
                else if (result != cls)
                    throw internal_consistency_error(
                        "factorization: composite depends on the choice of representatives");
            }
        if (result < 0)
            throw internal_consistency_error("factorization: empty component class");
        return result;
    };
    Groupoid t = gpd::make_groupoid(t0, t1, d_t, c_t, e_t, i_t, composer);

    std::vector<int> j0tab(h.obj().size());
    for (std::size_t x = 0; x < j0tab.size(); ++x)
        j0tab[x] = q_e.q(e_idx.require(static_cast<int>(x), g.e()(f.f0(static_cast<int>(x)))));
    FinMap j0(h.obj(), t0, std::move(j0tab));

    std::vector<int> j1tab(h.arr().size());
    for (std::size_t a = 0; a < j1tab.size(); ++a) {
        int img = f.f1(static_cast<int>(a));
        j1tab[a] = q_r.q(rd_idx.require(e_idx.require(h.d()(static_cast<int>(a)), img),
                                        rc_idx.require(img, img)));
    }
    FinMap j1(h.arr(), t1, std::move(j1tab));

    FinMap k0 = setcore::induce_on_quotient(q_e.q, setcore::compose(fbar.f0, g.c()));
    FinMap k1 = setcore::induce_on_quotient(q_r.q, setcore::compose(rd.proj2.f0, dg.c()));

    InternalFunctor j{h, t, j0, j1};
    InternalFunctor k{t, g, k0, k1};
    if (compose_functors(j, k) != f)
        throw internal_consistency_error("factorization: K . J differs from F");
    return {e, fbar, delta, r_delta, par1, par2, t, j, k};
}

bool is_final_by_decalage(const InternalFunctor& f) {
    auto eg = pullback_groupoid(f, epsilon(f.cod));
    return setcore::is_iso(gpd::pi0_map(eg.proj2));
}

bool is_final_by_fullness(const InternalFunctor& f) {
    return gpd::is_full(f) && gpd::is_essentially_surjective(f);
}

bool is_final_by_support(const InternalFunctor& f) {
    return setcore::is_iso(gpd::pi0_map(f)) && setcore::is_regular_epi(gpd::psi(f).psi);
}

}  // namespace dec
