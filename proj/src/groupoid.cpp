#include "groupoids/groupoid.hpp"

#include <algorithm>

namespace gpd {

using setcore::boundary_error;
using setcore::PairIndex;

namespace {

void check_map_shape(const FinMap& f, const FinSet& dom, const FinSet& cod, const char* name) {
    if (f.dom() != dom || f.cod() != cod)
        throw boundary_error(std::string("groupoid wiring: ") + name +
                             " has wrong boundaries (expected " + dom.describe() + " -> " +
                             cod.describe() + ")");
}

}  // namespace

Groupoid::Groupoid(FinSet obj, FinSet arr, FinMap d, FinMap c, FinMap e, FinMap m, FinMap i) {
    check_map_shape(d, arr, obj, "d");
    check_map_shape(c, arr, obj, "c");
    check_map_shape(e, obj, arr, "e");
    check_map_shape(i, arr, arr, "i");
    auto cp = setcore::pullback(c, d);
    if (m.dom() != cp.set || m.cod() != arr)
        throw boundary_error(
            "groupoid wiring: m must be defined on the canonical composable-pair set");
    PairIndex comp(cp.p1, cp.p2);
    data_ = std::make_shared<const Data>(Data{std::move(obj), std::move(arr), std::move(d),
                                              std::move(c), std::move(e), std::move(m),
                                              std::move(i), std::move(cp.p1), std::move(cp.p2),
                                              std::move(comp)});
}

bool Groupoid::operator==(const Groupoid& other) const {
    if (data_ == other.data_) return true;
    return data_->obj == other.data_->obj && data_->arr == other.data_->arr &&
           data_->d == other.data_->d && data_->c == other.data_->c &&
           data_->e == other.data_->e && data_->m == other.data_->m &&
           data_->i == other.data_->i;
}

Groupoid make_groupoid(FinSet obj, FinSet arr, FinMap d, FinMap c, FinMap e, FinMap i,
                       const std::function<int(int, int)>& composer) {
    auto cp = setcore::pullback(c, d);
    std::vector<int> table(cp.set.size());
    for (std::size_t p = 0; p < table.size(); ++p)
        table[p] = composer(cp.p1(static_cast<int>(p)), cp.p2(static_cast<int>(p)));
    FinMap m(cp.set, arr, std::move(table));
    return Groupoid(std::move(obj), std::move(arr), std::move(d), std::move(c), std::move(e),
                    std::move(m), std::move(i));
}

std::vector<std::string> validate_groupoid(const Groupoid& g) {
    std::vector<std::string> bad;
    const int nobj = static_cast<int>(g.obj().size());
    const int narr = static_cast<int>(g.arr().size());
    const auto& d = g.d();
    const auto& c = g.c();
    const auto& e = g.e();
    const auto& m = g.m();
    const auto& i = g.i();

    for (int x = 0; x < nobj; ++x) {
        if (d(e(x)) != x)
            bad.push_back("d(e(" + g.obj().label(x) + ")) != " + g.obj().label(x));
        if (c(e(x)) != x)
            bad.push_back("c(e(" + g.obj().label(x) + ")) != " + g.obj().label(x));
    }

    const int npairs = static_cast<int>(m.dom().size());
    for (int p = 0; p < npairs; ++p) {
        int a = g.cp1()(p), b = g.cp2()(p), ab = m(p);
        if (d(ab) != d(a))
            bad.push_back("d(m(" + g.arr().label(a) + "," + g.arr().label(b) + ")) != d(" +
                          g.arr().label(a) + ")");
        if (c(ab) != c(b))
            bad.push_back("c(m(" + g.arr().label(a) + "," + g.arr().label(b) + ")) != c(" +
                          g.arr().label(b) + ")");
    }

    for (int a = 0; a < narr; ++a) {
        int lp = g.pair_of(e(d(a)), a);
        if (lp < 0 || m(lp) != a)
            bad.push_back("left unit law fails at " + g.arr().label(a));
        int rp = g.pair_of(a, e(c(a)));
        if (rp < 0 || m(rp) != a)
            bad.push_back("right unit law fails at " + g.arr().label(a));
    }

    // Associativity over all composable triples.
    for (int p = 0; p < npairs; ++p) {
        int a = g.cp1()(p), b = g.cp2()(p), ab = m(p);
        for (int k = 0; k < narr; ++k) {
            if (d(k) != c(b)) continue;
            int bk = g.pair_of(b, k);
            int ab_k = g.pair_of(ab, k);
            if (bk < 0 || ab_k < 0) continue;  // boundary defects already reported
            int a_bk = g.pair_of(a, m(bk));
            if (a_bk < 0 || m(ab_k) != m(a_bk))
                bad.push_back("associativity fails at (" + g.arr().label(a) + "," +
                              g.arr().label(b) + "," + g.arr().label(k) + ")");
        }
    }

    for (int a = 0; a < narr; ++a) {
        if (d(i(a)) != c(a))
            bad.push_back("d(i(" + g.arr().label(a) + ")) != c(" + g.arr().label(a) + ")");
        if (c(i(a)) != d(a))
            bad.push_back("c(i(" + g.arr().label(a) + ")) != d(" + g.arr().label(a) + ")");
        int rp = g.pair_of(a, i(a));
        if (rp < 0 || m(rp) != e(d(a)))
            bad.push_back("m(" + g.arr().label(a) + ", i " + g.arr().label(a) + ") != unit");
        int lp = g.pair_of(i(a), a);
        if (lp < 0 || m(lp) != e(c(a)))
            bad.push_back("m(i " + g.arr().label(a) + ", " + g.arr().label(a) + ") != unit");
    }

    return bad;
}

bool InternalFunctor::operator==(const InternalFunctor& other) const {
    return f0 == other.f0 && f1 == other.f1 && dom == other.dom && cod == other.cod;
}

std::vector<std::string> validate_functor(const InternalFunctor& f) {
    std::vector<std::string> bad;
    if (f.f0.dom() != f.dom.obj() || f.f0.cod() != f.cod.obj()) {
        bad.push_back("f0 is not a map from domain objects to codomain objects");
        return bad;
    }
    if (f.f1.dom() != f.dom.arr() || f.f1.cod() != f.cod.arr()) {
        bad.push_back("f1 is not a map from domain arrows to codomain arrows");
        return bad;
    }
    const auto& h = f.dom;
    const auto& g = f.cod;
    const int narr = static_cast<int>(h.arr().size());
    for (int a = 0; a < narr; ++a) {
        if (f.f0(h.d()(a)) != g.d()(f.f1(a)))
            bad.push_back("f0 d != d f1 at " + h.arr().label(a));
        if (f.f0(h.c()(a)) != g.c()(f.f1(a)))
            bad.push_back("f0 c != c f1 at " + h.arr().label(a));
    }
    const int nobj = static_cast<int>(h.obj().size());
    for (int x = 0; x < nobj; ++x)
        if (f.f1(h.e()(x)) != g.e()(f.f0(x)))
            bad.push_back("unit not preserved at " + h.obj().label(x));
    const int npairs = static_cast<int>(h.m().dom().size());
    for (int p = 0; p < npairs; ++p) {
        int a = h.cp1()(p), b = h.cp2()(p);
        int q = g.pair_of(f.f1(a), f.f1(b));
        if (q < 0 || g.m()(q) != f.f1(h.m()(p)))
            bad.push_back("composition not preserved at (" + h.arr().label(a) + "," +
                          h.arr().label(b) + ")");
    }
    return bad;
}

InternalFunctor identity_functor(const Groupoid& g) {
    return {g, g, setcore::identity(g.obj()), setcore::identity(g.arr())};
}

InternalFunctor compose_functors(const InternalFunctor& f, const InternalFunctor& g) {
    if (f.cod != g.dom)
        throw boundary_error("cannot compose functors: middle groupoids differ");
    return {f.dom, g.cod, setcore::compose(f.f0, g.f0), setcore::compose(f.f1, g.f1)};
}

bool is_iso_functor(const InternalFunctor& f) {
    return setcore::is_iso(f.f0) && setcore::is_iso(f.f1);
}

namespace {

// Comparison of H1 with the pullback of a boundary map along f0, done on
// flat integer keys.  side = c gives the displayed square, side = d the
// dashed one.
bool boundary_square_is_pullback(const InternalFunctor& f, const FinMap& h_side,
                                 const FinMap& g_side) {
    const std::size_t ng1 = f.cod.arr().size();
    std::vector<char> hit(f.dom.obj().size() * ng1, 0);
    const int narr = static_cast<int>(f.dom.arr().size());
    for (int a = 0; a < narr; ++a) {
        std::size_t key = static_cast<std::size_t>(h_side(a)) * ng1 +
                          static_cast<std::size_t>(f.f1(a));
        if (hit[key]) return false;  // not jointly monic
        hit[key] = 1;
    }
    std::size_t expected = 0;
    const int nobj = static_cast<int>(f.dom.obj().size());
    const int ng = static_cast<int>(ng1);
    for (int x = 0; x < nobj; ++x)
        for (int k = 0; k < ng; ++k)
            if (f.f0(x) == g_side(k)) {
                if (!hit[static_cast<std::size_t>(x) * ng1 + static_cast<std::size_t>(k)])
                    return false;
                ++expected;
            }
    return expected == static_cast<std::size_t>(narr);
}

}  // namespace

bool is_discrete_fibration(const InternalFunctor& f) {
    bool c_side = boundary_square_is_pullback(f, f.dom.c(), f.cod.c());
    bool d_side = boundary_square_is_pullback(f, f.dom.d(), f.cod.d());
    if (c_side != d_side)
        throw internal_consistency_error(
            "discrete-fibration check: c-side and d-side squares disagree");
    return c_side;
}

CartesianLift cartesian_lift(const FinMap& f, const Groupoid& g) {
    if (f.cod() != g.obj())
        throw boundary_error("cartesian lift: map must land in the groupoid's objects, got " +
                             f.cod().describe() + " vs " + g.obj().describe());
    const FinSet& x = f.dom();
    auto xx = setcore::product(x, x);
    auto g0g0 = setcore::product(g.obj(), g.obj());
    FinMap fxf = setcore::into_pullback({g0g0.set, g0g0.p1, g0g0.p2},
                                        setcore::compose(xx.p1, f), setcore::compose(xx.p2, f));
    FinMap dc = setcore::into_pullback({g0g0.set, g0g0.p1, g0g0.p2}, g.d(), g.c());
    auto p = setcore::pullback(fxf, dc);
    PairIndex pidx(p.p1, p.p2);
    PairIndex xxidx(xx.p1, xx.p2);

    FinMap d = setcore::compose(p.p1, xx.p1);
    FinMap c = setcore::compose(p.p1, xx.p2);

    std::vector<int> etab(x.size());
    for (std::size_t ox = 0; ox < x.size(); ++ox)
        etab[ox] = pidx.require(xxidx.require(static_cast<int>(ox), static_cast<int>(ox)),
                                g.e()(f(static_cast<int>(ox))));
    FinMap e(x, p.set, std::move(etab));

    std::vector<int> itab(p.set.size());
    for (std::size_t a = 0; a < p.set.size(); ++a) {
        int xy = p.p1(static_cast<int>(a));
        itab[a] = pidx.require(xxidx.require(xx.p2(xy), xx.p1(xy)),
                               g.i()(p.p2(static_cast<int>(a))));
    }
    FinMap i(p.set, p.set, std::move(itab));

    auto composer = [&](int a, int b) {
        int xy = p.p1(a), yz = p.p1(b);
        return pidx.require(xxidx.require(xx.p1(xy), xx.p2(yz)),
                            g.compose_arrows(p.p2(a), p.p2(b)));
    };
    Groupoid lifted = make_groupoid(x, p.set, std::move(d), std::move(c), std::move(e),
                                    std::move(i), composer);
    InternalFunctor to_base{lifted, g, f, p.p2};
    return {lifted, to_base};
}

BoffFactorization boff_factorize(const InternalFunctor& f) {
    auto lift = cartesian_lift(f.f0, f.cod);
    const Groupoid& l = lift.lifted;
    // phi : H1 -> P, h |-> ((d h, c h), f1 h).  Lift arrows are located by
    // their object pair (the lift's d and c) and base arrow (to_base.f1).
    const std::size_t nx = f.dom.obj().size();
    const std::size_t ng1 = f.cod.arr().size();
    std::vector<int> where(nx * nx * ng1, -1);
    for (std::size_t a = 0; a < l.arr().size(); ++a) {
        std::size_t key = (static_cast<std::size_t>(l.d()(static_cast<int>(a))) * nx +
                           static_cast<std::size_t>(l.c()(static_cast<int>(a)))) * ng1 +
                          static_cast<std::size_t>(lift.to_base.f1(static_cast<int>(a)));
        where[key] = static_cast<int>(a);
    }
    std::vector<int> phitab(f.dom.arr().size());
    for (std::size_t h = 0; h < phitab.size(); ++h) {
        std::size_t key = (static_cast<std::size_t>(f.dom.d()(static_cast<int>(h))) * nx +
                           static_cast<std::size_t>(f.dom.c()(static_cast<int>(h)))) * ng1 +
                          static_cast<std::size_t>(f.f1(static_cast<int>(h)));
        int a = where[key];
        if (a < 0)
            throw internal_consistency_error("comparison into the cartesian lift misses its target");
        phitab[h] = a;
    }
    FinMap phi(f.dom.arr(), l.arr(), std::move(phitab));
    InternalFunctor bo{f.dom, l, setcore::identity(f.dom.obj()), phi};
    return {bo, lift.to_base, phi};
}

bool is_full(const InternalFunctor& f) {
    const std::size_t nx = f.dom.obj().size();
    const std::size_t ng1 = f.cod.arr().size();
    std::vector<char> hit(nx * nx * ng1, 0);
    const int narr = static_cast<int>(f.dom.arr().size());
    for (int h = 0; h < narr; ++h)
        hit[(static_cast<std::size_t>(f.dom.d()(h)) * nx +
             static_cast<std::size_t>(f.dom.c()(h))) * ng1 +
            static_cast<std::size_t>(f.f1(h))] = 1;
    const int nobj = static_cast<int>(nx);
    const int ng = static_cast<int>(ng1);
    for (int x = 0; x < nobj; ++x)
        for (int y = 0; y < nobj; ++y)
            for (int k = 0; k < ng; ++k)
                if (f.cod.d()(k) == f.f0(x) && f.cod.c()(k) == f.f0(y) &&
                    !hit[(static_cast<std::size_t>(x) * nx + static_cast<std::size_t>(y)) * ng1 +
                         static_cast<std::size_t>(k)])
                    return false;
    return true;
}

bool is_faithful(const InternalFunctor& f) {
    const std::size_t nx = f.dom.obj().size();
    const std::size_t ng1 = f.cod.arr().size();
    std::vector<char> hit(nx * nx * ng1, 0);
    const int narr = static_cast<int>(f.dom.arr().size());
    for (int h = 0; h < narr; ++h) {
        std::size_t key = (static_cast<std::size_t>(f.dom.d()(h)) * nx +
                           static_cast<std::size_t>(f.dom.c()(h))) * ng1 +
                          static_cast<std::size_t>(f.f1(h));
        if (hit[key]) return false;
        hit[key] = 1;
    }
    return true;
}

EsWitness es_witness(const InternalFunctor& f) {
    auto pb = setcore::pullback(f.f0, f.cod.d());
    return {pb.set, pb.p2, setcore::compose(pb.p2, f.cod.c())};
}

bool is_essentially_surjective(const InternalFunctor& f) {
    return setcore::is_regular_epi(es_witness(f).c_fbar0);
}

SupportData support(const Groupoid& g) {
    auto prod = setcore::product(g.obj(), g.obj());
    FinMap dc = setcore::into_pullback({prod.set, prod.p1, prod.p2}, g.d(), g.c());
    auto img = setcore::image_factorize(dc);
    FinMap sigma = img.repi;
    FinMap r1 = setcore::compose(img.mono, prod.p1);
    FinMap r2 = setcore::compose(img.mono, prod.p2);

    // The relation structure is forced by joint monicity: each boundary
    // pair occurs at most once, so units, composites and inverses are
    // looked up by boundary.
    const std::size_t nobj = g.obj().size();
    std::vector<int> by_boundary(nobj * nobj, -1);
    for (std::size_t s = 0; s < r1.dom().size(); ++s)
        by_boundary[static_cast<std::size_t>(r1(static_cast<int>(s))) * nobj +
                    static_cast<std::size_t>(r2(static_cast<int>(s)))] = static_cast<int>(s);
    auto lookup = [&](int x, int y) {
        int s = by_boundary[static_cast<std::size_t>(x) * nobj + static_cast<std::size_t>(y)];
        if (s < 0)
            throw internal_consistency_error("support relation is missing a required pair");
        return s;
    };

    std::vector<int> etab(nobj);
    for (std::size_t x = 0; x < nobj; ++x)
        etab[x] = lookup(static_cast<int>(x), static_cast<int>(x));
    FinMap e(g.obj(), r1.dom(), std::move(etab));

    std::vector<int> itab(r1.dom().size());
    for (std::size_t s = 0; s < itab.size(); ++s)
        itab[s] = lookup(r2(static_cast<int>(s)), r1(static_cast<int>(s)));
    FinMap inv(r1.dom(), r1.dom(), std::move(itab));

    Groupoid relation = make_groupoid(g.obj(), r1.dom(), r1, r2, std::move(e), std::move(inv),
                                      [&](int s, int t) { return lookup(r1(s), r2(t)); });
    return {relation, sigma, r1, r2};
}

Pi0Data pi0(const Groupoid& g) {
    auto coeq = setcore::coequalizer(g.d(), g.c());
    return {coeq.set, coeq.q};
}

FinMap pi0_map(const InternalFunctor& f) {
    auto qh = pi0(f.dom);
    auto qg = pi0(f.cod);
    return setcore::induce_on_quotient(qh.q, setcore::compose(f.f0, qg.q));
}

bool is_equivalence_relation(const Groupoid& g) {
    return setcore::is_jointly_monic(g.d(), g.c());
}

GroupoidPullback pullback_groupoid(const InternalFunctor& f, const InternalFunctor& fp) {
    if (f.cod != fp.cod)
        throw boundary_error("groupoid pullback requires a common codomain");
    auto obj = setcore::pullback(f.f0, fp.f0);
    auto arr = setcore::pullback(f.f1, fp.f1);
    PairIndex oidx(obj.p1, obj.p2);
    PairIndex aidx(arr.p1, arr.p2);

    const Groupoid& h = f.dom;
    const Groupoid& hp = fp.dom;

    std::vector<int> dtab(arr.set.size()), ctab(arr.set.size()), itab(arr.set.size());
    for (std::size_t a = 0; a < arr.set.size(); ++a) {
        int u = arr.p1(static_cast<int>(a)), v = arr.p2(static_cast<int>(a));
        dtab[a] = oidx.require(h.d()(u), hp.d()(v));
        ctab[a] = oidx.require(h.c()(u), hp.c()(v));
        itab[a] = aidx.require(h.i()(u), hp.i()(v));
    }
    std::vector<int> etab(obj.set.size());
    for (std::size_t x = 0; x < obj.set.size(); ++x)
        etab[x] = aidx.require(h.e()(obj.p1(static_cast<int>(x))),
                               hp.e()(obj.p2(static_cast<int>(x))));

    FinMap d(arr.set, obj.set, std::move(dtab));
    FinMap c(arr.set, obj.set, std::move(ctab));
    FinMap e(obj.set, arr.set, std::move(etab));
    FinMap i(arr.set, arr.set, std::move(itab));

    auto composer = [&](int a, int b) {
        return aidx.require(h.compose_arrows(arr.p1(a), arr.p1(b)),
                            hp.compose_arrows(arr.p2(a), arr.p2(b)));
    };
    Groupoid pb = make_groupoid(obj.set, arr.set, std::move(d), std::move(c), std::move(e),
                                std::move(i), composer);
    InternalFunctor proj1{pb, h, obj.p1, arr.p1};
    InternalFunctor proj2{pb, hp, obj.p2, arr.p2};
    return {pb, proj1, proj2};
}

InternalFunctor into_pullback_groupoid(const GroupoidPullback& pb, const InternalFunctor& a,
                                       const InternalFunctor& b) {
    if (a.dom != b.dom)
        throw boundary_error("mediating functor requires a common domain");
    PairIndex oidx(pb.proj1.f0, pb.proj2.f0);
    PairIndex aidx(pb.proj1.f1, pb.proj2.f1);
    std::vector<int> f0tab(a.f0.dom().size()), f1tab(a.f1.dom().size());
    for (std::size_t x = 0; x < f0tab.size(); ++x)
        f0tab[x] = oidx.require(a.f0(static_cast<int>(x)), b.f0(static_cast<int>(x)));
    for (std::size_t t = 0; t < f1tab.size(); ++t)
        f1tab[t] = aidx.require(a.f1(static_cast<int>(t)), b.f1(static_cast<int>(t)));
    return {a.dom, pb.pb, FinMap(a.f0.dom(), pb.pb.obj(), std::move(f0tab)),
            FinMap(a.f1.dom(), pb.pb.arr(), std::move(f1tab))};
}

FinMap support_map(const InternalFunctor& f, const SupportData& sh, const SupportData& sg) {
    return setcore::induce_on_quotient(sh.sigma, setcore::compose(f.f1, sg.sigma));
}

PsiData psi(const InternalFunctor& f) {
    auto sh = support(f.dom);
    auto sg = support(f.cod);
    FinMap sf = support_map(f, sh, sg);
    auto pb = setcore::pullback(sf, sg.sigma);
    PairIndex idx(pb.p1, pb.p2);
    std::vector<int> table(f.dom.arr().size());
    for (std::size_t h = 0; h < table.size(); ++h)
        table[h] = idx.require(sh.sigma(static_cast<int>(h)), f.f1(static_cast<int>(h)));
    return {pb.set, FinMap(f.dom.arr(), pb.set, std::move(table)), pb.p1};
}

}  // namespace gpd
