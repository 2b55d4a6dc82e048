#include "groupoids/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

using setcore::boundary_error;
using setcore::internal_consistency_error;
using setcore::PairIndex;

int GroupTable::inverse(int a) const {
    const int n = order();
    for (int b = 0; b < n; ++b)
        if (product(a, b) == 0) return b;
    throw internal_consistency_error("group table has no inverse for element " + elems[a]);
}

const std::vector<GroupTable>& group_tables() {
    static const std::vector<GroupTable> tables = [] {
        std::vector<GroupTable> t;
        auto cyclic = [](std::string name, int n) {
            GroupTable g;
            g.name = std::move(name);
            for (int a = 0; a < n; ++a)
                g.elems.push_back(a == 0 ? "e" : (a == 1 ? "g" : "g" + std::to_string(a)));
            g.mul.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) g.mul[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
            return g;
        };
        t.push_back(cyclic("Z1", 1));
        t.push_back(cyclic("Z2", 2));
        t.push_back(cyclic("Z3", 3));
        t.push_back(cyclic("Z4", 4));
        t.push_back(GroupTable{"V4",
                               {"e", "a", "b", "c"},
                               {0, 1, 2, 3,
                                1, 0, 3, 2,
                                2, 3, 0, 1,
                                3, 2, 1, 0}});
        t.push_back(cyclic("Z5", 5));
        t.push_back(cyclic("Z6", 6));
        t.push_back(GroupTable{"S3",
                               {"e", "r", "r2", "s", "rs", "r2s"},
                               {0, 1, 2, 3, 4, 5,
                                1, 2, 0, 4, 5, 3,
                                2, 0, 1, 5, 3, 4,
                                3, 5, 4, 0, 2, 1,
                                4, 3, 5, 1, 0, 2,
                                5, 4, 3, 2, 1, 0}});
        return t;
    }();
    return tables;
}

Groupoid connected_groupoid(int n_objects, const GroupTable& group,
                            const std::string& label_prefix) {
    const int n = n_objects;
    const int k = group.order();
    std::vector<std::string> objs;
    objs.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) objs.push_back(label_prefix + "x" + std::to_string(x));

    std::vector<std::string> arrs;
    std::vector<int> dtab, ctab;
    arrs.reserve(static_cast<std::size_t>(n) * n * k);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int a = 0; a < k; ++a) {
                arrs.push_back(label_prefix + "a" + std::to_string(x) + "_" + std::to_string(y) +
                               "_" + group.elems[static_cast<std::size_t>(a)]);
                dtab.push_back(x);
                ctab.push_back(y);
            }
    FinSet obj(std::move(objs));
    FinSet arr(std::move(arrs));
    auto arrow_at = [&](int x, int y, int a) { return (x * n + y) * k + a; };

    std::vector<int> etab(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) etab[static_cast<std::size_t>(x)] = arrow_at(x, x, 0);
    std::vector<int> itab(arr.size());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int a = 0; a < k; ++a)
                itab[static_cast<std::size_t>(arrow_at(x, y, a))] =
                    arrow_at(y, x, group.inverse(a));

    FinMap d(arr, obj, std::move(dtab));
    FinMap c(arr, obj, std::move(ctab));
    FinMap e(obj, arr, std::move(etab));
    FinMap i(arr, arr, std::move(itab));
    auto composer = [n, k, &group](int g, int h) {
        int gx = g / (n * k);
        int hy = (h / k) % n;
        return (gx * n + hy) * k + group.product(g % k, h % k);
    };
    return gpd::make_groupoid(obj, arr, d, c, e, i, composer);
}

Groupoid disjoint_union(const Groupoid& a, const Groupoid& b) {
    std::vector<std::string> objs = a.obj().labels();
    objs.insert(objs.end(), b.obj().labels().begin(), b.obj().labels().end());
    std::vector<std::string> arrs = a.arr().labels();
    arrs.insert(arrs.end(), b.arr().labels().begin(), b.arr().labels().end());
    FinSet obj(std::move(objs));
    FinSet arr(std::move(arrs));

    const int oa = static_cast<int>(a.obj().size());
    const int na = static_cast<int>(a.arr().size());
    auto splice = [&](const FinMap& fa, const FinMap& fb, int off) {
        std::vector<int> t(fa.table());
        t.reserve(fa.dom().size() + fb.dom().size());
        for (int v : fb.table()) t.push_back(v + off);
        return t;
    };
    FinMap d(arr, obj, splice(a.d(), b.d(), oa));
    FinMap c(arr, obj, splice(a.c(), b.c(), oa));
    FinMap e(obj, arr, splice(a.e(), b.e(), na));
    FinMap i(arr, arr, splice(a.i(), b.i(), na));
    auto composer = [&](int g, int h) {
        if (g < na)
            return a.compose_arrows(g, h);
        return na + b.compose_arrows(g - na, h - na);
    };
    return gpd::make_groupoid(obj, arr, d, c, e, i, composer);
}

namespace {

struct Shape {
    int objects;
    int group;  // index into group_tables()
    int arrows() const {
        return objects * objects * group_tables()[static_cast<std::size_t>(group)].order();
    }
};

std::vector<Shape> connected_shapes(const EnumerationBounds& b) {
    std::vector<Shape> shapes;
    const auto& groups = group_tables();
    for (int n = 1; n <= b.max_objects_per_component; ++n)
        for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
            if (groups[static_cast<std::size_t>(g)].order() > b.max_vertex_group_order) continue;
            Shape s{n, g};
            if (s.arrows() <= b.max_total_arrows) shapes.push_back(s);
        }
    return shapes;
}

}  // namespace

std::vector<Groupoid> enumerate_groupoids(const EnumerationBounds& bounds) {
    if (bounds.max_vertex_group_order > 6)
        throw boundary_error("vertex groups of order above 6 are not in the built-in table");
    auto shapes = connected_shapes(bounds);

    // Multisets of connected shapes, as non-decreasing index tuples, ordered
    // by component count and then lexicographically.
    std::vector<std::vector<int>> multisets;
    std::vector<int> pick;
    std::function<void(int, int)> gen = [&](int min_shape, int arrows_left) {
        if (!pick.empty()) multisets.push_back(pick);
        if (static_cast<int>(pick.size()) >= bounds.max_components) return;
        for (int s = min_shape; s < static_cast<int>(shapes.size()); ++s) {
            int a = shapes[static_cast<std::size_t>(s)].arrows();
            if (a > arrows_left) continue;
            pick.push_back(s);
            gen(s, arrows_left - a);
            pick.pop_back();
        }
    };
    gen(0, bounds.max_total_arrows);
    std::sort(multisets.begin(), multisets.end(),
              [](const std::vector<int>& x, const std::vector<int>& y) {
                  if (x.size() != y.size()) return x.size() < y.size();
                  return x < y;
              });

    std::vector<Groupoid> out;
    out.reserve(multisets.size());
    for (const auto& ms : multisets) {
        auto piece = [&](std::size_t ci) {
            const Shape& s = shapes[static_cast<std::size_t>(ms[ci])];
            return connected_groupoid(s.objects, group_tables()[static_cast<std::size_t>(s.group)],
                                      ms.size() == 1 ? "" : "c" + std::to_string(ci));
        };
        Groupoid g = piece(0);
        for (std::size_t ci = 1; ci < ms.size(); ++ci) g = disjoint_union(g, piece(ci));
        out.push_back(std::move(g));
    }
    return out;
}

namespace {

// Backtracking search for arrow maps extending a fixed object map, with
// unit/inverse/composition propagation.  Used for functor enumeration,
// isomorphism search (bijective mode) and diagonal fills (filtered mode).
class ArrowSearch {
public:
    ArrowSearch(const Groupoid& h, const Groupoid& g, const std::vector<int>& f0, bool bijective,
                const std::function<bool(int, int)>* arr_ok)
        : h_(h), g_(g), f0_(f0), bijective_(bijective), arr_ok_(arr_ok),
          f1_(h.arr().size(), -1), used_(bijective ? g.arr().size() : 0, 0) {}

    bool assign(int t, int k) {
        std::size_t start = trail_.size();
        if (!raw_set(t, k)) return false;
        for (std::size_t w = start; w < trail_.size(); ++w)
            if (!propagate(trail_[w])) return false;
        return true;
    }

    std::size_t mark() const { return trail_.size(); }

    void undo_to(std::size_t m) {
        while (trail_.size() > m) {
            int t = trail_.back();
            trail_.pop_back();
            if (bijective_) used_[static_cast<std::size_t>(f1_[static_cast<std::size_t>(t)])] = 0;
            f1_[static_cast<std::size_t>(t)] = -1;
        }
    }

    // Enumerate all completions; sink returns false to stop the search.
    bool run(const std::function<bool(const std::vector<int>&)>& sink) {
        return extend(0, sink);
    }

private:
    bool boundary_ok(int t, int k) const {
        return g_.d()(k) == f0_[static_cast<std::size_t>(h_.d()(t))] &&
               g_.c()(k) == f0_[static_cast<std::size_t>(h_.c()(t))];
    }

    bool raw_set(int t, int k) {
        int cur = f1_[static_cast<std::size_t>(t)];
        if (cur >= 0) return cur == k;
        if (!boundary_ok(t, k)) return false;
        if (arr_ok_ && *arr_ok_ && !(*arr_ok_)(t, k)) return false;
        if (bijective_) {
            if (used_[static_cast<std::size_t>(k)]) return false;
            used_[static_cast<std::size_t>(k)] = 1;
        }
        f1_[static_cast<std::size_t>(t)] = k;
        trail_.push_back(t);
        return true;
    }

    bool propagate(int u) {
        int ku = f1_[static_cast<std::size_t>(u)];
        if (!raw_set(h_.i()(u), g_.i()(ku))) return false;
        // Compare against every currently assigned arrow, including u itself.
        for (std::size_t wi = 0; wi < trail_.size(); ++wi) {
            int w = trail_[wi];
            int kw = f1_[static_cast<std::size_t>(w)];
            int p = h_.pair_of(u, w);
            if (p >= 0) {
                int q = g_.pair_of(ku, kw);
                if (q < 0 || !raw_set(h_.m()(p), g_.m()(q))) return false;
            }
            if (w != u) {
                p = h_.pair_of(w, u);
                if (p >= 0) {
                    int q = g_.pair_of(kw, ku);
                    if (q < 0 || !raw_set(h_.m()(p), g_.m()(q))) return false;
                }
            }
        }
        return true;
    }

    bool extend(int from, const std::function<bool(const std::vector<int>&)>& sink) {
        int t = -1;
        for (int a = from; a < static_cast<int>(f1_.size()); ++a)
            if (f1_[static_cast<std::size_t>(a)] < 0) {
                t = a;
                break;
            }
        if (t < 0) return sink(f1_);
        for (int k = 0; k < static_cast<int>(g_.arr().size()); ++k) {
            if (!boundary_ok(t, k)) continue;
            std::size_t m = mark();
            if (assign(t, k) && !extend(t + 1, sink)) return false;
            undo_to(m);
        }
        return true;
    }

    const Groupoid& h_;
    const Groupoid& g_;
    const std::vector<int>& f0_;
    bool bijective_;
    const std::function<bool(int, int)>* arr_ok_;
    std::vector<int> f1_;
    std::vector<char> used_;
    std::vector<int> trail_;
};

InternalFunctor build_functor(const Groupoid& h, const Groupoid& g, const std::vector<int>& f0,
                              const std::vector<int>& f1) {
    return {h, g, FinMap(h.obj(), g.obj(), f0), FinMap(h.arr(), g.arr(), f1)};
}

// Enumerates object maps as an odometer (last object fastest).
bool next_odometer(std::vector<int>& digits, int base) {
    for (std::size_t pos = digits.size(); pos-- > 0;) {
        if (++digits[pos] < base) return true;
        digits[pos] = 0;
    }
    return false;
}

}  // namespace

void for_each_functor(const Groupoid& h, const Groupoid& g,
                      const std::function<void(const InternalFunctor&)>& yield) {
    const int nobj = static_cast<int>(h.obj().size());
    if (nobj > 0 && g.obj().empty()) return;
    std::vector<int> f0(static_cast<std::size_t>(nobj), 0);
    do {
        ArrowSearch search(h, g, f0, false, nullptr);
        bool consistent = true;
        for (int x = 0; x < nobj && consistent; ++x)
            consistent = search.assign(h.e()(x), g.e()(f0[static_cast<std::size_t>(x)]));
        if (!consistent) continue;
        search.run([&](const std::vector<int>& f1) {
            yield(build_functor(h, g, f0, f1));
            return true;
        });
    } while (next_odometer(f0, static_cast<int>(g.obj().size())));
}

std::vector<InternalFunctor> enumerate_functors(const Groupoid& h, const Groupoid& g) {
    std::vector<InternalFunctor> out;
    for_each_functor(h, g, [&](const InternalFunctor& f) { out.push_back(f); });
    return out;
}

namespace {

// hom[x * nobj + y] = number of arrows x -> y.
std::vector<int> hom_counts(const Groupoid& g) {
    const std::size_t n = g.obj().size();
    std::vector<int> hom(n * n, 0);
    for (std::size_t a = 0; a < g.arr().size(); ++a)
        ++hom[static_cast<std::size_t>(g.d()(static_cast<int>(a))) * n +
              static_cast<std::size_t>(g.c()(static_cast<int>(a)))];
    return hom;
}

}  // namespace

std::optional<InternalFunctor> iso_search(const Groupoid& a, const Groupoid& b,
                                          const IsoConstraints* constraints) {
    if (a.obj().size() != b.obj().size() || a.arr().size() != b.arr().size()) return std::nullopt;
    const int nobj = static_cast<int>(a.obj().size());
    auto homa = hom_counts(a);
    auto homb = hom_counts(b);

    std::vector<int> f0(static_cast<std::size_t>(nobj), -1);
    std::vector<char> used_obj(static_cast<std::size_t>(nobj), 0);
    if (constraints)
        for (auto [x, y] : constraints->obj_pre) {
            if (f0[static_cast<std::size_t>(x)] == y) continue;
            if (f0[static_cast<std::size_t>(x)] >= 0 || used_obj[static_cast<std::size_t>(y)])
                return std::nullopt;
            f0[static_cast<std::size_t>(x)] = y;
            used_obj[static_cast<std::size_t>(y)] = 1;
        }

    std::optional<InternalFunctor> found;
    std::function<bool(int, int)> arr_ok_fn;
    if (constraints && constraints->arr_ok) arr_ok_fn = constraints->arr_ok;

    auto pair_counts_ok = [&](int x, int y) {
        const std::size_t n = static_cast<std::size_t>(nobj);
        for (int xp = 0; xp < nobj; ++xp) {
            int yp = f0[static_cast<std::size_t>(xp)];
            if (yp < 0) continue;
            if (homa[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(xp)] !=
                    homb[static_cast<std::size_t>(y) * n + static_cast<std::size_t>(yp)] ||
                homa[static_cast<std::size_t>(xp) * n + static_cast<std::size_t>(x)] !=
                    homb[static_cast<std::size_t>(yp) * n + static_cast<std::size_t>(y)])
                return false;
        }
        return homa[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(x)] ==
               homb[static_cast<std::size_t>(y) * n + static_cast<std::size_t>(y)];
    };

    std::function<bool()> assign_objects = [&]() -> bool {
        int x = -1;
        for (int cand = 0; cand < nobj; ++cand)
            if (f0[static_cast<std::size_t>(cand)] < 0) {
                x = cand;
                break;
            }
        if (x < 0) {
            ArrowSearch search(a, b, f0, true, arr_ok_fn ? &arr_ok_fn : nullptr);
            bool consistent = true;
            for (int ox = 0; ox < nobj && consistent; ++ox)
                consistent = search.assign(a.e()(ox), b.e()(f0[static_cast<std::size_t>(ox)]));
            if (consistent && constraints)
                for (auto [t, k] : constraints->arr_pre) {
                    consistent = search.assign(t, k);
                    if (!consistent) break;
                }
            if (!consistent) return true;  // keep trying other object maps
            return search.run([&](const std::vector<int>& f1) {
                found = build_functor(a, b, f0, f1);
                return false;
            });
        }
        for (int y = 0; y < nobj; ++y) {
            if (used_obj[static_cast<std::size_t>(y)]) continue;
            if (constraints && constraints->obj_ok && !constraints->obj_ok(x, y)) continue;
            if (!pair_counts_ok(x, y)) continue;
            f0[static_cast<std::size_t>(x)] = y;
            used_obj[static_cast<std::size_t>(y)] = 1;
            if (!assign_objects()) return false;
            f0[static_cast<std::size_t>(x)] = -1;
            used_obj[static_cast<std::size_t>(y)] = 0;
        }
        return true;
    };
    if (constraints && constraints->obj_ok) {
        for (int x = 0; x < nobj; ++x) {
            int y = f0[static_cast<std::size_t>(x)];
            if (y >= 0 && !constraints->obj_ok(x, y)) return std::nullopt;
        }
    }
    assign_objects();
    return found;
}

CommaGroupoid comma_groupoid(int y, const InternalFunctor& f) {
    const Groupoid& h = f.dom;
    const Groupoid& g = f.cod;
    if (y < 0 || y >= static_cast<int>(g.obj().size()))
        throw boundary_error("comma base object index out of range");

    std::vector<std::pair<int, int>> objects;  // (g arrow, h object)
    std::vector<int> obj_index(g.arr().size() * std::max<std::size_t>(h.obj().size(), 1), -1);
    auto key = [&](int ga, int hx) {
        return static_cast<std::size_t>(ga) * std::max<std::size_t>(h.obj().size(), 1) +
               static_cast<std::size_t>(hx);
    };
    std::vector<std::string> obj_labels;
    for (int ga = 0; ga < static_cast<int>(g.arr().size()); ++ga) {
        if (g.d()(ga) != y) continue;
        for (int hx = 0; hx < static_cast<int>(h.obj().size()); ++hx) {
            if (g.c()(ga) != f.f0(hx)) continue;
            obj_index[key(ga, hx)] = static_cast<int>(objects.size());
            objects.emplace_back(ga, hx);
            obj_labels.push_back(setcore::pair_label(g.arr().label(ga), h.obj().label(hx)));
        }
    }
    FinSet obj(std::move(obj_labels));

    std::vector<std::pair<int, int>> arrows;  // (comma object, h arrow)
    std::vector<std::string> arr_labels;
    std::vector<int> dtab, ctab;
    std::vector<std::vector<int>> arr_index(objects.size());
    for (std::size_t o = 0; o < objects.size(); ++o)
        arr_index[o].assign(h.arr().size(), -1);
    for (std::size_t o = 0; o < objects.size(); ++o) {
        auto [ga, hx] = objects[o];
        for (int ha = 0; ha < static_cast<int>(h.arr().size()); ++ha) {
            if (h.d()(ha) != hx) continue;
            int target_g = g.compose_arrows(ga, f.f1(ha));
            int target = obj_index[key(target_g, h.c()(ha))];
            if (target < 0)
                throw internal_consistency_error("comma groupoid target object missing");
            arr_index[o][static_cast<std::size_t>(ha)] = static_cast<int>(arrows.size());
            arrows.emplace_back(static_cast<int>(o), ha);
            arr_labels.push_back(
                setcore::pair_label(obj.label(static_cast<int>(o)), h.arr().label(ha)));
            dtab.push_back(static_cast<int>(o));
            ctab.push_back(target);
        }
    }
    FinSet arr(std::move(arr_labels));
    FinMap d(arr, obj, std::move(dtab));
    FinMap c(arr, obj, std::move(ctab));

    std::vector<int> etab(objects.size());
    for (std::size_t o = 0; o < objects.size(); ++o)
        etab[o] = arr_index[o][static_cast<std::size_t>(h.e()(objects[o].second))];
    FinMap e(obj, arr, std::move(etab));

    std::vector<int> itab(arrows.size());
    for (std::size_t t = 0; t < arrows.size(); ++t) {
        int target = c(static_cast<int>(t));
        itab[t] = arr_index[static_cast<std::size_t>(target)]
                           [static_cast<std::size_t>(h.i()(arrows[t].second))];
    }
    FinMap i(arr, arr, std::move(itab));

    auto composer = [&](int s, int t) {
        int o = arrows[static_cast<std::size_t>(s)].first;
        int composite = h.compose_arrows(arrows[static_cast<std::size_t>(s)].second,
                                         arrows[static_cast<std::size_t>(t)].second);
        return arr_index[static_cast<std::size_t>(o)][static_cast<std::size_t>(composite)];
    };
    Groupoid gl = gpd::make_groupoid(obj, arr, d, c, e, i, composer);
    return {y, gl, std::move(objects), std::move(arrows)};
}

bool is_final_by_comma(const InternalFunctor& f) {
    const Groupoid& h = f.dom;
    const Groupoid& g = f.cod;
    const int nh0 = static_cast<int>(h.obj().size());
    for (int y = 0; y < static_cast<int>(g.obj().size()); ++y) {
        // Objects of (y down F) and a union-find over them.
        std::vector<int> idx(g.arr().size() * std::max(nh0, 1), -1);
        auto key = [&](int ga, int hx) { return ga * std::max(nh0, 1) + hx; };
        int count = 0;
        for (int ga = 0; ga < static_cast<int>(g.arr().size()); ++ga) {
            if (g.d()(ga) != y) continue;
            for (int hx = 0; hx < nh0; ++hx)
                if (g.c()(ga) == f.f0(hx)) idx[static_cast<std::size_t>(key(ga, hx))] = count++;
        }
        if (count == 0) return false;
        std::vector<int> parent(static_cast<std::size_t>(count));
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x)
                x = parent[static_cast<std::size_t>(x)];
            return x;
        };
        for (int ga = 0; ga < static_cast<int>(g.arr().size()); ++ga) {
            if (g.d()(ga) != y) continue;
            for (int ha = 0; ha < static_cast<int>(h.arr().size()); ++ha) {
                if (g.c()(ga) != f.f0(h.d()(ha))) continue;
                int from = idx[static_cast<std::size_t>(key(ga, h.d()(ha)))];
                int to = idx[static_cast<std::size_t>(
                    key(g.compose_arrows(ga, f.f1(ha)), h.c()(ha)))];
                int rf = find(from), rt = find(to);
                if (rf != rt) parent[static_cast<std::size_t>(std::max(rf, rt))] = std::min(rf, rt);
            }
        }
        int roots = 0;
        for (int v = 0; v < count; ++v)
            if (find(v) == v) ++roots;
        if (roots != 1) return false;
    }
    return true;
}

ElementsFactorization elements_factorization(const InternalFunctor& f) {
    const Groupoid& h = f.dom;
    const Groupoid& g = f.cod;

    // E0 = pairs (x, g out of f0 x), x-major; classes under the triangle
    // relation give T0.
    std::vector<std::pair<int, int>> e0;
    std::vector<int> e0_index(std::max<std::size_t>(h.obj().size(), 1) * g.arr().size(), -1);
    auto key = [&](int x, int ga) {
        return static_cast<std::size_t>(x) * g.arr().size() + static_cast<std::size_t>(ga);
    };
    for (int x = 0; x < static_cast<int>(h.obj().size()); ++x)
        for (int ga = 0; ga < static_cast<int>(g.arr().size()); ++ga)
            if (f.f0(x) == g.d()(ga)) {
                e0_index[key(x, ga)] = static_cast<int>(e0.size());
                e0.emplace_back(x, ga);
            }

    std::vector<int> parent(e0.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
        return v;
    };
    auto merge = [&](int u, int v) {
        u = find(u);
        v = find(v);
        if (u != v) parent[static_cast<std::size_t>(std::max(u, v))] = std::min(u, v);
    };
    for (int ha = 0; ha < static_cast<int>(h.arr().size()); ++ha)
        for (int ga = 0; ga < static_cast<int>(g.arr().size()); ++ga)
            if (g.d()(ga) == f.f0(h.c()(ha)))
                merge(e0_index[key(h.d()(ha), g.compose_arrows(f.f1(ha), ga))],
                      e0_index[key(h.c()(ha), ga)]);

    // T0: classes labeled by their least member, in least-member order.
    std::vector<int> class_of(e0.size(), -1);
    std::vector<std::string> t0_labels;
    for (std::size_t v = 0; v < e0.size(); ++v) {
        int root = find(static_cast<int>(v));
        if (class_of[static_cast<std::size_t>(root)] < 0) {
            class_of[static_cast<std::size_t>(root)] = static_cast<int>(t0_labels.size());
            t0_labels.push_back(
                setcore::pair_label(h.obj().label(e0[static_cast<std::size_t>(root)].first),
                                    g.arr().label(e0[static_cast<std::size_t>(root)].second)));
        }
        class_of[v] = class_of[static_cast<std::size_t>(root)];
    }
    FinSet t0(std::move(t0_labels));

    // k0 and the transport action, both checked on every representative.
    std::vector<int> k0tab(t0.size(), -1);
    for (std::size_t v = 0; v < e0.size(); ++v) {
        int cls = class_of[v];
        int val = g.c()(e0[v].second);
        if (k0tab[static_cast<std::size_t>(cls)] < 0)
            k0tab[static_cast<std::size_t>(cls)] = val;
        else if (k0tab[static_cast<std::size_t>(cls)] != val)
            throw internal_consistency_error("elements factorization: class codomain not constant");
    }
    FinMap k0(t0, g.obj(), std::move(k0tab));

    auto act = [&](int cls, int ga) {
        int result = -1;
        for (std::size_t v = 0; v < e0.size(); ++v) {
            if (class_of[v] != cls) continue;
            int moved = class_of[static_cast<std::size_t>(
                e0_index[key(e0[v].first, g.compose_arrows(e0[v].second, ga))])];
            if (result < 0)
                result = moved;
            else if (result != moved)
                throw internal_consistency_error(
                    "elements factorization: transport depends on the representative");
        }
        if (result < 0)
            throw internal_consistency_error("elements factorization: empty class");
        return result;
    };

    auto t1pb = setcore::pullback(k0, g.d());
    PairIndex t1idx(t1pb.p1, t1pb.p2);
    const FinSet& t1 = t1pb.set;

    std::vector<int> dtab(t1.size()), ctab(t1.size()), itab(t1.size());
    for (std::size_t a = 0; a < t1.size(); ++a) {
        int cls = t1pb.p1(static_cast<int>(a));
        int ga = t1pb.p2(static_cast<int>(a));
        dtab[a] = cls;
        ctab[a] = act(cls, ga);
        itab[a] = t1idx.require(ctab[a], g.i()(ga));
    }
    std::vector<int> etab(t0.size());
    for (std::size_t t = 0; t < t0.size(); ++t)
        etab[t] = t1idx.require(static_cast<int>(t), g.e()(k0(static_cast<int>(t))));

    FinMap d(t1, t0, std::move(dtab));
    FinMap c(t1, t0, std::move(ctab));
    FinMap e(t0, t1, std::move(etab));
    FinMap i(t1, t1, std::move(itab));
    auto composer = [&](int s, int t) {
        return t1idx.require(t1pb.p1(s),
                             g.compose_arrows(t1pb.p2(s), t1pb.p2(t)));
    };
    Groupoid tg = gpd::make_groupoid(t0, t1, d, c, e, i, composer);

    std::vector<int> j0tab(h.obj().size());
    for (int x = 0; x < static_cast<int>(h.obj().size()); ++x)
        j0tab[static_cast<std::size_t>(x)] =
            class_of[static_cast<std::size_t>(e0_index[key(x, g.e()(f.f0(x)))])];
    FinMap j0(h.obj(), t0, std::move(j0tab));
    std::vector<int> j1tab(h.arr().size());
    for (int ha = 0; ha < static_cast<int>(h.arr().size()); ++ha)
        j1tab[static_cast<std::size_t>(ha)] = t1idx.require(j0(h.d()(ha)), f.f1(ha));
    FinMap j1(h.arr(), t1, std::move(j1tab));

    InternalFunctor j{h, tg, j0, j1};
    InternalFunctor k{tg, g, k0, t1pb.p2};
    return {tg, j, k};
}

namespace {

int fill_diagonals(const InternalFunctor& j, const InternalFunctor& d, const InternalFunctor& top,
                   const InternalFunctor& bottom, int limit,
                   std::optional<InternalFunctor>* out) {
    if (compose_functors(j, bottom) != compose_functors(top, d))
        throw boundary_error("diagonal fill: the outer square does not commute");
    const Groupoid& b = j.cod;
    const Groupoid& x = d.dom;
    int found = 0;
    const int nobj = static_cast<int>(b.obj().size());
    if (nobj > 0 && x.obj().empty()) return 0;
    std::vector<int> f0(static_cast<std::size_t>(nobj), 0);
    std::function<bool(int, int)> arr_ok = [&](int t, int k) {
        return d.f1(k) == bottom.f1(t);
    };
    do {
        bool compatible = true;
        for (int ob = 0; ob < nobj && compatible; ++ob)
            compatible = d.f0(f0[static_cast<std::size_t>(ob)]) == bottom.f0(ob);
        for (int xa = 0; xa < static_cast<int>(j.dom.obj().size()) && compatible; ++xa)
            compatible = f0[static_cast<std::size_t>(j.f0(xa))] == top.f0(xa);
        if (!compatible) continue;
        ArrowSearch search(b, x, f0, false, &arr_ok);
        bool consistent = true;
        for (int ob = 0; ob < nobj && consistent; ++ob)
            consistent = search.assign(b.e()(ob), x.e()(f0[static_cast<std::size_t>(ob)]));
        for (int a = 0; a < static_cast<int>(j.dom.arr().size()) && consistent; ++a)
            consistent = search.assign(j.f1(a), top.f1(a));
        if (!consistent) continue;
        bool keep_going = search.run([&](const std::vector<int>& f1) {
            ++found;
            if (out && found == 1) *out = build_functor(b, x, f0, f1);
            return limit <= 0 || found < limit;
        });
        if (!keep_going) break;
    } while (next_odometer(f0, static_cast<int>(x.obj().size())));
    return found;
}

}  // namespace

InternalFunctor orthogonal_fill(const InternalFunctor& j, const InternalFunctor& d,
                                const InternalFunctor& top, const InternalFunctor& bottom) {
    std::optional<InternalFunctor> diag;
    int n = fill_diagonals(j, d, top, bottom, 2, &diag);
    if (n == 0)
        throw no_diagonal_error("no diagonal fills the square (bottom through " +
                                std::to_string(j.cod.obj().size()) + " objects)");
    if (n > 1)
        throw internal_consistency_error("multiple diagonals fill the square");
    return *diag;
}

int count_diagonals(const InternalFunctor& j, const InternalFunctor& d,
                    const InternalFunctor& top, const InternalFunctor& bottom) {
    return fill_diagonals(j, d, top, bottom, 0, nullptr);
}

}  // namespace oracle
