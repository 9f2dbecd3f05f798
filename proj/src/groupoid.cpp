#include "grpd/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace grpd {

namespace {

using GE = GroupoidError;

[[noreturn]] void fail(GE::Kind k, std::vector<int> w, const std::string& msg) {
    throw GroupoidError(k, std::move(w), msg);
}

// Union-find with path compression; representative is the minimal element.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[b] = a;  // keep the smaller index as representative
    }

private:
    std::vector<int> parent_;
};

}  // namespace

FiniteGroupoid validate_groupoid(FiniteGroupoid g) {
    const int no = g.num_objects;
    const int na = g.num_arrows();
    if (no <= 0) fail(GE::Kind::EmptyObjects, {}, "groupoid must have at least one object");
    auto check_obj = [&](int x) {
        if (x < 0 || x >= no) fail(GE::Kind::IndexError, {x}, "object index out of range");
    };
    auto check_arr = [&](int a) {
        if (a < 0 || a >= na) fail(GE::Kind::IndexError, {a}, "arrow index out of range");
    };
    if (static_cast<int>(g.tgt.size()) != na ||
        static_cast<int>(g.inv.size()) != na ||
        static_cast<int>(g.unit.size()) != no ||
        static_cast<int>(g.comp.size()) != na)
        fail(GE::Kind::IndexError, {}, "table arities disagree");
    for (int a = 0; a < na; ++a) {
        check_obj(g.src[a]);
        check_obj(g.tgt[a]);
        check_arr(g.inv[a]);
        if (static_cast<int>(g.comp[a].size()) != na)
            fail(GE::Kind::IndexError, {a}, "composition row arity");
    }
    for (int x = 0; x < no; ++x) check_arr(g.unit[x]);

    // Composition defined exactly on composable pairs, with matching ends.
    for (int a = 0; a < na; ++a) {
        for (int b = 0; b < na; ++b) {
            const int ab = g.comp[a][b];
            if (g.src[a] == g.tgt[b]) {
                if (ab < 0 || ab >= na)
                    fail(GE::Kind::SourceTargetMismatch, {a, b},
                         "composable pair without a composite");
                if (g.src[ab] != g.src[b] || g.tgt[ab] != g.tgt[a])
                    fail(GE::Kind::SourceTargetMismatch, {a, b},
                         "composite has wrong endpoints");
            } else if (ab != -1) {
                fail(GE::Kind::SourceTargetMismatch, {a, b},
                     "composite defined on a non-composable pair");
            }
        }
    }
    // Units.
    for (int x = 0; x < no; ++x) {
        const int e = g.unit[x];
        if (g.src[e] != x || g.tgt[e] != x)
            fail(GE::Kind::BadUnit, {x}, "unit arrow endpoints");
    }
    for (int a = 0; a < na; ++a) {
        if (g.comp[g.unit[g.tgt[a]]][a] != a || g.comp[a][g.unit[g.src[a]]] != a)
            fail(GE::Kind::BadUnit, {g.src[a]}, "unit law fails");
    }
    // Inverses.
    for (int a = 0; a < na; ++a) {
        const int ai = g.inv[a];
        if (g.inv[ai] != a || g.src[ai] != g.tgt[a] || g.tgt[ai] != g.src[a])
            fail(GE::Kind::BadInverse, {a}, "inverse is not an involution with swapped ends");
        if (g.comp[a][ai] != g.unit[g.tgt[a]] || g.comp[ai][a] != g.unit[g.src[a]])
            fail(GE::Kind::BadInverse, {a}, "g*inv(g) is not the unit");
    }
    // Associativity on every composable triple.
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
            if (g.src[a] != g.tgt[b]) continue;
            const int ab = g.comp[a][b];
            for (int c = 0; c < na; ++c) {
                if (g.src[b] != g.tgt[c]) continue;
                if (g.comp[ab][c] != g.comp[a][g.comp[b][c]])
                    fail(GE::Kind::NonAssociative, {a, b, c}, "associativity fails");
            }
        }

    g.s_fiber_.assign(no, {});
    g.t_fiber_.assign(no, {});
    for (int a = 0; a < na; ++a) {
        g.s_fiber_[g.src[a]].push_back(a);
        g.t_fiber_[g.tgt[a]].push_back(a);
    }
    return g;
}

bool same_tables(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    return a.num_objects == b.num_objects && a.src == b.src && a.tgt == b.tgt &&
           a.comp == b.comp && a.inv == b.inv && a.unit == b.unit;
}

std::vector<Rational> HaarSystem::object_weights(const FiniteGroupoid& g) const {
    std::vector<Rational> u(g.num_objects);
    for (int x = 0; x < g.num_objects; ++x) u[x] = weight[g.unit[x]];
    return u;
}

HaarSystem counting_haar(const FiniteGroupoid& g) {
    return HaarSystem{std::vector<Rational>(g.num_arrows(), Rational(1))};
}

HaarSystem validate_haar(const FiniteGroupoid& g, std::vector<Rational> w) {
    if (static_cast<int>(w.size()) != g.num_arrows())
        throw HaarError(HaarError::Kind::WrongArity, {},
                        "weight count does not match arrow count");
    for (int h = 0; h < g.num_arrows(); ++h)
        if (w[h] <= 0)
            throw HaarError(HaarError::Kind::NotPositive, {h},
                            "Haar weight must be strictly positive");
    for (int h = 0; h < g.num_arrows(); ++h)
        for (int a = 0; a < g.num_arrows(); ++a) {
            if (g.src[h] != g.tgt[a]) continue;
            if (w[g.comp[h][a]] != w[h])
                throw HaarError(HaarError::Kind::NotInvariant, {h, a},
                                "right invariance w(h*g) == w(h) fails");
        }
    return HaarSystem{std::move(w)};
}

GroupoidHom validate_hom(GroupoidHom f) {
    const auto& G = *f.domain;
    const auto& H = *f.codomain;
    auto bad = [&](std::vector<int> w, const std::string& m) {
        fail(GE::Kind::IndexError, std::move(w), "homomorphism: " + m);
    };
    if (static_cast<int>(f.phi0.size()) != G.num_objects ||
        static_cast<int>(f.phi1.size()) != G.num_arrows())
        bad({}, "arity");
    for (int x : f.phi0)
        if (x < 0 || x >= H.num_objects) bad({x}, "object image out of range");
    for (int a : f.phi1)
        if (a < 0 || a >= H.num_arrows()) bad({a}, "arrow image out of range");
    for (int a = 0; a < G.num_arrows(); ++a) {
        if (H.src[f.phi1[a]] != f.phi0[G.src[a]] || H.tgt[f.phi1[a]] != f.phi0[G.tgt[a]])
            bad({a}, "does not intertwine src/tgt");
        if (f.phi1[G.inv[a]] != H.inv[f.phi1[a]]) bad({a}, "does not intertwine inverses");
    }
    for (int x = 0; x < G.num_objects; ++x)
        if (f.phi1[G.unit[x]] != H.unit[f.phi0[x]]) bad({x}, "does not intertwine units");
    for (int a = 0; a < G.num_arrows(); ++a)
        for (int b = 0; b < G.num_arrows(); ++b) {
            if (G.src[a] != G.tgt[b]) continue;
            if (f.phi1[G.comp[a][b]] != H.comp[f.phi1[a]][f.phi1[b]])
                bad({a, b}, "does not intertwine composition");
        }
    return f;
}

FiniteGroupoid pair_groupoid(int n) {
    if (n < 1) fail(GE::Kind::EmptyObjects, {}, "pair groupoid needs n >= 1");
    FiniteGroupoid g;
    g.num_objects = n;
    const int na = n * n;
    auto id = [n](int x, int y) { return x * n + y; };
    g.src.resize(na);
    g.tgt.resize(na);
    g.inv.resize(na);
    g.unit.resize(n);
    g.comp.assign(na, std::vector<int>(na, -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            g.tgt[id(x, y)] = x;
            g.src[id(x, y)] = y;
            g.inv[id(x, y)] = id(y, x);
        }
    for (int x = 0; x < n; ++x) g.unit[x] = id(x, x);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) g.comp[id(x, y)][id(y, z)] = id(x, z);
    return validate_groupoid(std::move(g));
}

FiniteGroupoid group_groupoid(const std::vector<std::vector<int>>& cayley) {
    const int n = static_cast<int>(cayley.size());
    if (n == 0) fail(GE::Kind::NotAGroup, {}, "empty Cayley table");
    for (const auto& row : cayley)
        if (static_cast<int>(row.size()) != n)
            fail(GE::Kind::NotAGroup, {}, "Cayley table is not square");
    for (const auto& row : cayley)
        for (int v : row)
            if (v < 0 || v >= n) fail(GE::Kind::NotAGroup, {v}, "entry out of range");
    // Identity: a two-sided unit element.
    int e = -1;
    for (int cand = 0; cand < n; ++cand) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = cayley[cand][a] == a && cayley[a][cand] == a;
        if (ok) {
            e = cand;
            break;
        }
    }
    if (e < 0) fail(GE::Kind::NotAGroup, {}, "no identity element");
    std::vector<int> inv(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (cayley[a][b] == e && cayley[b][a] == e) {
                inv[a] = b;
                break;
            }
        if (inv[a] < 0) fail(GE::Kind::NotAGroup, {a}, "element without inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]])
                    fail(GE::Kind::NotAGroup, {a, b, c}, "not associative");

    FiniteGroupoid g;
    g.num_objects = 1;
    g.src.assign(n, 0);
    g.tgt.assign(n, 0);
    g.inv = inv;
    g.unit = {e};
    g.comp.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.comp[a][b] = cayley[a][b];
    return validate_groupoid(std::move(g));
}

FiniteGroupoid action_groupoid(const FiniteGroupoid& group,
                               const std::vector<std::vector<int>>& act) {
    if (group.num_objects != 1)
        fail(GE::Kind::NotAnAction, {}, "acting groupoid must have one object");
    const int ng = group.num_arrows();
    const int nx = static_cast<int>(act.empty() ? 0 : act[0].size());
    if (nx == 0) fail(GE::Kind::NotAnAction, {}, "empty point set");
    if (static_cast<int>(act.size()) != ng)
        fail(GE::Kind::NotAnAction, {}, "action table arity");
    for (const auto& row : act)
        for (int v : row)
            if (v < 0 || v >= nx) fail(GE::Kind::NotAnAction, {v}, "image out of range");
    const int e = group.unit[0];
    for (int x = 0; x < nx; ++x)
        if (act[e][x] != x) fail(GE::Kind::NotAnAction, {x}, "identity does not fix x");
    for (int a = 0; a < ng; ++a)
        for (int b = 0; b < ng; ++b)
            for (int x = 0; x < nx; ++x)
                if (act[group.comp[a][b]][x] != act[a][act[b][x]])
                    fail(GE::Kind::NotAnAction, {a, b, x}, "action law fails");

    FiniteGroupoid g;
    g.num_objects = nx;
    const int na = ng * nx;
    auto id = [nx](int a, int x) { return a * nx + x; };
    g.src.resize(na);
    g.tgt.resize(na);
    g.inv.resize(na);
    g.unit.resize(nx);
    g.comp.assign(na, std::vector<int>(na, -1));
    for (int a = 0; a < ng; ++a)
        for (int x = 0; x < nx; ++x) {
            g.src[id(a, x)] = x;
            g.tgt[id(a, x)] = act[a][x];
            g.inv[id(a, x)] = id(group.inv[a], act[a][x]);
        }
    for (int x = 0; x < nx; ++x) g.unit[x] = id(e, x);
    for (int a = 0; a < ng; ++a)
        for (int b = 0; b < ng; ++b)
            for (int x = 0; x < nx; ++x)
                g.comp[id(a, act[b][x])][id(b, x)] = id(group.comp[a][b], x);
    return validate_groupoid(std::move(g));
}

FiniteGroupoid cech_groupoid(int num_points, const std::vector<std::vector<int>>& cover) {
    if (num_points <= 0 || cover.empty())
        fail(GE::Kind::NotACover, {}, "empty space or cover");
    std::vector<std::set<int>> sets;
    std::set<int> covered;
    for (const auto& u : cover) {
        std::set<int> s(u.begin(), u.end());
        for (int x : s)
            if (x < 0 || x >= num_points)
                fail(GE::Kind::NotACover, {x}, "point out of range");
        covered.insert(s.begin(), s.end());
        sets.push_back(std::move(s));
    }
    if (static_cast<int>(covered.size()) != num_points)
        fail(GE::Kind::NotACover, {}, "cover does not exhaust the space");

    const int k = static_cast<int>(sets.size());
    std::map<std::pair<int, int>, int> obj;  // (i, x) -> object id
    for (int i = 0; i < k; ++i)
        for (int x : sets[i]) obj.emplace(std::make_pair(i, x), static_cast<int>(obj.size()));
    std::map<std::tuple<int, int, int>, int> arr;  // (i, j, x) -> arrow id
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int x : sets[i])
                if (sets[j].count(x))
                    arr.emplace(std::make_tuple(i, j, x), static_cast<int>(arr.size()));

    FiniteGroupoid g;
    g.num_objects = static_cast<int>(obj.size());
    const int na = static_cast<int>(arr.size());
    g.src.resize(na);
    g.tgt.resize(na);
    g.inv.resize(na);
    g.unit.resize(g.num_objects);
    g.comp.assign(na, std::vector<int>(na, -1));
    for (const auto& [key, a] : arr) {
        const auto [i, j, x] = key;
        g.tgt[a] = obj.at({i, x});
        g.src[a] = obj.at({j, x});
        g.inv[a] = arr.at({j, i, x});
    }
    for (const auto& [key, o] : obj) g.unit[o] = arr.at({key.first, key.first, key.second});
    for (const auto& [ka, a] : arr)
        for (const auto& [kb, b] : arr) {
            const auto [i, j, x] = ka;
            const auto [j2, l, y] = kb;
            if (j == j2 && x == y) g.comp[a][b] = arr.at({i, l, x});
        }
    return validate_groupoid(std::move(g));
}

FiniteGroupoid product_groupoid(const FiniteGroupoid& G, const FiniteGroupoid& H) {
    FiniteGroupoid g;
    const int noH = H.num_objects, naH = H.num_arrows();
    g.num_objects = G.num_objects * noH;
    const int na = G.num_arrows() * naH;
    auto oid = [noH](int x, int y) { return x * noH + y; };
    auto aid = [naH](int a, int b) { return a * naH + b; };
    g.src.resize(na);
    g.tgt.resize(na);
    g.inv.resize(na);
    g.unit.resize(g.num_objects);
    g.comp.assign(na, std::vector<int>(na, -1));
    for (int a = 0; a < G.num_arrows(); ++a)
        for (int b = 0; b < naH; ++b) {
            g.src[aid(a, b)] = oid(G.src[a], H.src[b]);
            g.tgt[aid(a, b)] = oid(G.tgt[a], H.tgt[b]);
            g.inv[aid(a, b)] = aid(G.inv[a], H.inv[b]);
        }
    for (int x = 0; x < G.num_objects; ++x)
        for (int y = 0; y < noH; ++y) g.unit[oid(x, y)] = aid(G.unit[x], H.unit[y]);
    for (int a = 0; a < G.num_arrows(); ++a)
        for (int b = 0; b < naH; ++b)
            for (int c = 0; c < G.num_arrows(); ++c)
                for (int d = 0; d < naH; ++d)
                    if (G.src[a] == G.tgt[c] && H.src[b] == H.tgt[d])
                        g.comp[aid(a, b)][aid(c, d)] = aid(G.comp[a][c], H.comp[b][d]);
    return validate_groupoid(std::move(g));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& G, const FiniteGroupoid& H) {
    FiniteGroupoid g;
    g.num_objects = G.num_objects + H.num_objects;
    const int naG = G.num_arrows(), na = naG + H.num_arrows();
    g.src.resize(na);
    g.tgt.resize(na);
    g.inv.resize(na);
    g.unit.resize(g.num_objects);
    g.comp.assign(na, std::vector<int>(na, -1));
    for (int a = 0; a < naG; ++a) {
        g.src[a] = G.src[a];
        g.tgt[a] = G.tgt[a];
        g.inv[a] = G.inv[a];
    }
    for (int a = 0; a < H.num_arrows(); ++a) {
        g.src[naG + a] = G.num_objects + H.src[a];
        g.tgt[naG + a] = G.num_objects + H.tgt[a];
        g.inv[naG + a] = naG + H.inv[a];
    }
    for (int x = 0; x < G.num_objects; ++x) g.unit[x] = G.unit[x];
    for (int y = 0; y < H.num_objects; ++y) g.unit[G.num_objects + y] = naG + H.unit[y];
    for (int a = 0; a < naG; ++a)
        for (int b = 0; b < naG; ++b) g.comp[a][b] = G.comp[a][b];
    for (int a = 0; a < H.num_arrows(); ++a)
        for (int b = 0; b < H.num_arrows(); ++b)
            if (H.comp[a][b] >= 0) g.comp[naG + a][naG + b] = naG + H.comp[a][b];
    return validate_groupoid(std::move(g));
}

FiniteGroupoid opposite_groupoid(const FiniteGroupoid& G) {
    FiniteGroupoid g;
    g.num_objects = G.num_objects;
    g.src = G.tgt;
    g.tgt = G.src;
    g.inv = G.inv;
    g.unit = G.unit;
    const int na = G.num_arrows();
    g.comp.assign(na, std::vector<int>(na, -1));
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            if (G.comp[b][a] >= 0) g.comp[a][b] = G.comp[b][a];
    return validate_groupoid(std::move(g));
}

FiniteGroupoid full_subgroupoid(const FiniteGroupoid& G, std::vector<int> objects) {
    std::sort(objects.begin(), objects.end());
    objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
    for (int x : objects)
        if (x < 0 || x >= G.num_objects) fail(GE::Kind::IndexError, {x}, "object out of range");
    std::vector<int> new_obj(G.num_objects, -1);
    for (int i = 0; i < static_cast<int>(objects.size()); ++i) new_obj[objects[i]] = i;
    std::vector<int> keep, new_arr(G.num_arrows(), -1);
    for (int a = 0; a < G.num_arrows(); ++a)
        if (new_obj[G.src[a]] >= 0 && new_obj[G.tgt[a]] >= 0) {
            new_arr[a] = static_cast<int>(keep.size());
            keep.push_back(a);
        }
    FiniteGroupoid g;
    g.num_objects = static_cast<int>(objects.size());
    const int na = static_cast<int>(keep.size());
    g.src.resize(na);
    g.tgt.resize(na);
    g.inv.resize(na);
    g.unit.resize(g.num_objects);
    g.comp.assign(na, std::vector<int>(na, -1));
    for (int i = 0; i < na; ++i) {
        g.src[i] = new_obj[G.src[keep[i]]];
        g.tgt[i] = new_obj[G.tgt[keep[i]]];
        g.inv[i] = new_arr[G.inv[keep[i]]];
    }
    for (int i = 0; i < g.num_objects; ++i) g.unit[i] = new_arr[G.unit[objects[i]]];
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const int c = G.comp[keep[i]][keep[j]];
            if (c >= 0) g.comp[i][j] = new_arr[c];
        }
    return validate_groupoid(std::move(g));
}

FiniteGroupoid gauge_groupoid(const RightGroupSet& ps) {
    const auto& grp = *ps.group;
    if (grp.num_objects != 1) fail(GE::Kind::NotAGroup, {}, "gauge group must have one object");
    const int ng = grp.num_arrows(), np = ps.num_points;
    if (np <= 0) fail(GE::Kind::EmptyObjects, {}, "empty point set");
    if (static_cast<int>(ps.act.size()) != np)
        fail(GE::Kind::IndexError, {}, "action table arity");
    const int e = grp.unit[0];
    for (int p = 0; p < np; ++p) {
        if (static_cast<int>(ps.act[p].size()) != ng)
            fail(GE::Kind::IndexError, {p}, "action row arity");
        if (ps.act[p][e] != p) fail(GE::Kind::NotAnAction, {p}, "identity does not fix p");
        for (int a = 0; a < ng; ++a) {
            const int pa = ps.act[p][a];
            if (pa < 0 || pa >= np) fail(GE::Kind::IndexError, {p, a}, "image out of range");
            if (pa == p && a != e) fail(GE::Kind::NotFree, {p, a}, "action is not free");
            for (int b = 0; b < ng; ++b)
                if (ps.act[p][grp.comp[b][a]] != ps.act[pa][b])
                    fail(GE::Kind::NotAnAction, {p, a, b}, "right action law fails");
        }
    }
    // Orbits of P; these are the fibers of the base projection.
    UnionFind uf(np);
    for (int p = 0; p < np; ++p)
        for (int a = 0; a < ng; ++a) uf.merge(p, ps.act[p][a]);
    std::vector<int> orbit(np);
    std::map<int, int> orbit_id;
    for (int p = 0; p < np; ++p) {
        const int r = uf.find(p);
        auto [it, fresh] = orbit_id.emplace(r, static_cast<int>(orbit_id.size()));
        orbit[p] = it->second;
        (void)fresh;
    }
    if (ps.base) {
        const auto& base = *ps.base;
        if (static_cast<int>(base.size()) != np)
            fail(GE::Kind::IndexError, {}, "base projection arity");
        for (int p = 0; p < np; ++p)
            for (int q = 0; q < np; ++q)
                if ((base[p] == base[q]) != (orbit[p] == orbit[q]))
                    fail(GE::Kind::NotPrincipal, {p, q},
                         "base fibers are not single orbits");
    }
    const int nobj = static_cast<int>(orbit_id.size());

    // Arrows are diagonal orbits of P x P, named by their minimal pair.
    UnionFind pairs(np * np);
    auto pid = [np](int p, int q) { return p * np + q; };
    for (int p = 0; p < np; ++p)
        for (int q = 0; q < np; ++q)
            for (int a = 0; a < ng; ++a)
                pairs.merge(pid(p, q), pid(ps.act[p][a], ps.act[q][a]));
    std::map<int, int> arrow_id;
    std::vector<int> rep;  // arrow -> minimal pair code
    std::vector<int> arrow_of_pair(np * np);
    for (int c = 0; c < np * np; ++c) {
        const int r = pairs.find(c);
        auto it = arrow_id.find(r);
        if (it == arrow_id.end()) {
            it = arrow_id.emplace(r, static_cast<int>(rep.size())).first;
            rep.push_back(r);
        }
        arrow_of_pair[c] = it->second;
    }
    const int na = static_cast<int>(rep.size());

    FiniteGroupoid g;
    g.num_objects = nobj;
    g.src.resize(na);
    g.tgt.resize(na);
    g.inv.resize(na);
    g.unit.resize(nobj);
    g.comp.assign(na, std::vector<int>(na, -1));
    for (int a = 0; a < na; ++a) {
        const int p = rep[a] / np, q = rep[a] % np;
        g.tgt[a] = orbit[p];
        g.src[a] = orbit[q];
        g.inv[a] = arrow_of_pair[pid(q, p)];
    }
    for (int p = 0; p < np; ++p) g.unit[orbit[p]] = arrow_of_pair[pid(p, p)];
    for (int a = 0; a < na; ++a) {
        const int p = rep[a] / np, q = rep[a] % np;
        // Compose [p,q] with [q',r']: align q' to q, free action gives a
        // unique translate.
        for (int b = 0; b < na; ++b) {
            const int q2 = rep[b] / np, r2 = rep[b] % np;
            if (orbit[q2] != orbit[q]) continue;
            for (int t = 0; t < ng; ++t)
                if (ps.act[q2][t] == q) {
                    g.comp[a][b] = arrow_of_pair[pid(p, ps.act[r2][t])];
                    break;
                }
        }
    }
    return validate_groupoid(std::move(g));
}

OrbitReport orbits_and_isotropy(const FiniteGroupoid& g) {
    UnionFind uf(g.num_objects);
    for (int a = 0; a < g.num_arrows(); ++a) uf.merge(g.src[a], g.tgt[a]);
    OrbitReport rep;
    rep.orbit_of_object.resize(g.num_objects);
    std::map<int, int> ids;
    for (int x = 0; x < g.num_objects; ++x) {
        const int r = uf.find(x);
        auto [it, fresh] = ids.emplace(r, static_cast<int>(ids.size()));
        rep.orbit_of_object[x] = it->second;
        (void)fresh;
    }
    rep.num_orbits = static_cast<int>(ids.size());
    rep.isotropy.assign(g.num_objects, {});
    for (int a = 0; a < g.num_arrows(); ++a)
        if (g.src[a] == g.tgt[a]) rep.isotropy[g.src[a]].push_back(a);
    return rep;
}

}  // namespace grpd
