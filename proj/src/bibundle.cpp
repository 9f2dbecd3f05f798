#include "grpd/bibundle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace grpd {

namespace {

using BE = BibundleError;

[[noreturn]] void fail(BE::Kind k, std::vector<int> w, const std::string& msg) {
    throw BibundleError(k, std::move(w), msg);
}

}  // namespace

BibundleHandle validate_bibundle(Bibundle b) {
    const auto& G = *b.left_groupoid;
    const auto& H = *b.right_groupoid;
    const int np = b.num_points;
    if (np <= 0) fail(BE::Kind::IndexError, {}, "bibundle needs at least one point");
    if (static_cast<int>(b.l.size()) != np || static_cast<int>(b.r.size()) != np)
        fail(BE::Kind::IndexError, {}, "anchor arity");
    for (int p = 0; p < np; ++p) {
        if (b.l[p] < 0 || b.l[p] >= G.num_objects) fail(BE::Kind::IndexError, {p}, "l out of range");
        if (b.r[p] < 0 || b.r[p] >= H.num_objects) fail(BE::Kind::IndexError, {p}, "r out of range");
    }
    if (static_cast<int>(b.lact.size()) != G.num_arrows() ||
        static_cast<int>(b.ract.size()) != np)
        fail(BE::Kind::IndexError, {}, "action table arity");

    // Definedness pattern and equivariance of anchors.
    for (int g = 0; g < G.num_arrows(); ++g) {
        if (static_cast<int>(b.lact[g].size()) != np)
            fail(BE::Kind::IndexError, {g}, "lact row arity");
        for (int p = 0; p < np; ++p) {
            const int gp = b.lact[g][p];
            if (G.src[g] == b.l[p]) {
                if (gp < 0 || gp >= np)
                    fail(BE::Kind::AnchorMismatch, {g, p}, "left action undefined where required");
                if (b.l[gp] != G.tgt[g] || b.r[gp] != b.r[p])
                    fail(BE::Kind::EquivarianceFailure, {g, p}, "left action moves anchors wrongly");
            } else if (gp != -1) {
                fail(BE::Kind::AnchorMismatch, {g, p}, "left action defined off its domain");
            }
        }
    }
    for (int p = 0; p < np; ++p) {
        if (static_cast<int>(b.ract[p].size()) != H.num_arrows())
            fail(BE::Kind::IndexError, {p}, "ract row arity");
        for (int h = 0; h < H.num_arrows(); ++h) {
            const int ph = b.ract[p][h];
            if (b.r[p] == H.tgt[h]) {
                if (ph < 0 || ph >= np)
                    fail(BE::Kind::AnchorMismatch, {p, h}, "right action undefined where required");
                if (b.r[ph] != H.src[h] || b.l[ph] != b.l[p])
                    fail(BE::Kind::EquivarianceFailure, {p, h}, "right action moves anchors wrongly");
            } else if (ph != -1) {
                fail(BE::Kind::AnchorMismatch, {p, h}, "right action defined off its domain");
            }
        }
    }
    // Unit laws.
    for (int p = 0; p < np; ++p) {
        if (b.lact[G.unit[b.l[p]]][p] != p) fail(BE::Kind::UnitFailure, {p}, "1.p != p");
        if (b.ract[p][H.unit[b.r[p]]] != p) fail(BE::Kind::UnitFailure, {p}, "p.1 != p");
    }
    // Associativity with groupoid composition.
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int g2 = 0; g2 < G.num_arrows(); ++g2) {
            if (G.src[g] != G.tgt[g2]) continue;
            const int gg2 = G.comp[g][g2];
            for (int p = 0; p < np; ++p) {
                if (G.src[g2] != b.l[p]) continue;
                if (b.lact[gg2][p] != b.lact[g][b.lact[g2][p]])
                    fail(BE::Kind::AssociativityFailure, {g, g2, p}, "(g g').p != g.(g'.p)");
            }
        }
    for (int p = 0; p < np; ++p)
        for (int h = 0; h < H.num_arrows(); ++h) {
            if (b.r[p] != H.tgt[h]) continue;
            const int ph = b.ract[p][h];
            for (int h2 = 0; h2 < H.num_arrows(); ++h2) {
                if (H.src[h] != H.tgt[h2]) continue;
                if (b.ract[p][H.comp[h][h2]] != b.ract[ph][h2])
                    fail(BE::Kind::AssociativityFailure, {p, h, h2}, "p.(h h') != (p.h).h'");
            }
        }
    // Actions commute.
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int p = 0; p < np; ++p) {
            if (G.src[g] != b.l[p]) continue;
            for (int h = 0; h < H.num_arrows(); ++h) {
                if (b.r[p] != H.tgt[h]) continue;
                if (b.ract[b.lact[g][p]][h] != b.lact[g][b.ract[p][h]])
                    fail(BE::Kind::CommutationFailure, {g, p, h}, "(g.p).h != g.(p.h)");
            }
        }
    return std::make_shared<const Bibundle>(std::move(b));
}

BibundleHandle identity_bibundle(GroupoidHandle g) {
    const auto& G = *g;
    Bibundle b;
    b.left_groupoid = g;
    b.right_groupoid = g;
    b.num_points = G.num_arrows();
    b.l = G.tgt;
    b.r = G.src;
    b.lact = G.comp;
    b.ract = G.comp;
    return validate_bibundle(std::move(b));
}

BibundleHandle hom_bibundle(const GroupoidHom& phi) {
    const auto& G = *phi.domain;
    const auto& H = *phi.codomain;
    std::vector<std::pair<int, int>> pts;  // (x, h) lex order
    for (int x = 0; x < G.num_objects; ++x)
        for (int h = 0; h < H.num_arrows(); ++h)
            if (phi.phi0[x] == H.tgt[h]) pts.emplace_back(x, h);
    std::map<std::pair<int, int>, int> id;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) id[pts[i]] = i;

    Bibundle b;
    b.left_groupoid = phi.domain;
    b.right_groupoid = phi.codomain;
    b.num_points = static_cast<int>(pts.size());
    b.l.resize(b.num_points);
    b.r.resize(b.num_points);
    for (int i = 0; i < b.num_points; ++i) {
        b.l[i] = pts[i].first;
        b.r[i] = H.src[pts[i].second];
    }
    b.lact.assign(G.num_arrows(), std::vector<int>(b.num_points, -1));
    b.ract.assign(b.num_points, std::vector<int>(H.num_arrows(), -1));
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int i = 0; i < b.num_points; ++i) {
            const auto [x, h] = pts[i];
            if (G.src[g] != x) continue;
            b.lact[g][i] = id.at({G.tgt[g], H.comp[phi.phi1[g]][h]});
        }
    for (int i = 0; i < b.num_points; ++i) {
        const auto [x, h] = pts[i];
        for (int h2 = 0; h2 < H.num_arrows(); ++h2) {
            if (H.src[h] != H.tgt[h2]) continue;
            b.ract[i][h2] = id.at({x, H.comp[h][h2]});
        }
    }
    return validate_bibundle(std::move(b));
}

namespace {

GroupoidHandle terminal_groupoid() {
    FiniteGroupoid t;
    t.num_objects = 1;
    t.src = {0};
    t.tgt = {0};
    t.inv = {0};
    t.unit = {0};
    t.comp = {{0}};
    return std::make_shared<const FiniteGroupoid>(validate_groupoid(std::move(t)));
}

}  // namespace

BibundleHandle terminal_bibundle(GroupoidHandle g) {
    const auto& G = *g;
    Bibundle b;
    b.left_groupoid = g;
    b.right_groupoid = terminal_groupoid();
    b.num_points = G.num_objects;
    b.l.resize(G.num_objects);
    std::iota(b.l.begin(), b.l.end(), 0);
    b.r.assign(G.num_objects, 0);
    b.lact.assign(G.num_arrows(), std::vector<int>(G.num_objects, -1));
    for (int a = 0; a < G.num_arrows(); ++a) b.lact[a][G.src[a]] = G.tgt[a];
    b.ract.assign(G.num_objects, std::vector<int>(1, -1));
    for (int x = 0; x < G.num_objects; ++x) b.ract[x][0] = x;
    return validate_bibundle(std::move(b));
}

BibundleHandle anchor_bibundle(GroupoidHandle g) {
    // The bibundle of the anchor homomorphism (t,s): G -> Pair(G0). The
    // point set is the hom-bibundle fiber product {(x, (x,y))} = G0 x G0;
    // the bare span G0 <- G0 -> G0 with identity anchors does not satisfy
    // the bibundle axioms (the left action would move the right anchor).
    const auto& G = *g;
    auto pair_g = std::make_shared<const FiniteGroupoid>(pair_groupoid(G.num_objects));
    GroupoidHom phi;
    phi.domain = g;
    phi.codomain = pair_g;
    phi.phi0.resize(G.num_objects);
    std::iota(phi.phi0.begin(), phi.phi0.end(), 0);
    phi.phi1.resize(G.num_arrows());
    for (int a = 0; a < G.num_arrows(); ++a)
        phi.phi1[a] = G.tgt[a] * G.num_objects + G.src[a];
    return hom_bibundle(validate_hom(std::move(phi)));
}

BibundleHandle diagonal_bibundle(GroupoidHandle g) {
    const auto& G = *g;
    auto gg = std::make_shared<const FiniteGroupoid>(product_groupoid(G, G));
    std::vector<std::pair<int, int>> pts;
    for (int h1 = 0; h1 < G.num_arrows(); ++h1)
        for (int h2 = 0; h2 < G.num_arrows(); ++h2)
            if (G.tgt[h1] == G.tgt[h2]) pts.emplace_back(h1, h2);
    std::map<std::pair<int, int>, int> id;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) id[pts[i]] = i;

    Bibundle b;
    b.left_groupoid = g;
    b.right_groupoid = gg;
    b.num_points = static_cast<int>(pts.size());
    b.l.resize(b.num_points);
    b.r.resize(b.num_points);
    for (int i = 0; i < b.num_points; ++i) {
        b.l[i] = G.tgt[pts[i].first];
        b.r[i] = G.src[pts[i].first] * G.num_objects + G.src[pts[i].second];
    }
    b.lact.assign(G.num_arrows(), std::vector<int>(b.num_points, -1));
    for (int a = 0; a < G.num_arrows(); ++a)
        for (int i = 0; i < b.num_points; ++i) {
            const auto [h1, h2] = pts[i];
            if (G.src[a] != G.tgt[h1]) continue;
            b.lact[a][i] = id.at({G.comp[a][h1], G.comp[a][h2]});
        }
    const int naG = G.num_arrows();
    b.ract.assign(b.num_points, std::vector<int>(naG * naG, -1));
    for (int i = 0; i < b.num_points; ++i) {
        const auto [h1, h2] = pts[i];
        for (int a1 = 0; a1 < naG; ++a1) {
            if (G.src[h1] != G.tgt[a1]) continue;
            for (int a2 = 0; a2 < naG; ++a2) {
                if (G.src[h2] != G.tgt[a2]) continue;
                b.ract[i][a1 * naG + a2] = id.at({G.comp[h1][a1], G.comp[h2][a2]});
            }
        }
    }
    return validate_bibundle(std::move(b));
}

BibundleHandle point_bibundle(GroupoidHandle g, int object) {
    const auto& G = *g;
    if (object < 0 || object >= G.num_objects)
        fail(BE::Kind::IndexError, {object}, "point inclusion object out of range");
    std::vector<int> pts = G.t_fiber(object);  // already sorted by arrow id
    std::map<int, int> id;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) id[pts[i]] = i;

    Bibundle b;
    b.left_groupoid = terminal_groupoid();
    b.right_groupoid = g;
    b.num_points = static_cast<int>(pts.size());
    b.l.assign(b.num_points, 0);
    b.r.resize(b.num_points);
    for (int i = 0; i < b.num_points; ++i) b.r[i] = G.src[pts[i]];
    b.lact.assign(1, std::vector<int>(b.num_points));
    std::iota(b.lact[0].begin(), b.lact[0].end(), 0);
    b.ract.assign(b.num_points, std::vector<int>(G.num_arrows(), -1));
    for (int i = 0; i < b.num_points; ++i)
        for (int h = 0; h < G.num_arrows(); ++h)
            if (G.src[pts[i]] == G.tgt[h]) b.ract[i][h] = id.at(G.comp[pts[i]][h]);
    return validate_bibundle(std::move(b));
}

PrincipalityCertificate is_right_principal(const Bibundle& b) {
    const auto& G = *b.left_groupoid;
    const auto& H = *b.right_groupoid;
    PrincipalityCertificate cert;

    std::vector<char> covered(G.num_objects, 0);
    for (int p = 0; p < b.num_points; ++p) covered[b.l[p]] = 1;
    cert.l_surjective = true;
    for (int x = 0; x < G.num_objects; ++x)
        if (!covered[x]) {
            cert.l_surjective = false;
            cert.uncovered_object = x;
            break;
        }

    // Characteristic map (p, h) -> (p, p.h).
    std::map<std::pair<int, int>, std::pair<int, int>> image;  // (p,p') -> witness (p,h)
    cert.action_free = true;
    for (int p = 0; p < b.num_points && cert.action_free; ++p)
        for (int h = 0; h < H.num_arrows(); ++h) {
            if (b.r[p] != H.tgt[h]) continue;
            const auto key = std::make_pair(p, b.ract[p][h]);
            auto [it, fresh] = image.emplace(key, std::make_pair(p, h));
            if (!fresh) {
                cert.action_free = false;
                cert.free_witness = {p, it->second.second, h};
                break;
            }
        }
    cert.fiber_transitive = true;
    for (int p = 0; p < b.num_points && cert.fiber_transitive; ++p)
        for (int p2 = 0; p2 < b.num_points; ++p2) {
            if (b.l[p] != b.l[p2]) continue;
            if (!image.count({p, p2})) {
                cert.fiber_transitive = false;
                cert.unreachable_pair = {p, p2};
                break;
            }
        }
    return cert;
}

namespace {

/// The left-right swap of a bibundle through inverses; always a valid H-G
/// bibundle. Left principality of P is right principality of the swap.
Bibundle swapped(const Bibundle& b) {
    const auto& G = *b.left_groupoid;
    const auto& H = *b.right_groupoid;
    Bibundle o;
    o.left_groupoid = b.right_groupoid;
    o.right_groupoid = b.left_groupoid;
    o.num_points = b.num_points;
    o.l = b.r;
    o.r = b.l;
    o.lact.assign(H.num_arrows(), std::vector<int>(b.num_points, -1));
    for (int h = 0; h < H.num_arrows(); ++h)
        for (int p = 0; p < b.num_points; ++p)
            if (H.src[h] == b.r[p]) o.lact[h][p] = b.ract[p][H.inv[h]];
    o.ract.assign(b.num_points, std::vector<int>(G.num_arrows(), -1));
    for (int p = 0; p < b.num_points; ++p)
        for (int g = 0; g < G.num_arrows(); ++g)
            if (b.l[p] == G.tgt[g]) o.ract[p][g] = b.lact[G.inv[g]][p];
    return o;
}

}  // namespace

BiprincipalityCertificate is_biprincipal(const Bibundle& b) {
    BiprincipalityCertificate cert;
    cert.right_side = is_right_principal(b);
    cert.left_side = is_right_principal(swapped(b));
    return cert;
}

BibundleHandle opposite_bibundle(const BibundleHandle& b) {
    if (!is_biprincipal(*b).ok())
        fail(BE::Kind::NotBiprincipal, {}, "opposite requires a biprincipal bibundle");
    return validate_bibundle(swapped(*b));
}

int ComposedBibundle::pair_index(int p, int q) const {
    const auto key = std::make_pair(p, q);
    auto it = std::lower_bound(pairs.begin(), pairs.end(), key);
    if (it == pairs.end() || *it != key) return -1;
    return static_cast<int>(it - pairs.begin());
}

ComposedBibundle compose_bibundles(const BibundleHandle& ph, const BibundleHandle& qh,
                                   bool permissive) {
    const Bibundle& P = *ph;
    const Bibundle& Q = *qh;
    if (!same_tables(*P.right_groupoid, *Q.left_groupoid))
        fail(BE::Kind::NotComposable, {}, "middle groupoids disagree");
    if (!permissive && !is_right_principal(P).ok())
        fail(BE::Kind::NotPrincipal, {},
             "left factor must be right principal (permissive mode computes the raw quotient)");
    const auto& H = *P.right_groupoid;

    ComposedBibundle out;
    for (int p = 0; p < P.num_points; ++p)
        for (int q = 0; q < Q.num_points; ++q)
            if (P.r[p] == Q.l[q]) out.pairs.emplace_back(p, q);
    const int npairs = static_cast<int>(out.pairs.size());

    // Union-find over the diagonal H-action (p,q).h = (p.h, h^-1.q).
    std::vector<int> parent(npairs);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    const auto merge = [&](int a, int c) {
        a = find(a);
        c = find(c);
        if (a == c) return;
        if (a > c) std::swap(a, c);
        parent[c] = a;
    };
    for (int i = 0; i < npairs; ++i) {
        const auto [p, q] = out.pairs[i];
        for (int h = 0; h < H.num_arrows(); ++h) {
            if (P.r[p] != H.tgt[h]) continue;
            const int p2 = P.ract[p][h];
            const int q2 = Q.lact[H.inv[h]][q];
            const auto key = std::make_pair(p2, q2);
            const int j = static_cast<int>(
                std::lower_bound(out.pairs.begin(), out.pairs.end(), key) - out.pairs.begin());
            merge(i, j);
        }
    }
    out.orbit_of_pair.resize(npairs);
    std::map<int, int> orbit_id;
    for (int i = 0; i < npairs; ++i) {
        const int root = find(i);
        auto it = orbit_id.find(root);
        if (it == orbit_id.end()) {
            it = orbit_id.emplace(root, static_cast<int>(out.representative.size())).first;
            out.representative.push_back(root);
        }
        out.orbit_of_pair[i] = it->second;
    }
    const int norb = static_cast<int>(out.representative.size());

    const auto& G = *P.left_groupoid;
    const auto& K = *Q.right_groupoid;
    Bibundle c;
    c.left_groupoid = P.left_groupoid;
    c.right_groupoid = Q.right_groupoid;
    c.num_points = norb;
    c.l.resize(norb);
    c.r.resize(norb);
    for (int o = 0; o < norb; ++o) {
        const auto [p, q] = out.pairs[out.representative[o]];
        c.l[o] = P.l[p];
        c.r[o] = Q.r[q];
    }
    // Induced actions, verified well-defined across every orbit member.
    c.lact.assign(G.num_arrows(), std::vector<int>(norb, -1));
    c.ract.assign(norb, std::vector<int>(K.num_arrows(), -1));
    for (int i = 0; i < npairs; ++i) {
        const auto [p, q] = out.pairs[i];
        const int o = out.orbit_of_pair[i];
        for (int g = 0; g < G.num_arrows(); ++g) {
            if (G.src[g] != P.l[p]) continue;
            const int target = out.orbit_of_pair[out.pair_index(P.lact[g][p], q)];
            int& slot = c.lact[g][o];
            if (slot == -1)
                slot = target;
            else if (slot != target)
                fail(BE::Kind::EquivarianceFailure, {g, p, q},
                     "induced left action is not well-defined on orbits");
        }
        for (int k = 0; k < K.num_arrows(); ++k) {
            if (Q.r[q] != K.tgt[k]) continue;
            const int target = out.orbit_of_pair[out.pair_index(p, Q.ract[q][k])];
            int& slot = c.ract[o][k];
            if (slot == -1)
                slot = target;
            else if (slot != target)
                fail(BE::Kind::EquivarianceFailure, {p, q, k},
                     "induced right action is not well-defined on orbits");
        }
    }
    out.bundle = validate_bibundle(std::move(c));
    return out;
}

void check_biequivariant(const Bibundle& p, const Bibundle& q,
                         const std::vector<int>& f) {
    if (!same_tables(*p.left_groupoid, *q.left_groupoid) ||
        !same_tables(*p.right_groupoid, *q.right_groupoid))
        fail(BE::Kind::NotEquivariant, {}, "bibundles over different groupoids");
    if (p.num_points != q.num_points || static_cast<int>(f.size()) != p.num_points)
        fail(BE::Kind::NotEquivariant, {}, "not a bijection (size mismatch)");
    std::vector<char> hit(q.num_points, 0);
    for (int x : f) {
        if (x < 0 || x >= q.num_points || hit[x])
            fail(BE::Kind::NotEquivariant, {x}, "not a bijection");
        hit[x] = 1;
    }
    const auto& G = *p.left_groupoid;
    const auto& H = *p.right_groupoid;
    for (int i = 0; i < p.num_points; ++i) {
        if (q.l[f[i]] != p.l[i] || q.r[f[i]] != p.r[i])
            fail(BE::Kind::NotEquivariant, {i}, "anchors not preserved");
        for (int g = 0; g < G.num_arrows(); ++g)
            if (G.src[g] == p.l[i] && f[p.lact[g][i]] != q.lact[g][f[i]])
                fail(BE::Kind::NotEquivariant, {g, i}, "left action not preserved");
        for (int h = 0; h < H.num_arrows(); ++h)
            if (p.r[i] == H.tgt[h] && f[p.ract[i][h]] != q.ract[f[i]][h])
                fail(BE::Kind::NotEquivariant, {i, h}, "right action not preserved");
    }
}

namespace {

/// Signature of a point: anchors plus the stabilizer pattern of both
/// actions. Biequivariant maps preserve it, so candidates can be
/// restricted to equal signatures.
std::vector<int> point_signature(const Bibundle& b, int p) {
    std::vector<int> sig{b.l[p], b.r[p]};
    const auto& G = *b.left_groupoid;
    const auto& H = *b.right_groupoid;
    for (int g = 0; g < G.num_arrows(); ++g)
        if (G.src[g] == b.l[p] && b.lact[g][p] == p) sig.push_back(g + 1);
    for (int h = 0; h < H.num_arrows(); ++h)
        if (b.r[p] == H.tgt[h] && b.ract[p][h] == p) sig.push_back(-(h + 1));
    return sig;
}

bool extend_iso(const Bibundle& P, const Bibundle& Q, std::vector<int>& f,
                std::vector<char>& used, int i,
                const std::vector<std::vector<int>>& candidates) {
    if (i == P.num_points) return true;
    if (f[i] != -1) return extend_iso(P, Q, f, used, i + 1, candidates);
    const auto& G = *P.left_groupoid;
    const auto& H = *P.right_groupoid;
    for (int c : candidates[i]) {
        if (used[c]) continue;
        // Propagate through both actions; record assignments for rollback.
        std::vector<std::pair<int, int>> assigned;
        bool ok = true;
        auto assign = [&](int a, int b2) {
            if (f[a] == -1) {
                if (used[b2]) return false;
                f[a] = b2;
                used[b2] = 1;
                assigned.emplace_back(a, b2);
                return true;
            }
            return f[a] == b2;
        };
        if (!assign(i, c)) continue;
        for (size_t k = 0; k < assigned.size() && ok; ++k) {
            const auto [a, b2] = assigned[k];
            if (P.l[a] != Q.l[b2] || P.r[a] != Q.r[b2]) {
                ok = false;
                break;
            }
            for (int g = 0; g < G.num_arrows() && ok; ++g)
                if (G.src[g] == P.l[a]) ok = assign(P.lact[g][a], Q.lact[g][b2]);
            for (int h = 0; h < H.num_arrows() && ok; ++h)
                if (P.r[a] == H.tgt[h]) ok = assign(P.ract[a][h], Q.ract[b2][h]);
        }
        if (ok && extend_iso(P, Q, f, used, i + 1, candidates)) return true;
        for (const auto& [a, b2] : assigned) {
            f[a] = -1;
            used[b2] = 0;
        }
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_biequivariant_iso(const Bibundle& p,
                                                       const Bibundle& q) {
    if (!same_tables(*p.left_groupoid, *q.left_groupoid) ||
        !same_tables(*p.right_groupoid, *q.right_groupoid))
        return std::nullopt;
    if (p.num_points != q.num_points) return std::nullopt;
    std::vector<std::vector<int>> candidates(p.num_points);
    for (int i = 0; i < p.num_points; ++i) {
        const auto sig = point_signature(p, i);
        for (int j = 0; j < q.num_points; ++j)
            if (point_signature(q, j) == sig) candidates[i].push_back(j);
        if (candidates[i].empty()) return std::nullopt;
    }
    std::vector<int> f(p.num_points, -1);
    std::vector<char> used(q.num_points, 0);
    if (!extend_iso(p, q, f, used, 0, candidates)) return std::nullopt;
    check_biequivariant(p, q, f);
    return f;
}

}  // namespace grpd
