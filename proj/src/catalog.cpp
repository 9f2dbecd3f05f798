#include "grpd/catalog.hpp"

#include "grpd/parallel.hpp"

#include <algorithm>
#include <random>

namespace grpd {

namespace {

GroupoidHandle make(FiniteGroupoid g) {
    return std::make_shared<const FiniteGroupoid>(std::move(g));
}

GroupoidHandle z2() { return make(group_groupoid({{0, 1}, {1, 0}})); }

GroupoidHandle z3() {
    return make(group_groupoid({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
}

GroupoidHandle s3() {
    const std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    auto index_of = [&](const std::array<int, 3>& p) {
        for (int i = 0; i < 6; ++i)
            if (perms[i] == p) return i;
        return -1;
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
            t[a][b] = index_of(c);
        }
    return make(group_groupoid(t));
}

GroupoidHandle unit_groupoid(int n) {
    std::vector<std::vector<int>> cover;
    for (int i = 0; i < n; ++i) cover.push_back({i});
    return make(cech_groupoid(n, cover));
}

RightGroupSet z2_free_set() {
    RightGroupSet ps;
    ps.group = z2();
    ps.num_points = 4;
    ps.act = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
    return ps;
}

/// The gauge-groupoid Morita bibundle X <- P -> * for a free right group
/// set: arrows of Gauge(P) act by [p,q].q = p, the group acts on the right.
BibundleHandle gauge_morita_bibundle(const RightGroupSet& ps, GroupoidHandle gauge) {
    const auto& grp = *ps.group;
    const int np = ps.num_points, ng = grp.num_arrows();
    // Rebuild the constructor's minimal-pair arrow naming.
    std::vector<int> arrow_of_pair(np * np, -1);
    {
        std::map<int, int> seen;
        int next = 0;
        for (int code = 0; code < np * np; ++code) {
            const int p = code / np, q = code % np;
            int mn = code;
            for (int a = 0; a < ng; ++a)
                mn = std::min(mn, ps.act[p][a] * np + ps.act[q][a]);
            auto [it, fresh] = seen.emplace(mn, next);
            if (fresh) ++next;
            arrow_of_pair[code] = it->second;
        }
    }
    // Orbits of points give the base objects, in first-seen order, which is
    // how gauge_groupoid numbers them.
    std::vector<int> orbit(np, -1);
    {
        int next = 0;
        for (int p = 0; p < np; ++p) {
            if (orbit[p] >= 0) continue;
            orbit[p] = next;
            for (int a = 0; a < ng; ++a) orbit[ps.act[p][a]] = next;
            ++next;
        }
    }
    Bibundle b;
    b.left_groupoid = gauge;
    b.right_groupoid = ps.group;
    b.num_points = np;
    b.l.resize(np);
    for (int p = 0; p < np; ++p) b.l[p] = orbit[p];
    b.r.assign(np, 0);
    b.lact.assign(gauge->num_arrows(), std::vector<int>(np, -1));
    for (int code = 0; code < np * np; ++code)
        b.lact[arrow_of_pair[code]][code % np] = code / np;
    b.ract.assign(np, std::vector<int>(ng, -1));
    for (int p = 0; p < np; ++p)
        for (int a = 0; a < ng; ++a) b.ract[p][a] = ps.act[p][a];
    return validate_bibundle(std::move(b));
}

std::map<std::string, bool> groupoid_entry_run(const GroupoidHandle& g,
                                               int expect_orbits,
                                               const std::vector<int>& expect_isotropy) {
    std::map<std::string, bool> out;
    out["validates"] = true;  // construction already validated; re-check anyway
    try {
        validate_groupoid(*g);
    } catch (const GroupoidError&) {
        out["validates"] = false;
    }
    bool haar_ok = true;
    try {
        validate_haar(*g, counting_haar(*g).weight);
    } catch (const HaarError&) {
        haar_ok = false;
    }
    out["counting-haar"] = haar_ok;
    const OrbitReport rep = orbits_and_isotropy(*g);
    out["orbit-structure"] = rep.num_orbits == expect_orbits;
    if (!expect_isotropy.empty()) {
        bool iso_ok = true;
        for (size_t x = 0; x < expect_isotropy.size(); ++x)
            iso_ok = iso_ok && static_cast<int>(rep.isotropy[x].size()) == expect_isotropy[x];
        out["isotropy"] = iso_ok;
    }
    auto alg = make_algebra_counting(g);
    out["self-induced"] = self_induced_check(alg->table()).ok();
    out["associative"] = true;
    try {
        alg->table()->check_associative();
    } catch (const std::logic_error&) {
        out["associative"] = false;
    }
    out["unit-laws"] = true;
    try {
        unit_element(alg);
    } catch (const std::exception&) {
        out["unit-laws"] = false;
    }
    return out;
}

std::map<std::string, bool> morita_entry_run(const MoritaCatalogEntry& e) {
    std::map<std::string, bool> out;
    out["biprincipal"] = is_biprincipal(*e.bundle).ok();
    MoritaCertificate cert = morita_check(e.bundle, e.haar_left, e.haar_right);
    out["morita"] = cert.ok();
    ConvBimodule m = conv_bimodule(e.bundle, e.haar_left, e.haar_right);
    out["smooth"] = smoothness_check(m.module).ok();
    const NondegeneracyReport nd = nondegeneracy_class(m.module);
    out["nondegenerate"] = nd.left_surjective && nd.right_surjective;
    out["projective-right"] = find_module_section(m.module, ModuleSide::Right).has_value();
    out["projective-left"] = find_module_section(m.module, ModuleSide::Left).has_value();
    return out;
}

std::map<std::string, bool> hom_bibundle_entry_run(const BibundleHandle& b,
                                                   const HaarSystem& hg,
                                                   const HaarSystem& hh) {
    std::map<std::string, bool> out;
    out["right-principal"] = is_right_principal(*b).ok();
    ConvBimodule m = conv_bimodule(b, hg, hh);
    out["smooth"] = smoothness_check(m.module).ok();
    const NondegeneracyReport nd = nondegeneracy_class(m.module);
    out["nondegenerate"] = nd.left_surjective && nd.right_surjective;
    // Right principal means free + transitive on l-fibers, the finite
    // shadow of the projectivity hypotheses for the right module.
    out["projective-right"] = find_module_section(m.module, ModuleSide::Right).has_value();
    return out;
}

}  // namespace

GroupoidHom cech_space_epimorphism(const GroupoidHandle& cech, int num_points,
                                   const std::vector<std::vector<int>>& cover) {
    GroupoidHandle space = unit_groupoid(num_points);
    GroupoidHom f;
    f.domain = cech;
    f.codomain = space;
    std::vector<std::vector<char>> member(cover.size(), std::vector<char>(num_points, 0));
    for (size_t i = 0; i < cover.size(); ++i)
        for (int x : cover[i]) member[i][x] = 1;
    for (size_t i = 0; i < cover.size(); ++i)
        for (int x = 0; x < num_points; ++x)
            if (member[i][x]) f.phi0.push_back(x);
    for (size_t i = 0; i < cover.size(); ++i)
        for (size_t j = 0; j < cover.size(); ++j)
            for (int x = 0; x < num_points; ++x)
                if (member[i][x] && member[j][x]) f.phi1.push_back(space->unit[x]);
    return validate_hom(std::move(f));
}

std::vector<MoritaCatalogEntry> morita_catalog() {
    std::vector<MoritaCatalogEntry> out;
    const auto add = [&](std::string name, BibundleHandle b) {
        HaarSystem hg = counting_haar(*b->left_groupoid);
        HaarSystem hh = counting_haar(*b->right_groupoid);
        out.push_back({std::move(name), std::move(b), std::move(hg), std::move(hh)});
    };
    add("identity-z2", identity_bibundle(z2()));
    add("identity-pair3", identity_bibundle(make(pair_groupoid(3))));
    add("pair2-morita", terminal_bibundle(make(pair_groupoid(2))));
    add("pair3-morita", terminal_bibundle(make(pair_groupoid(3))));
    {
        const std::vector<std::vector<int>> cover = {{0, 1}, {1, 2}};
        auto cech = make(cech_groupoid(3, cover));
        add("cech3-morita", hom_bibundle(cech_space_epimorphism(cech, 3, cover)));
    }
    {
        const std::vector<std::vector<int>> cover = {{0, 1, 2}, {2, 3}, {3, 4}};
        auto cech = make(cech_groupoid(5, cover));
        add("cech5-morita", hom_bibundle(cech_space_epimorphism(cech, 5, cover)));
    }
    {
        RightGroupSet ps = z2_free_set();
        auto gauge = make(gauge_groupoid(ps));
        add("gauge-z2-morita", gauge_morita_bibundle(ps, gauge));
    }
    return out;
}

std::vector<CatalogEntry> release_catalog() {
    std::vector<CatalogEntry> out;

    const auto add_groupoid = [&](std::string name, std::string ctor, GroupoidHandle g,
                                  int orbits, std::vector<int> isotropy = {}) {
        CatalogEntry e;
        e.name = std::move(name);
        e.constructor = std::move(ctor);
        e.expected = {"validates", "counting-haar", "orbit-structure", "associative",
                      "self-induced", "unit-laws"};
        e.run = [g, orbits, isotropy] { return groupoid_entry_run(g, orbits, isotropy); };
        out.push_back(std::move(e));
    };
    add_groupoid("grpd-terminal", "pair(1)", make(pair_groupoid(1)), 1, {1});
    add_groupoid("grpd-pair2", "pair(2)", make(pair_groupoid(2)), 1, {1, 1});
    add_groupoid("grpd-pair3", "pair(3)", make(pair_groupoid(3)), 1);
    add_groupoid("grpd-pair4", "pair(4)", make(pair_groupoid(4)), 1);
    add_groupoid("grpd-z2", "group(Z2)", z2(), 1, {2});
    add_groupoid("grpd-two-points", "unit(2)", unit_groupoid(2), 2, {1, 1});
    add_groupoid("grpd-s3", "group(S3)", s3(), 1, {6});
    add_groupoid("grpd-z2-swap", "action(Z2 on 2)",
                 make(action_groupoid(*z2(), {{0, 1}, {1, 0}})), 1, {1, 1});
    add_groupoid("grpd-cech3", "cech({ab,bc} of 3)",
                 make(cech_groupoid(3, {{0, 1}, {1, 2}})), 3);
    // The gauge groupoid is transitive: every two fibers are connected.
    add_groupoid("grpd-gauge-z2", "gauge(Z2 free on 4)",
                 make(gauge_groupoid(z2_free_set())), 1);
    add_groupoid("grpd-prod-pair2-z2", "pair(2) x Z2",
                 make(product_groupoid(pair_groupoid(2), *z2())), 1, {2, 2});

    for (const auto& me : morita_catalog()) {
        CatalogEntry e;
        e.name = "morita-" + me.name;
        e.constructor = "biprincipal bibundle";
        e.expected = {"biprincipal", "morita", "smooth", "nondegenerate",
                      "projective-right", "projective-left"};
        MoritaCatalogEntry copy = me;
        e.run = [copy] { return morita_entry_run(copy); };
        out.push_back(std::move(e));
    }

    const auto add_hom = [&](std::string name, std::string ctor, BibundleHandle b) {
        CatalogEntry e;
        e.name = std::move(name);
        e.constructor = std::move(ctor);
        e.expected = {"right-principal", "smooth", "nondegenerate", "projective-right"};
        HaarSystem hg = counting_haar(*b->left_groupoid);
        HaarSystem hh = counting_haar(*b->right_groupoid);
        e.run = [b, hg, hh] { return hom_bibundle_entry_run(b, hg, hh); };
        out.push_back(std::move(e));
    };
    add_hom("bibundle-terminal-pair2", "terminal(pair(2))",
            terminal_bibundle(make(pair_groupoid(2))));
    add_hom("bibundle-point-pair2", "point(pair(2), 0)",
            point_bibundle(make(pair_groupoid(2)), 0));
    add_hom("bibundle-point-z2", "point(Z2)", point_bibundle(z2(), 0));
    add_hom("bibundle-diagonal-z2", "diagonal(Z2)", diagonal_bibundle(z2()));
    add_hom("bibundle-anchor-pair2", "anchor(pair(2))",
            anchor_bibundle(make(pair_groupoid(2))));
    add_hom("bibundle-terminal-z2-swap", "terminal(Z2 on 2)",
            terminal_bibundle(make(action_groupoid(*z2(), {{0, 1}, {1, 0}}))));

    {
        CatalogEntry e;
        e.name = "tensor-products";
        e.constructor = "A(G) (x) A(H) = A(G x H) on five pairs";
        e.expected = {"all-pairs-certified"};
        e.run = [] {
            std::map<std::string, bool> out;
            std::vector<std::pair<GroupoidHandle, GroupoidHandle>> pairs = {
                {make(pair_groupoid(1)), z2()},
                {z2(), z2()},
                {make(pair_groupoid(2)), z2()},
                {make(pair_groupoid(2)), make(pair_groupoid(2))},
                {unit_groupoid(2), make(pair_groupoid(3))},
            };
            bool ok = true;
            for (const auto& [g, h] : pairs) {
                auto ag = make_algebra_counting(g);
                auto ah = make_algebra_counting(h);
                ok = ok && tensor_algebra_iso(*ag, *ah).certificate.ok();
            }
            out["all-pairs-certified"] = ok;
            return out;
        };
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "zero-action-fixture";
        e.constructor = "dim-2 module with zero actions over A(pair(2))";
        e.expected = {"not-smooth", "no-section"};
        e.run = [] {
            std::map<std::string, bool> out;
            auto g = make(pair_groupoid(2));
            auto table = make_algebra_counting(g)->table();
            Bimodule zero = zero_action_bimodule(table, table, 2);
            out["not-smooth"] = !smoothness_check(zero).ok();
            out["no-section"] = !find_module_section(zero, ModuleSide::Right).has_value();
            return out;
        };
        out.push_back(std::move(e));
    }

    std::sort(out.begin(), out.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) { return a.name < b.name; });
    return out;
}

Json run_catalog(const std::vector<CatalogEntry>& entries) {
    apply_thread_cap();
    std::vector<std::map<std::string, bool>> results(entries.size());
    std::vector<std::string> errors(entries.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
        try {
            results[i] = entries[i].run();
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    // Assembly is order-stable: entries sorted by name.
    std::vector<int> order(entries.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return entries[a].name < entries[b].name; });

    Json report;
    report["entries"] = Json::array();
    bool all_pass = true;
    int failures = 0;
    for (int i : order) {
        Json entry;
        entry["name"] = entries[i].name;
        entry["constructor"] = entries[i].constructor;
        bool pass = errors[i].empty();
        if (!errors[i].empty()) entry["error"] = errors[i];
        Json certs;
        for (const auto& name : entries[i].expected) {
            const auto it = results[i].find(name);
            const bool got = it != results[i].end() && it->second;
            certs[name] = got;
            pass = pass && got;
        }
        entry["certificates"] = std::move(certs);
        entry["pass"] = pass;
        all_pass = all_pass && pass;
        failures += pass ? 0 : 1;
        report["entries"].push_back(std::move(entry));
    }
    report["total"] = static_cast<int>(entries.size());
    report["failures"] = failures;
    report["all_pass"] = all_pass;
    return report;
}

Json run_release_catalog(bool include_broken_fixture) {
    std::vector<CatalogEntry> entries = release_catalog();
    if (include_broken_fixture) {
        CatalogEntry broken;
        broken.name = "zz-broken-fixture";
        broken.constructor = "intentionally failing entry";
        broken.expected = {"never-passes"};
        broken.run = [] { return std::map<std::string, bool>{{"never-passes", false}}; };
        entries.push_back(std::move(broken));
    }
    return run_catalog(entries);
}

namespace {

/// Small random groupoid assembled from simple blocks, arrow count kept
/// modest so hom-bibundle point counts stay within the caps.
GroupoidHandle random_small_groupoid(std::mt19937_64& rng, int max_arrows) {
    const auto block = [&]() -> FiniteGroupoid {
        switch (rng() % 5) {
            case 0: return pair_groupoid(1 + static_cast<int>(rng() % 3));
            case 1: return *z2();
            case 2: return *z3();
            case 3: return *unit_groupoid(1 + static_cast<int>(rng() % 3));
            default: return *make(action_groupoid(*z2(), {{0, 1}, {1, 0}}));
        }
    };
    FiniteGroupoid g = block();
    while (static_cast<int>(rng() % 2) == 0) {
        FiniteGroupoid h = block();
        if (g.num_arrows() + h.num_arrows() > max_arrows) break;
        g = disjoint_union(g, h);
    }
    return make(std::move(g));
}

/// Random homomorphism INTO k, returned with its domain.
GroupoidHom random_hom_into(std::mt19937_64& rng, const GroupoidHandle& k,
                            int max_arrows) {
    const int choice = static_cast<int>(rng() % 4);
    if (choice == 0) {
        // Identity.
        GroupoidHom f;
        f.domain = k;
        f.codomain = k;
        f.phi0.resize(k->num_objects);
        std::iota(f.phi0.begin(), f.phi0.end(), 0);
        f.phi1.resize(k->num_arrows());
        std::iota(f.phi1.begin(), f.phi1.end(), 0);
        return validate_hom(std::move(f));
    }
    if (choice == 1) {
        // Full subgroupoid inclusion over a random nonempty object subset.
        std::vector<int> objs;
        for (int x = 0; x < k->num_objects; ++x)
            if (rng() % 2 == 0) objs.push_back(x);
        if (objs.empty()) objs.push_back(static_cast<int>(rng() % k->num_objects));
        FiniteGroupoid sub = full_subgroupoid(*k, objs);
        // Arrow images: match endpoints through the object inclusion.
        std::vector<int> new_obj(objs.begin(), objs.end());
        GroupoidHom f;
        f.domain = make(sub);
        f.codomain = k;
        f.phi0 = new_obj;
        for (int a = 0; a < f.domain->num_arrows(); ++a) {
            // Find the unique arrow of k with the same endpoints and the
            // same position among arrows between them.
            int count = 0;
            for (int b = 0; b < f.domain->num_arrows(); ++b)
                if (b < a && f.domain->src[b] == f.domain->src[a] &&
                    f.domain->tgt[b] == f.domain->tgt[a])
                    ++count;
            int hit = -1;
            for (int b2 = 0; b2 < k->num_arrows(); ++b2) {
                if (k->src[b2] != new_obj[f.domain->src[a]] ||
                    k->tgt[b2] != new_obj[f.domain->tgt[a]])
                    continue;
                if (count == 0) {
                    hit = b2;
                    break;
                }
                --count;
            }
            f.phi1.push_back(hit);
        }
        return validate_hom(std::move(f));
    }
    if (choice == 2) {
        // Projection from a product with a small factor.
        GroupoidHandle l = random_small_groupoid(rng, std::max(2, max_arrows / k->num_arrows()));
        FiniteGroupoid prod = product_groupoid(*k, *l);
        GroupoidHom f;
        f.domain = make(std::move(prod));
        f.codomain = k;
        const int noL = l->num_objects, naL = l->num_arrows();
        for (int x = 0; x < f.domain->num_objects; ++x) f.phi0.push_back(x / noL);
        for (int a = 0; a < f.domain->num_arrows(); ++a) f.phi1.push_back(a / naL);
        return validate_hom(std::move(f));
    }
    // Point inclusion of a unit at a random object.
    GroupoidHom f;
    f.domain = make(pair_groupoid(1));
    f.codomain = k;
    const int x = static_cast<int>(rng() % k->num_objects);
    f.phi0 = {x};
    f.phi1 = {k->unit[x]};
    return validate_hom(std::move(f));
}

HaarSystem random_haar(std::mt19937_64& rng, const FiniteGroupoid& g) {
    std::vector<Rational> u(g.num_objects);
    for (auto& x : u) x = Rational(1 + static_cast<int>(rng() % 4),
                                   1 + static_cast<int>(rng() % 3));
    std::vector<Rational> w(g.num_arrows());
    for (int a = 0; a < g.num_arrows(); ++a) w[a] = u[g.tgt[a]];
    return validate_haar(g, std::move(w));
}

}  // namespace

RandomPairInstance random_composable_pair(std::uint64_t seed, int max_points) {
    std::mt19937_64 rng(seed * 6364136223846793005ull + 1442695040888963407ull);
    for (int attempt = 0; attempt < 64; ++attempt) {
        GroupoidHandle k = random_small_groupoid(rng, 8);
        GroupoidHom psi = random_hom_into(rng, k, 16);   // H -> K
        GroupoidHandle h = psi.domain;
        GroupoidHom phi = random_hom_into(rng, h, 16);   // G -> H
        BibundleHandle p = hom_bibundle(phi);
        BibundleHandle q = hom_bibundle(psi);
        if (p->num_points > max_points || q->num_points > max_points) continue;
        RandomPairInstance inst;
        inst.p = p;
        inst.q = q;
        inst.haar_g = random_haar(rng, *phi.domain);
        inst.haar_h = random_haar(rng, *h);
        inst.haar_k = random_haar(rng, *k);
        return inst;
    }
    throw std::runtime_error("random pair generation exhausted its attempts");
}

RandomTripleInstance random_composable_triple(std::uint64_t seed, int max_points) {
    std::mt19937_64 rng(seed * 2862933555777941757ull + 3037000493ull);
    for (int attempt = 0; attempt < 64; ++attempt) {
        GroupoidHandle l = random_small_groupoid(rng, 6);
        GroupoidHom chi = random_hom_into(rng, l, 10);   // K -> L
        GroupoidHom psi = random_hom_into(rng, chi.domain, 10);  // H -> K
        GroupoidHom phi = random_hom_into(rng, psi.domain, 10);  // G -> H
        BibundleHandle p = hom_bibundle(phi);
        BibundleHandle q = hom_bibundle(psi);
        BibundleHandle r = hom_bibundle(chi);
        if (p->num_points > max_points || q->num_points > max_points ||
            r->num_points > max_points)
            continue;
        RandomTripleInstance inst;
        inst.p = p;
        inst.q = q;
        inst.r = r;
        inst.haar_g = random_haar(rng, *phi.domain);
        inst.haar_h = random_haar(rng, *psi.domain);
        inst.haar_k = random_haar(rng, *chi.domain);
        inst.haar_l = random_haar(rng, *l);
        return inst;
    }
    throw std::runtime_error("random triple generation exhausted its attempts");
}

}  // namespace grpd
