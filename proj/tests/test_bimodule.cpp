#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grpd/bimodule.hpp"
#include "grpd/catalog.hpp"

#include <numeric>

using namespace grpd;

namespace {

GroupoidHandle make(FiniteGroupoid g) {
    return std::make_shared<const FiniteGroupoid>(std::move(g));
}

GroupoidHandle z2() { return make(group_groupoid({{0, 1}, {1, 0}})); }
GroupoidHandle terminal() { return make(pair_groupoid(1)); }

GroupoidHom cech_to_space(GroupoidHandle cech, int num_points,
                          const std::vector<std::vector<int>>& cover) {
    std::vector<std::vector<int>> point_cover;
    for (int i = 0; i < num_points; ++i) point_cover.push_back({i});
    GroupoidHandle space = make(cech_groupoid(num_points, point_cover));
    GroupoidHom f;
    f.domain = cech;
    f.codomain = space;
    for (const auto& u : cover) {
        std::vector<int> sorted(u.begin(), u.end());
        std::sort(sorted.begin(), sorted.end());
        for (int x : sorted) f.phi0.push_back(x);
    }
    std::vector<std::vector<char>> member(cover.size(), std::vector<char>(num_points, 0));
    for (size_t i = 0; i < cover.size(); ++i)
        for (int x : cover[i]) member[i][x] = 1;
    for (size_t i = 0; i < cover.size(); ++i)
        for (size_t j = 0; j < cover.size(); ++j)
            for (int x = 0; x < num_points; ++x)
                if (member[i][x] && member[j][x]) f.phi1.push_back(space->unit[x]);
    return validate_hom(std::move(f));
}

}  // namespace

TEST_CASE("regular bimodule of the identity bibundle is the algebra") {
    auto g = make(pair_groupoid(2));
    ConvBimodule m = conv_bimodule(identity_bibundle(g), counting_haar(*g), counting_haar(*g));
    AlgebraTableHandle t = m.left_algebra->table();
    CHECK(m.module.lact == t->mult);
    CHECK(m.module.ract == t->mult);
}

TEST_CASE("terminal bibundle of pair(2): column space with matrix action") {
    auto g = make(pair_groupoid(2));
    ConvBimodule m = conv_bimodule(terminal_bibundle(g), counting_haar(*g),
                                   counting_haar(*terminal_bibundle(g)->right_groupoid));
    CHECK(m.module.dim == 2);
    // delta_(x,y) acts like the matrix unit E_xy on the column space.
    CHECK(m.module.lact_basis(1, 1) == sparse_unit(0));
    CHECK(m.module.lact_basis(1, 0) == SparseVec{});
    CHECK(m.module.lact_basis(2, 0) == sparse_unit(1));
}

TEST_CASE("point bibundle at x of pair(2) is a 2-dim right module") {
    auto g = make(pair_groupoid(2));
    BibundleHandle p = point_bibundle(g, 0);
    ConvBimodule m = conv_bimodule(p, counting_haar(*p->left_groupoid), counting_haar(*g));
    CHECK(m.module.dim == 2);
    NondegeneracyReport rep = nondegeneracy_class(m.module);
    CHECK(rep.left_surjective);
    CHECK(rep.right_surjective);
}

TEST_CASE("tensor over A: A (x)_A A for A = C has dimension 1") {
    auto t = terminal();
    ConvBimodule a = conv_bimodule(identity_bibundle(t), counting_haar(*t), counting_haar(*t));
    TensorResult r = tensor_over(a.module, a.module);
    CHECK(r.space.dim() == 1);
    CHECK(r.space.section_is_right_inverse());
}

TEST_CASE("Cech tensor dimension 6 = 1 + 4 + 1") {
    const std::vector<std::vector<int>> cover = {{0, 1}, {1, 2}};
    auto cech = make(cech_groupoid(3, cover));
    BibundleHandle p = hom_bibundle(cech_to_space(cech, 3, cover));
    BibundleHandle q = opposite_bibundle(p);
    ConvBimodule mp = conv_bimodule(p, counting_haar(*cech), counting_haar(*p->right_groupoid));
    ConvBimodule mq = conv_bimodule(q, counting_haar(*q->left_groupoid), counting_haar(*cech));
    TensorResult r = tensor_over(mp.module, mq.module);
    CHECK(r.space.dim() == 6);
}

TEST_CASE("point module tensored with the terminal module is C") {
    auto g = make(pair_groupoid(2));
    BibundleHandle px = point_bibundle(g, 0);
    BibundleHandle pt = terminal_bibundle(g);
    ConvBimodule mx = conv_bimodule(px, counting_haar(*px->left_groupoid), counting_haar(*g));
    ConvBimodule mt = conv_bimodule(pt, counting_haar(*g), counting_haar(*pt->right_groupoid));
    TensorResult r = tensor_over(mx.module, mt.module);
    CHECK(r.space.dim() == 1);
}

TEST_CASE("middle mismatch is rejected") {
    auto t = terminal();
    auto g2 = z2();
    ConvBimodule a = conv_bimodule(identity_bibundle(t), counting_haar(*t), counting_haar(*t));
    ConvBimodule b = conv_bimodule(identity_bibundle(g2), counting_haar(*g2), counting_haar(*g2));
    CHECK_THROWS_AS(tensor_over(a.module, b.module), BimoduleError);
}

TEST_CASE("tau for identity bibundles is the multiplication isomorphism") {
    for (auto g : {terminal(), z2(), make(pair_groupoid(2))}) {
        BibundleHandle id = identity_bibundle(g);
        TauResult r = tau_hat(id, id, counting_haar(*g), counting_haar(*g), counting_haar(*g));
        CHECK(r.ok());
        CHECK(r.tensor.space.dim() == g->num_arrows());
    }
}

TEST_CASE("tau for the Cech pair is a 6x6 exact isomorphism") {
    const std::vector<std::vector<int>> cover = {{0, 1}, {1, 2}};
    auto cech = make(cech_groupoid(3, cover));
    BibundleHandle p = hom_bibundle(cech_to_space(cech, 3, cover));
    BibundleHandle q = opposite_bibundle(p);
    auto hu = counting_haar(*p->right_groupoid);
    TauResult r = tau_hat(p, q, counting_haar(*cech), hu, counting_haar(*cech));
    CHECK(r.ok());
    CHECK(r.tensor.space.dim() == 6);
    CHECK(r.composed.bundle->num_points == 6);
}

TEST_CASE("tau with weighted Haar systems stays an isomorphism") {
    auto g = make(pair_groupoid(2));
    std::vector<Rational> w = {Rational(2), Rational(2), Rational(1, 3), Rational(1, 3)};
    HaarSystem hg = validate_haar(*g, w);
    BibundleHandle id = identity_bibundle(g);
    TauResult r = tau_hat(id, id, hg, hg, hg);
    CHECK(r.ok());
}

TEST_CASE("tau requires right principal factors") {
    auto g2 = z2();
    Bibundle b;
    b.left_groupoid = g2;
    b.right_groupoid = terminal();
    b.num_points = 2;
    b.l = {0, 0};
    b.r = {0, 0};
    b.lact = g2->comp;
    b.ract = {{0}, {1}};
    BibundleHandle bad = validate_bibundle(std::move(b));
    CHECK_THROWS_AS(tau_hat(bad, identity_bibundle(terminal()), counting_haar(*g2),
                            counting_haar(*terminal()), counting_haar(*terminal())),
                    BibundleError);
}

TEST_CASE("tau coherence: identity triple and the Cech triple") {
    auto t = terminal();
    auto ht = counting_haar(*t);
    TauCoherenceResult triv = tau_coherence_check(identity_bibundle(t), identity_bibundle(t),
                                                  identity_bibundle(t), ht, ht, ht, ht);
    CHECK(triv.ok());

    const std::vector<std::vector<int>> cover = {{0, 1}, {1, 2}};
    auto cech = make(cech_groupoid(3, cover));
    BibundleHandle p = hom_bibundle(cech_to_space(cech, 3, cover));
    BibundleHandle q = opposite_bibundle(p);
    auto hc = counting_haar(*cech);
    auto hx = counting_haar(*p->right_groupoid);
    TauCoherenceResult r = tau_coherence_check(p, q, p, hc, hx, hc, hx);
    CHECK(r.ok());
}

TEST_CASE("smoothness and self-inducedness") {
    auto g = make(pair_groupoid(2));
    ConvBimodule reg = conv_bimodule(identity_bibundle(g), counting_haar(*g), counting_haar(*g));
    CHECK(smoothness_check(reg.module).ok());
    CHECK(self_induced_check(reg.left_algebra->table()).ok());

    // Zero action: A (x)_A M = 0 != M.
    auto table = reg.left_algebra->table();
    Bimodule zero = zero_action_bimodule(table, table, 2);
    SmoothnessResult res = smoothness_check(zero);
    CHECK_FALSE(res.ok());
    CHECK(res.left_tensor_dim == 0);

    // Zero multiplication algebra, dim 1: A (x)_A A = 0.
    auto zero_alg = std::make_shared<AlgebraTable>();
    zero_alg->dim = 1;
    zero_alg->mult = {SparseVec{}};
    CHECK_FALSE(self_induced_check(zero_alg).ok());
}

TEST_CASE("catalog conv bimodules are smooth on both sides") {
    auto g = make(pair_groupoid(2));
    auto g2 = z2();
    std::vector<ConvBimodule> mods;
    mods.push_back(conv_bimodule(terminal_bibundle(g), counting_haar(*g),
                                 counting_haar(*terminal_bibundle(g)->right_groupoid)));
    mods.push_back(conv_bimodule(point_bibundle(g, 1),
                                 counting_haar(*point_bibundle(g, 1)->left_groupoid),
                                 counting_haar(*g)));
    mods.push_back(conv_bimodule(identity_bibundle(g2), counting_haar(*g2), counting_haar(*g2)));
    mods.push_back(conv_bimodule(diagonal_bibundle(g2), counting_haar(*g2),
                                 counting_haar(*diagonal_bibundle(g2)->right_groupoid)));
    for (const auto& m : mods) {
        CHECK(smoothness_check(m.module).ok());
        NondegeneracyReport nd = nondegeneracy_class(m.module);
        CHECK(nd.left_surjective);
        CHECK(nd.right_surjective);
    }
}

TEST_CASE("module sections: C^X diagonal, pair(2) column module, zero action") {
    std::vector<std::vector<int>> cover = {{0}, {1}, {2}};
    auto cx = make(cech_groupoid(3, cover));
    ConvBimodule cxm = conv_bimodule(identity_bibundle(cx), counting_haar(*cx), counting_haar(*cx));
    auto sec = find_module_section(cxm.module, ModuleSide::Right);
    REQUIRE(sec.has_value());

    auto g = make(pair_groupoid(2));
    ConvBimodule col = conv_bimodule(terminal_bibundle(g), counting_haar(*g),
                                     counting_haar(*terminal_bibundle(g)->right_groupoid));
    CHECK(find_module_section(col.module, ModuleSide::Left).has_value());

    auto table = col.left_algebra->table();
    Bimodule zero = zero_action_bimodule(table, table, 1);
    CHECK_FALSE(find_module_section(zero, ModuleSide::Right).has_value());
    CHECK_FALSE(find_module_section(zero, ModuleSide::Left).has_value());
}

TEST_CASE("pushforward along the unitor is a bimodule isomorphism") {
    auto g = make(pair_groupoid(2));
    BibundleHandle p = terminal_bibundle(g);
    auto h1 = counting_haar(*g);
    auto ht = counting_haar(*p->right_groupoid);
    ComposedBibundle c = compose_bibundles(p, identity_bibundle(p->right_groupoid));
    auto iso = find_biequivariant_iso(*c.bundle, *p);
    REQUIRE(iso.has_value());
    ConvBimodule m_c = conv_bimodule(c.bundle, h1, ht);
    ConvBimodule m_p = conv_bimodule(p, h1, ht);
    PushforwardResult push = pushforward(*c.bundle, *p, *iso, m_c, m_p);
    CHECK(push.bilinear);

    std::vector<int> idmap(p->num_points);
    std::iota(idmap.begin(), idmap.end(), 0);
    CHECK(pushforward(*p, *p, idmap, m_p, m_p).bilinear);

    std::vector<int> badmap = idmap;
    std::swap(badmap[0], badmap[1]);
    CHECK_THROWS_AS(pushforward(*p, *p, badmap, m_p, m_p), BibundleError);
}

TEST_CASE("dagger bimodule") {
    auto g = make(pair_groupoid(2));
    ConvBimodule reg = conv_bimodule(identity_bibundle(g), counting_haar(*g), counting_haar(*g));
    Bimodule dag = dagger_bimodule(reg.module);
    CHECK(dag.dim == reg.module.dim);
    Bimodule ddag = dagger_bimodule(dag);
    CHECK(ddag.lact == reg.module.lact);
    CHECK(ddag.ract == reg.module.ract);

    // M(X <- X -> *)^dagger realizes M of the opposite bibundle.
    BibundleHandle p = terminal_bibundle(g);
    ConvBimodule mp = conv_bimodule(p, counting_haar(*g), counting_haar(*p->right_groupoid));
    BibundleHandle op = opposite_bibundle(p);
    ConvBimodule mop = conv_bimodule(op, counting_haar(*op->left_groupoid), counting_haar(*g));
    Bimodule dagp = dagger_bimodule(mp.module);
    CHECK(dagp.lact == mop.module.lact);
    CHECK(dagp.ract == mop.module.ract);

    auto bare = std::make_shared<AlgebraTable>();
    bare->dim = 1;
    bare->mult = {sparse_unit(0)};
    Bimodule nostar = regular_bimodule(bare);
    CHECK_THROWS_AS(dagger_bimodule(nostar), BimoduleError);
}

TEST_CASE("Morita suite on catalog biprincipal bibundles") {
    auto g2 = z2();
    MoritaCertificate id_cert =
        morita_check(identity_bibundle(g2), counting_haar(*g2), counting_haar(*g2));
    CHECK(id_cert.ok());
    CHECK(id_cert.left_tensor_dim == 2);

    auto g3 = make(pair_groupoid(3));
    BibundleHandle p = terminal_bibundle(g3);
    MoritaCertificate pair_cert =
        morita_check(p, counting_haar(*g3), counting_haar(*p->right_groupoid));
    CHECK(pair_cert.ok());
    CHECK(pair_cert.left_tensor_dim == 9);   // A(pair(3))
    CHECK(pair_cert.right_tensor_dim == 1);  // C

    BibundleHandle pt = point_bibundle(g2, 0);
    MoritaCertificate bad =
        morita_check(pt, counting_haar(*pt->left_groupoid), counting_haar(*g2));
    CHECK_FALSE(bad.ok());
}

TEST_CASE("tensor associativity: dimensions and the canonical map") {
    auto g = make(pair_groupoid(2));
    BibundleHandle p = terminal_bibundle(g);
    BibundleHandle q = opposite_bibundle(p);
    auto hg = counting_haar(*g);
    auto ht = counting_haar(*p->right_groupoid);
    ConvBimodule mp = conv_bimodule(p, hg, ht);
    ConvBimodule mq = conv_bimodule(q, ht, hg);
    ConvBimodule mr = conv_bimodule(p, hg, ht);

    TensorResult mn = tensor_over(mp.module, mq.module);
    TensorResult mn_p = tensor_over(mn.induced, mr.module);
    TensorResult np = tensor_over(mq.module, mr.module);
    TensorResult m_np = tensor_over(mp.module, np.induced);
    CHECK(mn_p.space.dim() == m_np.space.dim());

    // The canonical map m (x) n (x) p -> m (x) (n (x) p), evaluated through
    // sections and projections on pure tensors, is bijective.
    const int dN = mq.module.dim, dP = mr.module.dim;
    std::vector<SparseVec> images;
    for (int x = 0; x < mn_p.space.dim(); ++x) {
        SparseVec amb = mn_p.space.section(x);
        SparseVec out;
        for (const auto& [idx, c] : amb) {
            const int mn_q = idx / dP, pp = idx % dP;
            for (const auto& [mnidx, c2] : mn.space.section(mn_q)) {
                const int mm = mnidx / dN, nn = mnidx % dN;
                SparseVec inner = np.space.project(sparse_unit(nn * dP + pp));
                for (const auto& [in_q, c3] : inner)
                    out = sparse_axpy(out, c * c2 * c3,
                                      m_np.space.project(sparse_unit(mm * np.space.dim() + in_q)));
            }
        }
        images.push_back(out);
    }
    CHECK(sparse_rank(images) == mn_p.space.dim());
}

TEST_CASE("randomized tensor associativity: dims equal, canonical map bijective") {
    for (std::uint64_t seed = 500; seed < 506; ++seed) {
        RandomTripleInstance inst = random_composable_triple(seed, 12);
        ConvBimodule mp = conv_bimodule(inst.p, inst.haar_g, inst.haar_h);
        ConvBimodule mq = conv_bimodule(inst.q, inst.haar_h, inst.haar_k);
        ConvBimodule mr = conv_bimodule(inst.r, inst.haar_k, inst.haar_l);

        TensorResult mn = tensor_over(mp.module, mq.module);
        TensorResult mn_p = tensor_over(mn.induced, mr.module);
        TensorResult np = tensor_over(mq.module, mr.module);
        TensorResult m_np = tensor_over(mp.module, np.induced);
        REQUIRE(mn_p.space.dim() == m_np.space.dim());

        const int dN = mq.module.dim, dP = mr.module.dim;
        std::vector<SparseVec> images;
        for (int x = 0; x < mn_p.space.dim(); ++x) {
            SparseVec out;
            for (const auto& [idx, c] : mn_p.space.section(x)) {
                const int mn_q = idx / dP, pp = idx % dP;
                for (const auto& [mnidx, c2] : mn.space.section(mn_q)) {
                    const int mm = mnidx / dN, nn = mnidx % dN;
                    SparseVec inner = np.space.project(sparse_unit(nn * dP + pp));
                    for (const auto& [in_q, c3] : inner)
                        out = sparse_axpy(out, c * c2 * c3,
                                          m_np.space.project(
                                              sparse_unit(mm * np.space.dim() + in_q)));
                }
            }
            images.push_back(out);
        }
        CHECK(sparse_rank(images) == mn_p.space.dim());
    }
}
