#include "grpd/bimodule.hpp"

#include <algorithm>

namespace grpd {

SparseVec Bimodule::apply_left(const SparseVec& a, const SparseVec& m) const {
    SparseVec out;
    for (const auto& [ai, ac] : a)
        for (const auto& [mi, mc] : m) out = sparse_axpy(out, ac * mc, lact_basis(ai, mi));
    return out;
}

SparseVec Bimodule::apply_right(const SparseVec& m, const SparseVec& b) const {
    SparseVec out;
    for (const auto& [mi, mc] : m)
        for (const auto& [bi, bc] : b) out = sparse_axpy(out, mc * bc, ract_basis(mi, bi));
    return out;
}

void verify_bimodule_axioms(const Bimodule& m) {
    const int dA = m.left->dim, dB = m.right->dim;
    for (int a1 = 0; a1 < dA; ++a1)
        for (int a2 = 0; a2 < dA; ++a2)
            for (int x = 0; x < m.dim; ++x) {
                SparseVec lhs = m.apply_left(m.left->product(a1, a2), sparse_unit(x));
                SparseVec rhs = m.apply_left(sparse_unit(a1), m.lact_basis(a2, x));
                if (lhs != rhs)
                    throw BimoduleError("left action not associative at (" + std::to_string(a1) +
                                        "," + std::to_string(a2) + "," + std::to_string(x) + ")");
            }
    for (int x = 0; x < m.dim; ++x)
        for (int b1 = 0; b1 < dB; ++b1)
            for (int b2 = 0; b2 < dB; ++b2) {
                SparseVec lhs = m.apply_right(sparse_unit(x), m.right->product(b1, b2));
                SparseVec rhs = m.apply_right(m.ract_basis(x, b1), sparse_unit(b2));
                if (lhs != rhs)
                    throw BimoduleError("right action not associative at (" + std::to_string(x) +
                                        "," + std::to_string(b1) + "," + std::to_string(b2) + ")");
            }
    for (int a = 0; a < dA; ++a)
        for (int x = 0; x < m.dim; ++x)
            for (int b = 0; b < dB; ++b) {
                SparseVec lhs = m.apply_right(m.lact_basis(a, x), sparse_unit(b));
                SparseVec rhs = m.apply_left(sparse_unit(a), m.ract_basis(x, b));
                if (lhs != rhs)
                    throw BimoduleError("actions do not commute at (" + std::to_string(a) + "," +
                                        std::to_string(x) + "," + std::to_string(b) + ")");
            }
}

bool same_algebra(const AlgebraTable& a, const AlgebraTable& b) {
    return a.dim == b.dim && a.mult == b.mult;
}

Bimodule regular_bimodule(const AlgebraTableHandle& a) {
    Bimodule m;
    m.left = a;
    m.right = a;
    m.dim = a->dim;
    m.lact = a->mult;
    m.ract = a->mult;
    return m;
}

Bimodule zero_action_bimodule(const AlgebraTableHandle& a, const AlgebraTableHandle& b,
                              int dim) {
    Bimodule m;
    m.left = a;
    m.right = b;
    m.dim = dim;
    m.lact.assign(static_cast<size_t>(a->dim) * dim, {});
    m.ract.assign(static_cast<size_t>(dim) * b->dim, {});
    return m;
}

ConvBimodule conv_bimodule(const BibundleHandle& p, HaarSystem haar_left,
                           HaarSystem haar_right) {
    ConvBimodule cm;
    cm.bibundle = p;
    cm.left_algebra = make_algebra(p->left_groupoid, std::move(haar_left));
    cm.right_algebra = make_algebra(p->right_groupoid, std::move(haar_right));

    const auto& G = *p->left_groupoid;
    const auto& H = *p->right_groupoid;
    const auto& wg = cm.left_algebra->haar.weight;
    const auto& wh = cm.right_algebra->haar.weight;
    const int np = p->num_points;

    Bimodule m;
    m.left = cm.left_algebra->table();
    m.right = cm.right_algebra->table();
    m.dim = np;
    m.lact.assign(static_cast<size_t>(G.num_arrows()) * np, {});
    m.ract.assign(static_cast<size_t>(np) * H.num_arrows(), {});
    // (delta_f . delta_q)(x) = sum_{h: src h = l(x)} [h^-1 == f][h.x == q] w_G(h)
    for (int f = 0; f < G.num_arrows(); ++f)
        for (int q = 0; q < np; ++q) {
            SparseVec out;
            for (int x = 0; x < np; ++x) {
                Scalar acc;
                for (int h : G.s_fiber(p->l[x]))
                    if (G.inv[h] == f && p->lact[h][x] == q) acc += Scalar(wg[h]);
                if (!acc.is_zero()) out.emplace_back(x, std::move(acc));
            }
            m.lact[f * np + q] = std::move(out);
        }
    // (delta_q . delta_f)(x) = sum_{h: src h = r(x)} [x.h^-1 == q][h == f] w_H(h)
    for (int q = 0; q < np; ++q)
        for (int f = 0; f < H.num_arrows(); ++f) {
            SparseVec out;
            for (int x = 0; x < np; ++x) {
                Scalar acc;
                for (int h : H.s_fiber(p->r[x]))
                    if (h == f && p->ract[x][H.inv[h]] == q) acc += Scalar(wh[h]);
                if (!acc.is_zero()) out.emplace_back(x, std::move(acc));
            }
            m.ract[q * H.num_arrows() + f] = std::move(out);
        }
    verify_bimodule_axioms(m);
    cm.module = std::move(m);
    return cm;
}

SparseVec QuotientSpace::project(const SparseVec& v) const {
    SparseVec reduced = relations.reduce(v);
    SparseVec out;
    out.reserve(reduced.size());
    for (const auto& [col, c] : reduced) {
        const auto it = std::lower_bound(free_cols.begin(), free_cols.end(), col);
        // reduce() zeroes every pivot column, so col is always free.
        out.emplace_back(static_cast<int>(it - free_cols.begin()), c);
    }
    return out;
}

bool QuotientSpace::section_is_right_inverse() const {
    for (int i = 0; i < dim(); ++i)
        if (project(section(i)) != sparse_unit(i)) return false;
    return true;
}

TensorResult tensor_over(const Bimodule& m, const Bimodule& n) {
    if (!same_algebra(*m.right, *n.left))
        throw BimoduleError("middle algebras disagree; cannot tensor");
    const int dM = m.dim, dN = n.dim, dB = m.right->dim;
    TensorResult res;
    res.space.ambient_dim = dM * dN;
    // Relations (m.b)(x)n - m(x)(b.n) over the full basis.
    for (int i = 0; i < dM; ++i)
        for (int b = 0; b < dB; ++b)
            for (int j = 0; j < dN; ++j) {
                SparseVec rel;
                for (const auto& [ii, c] : m.ract_basis(i, b))
                    rel = sparse_axpy(rel, c, sparse_unit(ii * dN + j));
                for (const auto& [jj, c] : n.lact_basis(b, j))
                    rel = sparse_axpy(rel, -c, sparse_unit(i * dN + jj));
                if (!rel.empty()) {
                    res.relation_generators.push_back(rel);
                    res.space.relations.add(rel);
                }
            }
    res.space.free_cols = res.space.relations.free_columns(res.space.ambient_dim);

    // Outer actions on the ambient tensor coordinates.
    const auto left_on_ambient = [&](int a, const SparseVec& v) {
        SparseVec out;
        for (const auto& [idx, c] : v) {
            const int i = idx / dN, j = idx % dN;
            for (const auto& [ii, cc] : m.lact_basis(a, i))
                out = sparse_axpy(out, c * cc, sparse_unit(ii * dN + j));
        }
        return out;
    };
    const auto right_on_ambient = [&](const SparseVec& v, int c2) {
        SparseVec out;
        for (const auto& [idx, c] : v) {
            const int i = idx / dN, j = idx % dN;
            for (const auto& [jj, cc] : n.ract_basis(j, c2))
                out = sparse_axpy(out, c * cc, sparse_unit(i * dN + jj));
        }
        return out;
    };

    // Descent is verified on the generators, not assumed.
    const int dA = m.left->dim, dC = n.right->dim;
    for (const auto& rel : res.relation_generators) {
        for (int a = 0; a < dA; ++a)
            if (!res.space.relations.contains(left_on_ambient(a, rel)))
                throw BimoduleError("left outer action does not descend to the quotient");
        for (int c2 = 0; c2 < dC; ++c2)
            if (!res.space.relations.contains(right_on_ambient(rel, c2)))
                throw BimoduleError("right outer action does not descend to the quotient");
    }

    Bimodule ind;
    ind.left = m.left;
    ind.right = n.right;
    ind.dim = res.space.dim();
    ind.lact.resize(static_cast<size_t>(dA) * ind.dim);
    ind.ract.resize(static_cast<size_t>(ind.dim) * dC);
    for (int a = 0; a < dA; ++a)
        for (int x = 0; x < ind.dim; ++x)
            ind.lact[a * ind.dim + x] = res.space.project(left_on_ambient(a, res.space.section(x)));
    for (int x = 0; x < ind.dim; ++x)
        for (int c2 = 0; c2 < dC; ++c2)
            ind.ract[x * dC + c2] = res.space.project(right_on_ambient(res.space.section(x), c2));
    res.induced = std::move(ind);
    return res;
}

TauResult tau_hat(const BibundleHandle& p, const BibundleHandle& q,
                  const HaarSystem& haar_g, const HaarSystem& haar_h,
                  const HaarSystem& haar_k) {
    if (!is_right_principal(*p).ok())
        throw BibundleError(BibundleError::Kind::NotPrincipal, {},
                            "tau requires a right principal left factor");
    if (!is_right_principal(*q).ok())
        throw BibundleError(BibundleError::Kind::NotPrincipal, {},
                            "tau requires a right principal right factor");
    TauResult res;
    res.composed = compose_bibundles(p, q);
    res.target = conv_bimodule(res.composed.bundle, haar_g, haar_k);
    ConvBimodule mp = conv_bimodule(p, haar_g, haar_h);
    ConvBimodule mq = conv_bimodule(q, haar_h, haar_k);
    res.tensor = tensor_over(mp.module, mq.module);

    const int dP = p->num_points, dQ = q->num_points;
    const int nC = res.composed.bundle->num_points;
    const auto& H = *p->right_groupoid;
    const int npairs = static_cast<int>(res.composed.pairs.size());

    // The defining sum, evaluated at every fiber-product point in one pass:
    // the pair (p', q') and the variable h with src h = r(p') contribute
    // w(h) to the column (p'.h^-1, h.q') of the function evaluated at
    // (p', q').
    std::vector<std::map<int, Scalar>> value_at(static_cast<size_t>(dP) * dQ);
    for (int i = 0; i < npairs; ++i) {
        const auto [p2, q2] = res.composed.pairs[i];
        for (int h : H.s_fiber(p->r[p2])) {
            const int pp = p->ract[p2][H.inv[h]];
            const int qq = q->lact[h][q2];
            value_at[pp * dQ + qq][i] += Scalar(haar_h.weight[h]);
        }
    }
    std::vector<int> orbit_size(nC, 0);
    for (int i = 0; i < npairs; ++i) ++orbit_size[res.composed.orbit_of_pair[i]];

    // Well-definedness on the quotient: within each orbit the value must be
    // the same at every member. Nonzero orbits must therefore be fully
    // covered by equal entries; entries must match their representative.
    res.representative_independent = true;
    res.tau_ambient.assign(nC, std::vector<Scalar>(dP * dQ));
    for (int col = 0; col < dP * dQ && res.representative_independent; ++col) {
        std::vector<Scalar> orbit_value(nC);
        std::vector<int> covered(nC, 0);
        for (const auto& [i, v] : value_at[col]) {
            const int o = res.composed.orbit_of_pair[i];
            if (covered[o] == 0) {
                orbit_value[o] = v;
            } else if (orbit_value[o] != v) {
                res.representative_independent = false;
                break;
            }
            ++covered[o];
        }
        for (int o = 0; o < nC; ++o) {
            if (covered[o] != 0 && covered[o] != orbit_size[o] &&
                !orbit_value[o].is_zero()) {
                // Some member evaluates to zero while another does not.
                res.representative_independent = false;
                break;
            }
            res.tau_ambient[o][col] = covered[o] ? orbit_value[o] : Scalar(0);
        }
    }

    const auto tau_amb = [&](const SparseVec& v) {
        std::vector<Scalar> out(nC);
        for (const auto& [idx, c] : v)
            for (int o = 0; o < nC; ++o) out[o] += c * res.tau_ambient[o][idx];
        return sparse_from_dense(out);
    };

    res.kills_relations = true;
    for (const auto& rel : res.tensor.relation_generators)
        if (!sparse_is_zero(tau_amb(rel))) {
            res.kills_relations = false;
            break;
        }

    const int dT = res.tensor.space.dim();
    res.tau_quotient.assign(nC, std::vector<Scalar>(dT));
    for (int x = 0; x < dT; ++x) {
        const SparseVec img = tau_amb(res.tensor.space.section(x));
        for (const auto& [o, c] : img) res.tau_quotient[o][x] = c;
    }

    // Bimodule morphism on the quotient basis.
    const auto tau_q = [&](const SparseVec& v) {
        std::vector<Scalar> out(nC);
        for (const auto& [x, c] : v)
            for (int o = 0; o < nC; ++o) out[o] += c * res.tau_quotient[o][x];
        return sparse_from_dense(out);
    };
    res.left_linear = res.right_linear = true;
    const int dA = res.tensor.induced.left->dim;
    const int dC = res.tensor.induced.right->dim;
    for (int a = 0; a < dA && res.left_linear; ++a)
        for (int x = 0; x < dT; ++x) {
            const SparseVec lhs = tau_q(res.tensor.induced.lact_basis(a, x));
            const SparseVec rhs =
                res.target.module.apply_left(sparse_unit(a), tau_q(sparse_unit(x)));
            if (lhs != rhs) {
                res.left_linear = false;
                break;
            }
        }
    for (int x = 0; x < dT && res.right_linear; ++x)
        for (int c2 = 0; c2 < dC; ++c2) {
            const SparseVec lhs = tau_q(res.tensor.induced.ract_basis(x, c2));
            const SparseVec rhs =
                res.target.module.apply_right(tau_q(sparse_unit(x)), sparse_unit(c2));
            if (lhs != rhs) {
                res.right_linear = false;
                break;
            }
        }

    // Exact bijectivity: equal dimensions and full rank.
    std::vector<SparseVec> cols(dT);
    for (int x = 0; x < dT; ++x) {
        std::vector<Scalar> col(nC);
        for (int o = 0; o < nC; ++o) col[o] = res.tau_quotient[o][x];
        cols[x] = sparse_from_dense(col);
    }
    res.bijective = (dT == nC) && sparse_rank(cols) == dT;
    return res;
}

TauCoherenceResult tau_coherence_check(const BibundleHandle& p, const BibundleHandle& q,
                                       const BibundleHandle& r, const HaarSystem& haar_g,
                                       const HaarSystem& haar_h, const HaarSystem& haar_k,
                                       const HaarSystem& haar_l) {
    TauCoherenceResult out;
    TauResult t_pq = tau_hat(p, q, haar_g, haar_h, haar_k);
    TauResult t_qr = tau_hat(q, r, haar_h, haar_k, haar_l);
    const BibundleHandle pq = t_pq.composed.bundle;
    const BibundleHandle qr = t_qr.composed.bundle;
    TauResult t_pq_r = tau_hat(pq, r, haar_g, haar_k, haar_l);
    TauResult t_p_qr = tau_hat(p, qr, haar_g, haar_h, haar_l);

    // Canonical associator (PoQ)oR -> Po(QoR) on orbit representatives.
    const auto& left_comp = t_pq_r.composed;   // pairs ([p,q], r)
    const auto& right_comp = t_p_qr.composed;  // pairs (p, [q,r])
    const int n_left = left_comp.bundle->num_points;
    std::vector<int> assoc(n_left, -1);
    bool assoc_ok = true;
    for (int o = 0; o < n_left && assoc_ok; ++o) {
        const auto [ij, rr] = left_comp.pairs[left_comp.representative[o]];
        const auto [pp, qq] = t_pq.composed.pairs[t_pq.composed.representative[ij]];
        const int qr_pt = t_qr.composed.orbit_of_pair[t_qr.composed.pair_index(qq, rr)];
        const int pair = right_comp.pair_index(pp, qr_pt);
        if (pair < 0) {
            assoc_ok = false;
            break;
        }
        assoc[o] = right_comp.orbit_of_pair[pair];
    }
    if (assoc_ok) {
        try {
            check_biequivariant(*left_comp.bundle, *right_comp.bundle, assoc);
        } catch (const BibundleError&) {
            assoc_ok = false;
        }
    }
    out.associator_found = assoc_ok;
    if (!assoc_ok) return out;

    const auto apply_matrix = [](const Matrix& m, const SparseVec& v) {
        std::vector<Scalar> outv(m.size());
        for (const auto& [idx, c] : v)
            for (size_t o = 0; o < m.size(); ++o) outv[o] += c * m[o][idx];
        return sparse_from_dense(outv);
    };

    const int dP = p->num_points, dQ = q->num_points, dR = r->num_points;
    out.square_commutes = true;
    for (int i = 0; i < dP && out.square_commutes; ++i)
        for (int j = 0; j < dQ && out.square_commutes; ++j)
            for (int k = 0; k < dR; ++k) {
                // Top-left path: tau_{P,Q} (x) id, then tau_{PoQ,R}, then the
                // pushforward of the associator.
                SparseVec v_pq = apply_matrix(t_pq.tau_ambient, sparse_unit(i * dQ + j));
                SparseVec lifted;  // ambient of M(PoQ) (x) M(R)
                for (const auto& [o, c] : v_pq)
                    lifted = sparse_axpy(lifted, c, sparse_unit(o * dR + k));
                SparseVec top = apply_matrix(t_pq_r.tau_ambient, lifted);
                SparseVec top_pushed;
                for (const auto& [o, c] : top)
                    top_pushed = sparse_axpy(top_pushed, c, sparse_unit(assoc[o]));
                // Bottom path: id (x) tau_{Q,R}, then tau_{P,QoR}.
                SparseVec v_qr = apply_matrix(t_qr.tau_ambient, sparse_unit(j * dR + k));
                SparseVec lifted2;
                const int d_qr = qr->num_points;
                for (const auto& [o, c] : v_qr)
                    lifted2 = sparse_axpy(lifted2, c, sparse_unit(i * d_qr + o));
                SparseVec bottom = apply_matrix(t_p_qr.tau_ambient, lifted2);
                if (top_pushed != bottom) {
                    out.square_commutes = false;
                    out.failing_triple = {i, j, k};
                    break;
                }
            }
    return out;
}

namespace {

/// Certifies that the action map descends to an isomorphism from the
/// tensor quotient, by exact rank.
std::pair<bool, int> descended_action_iso(const TensorResult& t,
                                          const std::vector<SparseVec>& ambient_images,
                                          int target_dim) {
    // ambient_images[idx] = action applied to ambient basis vector idx.
    const int dT = t.space.dim();
    if (dT != target_dim) return {false, dT};
    // The action must kill the relations to descend at all.
    for (const auto& rel : t.relation_generators) {
        SparseVec img;
        for (const auto& [idx, c] : rel) img = sparse_axpy(img, c, ambient_images[idx]);
        if (!sparse_is_zero(img)) return {false, dT};
    }
    std::vector<SparseVec> cols(dT);
    for (int x = 0; x < dT; ++x) {
        SparseVec img;
        for (const auto& [idx, c] : t.space.section(x))
            img = sparse_axpy(img, c, ambient_images[idx]);
        cols[x] = img;
    }
    return {sparse_rank(cols) == dT, dT};
}

}  // namespace

SmoothnessResult smoothness_check(const Bimodule& m) {
    SmoothnessResult res;
    {
        // A (x)_A M -> M.
        Bimodule a_reg = regular_bimodule(m.left);
        TensorResult t = tensor_over(a_reg, m);
        const int dA = m.left->dim;
        std::vector<SparseVec> images(static_cast<size_t>(dA) * m.dim);
        for (int a = 0; a < dA; ++a)
            for (int x = 0; x < m.dim; ++x) images[a * m.dim + x] = m.lact_basis(a, x);
        auto [iso, dim] = descended_action_iso(t, images, m.dim);
        res.left_smooth = iso;
        res.left_tensor_dim = dim;
    }
    {
        // M (x)_B B -> M.
        Bimodule b_reg = regular_bimodule(m.right);
        TensorResult t = tensor_over(m, b_reg);
        const int dB = m.right->dim;
        std::vector<SparseVec> images(static_cast<size_t>(m.dim) * dB);
        for (int x = 0; x < m.dim; ++x)
            for (int b = 0; b < dB; ++b) images[x * dB + b] = m.ract_basis(x, b);
        auto [iso, dim] = descended_action_iso(t, images, m.dim);
        res.right_smooth = iso;
        res.right_tensor_dim = dim;
    }
    return res;
}

SmoothnessResult self_induced_check(const AlgebraTableHandle& a) {
    return smoothness_check(regular_bimodule(a));
}

std::optional<Matrix> find_module_section(const Bimodule& m, ModuleSide side) {
    const int dM = m.dim;
    const int dA = side == ModuleSide::Right ? m.right->dim : m.left->dim;
    // Right: sigma(e_k) = sum S[(i,a),k] e_i (x) e_a in M (x) A.
    // Left:  sigma(e_k) = sum S[(a,i),k] e_a (x) e_i in A (x) M.
    const int nvars = dM * dA * dM;
    const auto var = [&](int i, int a, int k) { return (i * dA + a) * dM + k; };

    std::vector<SparseVec> rows;
    std::vector<Scalar> rhs;
    const auto add_eq = [&](SparseVec row, Scalar v) {
        if (row.empty() && v.is_zero()) return;
        rows.push_back(std::move(row));
        rhs.push_back(std::move(v));
    };

    // action(sigma(e_k)) = e_k.
    for (int k = 0; k < dM; ++k) {
        std::vector<SparseVec> eq(dM);
        for (int i = 0; i < dM; ++i)
            for (int a = 0; a < dA; ++a) {
                const SparseVec& img = side == ModuleSide::Right
                                           ? m.ract_basis(i, a)
                                           : m.lact_basis(a, i);
                for (const auto& [x, c] : img)
                    eq[x] = sparse_axpy(eq[x], c, sparse_unit(var(i, a, k)));
            }
        for (int x = 0; x < dM; ++x) add_eq(std::move(eq[x]), Scalar(x == k ? 1 : 0));
    }
    // Linearity: sigma(e_k . e_b) = sigma(e_k) . e_b (right case; left is
    // mirrored), where the module action on the tensor acts on the algebra
    // leg.
    for (int k = 0; k < dM; ++k)
        for (int b = 0; b < dA; ++b) {
            std::vector<SparseVec> eq(static_cast<size_t>(dM) * dA);
            const SparseVec& moved =
                side == ModuleSide::Right ? m.ract_basis(k, b) : m.lact_basis(b, k);
            for (const auto& [k2, c] : moved)
                for (int i = 0; i < dM; ++i)
                    for (int a = 0; a < dA; ++a)
                        eq[i * dA + a] =
                            sparse_axpy(eq[i * dA + a], c, sparse_unit(var(i, a, k2)));
            for (int i = 0; i < dM; ++i)
                for (int a = 0; a < dA; ++a) {
                    const SparseVec prod = side == ModuleSide::Right
                                               ? m.right->product(a, b)
                                               : m.left->product(b, a);
                    for (const auto& [a2, c] : prod)
                        eq[i * dA + a2] =
                            sparse_axpy(eq[i * dA + a2], -c, sparse_unit(var(i, a, k)));
                }
            for (auto& e : eq) add_eq(std::move(e), Scalar(0));
        }

    auto sol = solve_linear_system(rows, rhs, nvars);
    if (!sol) return std::nullopt;
    Matrix s(static_cast<size_t>(dM) * dA, std::vector<Scalar>(dM));
    for (int i = 0; i < dM; ++i)
        for (int a = 0; a < dA; ++a)
            for (int k = 0; k < dM; ++k) s[i * dA + a][k] = (*sol)[var(i, a, k)];
    // Re-verify the witness.
    for (int k = 0; k < dM; ++k) {
        SparseVec img;
        for (int i = 0; i < dM; ++i)
            for (int a = 0; a < dA; ++a) {
                const Scalar& c = s[i * dA + a][k];
                if (c.is_zero()) continue;
                img = sparse_axpy(img, c,
                                  side == ModuleSide::Right ? m.ract_basis(i, a)
                                                            : m.lact_basis(a, i));
            }
        if (img != sparse_unit(k)) throw BimoduleError("module section failed recheck");
    }
    return s;
}

NondegeneracyReport nondegeneracy_class(const Bimodule& m) {
    NondegeneracyReport rep;
    std::vector<SparseVec> l_img, r_img;
    for (int a = 0; a < m.left->dim; ++a)
        for (int x = 0; x < m.dim; ++x) l_img.push_back(m.lact_basis(a, x));
    for (int x = 0; x < m.dim; ++x)
        for (int b = 0; b < m.right->dim; ++b) r_img.push_back(m.ract_basis(x, b));
    rep.left_surjective = sparse_rank(l_img) == m.dim;
    rep.right_surjective = sparse_rank(r_img) == m.dim;
    rep.note =
        "finite dimension: plain, strong and split nondegeneracy coincide "
        "(every surjection of finite-dimensional spaces splits linearly)";
    return rep;
}

PushforwardResult pushforward(const Bibundle& p, const Bibundle& p_prime,
                              const std::vector<int>& point_map, const ConvBimodule& mp,
                              const ConvBimodule& mp_prime) {
    check_biequivariant(p, p_prime, point_map);
    PushforwardResult res;
    // M(P') -> M(P): delta_{p'} -> delta_{phi^-1(p')}.
    res.map.assign(p.num_points, std::vector<Scalar>(p_prime.num_points));
    for (int x = 0; x < p.num_points; ++x) res.map[x][point_map[x]] = Scalar(1);
    const auto apply = [&](const SparseVec& v) {
        std::vector<Scalar> out(p.num_points);
        for (const auto& [idx, c] : v)
            for (int o = 0; o < p.num_points; ++o) out[o] += c * res.map[o][idx];
        return sparse_from_dense(out);
    };
    res.bilinear = true;
    const auto& M = mp.module;
    const auto& Mp = mp_prime.module;
    for (int a = 0; a < M.left->dim && res.bilinear; ++a)
        for (int x = 0; x < Mp.dim; ++x)
            if (apply(Mp.lact_basis(a, x)) !=
                M.apply_left(sparse_unit(a), apply(sparse_unit(x)))) {
                res.bilinear = false;
                break;
            }
    for (int x = 0; x < Mp.dim && res.bilinear; ++x)
        for (int b = 0; b < M.right->dim; ++b)
            if (apply(Mp.ract_basis(x, b)) !=
                M.apply_right(apply(sparse_unit(x)), sparse_unit(b))) {
                res.bilinear = false;
                break;
            }
    return res;
}

namespace {

SparseVec conj_sparse(const SparseVec& v) {
    SparseVec out;
    out.reserve(v.size());
    for (const auto& [i, c] : v) out.emplace_back(i, c.conj());
    return out;
}

}  // namespace

Bimodule dagger_bimodule(const Bimodule& m) {
    if (!m.left->star_map || !m.right->star_map)
        throw BimoduleError("dagger requires star structures on both algebras");
    Bimodule d;
    d.left = m.right;
    d.right = m.left;
    d.dim = m.dim;
    d.lact.resize(static_cast<size_t>(m.right->dim) * m.dim);
    d.ract.resize(static_cast<size_t>(m.dim) * m.left->dim);
    // b . m := m . b*, coordinates conjugated (the space is the conjugate).
    for (int b = 0; b < m.right->dim; ++b)
        for (int x = 0; x < m.dim; ++x) {
            SparseVec img;
            for (const auto& [k, c] : (*m.right->star_map)[b])
                img = sparse_axpy(img, c, m.ract_basis(x, k));
            d.lact[b * m.dim + x] = conj_sparse(img);
        }
    // m . a := a* . m.
    for (int x = 0; x < m.dim; ++x)
        for (int a = 0; a < m.left->dim; ++a) {
            SparseVec img;
            for (const auto& [k, c] : (*m.left->star_map)[a])
                img = sparse_axpy(img, c, m.lact_basis(k, x));
            d.ract[x * m.left->dim + a] = conj_sparse(img);
        }
    verify_bimodule_axioms(d);
    return d;
}

MoritaCertificate morita_check(const BibundleHandle& p, const HaarSystem& haar_g,
                               const HaarSystem& haar_h) {
    MoritaCertificate cert;
    cert.biprincipal = is_biprincipal(*p);
    if (!cert.biprincipal.ok()) return cert;
    const BibundleHandle op = opposite_bibundle(p);

    TauResult t_left = tau_hat(p, op, haar_g, haar_h, haar_g);
    cert.left_tensor_iso = t_left.ok();
    cert.left_tensor_dim = t_left.tensor.space.dim();
    const auto id_g = identity_bibundle(p->left_groupoid);
    cert.left_composite_identity =
        find_biequivariant_iso(*t_left.composed.bundle, *id_g).has_value();

    TauResult t_right = tau_hat(op, p, haar_h, haar_g, haar_h);
    cert.right_tensor_iso = t_right.ok();
    cert.right_tensor_dim = t_right.tensor.space.dim();
    const auto id_h = identity_bibundle(p->right_groupoid);
    cert.right_composite_identity =
        find_biequivariant_iso(*t_right.composed.bundle, *id_h).has_value();
    return cert;
}

}  // namespace grpd
