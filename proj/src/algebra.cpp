#include "grpd/algebra.hpp"

#include <mutex>

namespace grpd {

SparseVec AlgebraTable::apply(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    for (const auto& [g, ca] : a)
        for (const auto& [h, cb] : b) out = sparse_axpy(out, ca * cb, product(g, h));
    return out;
}

void AlgebraTable::check_associative() const {
    for (int g = 0; g < dim; ++g)
        for (int h = 0; h < dim; ++h) {
            const SparseVec gh = product(g, h);
            for (int k = 0; k < dim; ++k) {
                SparseVec lhs;
                for (const auto& [m, c] : gh) lhs = sparse_axpy(lhs, c, product(m, k));
                SparseVec rhs;
                for (const auto& [m, c] : product(h, k))
                    rhs = sparse_axpy(rhs, c, product(g, m));
                if (lhs != rhs)
                    throw std::logic_error("structure constants not associative at triple (" +
                                           std::to_string(g) + "," + std::to_string(h) + "," +
                                           std::to_string(k) + ")");
            }
        }
}

ConvAlgebraHandle make_algebra(GroupoidHandle g, HaarSystem haar) {
    auto a = std::make_shared<ConvolutionAlgebra>();
    validate_haar(*g, haar.weight);
    a->groupoid = std::move(g);
    a->haar = std::move(haar);
    return a;
}

ConvAlgebraHandle make_algebra_counting(GroupoidHandle g) {
    HaarSystem h = counting_haar(*g);
    return make_algebra(std::move(g), std::move(h));
}

AlgebraElement delta(const ConvAlgebraHandle& a, int arrow) {
    AlgebraElement e{a, std::vector<Scalar>(a->dim())};
    e.coeffs.at(arrow) = Scalar(1);
    return e;
}

AlgebraElement zero_element(const ConvAlgebraHandle& a) {
    return {a, std::vector<Scalar>(a->dim())};
}

namespace {

void require_same_parent(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.parent == b.parent) return;
    if (a.parent && b.parent && same_tables(*a.parent->groupoid, *b.parent->groupoid) &&
        a.parent->haar.weight == b.parent->haar.weight)
        return;
    throw ParentMismatch("elements live in different convolution algebras");
}

template <bool Parallel>
AlgebraElement convolve_impl(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_parent(a, b);
    const auto& G = *a.parent->groupoid;
    const auto& w = a.parent->haar.weight;
    AlgebraElement out = zero_element(a.parent);
#pragma omp parallel for schedule(dynamic) if (Parallel)
    for (int g = 0; g < G.num_arrows(); ++g) {
        Scalar acc;
        for (int h : G.s_fiber(G.src[g])) {
            // g h^-1 is always defined here: src(g) == src(h) == tgt(h^-1).
            const Scalar& av = a.coeffs[G.comp[g][G.inv[h]]];
            if (av.is_zero() || b.coeffs[h].is_zero()) continue;
            acc += av * b.coeffs[h] * Scalar(w[h]);
        }
        out.coeffs[g] = std::move(acc);
    }
    return out;
}

}  // namespace

AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b) {
    return convolve_impl<true>(a, b);
}

AlgebraElement convolve_serial(const AlgebraElement& a, const AlgebraElement& b) {
    return convolve_impl<false>(a, b);
}

AlgebraElement star(const AlgebraElement& a) {
    const auto& G = *a.parent->groupoid;
    AlgebraElement out = zero_element(a.parent);
    for (int g = 0; g < G.num_arrows(); ++g) out.coeffs[G.inv[g]] = a.coeffs[g].conj();
    return out;
}

AlgebraElement unit_element(const ConvAlgebraHandle& a) {
    const auto& G = *a->groupoid;
    AlgebraElement e = zero_element(a);
    for (int x = 0; x < G.num_objects; ++x) {
        const Rational u = a->haar.weight[G.unit[x]];
        e.coeffs[G.unit[x]] = Scalar(Rational(1) / u);
    }
    for (int g = 0; g < G.num_arrows(); ++g) {
        AlgebraElement d = delta(a, g);
        if (convolve(e, d).coeffs != d.coeffs || convolve(d, e).coeffs != d.coeffs)
            throw std::logic_error("unit law failed; Haar system is inconsistent");
    }
    return e;
}

AlgebraTable structure_constants(const ConvolutionAlgebra& a) {
    auto self = std::make_shared<ConvolutionAlgebra>(a);
    const int d = a.dim();
    AlgebraTable t;
    t.dim = d;
    t.mult.resize(static_cast<size_t>(d) * d);
    for (int g = 0; g < d; ++g)
        for (int h = 0; h < d; ++h)
            t.mult[g * d + h] = sparse_from_dense(convolve(delta(self, g), delta(self, h)).coeffs);
    std::vector<SparseVec> star_map(d);
    for (int g = 0; g < d; ++g) star_map[g] = sparse_unit(a.groupoid->inv[g]);
    t.star_map = std::move(star_map);
    t.unit_coords = unit_element(self).coeffs;
    return t;
}

AlgebraTableHandle ConvolutionAlgebra::table() const {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (!cached_) cached_ = std::make_shared<AlgebraTable>(structure_constants(*this));
    return cached_;
}

std::vector<Scalar> matrix_apply(const Matrix& m, const std::vector<Scalar>& v) {
    std::vector<Scalar> out(m.size());
    for (size_t r = 0; r < m.size(); ++r) {
        Scalar acc;
        for (size_t c = 0; c < v.size(); ++c) {
            if (m[r][c].is_zero() || v[c].is_zero()) continue;
            acc += m[r][c] * v[c];
        }
        out[r] = std::move(acc);
    }
    return out;
}

IsoCertificate check_algebra_iso(const Matrix& f, const AlgebraTable& a,
                                 const AlgebraTable& b) {
    if (a.dim != b.dim) throw std::invalid_argument("algebra dimensions differ");
    if (static_cast<int>(f.size()) != b.dim)
        throw std::invalid_argument("map has wrong number of rows");
    for (const auto& row : f)
        if (static_cast<int>(row.size()) != a.dim)
            throw std::invalid_argument("map has wrong number of columns");

    IsoCertificate cert;
    // Dimensions here are small; the serial kernel avoids pointless spawns.
    cert.bijective = dense_rank_serial(f) == a.dim;
    cert.multiplicative = true;
    auto image_of_basis = [&](int g) {
        std::vector<Scalar> col(b.dim);
        for (int r = 0; r < b.dim; ++r) col[r] = f[r][g];
        return col;
    };
    std::vector<std::vector<Scalar>> img(a.dim);
    for (int g = 0; g < a.dim; ++g) img[g] = image_of_basis(g);
    for (int g = 0; g < a.dim && cert.multiplicative; ++g)
        for (int h = 0; h < a.dim; ++h) {
            // f(e_g e_h)
            std::vector<Scalar> lhs(b.dim);
            for (const auto& [k, c] : a.product(g, h)) {
                for (int r = 0; r < b.dim; ++r) lhs[r] += c * f[r][k];
            }
            // f(e_g) f(e_h)
            SparseVec rhs = b.apply(sparse_from_dense(img[g]), sparse_from_dense(img[h]));
            if (sparse_from_dense(lhs) != rhs) {
                cert.multiplicative = false;
                cert.failing_pair = {g, h};
                break;
            }
        }
    return cert;
}

TensorIsoResult tensor_algebra_iso(const ConvolutionAlgebra& ag,
                                   const ConvolutionAlgebra& ah) {
    const auto& G = *ag.groupoid;
    const auto& H = *ah.groupoid;
    auto prod = std::make_shared<FiniteGroupoid>(product_groupoid(G, H));
    std::vector<Rational> w(prod->num_arrows());
    const int naH = H.num_arrows();
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int h = 0; h < naH; ++h)
            w[g * naH + h] = ag.haar.weight[g] * ah.haar.weight[h];
    TensorIsoResult res;
    res.product_algebra = make_algebra(prod, validate_haar(*prod, std::move(w)));
    res.basis_map.resize(static_cast<size_t>(G.num_arrows()) * naH);
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int h = 0; h < naH; ++h) res.basis_map[g * naH + h] = g * naH + h;

    const AlgebraTable tG = structure_constants(ag);
    const AlgebraTable tH = structure_constants(ah);
    const AlgebraTable tP = structure_constants(*res.product_algebra);
    res.certificate.bijective = true;  // the basis map is a permutation
    res.certificate.multiplicative = true;
    for (int g1 = 0; g1 < G.num_arrows() && res.certificate.multiplicative; ++g1)
        for (int h1 = 0; h1 < naH && res.certificate.multiplicative; ++h1)
            for (int g2 = 0; g2 < G.num_arrows() && res.certificate.multiplicative; ++g2)
                for (int h2 = 0; h2 < naH; ++h2) {
                    // (delta_g1 (x) delta_h1) * (delta_g2 (x) delta_h2)
                    SparseVec expect;
                    for (const auto& [gk, cg] : tG.product(g1, g2))
                        for (const auto& [hk, ch] : tH.product(h1, h2))
                            expect = sparse_axpy(expect, cg * ch,
                                                 sparse_unit(res.basis_map[gk * naH + hk]));
                    const SparseVec got =
                        tP.product(res.basis_map[g1 * naH + h1], res.basis_map[g2 * naH + h2]);
                    if (expect != got) {
                        res.certificate.multiplicative = false;
                        res.certificate.failing_pair = {g1 * naH + h1, g2 * naH + h2};
                        break;
                    }
                }
    return res;
}

std::optional<Matrix> find_separability_section(const AlgebraTable& a, SectionSide side) {
    const int d = a.dim;
    const int nvars = d * d * d;  // S[(g,h), k]: coefficient of e_g (x) e_h in s(e_k)
    auto var = [d](int g, int h, int k) { return (g * d + h) * d + k; };

    std::vector<SparseVec> rows;
    std::vector<Scalar> rhs;
    auto add_eq = [&](SparseVec row, Scalar r) {
        rows.push_back(std::move(row));
        rhs.push_back(std::move(r));
    };

    // mu(s(e_k)) = e_k: for each k and output basis m,
    //   sum_{g,h} S[(g,h),k] * mult(g,h)[m] = [m == k].
    for (int k = 0; k < d; ++k) {
        std::vector<SparseVec> eq(d);
        for (int g = 0; g < d; ++g)
            for (int h = 0; h < d; ++h)
                for (const auto& [m, c] : a.product(g, h))
                    eq[m] = sparse_axpy(eq[m], c, sparse_unit(var(g, h, k)));
        for (int m = 0; m < d; ++m) add_eq(std::move(eq[m]), Scalar(m == k ? 1 : 0));
    }

    // Left linearity: s(e_f e_k) = e_f . s(e_k), acting on the first leg.
    const bool want_left = side == SectionSide::Left || side == SectionSide::Bimodule;
    const bool want_right = side == SectionSide::Right || side == SectionSide::Bimodule;
    for (int f = 0; f < d; ++f)
        for (int k = 0; k < d; ++k) {
            if (want_left) {
                // LHS: sum over expansion of e_f e_k; RHS: multiply first leg.
                std::vector<SparseVec> eq(d * d);  // indexed by output (g', h)
                for (const auto& [m, c] : a.product(f, k))
                    for (int g = 0; g < d; ++g)
                        for (int h = 0; h < d; ++h)
                            eq[g * d + h] = sparse_axpy(eq[g * d + h], c, sparse_unit(var(g, h, m)));
                for (int g = 0; g < d; ++g)
                    for (int h = 0; h < d; ++h)
                        for (const auto& [gp, c] : a.product(f, g))
                            eq[gp * d + h] = sparse_axpy(eq[gp * d + h], -c, sparse_unit(var(g, h, k)));
                for (auto& e : eq)
                    if (!e.empty()) add_eq(std::move(e), Scalar(0));
            }
            if (want_right) {
                std::vector<SparseVec> eq(d * d);
                for (const auto& [m, c] : a.product(k, f))
                    for (int g = 0; g < d; ++g)
                        for (int h = 0; h < d; ++h)
                            eq[g * d + h] = sparse_axpy(eq[g * d + h], c, sparse_unit(var(g, h, m)));
                for (int g = 0; g < d; ++g)
                    for (int h = 0; h < d; ++h)
                        for (const auto& [hp, c] : a.product(h, f))
                            eq[g * d + hp] = sparse_axpy(eq[g * d + hp], -c, sparse_unit(var(g, h, k)));
                for (auto& e : eq)
                    if (!e.empty()) add_eq(std::move(e), Scalar(0));
            }
        }

    auto sol = solve_linear_system(rows, rhs, nvars);
    if (!sol) return std::nullopt;

    Matrix s(d * d, std::vector<Scalar>(d));
    for (int g = 0; g < d; ++g)
        for (int h = 0; h < d; ++h)
            for (int k = 0; k < d; ++k) s[g * d + h][k] = (*sol)[var(g, h, k)];

    // Re-verify the witness exactly.
    for (int k = 0; k < d; ++k) {
        SparseVec image;
        for (int g = 0; g < d; ++g)
            for (int h = 0; h < d; ++h)
                if (!s[g * d + h][k].is_zero())
                    image = sparse_axpy(image, s[g * d + h][k], a.product(g, h));
        if (image != sparse_unit(k)) throw std::logic_error("separability witness failed recheck");
    }
    return s;
}

IdealReport ideal_check(const ConvolutionAlgebra& a,
                        const std::vector<std::vector<Scalar>>& span_vectors) {
    const AlgebraTable t = structure_constants(a);
    RowReducer span;
    for (const auto& v : span_vectors) span.add(sparse_from_dense(v));
    // Canonical basis of the span: the stored RREF rows.
    std::vector<SparseVec> basis;
    for (const auto& [p, row] : span.pivot_rows()) basis.push_back(row);

    IdealReport rep;
    rep.span_dim = span.rank();
    rep.proper = span.rank() < t.dim;
    rep.left_ideal = rep.right_ideal = true;
    for (int g = 0; g < t.dim && rep.left_ideal; ++g)
        for (size_t i = 0; i < basis.size(); ++i) {
            SparseVec prod;
            for (const auto& [m, c] : basis[i]) prod = sparse_axpy(prod, c, t.product(g, m));
            if (!span.contains(prod)) {
                rep.left_ideal = false;
                rep.witness = {g, static_cast<int>(i)};
                break;
            }
        }
    for (int g = 0; g < t.dim && rep.right_ideal; ++g)
        for (size_t i = 0; i < basis.size(); ++i) {
            SparseVec prod;
            for (const auto& [m, c] : basis[i]) prod = sparse_axpy(prod, c, t.product(m, g));
            if (!span.contains(prod)) {
                rep.right_ideal = false;
                if (!rep.witness) rep.witness = {g, static_cast<int>(i)};
                break;
            }
        }
    return rep;
}

}  // namespace grpd
