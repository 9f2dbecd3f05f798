#include "grpd/nctorus.hpp"

#include <cmath>
#include <numbers>

namespace grpd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_theta(const TorusElement& a, const TorusElement& b) {
    if (a.theta != b.theta || a.theta_rational != b.theta_rational)
        throw ThetaMismatch("torus elements carry different deformation parameters");
}

void check_support_cap(const TorusElement& a) {
    for (const auto& [km, c] : a.coeffs)
        if (std::abs(km.first) > kMaxTorusMode || std::abs(km.second) > kMaxTorusMode)
            throw std::invalid_argument("mode support exceeds the configured cap");
}

std::complex<double> phase(double t) { return {std::cos(t), std::sin(t)}; }

void prune(TorusElement& a) {
    for (auto it = a.coeffs.begin(); it != a.coeffs.end();)
        it = std::abs(it->second) == 0.0 ? a.coeffs.erase(it) : std::next(it);
}

bool ktheta_is_integer(const TorusElement& like, long k) {
    if (like.theta_rational) {
        const auto [p, q] = *like.theta_rational;
        return (k * p) % q == 0;
    }
    const double x = k * like.theta;
    return x == std::round(x);
}

}  // namespace

bool TorusElement::is_zero(double tol) const {
    for (const auto& [km, c] : coeffs)
        if (std::abs(c) > tol) return false;
    return true;
}

TorusElement torus_zero(double theta) {
    TorusElement a;
    a.theta = theta;
    return a;
}

TorusElement torus_zero_rational(long p, long q) {
    if (q <= 0) throw std::invalid_argument("rational theta needs q > 0");
    TorusElement a;
    a.theta = static_cast<double>(p) / static_cast<double>(q);
    a.theta_rational = {p, q};
    return a;
}

TorusElement torus_monomial(const TorusElement& like, int k, int m,
                            std::complex<double> c) {
    TorusElement a = like;
    a.coeffs.clear();
    if (std::abs(c) != 0.0) a.coeffs[{k, m}] = c;
    return a;
}

TorusElement torus_add(const TorusElement& a, const TorusElement& b) {
    require_same_theta(a, b);
    TorusElement out = a;
    for (const auto& [km, c] : b.coeffs) out.coeffs[km] += c;
    prune(out);
    return out;
}

TorusElement torus_scale(const TorusElement& a, std::complex<double> c) {
    TorusElement out = a;
    for (auto& [km, x] : out.coeffs) x *= c;
    prune(out);
    return out;
}

TorusElement torus_mul(const TorusElement& a, const TorusElement& b) {
    require_same_theta(a, b);
    TorusElement out = a;
    out.coeffs.clear();
    for (const auto& [km1, c1] : a.coeffs)
        for (const auto& [km2, c2] : b.coeffs) {
            const auto [k1, m1] = km1;
            const auto [k2, m2] = km2;
            const std::complex<double> tw = phase(kTwoPi * a.theta * m1 * k2);
            out.coeffs[{k1 + k2, m1 + m2}] += c1 * c2 * tw;
        }
    prune(out);
    return out;
}

TorusElement torus_star(const TorusElement& a) {
    TorusElement out = a;
    out.coeffs.clear();
    for (const auto& [km, c] : a.coeffs) {
        const auto [k, m] = km;
        out.coeffs[{-k, -m}] += std::conj(c) * phase(kTwoPi * a.theta * k * m);
    }
    prune(out);
    return out;
}

double torus_norm1(const TorusElement& a) {
    double s = 0.0;
    for (const auto& [km, c] : a.coeffs) s += std::abs(c);
    return s;
}

double torus_dist1(const TorusElement& a, const TorusElement& b) {
    TorusElement d = torus_add(a, torus_scale(b, -1.0));
    return torus_norm1(d);
}

double dirichlet_factor(double x, int n, bool exact_integer) {
    if (exact_integer) return 1.0;
    const double s = std::sin(std::numbers::pi * x);
    if (s == 0.0) return 1.0;
    return std::sin(std::numbers::pi * (2 * n + 1) * x) / ((2 * n + 1) * s);
}

TorusElement phi1_partial(const TorusElement& a, int n) {
    check_support_cap(a);
    TorusElement out = a;
    for (auto& [km, c] : out.coeffs)
        c *= dirichlet_factor(km.second * a.theta, n, ktheta_is_integer(a, km.second));
    prune(out);
    return out;
}

TorusElement phi2_partial(const TorusElement& a, int n) {
    check_support_cap(a);
    TorusElement out = a;
    for (auto& [km, c] : out.coeffs)
        c *= dirichlet_factor(km.first * a.theta, n, ktheta_is_integer(a, km.first));
    prune(out);
    return out;
}

namespace {

TorusElement conjugation_average(const TorusElement& a, int n, bool by_u) {
    TorusElement acc = torus_zero(a.theta);
    acc.theta_rational = a.theta_rational;
    for (int j = -n; j <= n; ++j) {
        const TorusElement w =
            by_u ? torus_monomial(a, j, 0, 1.0) : torus_monomial(a, 0, j, 1.0);
        const TorusElement winv =
            by_u ? torus_monomial(a, -j, 0, 1.0) : torus_monomial(a, 0, -j, 1.0);
        acc = torus_add(acc, torus_mul(torus_mul(w, a), winv));
    }
    return torus_scale(acc, 1.0 / (2 * n + 1));
}

}  // namespace

TorusElement phi1_literal(const TorusElement& a, int n) {
    return conjugation_average(a, n, true);
}

TorusElement phi2_literal(const TorusElement& a, int n) {
    return conjugation_average(a, n, false);
}

AveragingReport averaging_report(const TorusElement& a, int n) {
    AveragingReport rep;
    rep.n = n;
    for (const auto& [km, c] : a.coeffs) {
        AveragingReport::ModeRow row;
        row.k = km.first;
        row.m = km.second;
        row.phi1_factor = dirichlet_factor(km.second * a.theta, n,
                                           ktheta_is_integer(a, km.second));
        row.phi2_factor =
            dirichlet_factor(km.first * a.theta, n, ktheta_is_integer(a, km.first));
        rep.rows.push_back(row);
    }
    rep.max_literal_dev =
        std::max(torus_dist1(phi1_partial(a, n), phi1_literal(a, n)),
                 torus_dist1(phi2_partial(a, n), phi2_literal(a, n)));
    return rep;
}

SimplicityReport simplicity_experiment(const TorusElement& a, int n_max, double tol) {
    if (a.is_zero()) throw ZeroElement("the experiment needs a nonzero element");
    check_support_cap(a);
    SimplicityReport rep;
    rep.tolerance = tol;
    const TorusElement b = torus_mul(torus_star(a), a);
    for (const auto& [km, c] : a.coeffs) rep.nu += std::norm(c);
    TorusElement target = torus_monomial(a, 0, 0, rep.nu);
    for (int n = 1; n <= n_max; n = n < 16 ? n + 1 : n + std::max(1, n / 8)) {
        const TorusElement c_n = phi1_partial(phi2_partial(b, n), n);
        const double res = torus_dist1(c_n, target);
        rep.n_values.push_back(n);
        rep.residuals.push_back(res);
        if (res < tol) {
            rep.first_below = n;
            rep.reached = true;
            break;
        }
    }
    return rep;
}

ClockShiftReport clock_shift_check(int size, int mode_range) {
    if (size < 2) throw std::invalid_argument("clock-shift needs N >= 2");
    using Mat = std::vector<std::vector<std::complex<double>>>;
    const int n = size;
    const std::complex<double> omega = phase(kTwoPi / n);
    const auto zero = [&] { return Mat(n, std::vector<std::complex<double>>(n)); };
    const auto mul = [&](const Mat& x, const Mat& y) {
        Mat z = zero();
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
        return z;
    };
    const auto max_diff = [&](const Mat& x, const Mat& y) {
        double d = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d = std::max(d, std::abs(x[i][j] - y[i][j]));
        return d;
    };
    Mat u = zero(), v = zero(), id = zero();
    for (int j = 0; j < n; ++j) {
        u[j][j] = std::pow(omega, j);          // clock
        v[(j - 1 + n) % n][j] = 1.0;           // shift e_j -> e_{j-1}
        id[j][j] = 1.0;
    }
    ClockShiftReport rep;
    rep.size = n;
    rep.relation_error = max_diff(mul(v, u), [&] {
        Mat m = mul(u, v);
        for (auto& row : m)
            for (auto& x : row) x *= omega;
        return m;
    }());

    const auto matpow = [&](const Mat& x, int e) {
        Mat acc = id;
        Mat base = x;
        if (e < 0) {
            // Unitary inverse: conjugate transpose.
            Mat inv = zero();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) inv[i][j] = std::conj(x[j][i]);
            base = inv;
            e = -e;
        }
        for (int t = 0; t < e; ++t) acc = mul(acc, base);
        return acc;
    };
    const auto rep_of = [&](int k, int m) { return mul(matpow(u, k), matpow(v, m)); };

    const double theta = 1.0 / n;
    for (int k1 = -mode_range; k1 <= mode_range; ++k1)
        for (int m1 = -mode_range; m1 <= mode_range; ++m1)
            for (int k2 = -mode_range; k2 <= mode_range; ++k2)
                for (int m2 = -mode_range; m2 <= mode_range; ++m2) {
                    const std::complex<double> tw = phase(kTwoPi * theta * m1 * k2);
                    Mat lhs = mul(rep_of(k1, m1), rep_of(k2, m2));
                    Mat rhs = rep_of(k1 + k2, m1 + m2);
                    for (auto& row : rhs)
                        for (auto& x : row) x *= tw;
                    rep.mult_error = std::max(rep.mult_error, max_diff(lhs, rhs));
                }
    return rep;
}

CrossedProductReport crossed_product_bridge(int q) {
    if (q < 1) throw std::invalid_argument("crossed product bridge needs q >= 1");
    CrossedProductReport rep;
    rep.q = q;
    rep.dim = q * q;
    // Cyclic group table and the rotation action on Z_q.
    std::vector<std::vector<int>> cayley(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) cayley[a][b] = (a + b) % q;
    auto grp = std::make_shared<const FiniteGroupoid>(group_groupoid(cayley));
    std::vector<std::vector<int>> act(q, std::vector<int>(q));
    for (int g = 0; g < q; ++g)
        for (int x = 0; x < q; ++x) act[g][x] = (x + g) % q;
    auto action = std::make_shared<const FiniteGroupoid>(action_groupoid(*grp, act));
    auto alg = make_algebra_counting(action);
    const AlgebraTable conv = structure_constants(*alg);

    // Crossed-product table on the same index set (g, x) -> g*q + x:
    // e_{g,x} e_{g',x'} = [x == g'.x'] e_{g g', x'}.
    auto xp_product = [&](int i, int j) -> SparseVec {
        const int g = i / q, x = i % q;
        const int g2 = j / q, x2 = j % q;
        if (x != (x2 + g2) % q) return {};
        return sparse_unit(((g + g2) % q) * q + x2);
    };
    rep.tables_equal = true;
    for (int i = 0; i < rep.dim && rep.tables_equal; ++i)
        for (int j = 0; j < rep.dim; ++j)
            if (conv.product(i, j) != xp_product(i, j)) {
                rep.tables_equal = false;
                break;
            }

    // Conjugation identity on the basis: with A_g = sum_x e_{g,x} and
    // B_x = e_{0,x}, A_g * B_x * A_{g^-1} = B_{g.x}.
    rep.conjugation_identity = true;
    for (int g = 0; g < q && rep.conjugation_identity; ++g) {
        AlgebraElement ag = zero_element(alg), aginv = zero_element(alg);
        for (int x = 0; x < q; ++x) {
            ag.coeffs[g * q + x] = Scalar(1);
            aginv.coeffs[((q - g) % q) * q + x] = Scalar(1);
        }
        for (int x = 0; x < q; ++x) {
            AlgebraElement bx = delta(alg, 0 * q + x);
            AlgebraElement lhs = convolve(convolve(ag, bx), aginv);
            AlgebraElement expect = delta(alg, 0 * q + (x + g) % q);
            if (lhs.coeffs != expect.coeffs) {
                rep.conjugation_identity = false;
                break;
            }
        }
    }
    return rep;
}

}  // namespace grpd
