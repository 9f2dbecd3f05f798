#include "grpd/bornology.hpp"

#include <algorithm>
#include <cmath>

namespace grpd {

namespace {

using Tableau = std::vector<std::vector<Rational>>;

/// Bland's-rule iterations on a tableau whose basis columns are identity.
/// Row 0 holds the reduced costs with -z in the last cell. Only columns
/// below ncols may enter. Returns false on unboundedness.
bool simplex_iterate(Tableau& t, std::vector<int>& basis, int ncols) {
    const int nrows = static_cast<int>(t.size()) - 1;
    for (;;) {
        int enter = -1;
        for (int j = 0; j < ncols; ++j)
            if (t[0][j] < 0) {
                enter = j;
                break;  // smallest index with negative reduced cost
            }
        if (enter < 0) return true;
        int leave = -1;
        Rational best;
        for (int i = 1; i <= nrows; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i].back() / t[i][enter];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[i - 1] < basis[leave - 1])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) return false;
        const Rational piv = t[leave][enter];
        for (auto& cell : t[leave]) cell /= piv;
        for (int i = 0; i <= nrows; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (size_t j = 0; j < t[i].size(); ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave - 1] = enter;
    }
}

}  // namespace

LpResult solve_lp_min(const std::vector<std::vector<Rational>>& a,
                      const std::vector<Rational>& b, const std::vector<Rational>& c) {
    const int m = static_cast<int>(a.size());
    const int n = m == 0 ? static_cast<int>(c.size()) : static_cast<int>(a[0].size());
    LpResult res;
    if (m == 0) {
        res.status = LpResult::Status::Optimal;
        res.x.assign(n, Rational(0));
        return res;
    }
    const int ncols = n + m;  // structural + artificial
    Tableau t(m + 1, std::vector<Rational>(ncols + 1, Rational(0)));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (int j = 0; j < n; ++j) t[i + 1][j] = flip ? -a[i][j] : a[i][j];
        t[i + 1][n + i] = Rational(1);
        t[i + 1][ncols] = flip ? -b[i] : b[i];
        basis[i] = n + i;
    }
    // Phase 1: minimize the artificial sum. Reduced costs start as the
    // negated column sums so the artificial basis columns read zero.
    for (int j = 0; j <= ncols; ++j) {
        Rational s(0);
        for (int i = 1; i <= m; ++i) s += t[i][j];
        t[0][j] = (j >= n && j < ncols) ? Rational(0) : -s;
    }
    simplex_iterate(t, basis, n);  // phase 1 is bounded below by 0
    if (t[0][ncols] != 0) {
        res.status = LpResult::Status::Infeasible;
        return res;
    }
    // Drive artificials out of the basis where possible; a leftover
    // zero-valued artificial marks a redundant row and never re-enters.
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        for (int j = 0; j < n; ++j)
            if (t[i + 1][j] != 0) {
                const Rational piv = t[i + 1][j];
                for (auto& cell : t[i + 1]) cell /= piv;
                for (int r = 0; r <= m; ++r) {
                    if (r == i + 1 || t[r][j] == 0) continue;
                    const Rational f = t[r][j];
                    for (size_t k = 0; k < t[r].size(); ++k) t[r][k] -= f * t[i + 1][k];
                }
                basis[i] = j;
                break;
            }
    }
    // Phase 2: reduced costs of c under the current basis.
    for (int j = 0; j <= ncols; ++j) t[0][j] = Rational(0);
    for (int j = 0; j < n; ++j) t[0][j] = c[j];
    for (int i = 0; i < m; ++i) {
        if (basis[i] >= n) continue;
        const Rational cb = c[basis[i]];
        if (cb == 0) continue;
        for (int j = 0; j <= ncols; ++j) t[0][j] -= cb * t[i + 1][j];
    }
    if (!simplex_iterate(t, basis, n)) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }
    res.status = LpResult::Status::Optimal;
    res.value = -t[0][ncols];
    res.x.assign(n, Rational(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = t[i + 1][ncols];
    // Duals: the phase-2 reduced cost over artificial column i is
    // 0 - c_B B^-1 e_i = -y_i, modulo the sign flip applied to row i.
    res.dual.assign(m, Rational(0));
    for (int i = 0; i < m; ++i) {
        Rational y = -t[0][n + i];
        if (b[i] < 0) y = -y;
        res.dual[i] = y;
    }
    return res;
}

namespace {

void check_disk(const PolytopalDisk& d) {
    if (d.dimension < 1 || d.dimension > kMaxDiskDimension)
        throw std::invalid_argument("disk dimension out of supported range");
    if (static_cast<int>(d.generators.size()) > kMaxDiskGenerators)
        throw std::invalid_argument("too many disk generators");
    for (const auto& g : d.generators)
        if (static_cast<int>(g.size()) != d.dimension)
            throw std::invalid_argument("generator arity mismatch");
}

}  // namespace

GaugeResult disked_hull_gauge(const PolytopalDisk& d, const std::vector<Rational>& v) {
    check_disk(d);
    if (static_cast<int>(v.size()) != d.dimension)
        throw std::invalid_argument("point arity mismatch");
    const int ngen = static_cast<int>(d.generators.size());
    GaugeResult res;
    // min sum(lp_i + lm_i) subject to sum (lp_i - lm_i) d_i = v.
    std::vector<std::vector<Rational>> a(d.dimension, std::vector<Rational>(2 * ngen));
    for (int i = 0; i < ngen; ++i)
        for (int r = 0; r < d.dimension; ++r) {
            a[r][i] = d.generators[i][r];
            a[r][ngen + i] = -d.generators[i][r];
        }
    std::vector<Rational> c(2 * ngen, Rational(1));
    LpResult lp = solve_lp_min(a, v, c);
    if (lp.status != LpResult::Status::Optimal) return res;  // off span: infinity
    res.finite = true;
    res.value = lp.value;
    res.witness.resize(ngen);
    for (int i = 0; i < ngen; ++i) res.witness[i] = lp.x[i] - lp.x[ngen + i];
    res.dual = lp.dual;
    // Exact recheck of the witness.
    std::vector<Rational> rec(d.dimension, Rational(0));
    Rational total(0);
    for (int i = 0; i < ngen; ++i) {
        for (int r = 0; r < d.dimension; ++r) rec[r] += res.witness[i] * d.generators[i][r];
        total += lp.x[i] + lp.x[ngen + i];
    }
    if (rec != v || total != res.value)
        throw std::logic_error("gauge witness failed exact recheck");
    return res;
}

NormingCertificate is_norming(const PolytopalDisk& d) {
    check_disk(d);
    NormingCertificate cert;
    for (const auto& g : d.generators)
        for (const auto& x : g) {
            const Rational ax = x < 0 ? -x : x;
            if (ax > cert.generator_bound) cert.generator_bound = ax;
        }
    // Feasibility bound: v = sum lambda_i d_i with sum |lambda_i| <= r
    // forces |v_j| <= r * bound, so gauge(v) >= |v_j| / bound and a zero
    // gauge forces v = 0 on the span. bound == 0 means the span is {0}.
    cert.norming = true;
    return cert;
}

AbsorbResult absorbs(const PolytopalDisk& d, const std::vector<std::vector<Rational>>& s) {
    AbsorbResult res;
    res.finite = true;
    for (size_t i = 0; i < s.size(); ++i) {
        GaugeResult g = disked_hull_gauge(d, s[i]);
        if (!g.finite) {
            res.finite = false;
            res.radius = Rational(0);
            res.off_span_index = static_cast<int>(i);
            return res;
        }
        if (g.value > res.radius) res.radius = g.value;
    }
    return res;
}

MackeyReport mackey_rate(const std::vector<std::vector<Rational>>& seq,
                         const std::vector<Rational>& limit, const PolytopalDisk& d) {
    MackeyReport rep;
    for (size_t n = 0; n < seq.size(); ++n) {
        if (seq[n].size() != limit.size()) throw OffSpanError(static_cast<int>(n), "arity");
        std::vector<Rational> diff(limit.size());
        for (size_t j = 0; j < limit.size(); ++j) diff[j] = seq[n][j] - limit[j];
        GaugeResult g = disked_hull_gauge(d, diff);
        if (!g.finite)
            throw OffSpanError(static_cast<int>(n), "sequence difference leaves the span");
        rep.gauges.push_back(g.value);
    }
    rep.all_zero = std::all_of(rep.gauges.begin(), rep.gauges.end(),
                               [](const Rational& g) { return g == 0; });
    if (rep.all_zero) {
        rep.convergent = true;
        rep.slope = 0.0;
        return rep;
    }
    // Least squares of log g_n against log n over the nonzero gauges.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (size_t n = 0; n < rep.gauges.size(); ++n) {
        if (rep.gauges[n] == 0) continue;
        const double x = std::log(static_cast<double>(n + 1));
        const double y = std::log(to_double(rep.gauges[n]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double denom = count * sxx - sx * sx;
    rep.slope = denom == 0 ? 0.0 : (count * sxy - sx * sy) / denom;
    rep.convergent = rep.slope <= -0.1;
    return rep;
}

CircledMembership circled_hull_membership(const std::vector<std::vector<Rational>>& generators,
                                          const std::vector<Rational>& v) {
    PolytopalDisk closed;
    closed.dimension = static_cast<int>(v.size());
    for (const auto& g : generators) {
        closed.generators.push_back(g);
        std::vector<Rational> neg(g.size());
        for (size_t j = 0; j < g.size(); ++j) neg[j] = -g[j];
        closed.generators.push_back(std::move(neg));
    }
    CircledMembership res;
    res.gauge = disked_hull_gauge(closed, v);
    res.member = res.gauge.finite && res.gauge.value <= 1;
    return res;
}

}  // namespace grpd
