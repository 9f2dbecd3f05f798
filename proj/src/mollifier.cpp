#include "grpd/mollifier.hpp"

#include <algorithm>
#include <cmath>

namespace grpd {

namespace {

double raw_bump(double t) {  // exp(-1/(1-t^2)) on |t| < 1
    const double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t2));
}

int grid_points_for(int n, double halfwidth, const MollifierConfig& cfg) {
    // h <= resolution_factor / n, odd point count for Simpson.
    const double h = cfg.resolution_factor / n;
    int intervals = static_cast<int>(std::ceil(2.0 * halfwidth / h));
    if (intervals % 2) ++intervals;
    return intervals + 1;
}

double simpson_values(const std::vector<double>& v, double h) {
    const int n = static_cast<int>(v.size()) - 1;  // intervals, must be even
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; i += 2) odd += v[i];
    for (int i = 2; i < n; i += 2) even += v[i];
    return h / 3.0 * (v.front() + v.back() + 4.0 * odd + 2.0 * even);
}

bool eventually_monotone_decreasing(const std::vector<double>& e, double floor) {
    // Find the last violation above the noise floor; all later steps must
    // decrease (or sit below the floor).
    bool seen_decrease_phase = true;
    for (size_t i = 1; i < e.size(); ++i) {
        if (e[i] > e[i - 1] && e[i] > floor) seen_decrease_phase = false;
        else if (!seen_decrease_phase && (e[i] <= e[i - 1] || e[i] <= floor))
            seen_decrease_phase = true;
    }
    return seen_decrease_phase;
}

}  // namespace

double BumpProfile::value1(double y) const { return norm * raw_bump(y / radius); }

double BumpProfile::value2(double y1, double y2) const {
    const double r2 = (y1 * y1 + y2 * y2) / (radius * radius);
    if (r2 >= 1.0) return 0.0;
    return norm * std::exp(-1.0 / (1.0 - r2));
}

BumpProfile make_bump_profile(int dim, double radius, const MollifierConfig& cfg) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("bump dimension must be 1 or 2");
    BumpProfile b;
    b.dim = dim;
    b.radius = radius;
    b.norm = 1.0;
    const int npts = 2001;
    const double h = 2.0 * radius / (npts - 1);
    double integral = 0.0;
    if (dim == 1) {
        std::vector<double> v(npts);
        for (int i = 0; i < npts; ++i) v[i] = b.value1(-radius + i * h);
        integral = simpson_values(v, h);
    } else {
        std::vector<double> rows(npts);
        for (int i = 0; i < npts; ++i) {
            std::vector<double> v(npts);
            const double y1 = -radius + i * h;
            for (int j = 0; j < npts; ++j) v[j] = b.value2(y1, -radius + j * h);
            rows[i] = simpson_values(v, h);
        }
        integral = simpson_values(rows, h);
    }
    b.norm = 1.0 / integral;
    // Self-check at a finer grid.
    const int fine = 4001;
    const double hf = 2.0 * radius / (fine - 1);
    double check = 0.0;
    if (dim == 1) {
        std::vector<double> v(fine);
        for (int i = 0; i < fine; ++i) v[i] = b.value1(-radius + i * hf);
        check = simpson_values(v, hf);
    } else {
        std::vector<double> rows(fine);
        for (int i = 0; i < fine; ++i) {
            std::vector<double> v(fine);
            const double y1 = -radius + i * hf;
            for (int j = 0; j < fine; ++j) v[j] = b.value2(y1, -radius + j * hf);
            rows[i] = simpson_values(v, hf);
        }
        check = simpson_values(rows, hf);
    }
    if (std::abs(check - 1.0) > cfg.normalization_tol)
        throw std::runtime_error("bump normalization did not converge");
    return b;
}

double SampledFunction::eval(double x) const {
    if (x <= lo || x >= hi) {
        if (x == lo) return values.front();
        if (x == hi) return values.back();
        return 0.0;
    }
    const double h = spacing();
    const double t = (x - lo) / h;
    const int i = std::min(static_cast<int>(t), static_cast<int>(values.size()) - 2);
    const double frac = t - i;
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

SampledFunction sample_function(const std::function<double(double)>& f, double lo,
                                double hi, int npoints) {
    if (npoints < 3 || npoints % 2 == 0)
        throw std::invalid_argument("sample needs an odd point count >= 3");
    if (!(hi > lo)) throw std::invalid_argument("empty sample interval");
    SampledFunction s;
    s.lo = lo;
    s.hi = hi;
    s.values.resize(npoints);
    const double h = (hi - lo) / (npoints - 1);
    for (int i = 0; i < npoints; ++i) s.values[i] = f(lo + i * h);
    return s;
}

double simpson_integral(const SampledFunction& f) {
    if (f.values.size() < 3 || f.values.size() % 2 == 0)
        throw std::invalid_argument("Simpson needs an odd point count");
    return simpson_values(f.values, f.spacing());
}

double dirac_pairing(const SampledFunction& f, const BumpProfile& eps, int n,
                     const MollifierConfig& cfg) {
    if (n < 1) throw std::invalid_argument("scale n must be >= 1");
    if (eps.dim != 1) throw std::invalid_argument("dirac_pairing is one-dimensional");
    const double h = f.spacing();
    if (h * n > cfg.coarse_limit)
        throw GridTooCoarse("grid spacing " + std::to_string(h) +
                            " cannot resolve the mollifier at n = " + std::to_string(n));
    std::vector<double> v(f.values.size());
    for (size_t i = 0; i < v.size(); ++i) {
        const double y = f.lo + static_cast<double>(i) * h;
        v[i] = f.values[i] * n * eps.value1(n * y);
    }
    return simpson_values(v, h);
}

DiracRateReport dirac_rate_experiment(const std::vector<DiracTestFunction>& fs,
                                      const BumpProfile& eps, const std::vector<int>& ns,
                                      const MollifierConfig& cfg) {
    DiracRateReport rep;
    rep.n_values = ns;
    // C = integral |y| eps(y) dy by fine quadrature.
    {
        const int npts = 4001;
        const double h = 2.0 * eps.radius / (npts - 1);
        std::vector<double> v(npts);
        for (int i = 0; i < npts; ++i) {
            const double y = -eps.radius + i * h;
            v[i] = std::abs(y) * eps.value1(y);
        }
        rep.c_constant = simpson_values(v, h);
    }
    rep.all_hold = true;
    for (const auto& tf : fs) {
        DiracRateReport::Row row;
        row.name = tf.name;
        row.bound_holds = true;
        for (int n : ns) {
            const double half = eps.radius / n;
            SampledFunction s =
                sample_function(tf.f, -half, half, grid_points_for(n, half, cfg));
            const double got = dirac_pairing(s, eps, n, cfg);
            const double err = std::abs(got - tf.f(0.0));
            const double bound = rep.c_constant / n * tf.grad_bound;
            row.errors.push_back(err);
            // The additive allowance absorbs the quadrature error of the
            // pairing itself (it matters only when the bound is 0).
            const double denom = bound + cfg.quadrature_allowance;
            const double ratio = err / denom;
            row.ratios.push_back(ratio);
            row.max_ratio = std::max(row.max_ratio, ratio);
        }
        row.bound_holds = row.max_ratio <= 1.0 + 1e-6;
        rep.all_hold = rep.all_hold && row.bound_holds;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

namespace {

struct DecayRun {
    std::vector<double> errors;
    double max_norm_dev = 0.0;
};

DecayReport finish_decay(const std::vector<int>& ns, const DecayRun& base,
                         const DecayRun& doubled, const MollifierConfig& cfg) {
    DecayReport rep;
    rep.n_values = ns;
    rep.errors = base.errors;
    rep.errors_doubled = doubled.errors;
    rep.max_norm_deviation = std::max(base.max_norm_dev, doubled.max_norm_dev);
    rep.normalized = rep.max_norm_deviation <= cfg.sequence_norm_tol;
    for (size_t i = 0; i < ns.size(); ++i) {
        const double denom = std::max(std::abs(base.errors[i]), cfg.monotone_floor);
        const double change = std::abs(base.errors[i] - doubled.errors[i]) / denom;
        if (base.errors[i] > cfg.monotone_floor)
            rep.max_doubling_change = std::max(rep.max_doubling_change, change);
    }
    rep.quadrature_controlled = rep.max_doubling_change < cfg.doubling_tol;
    rep.eventually_monotone = eventually_monotone_decreasing(rep.errors, cfg.monotone_floor);
    rep.below_target = !rep.errors.empty() && rep.errors.back() <= cfg.decay_target;
    return rep;
}

}  // namespace

DecayReport fiber_dirac_experiment(const std::function<double(double, double)>& f,
                                   const std::function<double(double, double)>& rho,
                                   const BumpProfile& eps, const std::vector<int>& ns,
                                   double base_len, const MollifierConfig& cfg) {
    if (eps.dim != 1) throw std::invalid_argument("fiber model uses a 1d profile");
    const int ncharts = static_cast<int>(base_len) + 1;  // unit intervals at 0..len
    const auto chi = [&](int i, double x) { return raw_bump(x - i); };
    const auto partition = [&](int i, double x) {
        double total = 0.0;
        for (int j = 0; j < ncharts; ++j) total += chi(j, x);
        return chi(i, x) / total;
    };

    const auto run_with = [&](const MollifierConfig& c) {
        DecayRun out;
        const int nbase = 241;
        const double hb = base_len / (nbase - 1);
        for (int n : ns) {
            const double half = eps.radius / n;
            const int nf_pts = grid_points_for(n, half, c);
            const double hf = 2.0 * half / (nf_pts - 1);
            double sup_err = 0.0, norm_dev = 0.0;
            for (int bi = 0; bi < nbase; ++bi) {
                const double x = bi * hb;
                std::vector<double> integrand(nf_pts), unit(nf_pts);
                for (int fi = 0; fi < nf_pts; ++fi) {
                    const double y = -half + fi * hf;
                    double en = 0.0;
                    for (int i = 0; i < ncharts; ++i)
                        en += partition(i, x) * n * eps.value1(n * y) / rho(x, y);
                    integrand[fi] = f(x, y) * en * rho(x, y);
                    unit[fi] = en * rho(x, y);
                }
                const double got = simpson_values(integrand, hf);
                sup_err = std::max(sup_err, std::abs(got - f(x, 0.0)));
                norm_dev = std::max(norm_dev, std::abs(simpson_values(unit, hf) - 1.0));
            }
            out.errors.push_back(sup_err);
            out.max_norm_dev = std::max(out.max_norm_dev, norm_dev);
        }
        return out;
    };
    // The doubling control reruns everything at half the spacing.
    MollifierConfig fine = cfg;
    fine.resolution_factor = cfg.resolution_factor / 2.0;
    return finish_decay(ns, run_with(cfg), run_with(fine), cfg);
}

DecayReport group_approx_unit_demo(const SampledFunction& a, const BumpProfile& eps,
                                   const std::vector<int>& ns,
                                   const MollifierConfig& cfg) {
    if (eps.dim != 1) throw std::invalid_argument("group model uses a 1d profile");
    const auto run_with = [&](const MollifierConfig& c) {
        DecayRun out;
        for (int n : ns) {
            if (a.spacing() * n > c.coarse_limit)
                throw GridTooCoarse("sample grid cannot resolve the mollifier at n = " +
                                    std::to_string(n));
            const double half = eps.radius / n;
            const int ny = grid_points_for(n, half, c);
            const double hy = 2.0 * half / (ny - 1);
            std::vector<double> mol(ny);
            for (int i = 0; i < ny; ++i) {
                const double y = -half + i * hy;
                mol[i] = n * eps.value1(n * y);
            }
            out.max_norm_dev =
                std::max(out.max_norm_dev, std::abs(simpson_values(mol, hy) - 1.0));
            double sup_err = 0.0;
            for (size_t xi = 0; xi < a.values.size(); ++xi) {
                const double x = a.lo + static_cast<double>(xi) * a.spacing();
                std::vector<double> integrand(ny);
                for (int i = 0; i < ny; ++i) {
                    const double y = -half + i * hy;
                    integrand[i] = a.eval(x - y) * mol[i];
                }
                sup_err = std::max(sup_err,
                                   std::abs(simpson_values(integrand, hy) - a.values[xi]));
            }
            out.errors.push_back(sup_err);
        }
        return out;
    };
    MollifierConfig fine = cfg;
    fine.resolution_factor = cfg.resolution_factor / 2.0;
    return finish_decay(ns, run_with(cfg), run_with(fine), cfg);
}

}  // namespace grpd
