#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace grpd {

/// Every tolerance of the lab in one place. Experiments fail loudly (ok()
/// goes false) when the grid-doubling control is violated instead of
/// reporting spurious convergence.
struct MollifierConfig {
    double normalization_tol = 1e-10;      // bump profile normalization
    double sequence_norm_tol = 1e-8;       // per-n check of the integral of eps_n
    double coarse_limit = 0.2;             // GridTooCoarse when h*n exceeds this
    double resolution_factor = 1.0 / 80.0; // experiments sample with h <= factor/n
    double doubling_tol = 0.10;            // <10% change under grid doubling
    double decay_target = 1e-2;
    double quadrature_allowance = 1e-8;    // additive slack for exact-zero targets
    double monotone_floor = 1e-8;          // ignore noise below this when checking decay
};

struct GridTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The standard smooth bump exp(-1/(1-|y/r|^2)) on |y| < r, normalized to
/// unit integral by quadrature on a fine grid.
struct BumpProfile {
    int dim = 1;  // 1 or 2
    double radius = 1.0;
    double norm = 1.0;

    double value1(double y) const;              // dim 1
    double value2(double y1, double y2) const;  // dim 2
};

BumpProfile make_bump_profile(int dim, double radius = 1.0,
                              const MollifierConfig& cfg = {});

/// Uniformly sampled function on [lo, hi], endpoints included; the point
/// count must be odd so composite Simpson applies.
struct SampledFunction {
    double lo = 0.0, hi = 0.0;
    std::vector<double> values;
    double spacing() const { return (hi - lo) / (static_cast<int>(values.size()) - 1); }
    /// Linear interpolation, zero outside [lo, hi].
    double eval(double x) const;
};

SampledFunction sample_function(const std::function<double(double)>& f, double lo,
                                double hi, int npoints);

double simpson_integral(const SampledFunction& f);

/// Quadrature of f against eps_n(y) = n^d eps(n y) on f's own grid.
/// Throws GridTooCoarse when h*n exceeds the configured limit.
double dirac_pairing(const SampledFunction& f, const BumpProfile& eps, int n,
                     const MollifierConfig& cfg = {});

struct DiracTestFunction {
    std::string name;
    std::function<double(double)> f;
    double grad_bound;  // sup of |f'| on the support of eps
};

/// Checks |integral(f eps_n) - f(0)| <= (C/n) sup|grad f| with
/// C = integral(|y| eps), for every test function and n.
struct DiracRateReport {
    double c_constant = 0.0;
    std::vector<int> n_values;
    struct Row {
        std::string name;
        std::vector<double> errors;
        std::vector<double> ratios;  // error / bound
        double max_ratio = 0.0;
        bool bound_holds = false;
    };
    std::vector<Row> rows;
    bool all_hold = false;
};

DiracRateReport dirac_rate_experiment(const std::vector<DiracTestFunction>& fs,
                                      const BumpProfile& eps, const std::vector<int>& ns,
                                      const MollifierConfig& cfg = {});

/// Shared result shape for the decay experiments: per-n sup-norm errors,
/// the same errors at doubled grid resolution, and the control flags.
struct DecayReport {
    std::vector<int> n_values;
    std::vector<double> errors;
    std::vector<double> errors_doubled;
    double max_doubling_change = 0.0;   // relative
    double max_norm_deviation = 0.0;    // |integral eps_n - 1| across n
    bool quadrature_controlled = false;
    bool normalized = false;
    bool eventually_monotone = false;
    bool below_target = false;
    bool ok() const {
        return quadrature_controlled && normalized && eventually_monotone && below_target;
    }
};

/// Fiber integration against e_n(x, y) = sum_i chi_i(x) eps_n(y) / rho(x, y)
/// on the trivial bundle [0, base_len] x R with a smooth bump partition
/// {chi_i} on overlapping unit intervals. Errors are
/// sup_x |pi_*(f e_n)(x) - f(x, 0)| where pi_* integrates against the
/// strictly positive fiber density rho.
DecayReport fiber_dirac_experiment(const std::function<double(double, double)>& f,
                                   const std::function<double(double, double)>& rho,
                                   const BumpProfile& eps, const std::vector<int>& ns,
                                   double base_len = 3.0, const MollifierConfig& cfg = {});

/// Group convolution on R: errors sup |a * eps_n - a| over the sample grid.
DecayReport group_approx_unit_demo(const SampledFunction& a, const BumpProfile& eps,
                                   const std::vector<int>& ns,
                                   const MollifierConfig& cfg = {});

}  // namespace grpd
