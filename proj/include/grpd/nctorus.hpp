#pragma once

#include "grpd/algebra.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace grpd {

struct ThetaMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroElement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mode support cap: bounds the small-denominator amplification
/// 1/|sin(pi k theta)| on the tested range.
constexpr int kMaxTorusMode = 64;

/// Element of the u,v-polynomial model of the noncommutative torus:
/// finitely many modes (k, m) -> coefficient of u^k v^m. theta may carry an
/// exact rational value p/q, in which case integrality of k*theta is
/// decided exactly.
struct TorusElement {
    double theta = 0.0;
    std::optional<std::pair<long, long>> theta_rational;
    std::map<std::pair<int, int>, std::complex<double>> coeffs;

    bool is_zero(double tol = 0.0) const;
};

TorusElement torus_zero(double theta);
TorusElement torus_zero_rational(long p, long q);
TorusElement torus_monomial(const TorusElement& like, int k, int m,
                            std::complex<double> c);

TorusElement torus_add(const TorusElement& a, const TorusElement& b);
TorusElement torus_scale(const TorusElement& a, std::complex<double> c);

/// Bilinear extension of (u^k v^m)(u^k' v^m') = e^{2 pi i theta m k'}
/// u^{k+k'} v^{m+m'}. Throws ThetaMismatch.
TorusElement torus_mul(const TorusElement& a, const TorusElement& b);

/// (u^k v^m)^* = e^{2 pi i theta k m} u^{-k} v^{-m} with conjugated
/// coefficients.
TorusElement torus_star(const TorusElement& a);

/// l1 norm of the coefficients.
double torus_norm1(const TorusElement& a);
double torus_dist1(const TorusElement& a, const TorusElement& b);

/// Dirichlet average sin(pi (2n+1) x) / ((2n+1) sin(pi x)), extended by 1
/// at integer x. With exact_integer set the integrality of x was decided
/// upstream (rational theta); otherwise x is taken as non-integral unless
/// it is exactly so in floating point.
double dirichlet_factor(double x, int n, bool exact_integer);

/// Closed-form conjugation averages: phi1 scales mode (k, m) by D_n(m
/// theta), phi2 by D_n(k theta).
TorusElement phi1_partial(const TorusElement& a, int n);
TorusElement phi2_partial(const TorusElement& a, int n);

/// Literal sums (1/(2n+1)) sum_j u^j a u^-j and v^j a v^-j, used to
/// cross-check the closed forms.
TorusElement phi1_literal(const TorusElement& a, int n);
TorusElement phi2_literal(const TorusElement& a, int n);

/// Per-mode suppression factors at level n, with the deviation between the
/// closed form and the literal sum.
struct AveragingReport {
    int n = 0;
    struct ModeRow {
        int k = 0, m = 0;
        double phi1_factor = 1.0, phi2_factor = 1.0;
    };
    std::vector<ModeRow> rows;
    double max_literal_dev = 0.0;  // over both averages
};

AveragingReport averaging_report(const TorusElement& a, int n);

/// The averaging mechanism behind simplicity: c_n = phi1_n(phi2_n(a^* a))
/// approaches nu * 1 with nu = sum |a_km|^2. Residuals are l1 distances.
struct SimplicityReport {
    double nu = 0.0;
    std::vector<int> n_values;
    std::vector<double> residuals;
    int first_below = -1;  // smallest tested n with residual < tol
    bool reached = false;
    double tolerance = 1e-3;
};

SimplicityReport simplicity_experiment(const TorusElement& a, int n_max,
                                       double tol = 1e-3);

/// N x N clock and shift matrices with V U = e^{2 pi i / N} U V; verifies
/// that u^k v^m -> U^k V^m is multiplicative for theta = 1/N.
struct ClockShiftReport {
    int size = 0;
    double relation_error = 0.0;  // |VU - e^{2 pi i/N} UV| max entry
    double mult_error = 0.0;      // over monomial pairs in the tested range
    bool ok(double tol = 1e-10) const {
        return relation_error <= tol && mult_error <= tol;
    }
};

ClockShiftReport clock_shift_check(int size, int mode_range = 3);

/// A(Z_q x| Z_q) (rotation action, counting Haar) versus the twisted
/// crossed-product table, compared exactly, plus the conjugation identity
/// on basis elements.
struct CrossedProductReport {
    int q = 0;
    int dim = 0;
    bool tables_equal = false;
    bool conjugation_identity = false;
    bool ok() const { return tables_equal && conjugation_identity; }
};

CrossedProductReport crossed_product_bridge(int q);

}  // namespace grpd
