#pragma once

#include "grpd/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace grpd {

/// Finite-dimensional disk given as the disked hull of rational generators:
/// D = { sum lambda_i d_i : sum |lambda_i| <= 1 }.
struct PolytopalDisk {
    int dimension = 0;
    std::vector<std::vector<Rational>> generators;  // each of size dimension
};

/// Hard caps keep the exact simplex tractable.
constexpr int kMaxDiskDimension = 16;
constexpr int kMaxDiskGenerators = 64;

struct OffSpanError : std::runtime_error {
    int index;  // offending sequence index, or -1
    OffSpanError(int i, const std::string& msg) : std::runtime_error(msg), index(i) {}
};

/// Exact linear program min c.x subject to A x = b, x >= 0, solved by
/// two-phase simplex with Bland's rule (no cycling).
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rational value{0};
    std::vector<Rational> x;
    std::vector<Rational> dual;  // one multiplier per equality row
};

LpResult solve_lp_min(const std::vector<std::vector<Rational>>& a,
                      const std::vector<Rational>& b, const std::vector<Rational>& c);

/// Minkowski gauge of v with respect to the disked hull: the minimal
/// sum |lambda_i| over exact representations v = sum lambda_i d_i.
/// finite == false means v lies outside the span (the infimum of the
/// empty set is infinity).
struct GaugeResult {
    bool finite = false;
    Rational value{0};
    std::vector<Rational> witness;  // signed lambda, one per generator
    std::vector<Rational> dual;     // functional y with |y.d_i| <= 1, y.v = value
};

GaugeResult disked_hull_gauge(const PolytopalDisk& d, const std::vector<Rational>& v);

/// Polytopal disks are bounded, so the gauge is a norm on the span; the
/// certificate is the feasibility bound gauge(v) >= max|v_j| / bound.
struct NormingCertificate {
    bool norming = true;
    Rational generator_bound{0};  // max_i max_j |d_i[j]|
};

NormingCertificate is_norming(const PolytopalDisk& d);

/// Minimal uniform r with S inside r*D (max of the gauges), or infinity.
struct AbsorbResult {
    bool finite = false;
    Rational radius{0};
    int off_span_index = -1;  // witness when not finite
};

AbsorbResult absorbs(const PolytopalDisk& d, const std::vector<std::vector<Rational>>& s);

/// Exact gauges of v_n - v plus a float least-squares fit of
/// log g_n against log n. Throws OffSpanError when some difference leaves
/// the span of the disk.
struct MackeyReport {
    std::vector<Rational> gauges;
    bool all_zero = false;
    double slope = 0.0;   // meaningless when all_zero
    bool convergent = false;
};

MackeyReport mackey_rate(const std::vector<std::vector<Rational>>& seq,
                         const std::vector<Rational>& limit, const PolytopalDisk& d);

/// Membership of v in the disked hull of the generators and their
/// negations (gauge <= 1). Real scalars only: full complex circling would
/// need second-order cones, so reports carry the caveat.
struct CircledMembership {
    bool member = false;
    GaugeResult gauge;
    std::string caveat =
        "real scalars: circledness is modeled by closing generators under negation";
};

CircledMembership circled_hull_membership(const std::vector<std::vector<Rational>>& generators,
                                          const std::vector<Rational>& v);

}  // namespace grpd
