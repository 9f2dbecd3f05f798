#pragma once

#include "grpd/groupoid.hpp"
#include "grpd/rref.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace grpd {

/// Abstract finite-dimensional algebra presented by structure constants,
/// with optional star structure and unit. This is the interface the
/// bimodule machinery works against.
struct AlgebraTable {
    int dim = 0;
    std::vector<SparseVec> mult;  // index g*dim + h -> product of basis g, h
    /// star(e_g) as a sparse vector; the star of a general element
    /// conjugates coefficients first (conjugate linearity).
    std::optional<std::vector<SparseVec>> star_map;
    std::optional<std::vector<Scalar>> unit_coords;

    const SparseVec& product(int g, int h) const { return mult[g * dim + h]; }
    SparseVec apply(const SparseVec& a, const SparseVec& b) const;
    /// Throws std::logic_error with the failing triple if the table is not
    /// associative.
    void check_associative() const;
};

using AlgebraTableHandle = std::shared_ptr<const AlgebraTable>;

/// The convolution algebra A(G) of a finite groupoid with a Haar system:
/// (a*b)(g) = sum over h with src(h) == src(g) of a(g h^-1) b(h) w(h).
struct ConvolutionAlgebra {
    GroupoidHandle groupoid;
    HaarSystem haar;

    int dim() const { return groupoid->num_arrows(); }
    AlgebraTableHandle table() const;  // built on demand, cached
private:
    mutable AlgebraTableHandle cached_;
};

using ConvAlgebraHandle = std::shared_ptr<const ConvolutionAlgebra>;

ConvAlgebraHandle make_algebra(GroupoidHandle g, HaarSystem haar);
ConvAlgebraHandle make_algebra_counting(GroupoidHandle g);

struct AlgebraElement {
    ConvAlgebraHandle parent;
    std::vector<Scalar> coeffs;
};

struct ParentMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

AlgebraElement delta(const ConvAlgebraHandle& a, int arrow);
AlgebraElement zero_element(const ConvAlgebraHandle& a);

/// Literal fiber-sum convolution; the OpenMP kernel parallelizes over output
/// arrows, the serial variant is the reference it is tested against.
AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement convolve_serial(const AlgebraElement& a, const AlgebraElement& b);

/// a^*(g) = conj(a(g^-1)).
AlgebraElement star(const AlgebraElement& a);

/// e = sum_x (1/u(x)) delta_{1_x}, u(x) = w(1_x); verified to satisfy
/// e*a = a*e = a on the basis before returning.
AlgebraElement unit_element(const ConvAlgebraHandle& a);

/// Basis products computed with the literal convolution (not a closed
/// form), so the table certifies the convolution routine as a side effect.
AlgebraTable structure_constants(const ConvolutionAlgebra& a);

using Matrix = std::vector<std::vector<Scalar>>;  // row-major

/// Multiplies matrix (rows x cols) by a coefficient vector.
std::vector<Scalar> matrix_apply(const Matrix& m, const std::vector<Scalar>& v);

struct IsoCertificate {
    bool bijective = false;
    bool multiplicative = false;
    std::optional<std::pair<int, int>> failing_pair;  // first basis pair violating f(ab)=f(a)f(b)
    bool ok() const { return bijective && multiplicative; }
};

/// Certifies that the linear map f (dim B rows x dim A columns) is an
/// algebra isomorphism A -> B: exact rank for bijectivity plus
/// multiplicativity on every basis pair. Throws std::invalid_argument on a
/// dimension mismatch.
IsoCertificate check_algebra_iso(const Matrix& f, const AlgebraTable& a,
                                 const AlgebraTable& b);

struct TensorIsoResult {
    ConvAlgebraHandle product_algebra;      // A(G x H) with the product Haar
    std::vector<int> basis_map;             // (g,h) -> arrow of G x H, index g*dimH+h
    IsoCertificate certificate;
};

/// The canonical map A(G) (x) A(H) -> A(G x H), delta_g (x) delta_h ->
/// delta_(g,h), certified multiplicative against both structure tables.
TensorIsoResult tensor_algebra_iso(const ConvolutionAlgebra& ag,
                                   const ConvolutionAlgebra& ah);

enum class SectionSide { Left, Right, Bimodule };

/// Searches for a section s: A -> A (x) A of the multiplication with
/// mu(s(a)) = a and the requested linearity, by solving the complete exact
/// linear system. In finite dimension infeasibility of that system is a
/// disproof, so nullopt means "no such section exists". The returned matrix
/// is (dim^2) x dim, column k = s(e_k), and is re-verified before return.
std::optional<Matrix> find_separability_section(const AlgebraTable& a,
                                                SectionSide side);

struct IdealReport {
    bool left_ideal = false, right_ideal = false;
    bool two_sided() const { return left_ideal && right_ideal; }
    bool proper = false;  // span != A
    int span_dim = 0;
    /// First product (basis arrow, span basis vector) escaping the span.
    std::optional<std::pair<int, int>> witness;
    /// Finite-dimensional over a unital algebra, submodules are
    /// automatically smooth; the separate smoothness test is skipped and
    /// flagged rather than silently assumed.
    bool smoothness_automatic = true;
};

IdealReport ideal_check(const ConvolutionAlgebra& a, const std::vector<std::vector<Scalar>>& span_vectors);

}  // namespace grpd
