#pragma once

#include "grpd/scalar.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace grpd {

/// Structured validation failure with the first failing witness.
struct GroupoidError : std::runtime_error {
    enum class Kind {
        IndexError,
        EmptyObjects,
        SourceTargetMismatch,  // witness (g, h)
        NonAssociative,        // witness (g, h, k)
        BadUnit,               // witness x
        BadInverse,            // witness g
        NotAGroup,
        NotAnAction,
        NotACover,
        NotFree,
        NotPrincipal,
    };
    Kind kind;
    std::vector<int> witness;
    GroupoidError(Kind k, std::vector<int> w, const std::string& msg)
        : std::runtime_error(msg), kind(k), witness(std::move(w)) {}
};

/// Finite groupoid: dense integer ids for objects and arrows. The composite
/// g*h means "h then g" and is defined exactly when src(g) == tgt(h).
/// Instances are immutable after validation and safe to share across threads.
class FiniteGroupoid {
public:
    int num_objects = 0;
    std::vector<int> src, tgt;               // arrow -> object
    std::vector<std::vector<int>> comp;      // comp[g][h] = g*h, or -1
    std::vector<int> inv;                    // arrow -> arrow
    std::vector<int> unit;                   // object -> identity arrow

    int num_arrows() const { return static_cast<int>(src.size()); }
    int compose(int g, int h) const { return comp[g][h]; }
    bool composable(int g, int h) const { return src[g] == tgt[h]; }

    /// Arrows with src == x / tgt == x (filled by validate_groupoid).
    const std::vector<int>& s_fiber(int x) const { return s_fiber_[x]; }
    const std::vector<int>& t_fiber(int x) const { return t_fiber_[x]; }

    friend FiniteGroupoid validate_groupoid(FiniteGroupoid raw);

private:
    std::vector<std::vector<int>> s_fiber_, t_fiber_;
};

using GroupoidHandle = std::shared_ptr<const FiniteGroupoid>;

/// Checks every groupoid axiom by brute force and returns the validated
/// value (with fiber indices filled in). Throws GroupoidError with the
/// first failing witness.
FiniteGroupoid validate_groupoid(FiniteGroupoid raw);

bool same_tables(const FiniteGroupoid& a, const FiniteGroupoid& b);

/// Right-invariant strictly positive arrow weights; the discrete Haar
/// system w(h) = lambda_{s(h)}({h}).
struct HaarSystem {
    std::vector<Rational> weight;

    /// The normal form forced by right invariance: w(h) = u(tgt(h)) with
    /// u(x) = w(1_x). Exposed as a canonicalization; validation always
    /// re-checks the raw invariance instead of trusting it.
    std::vector<Rational> object_weights(const FiniteGroupoid& g) const;
};

struct HaarError : std::runtime_error {
    enum class Kind { NotPositive, NotInvariant, WrongArity };
    Kind kind;
    std::vector<int> witness;
    HaarError(Kind k, std::vector<int> w, const std::string& msg)
        : std::runtime_error(msg), kind(k), witness(std::move(w)) {}
};

HaarSystem counting_haar(const FiniteGroupoid& g);
/// Accepts iff w > 0 and w(h*g) == w(h) on every composable pair.
HaarSystem validate_haar(const FiniteGroupoid& g, std::vector<Rational> weights);

/// Groupoid homomorphism phi: G -> H.
struct GroupoidHom {
    GroupoidHandle domain, codomain;
    std::vector<int> phi0;  // objects
    std::vector<int> phi1;  // arrows
};

/// Verifies that phi1 intertwines src, tgt, composition, units, inverses.
GroupoidHom validate_hom(GroupoidHom raw);

// ---- Example constructors. Each returns a validated groupoid with a
// ---- documented deterministic ordering, so serialized output is stable.

/// Arrows (x,y) with tgt x, src y, index x*n + y; (x,y)*(y,z) = (x,z).
FiniteGroupoid pair_groupoid(int n);

/// One object; arrows are the group elements of the Cayley table
/// (cayley[g][h] = g*h). Throws NotAGroup.
FiniteGroupoid group_groupoid(const std::vector<std::vector<int>>& cayley);

/// Action groupoid of a one-object groupoid acting on {0..n-1} via
/// act[g][x]. Arrows (g,x) with src x, tgt g.x, index g*n + x;
/// (g, h.x)*(h, x) = (g*h, x). Throws NotAnAction.
FiniteGroupoid action_groupoid(const FiniteGroupoid& group,
                               const std::vector<std::vector<int>>& act);

/// Cech groupoid of a cover of {0..n-1}. Objects are pairs (i, x in U_i)
/// ordered lexicographically; arrows are (i, j, x in U_i cap U_j) ordered
/// lexicographically, with src (j,x), tgt (i,x). Throws NotACover.
FiniteGroupoid cech_groupoid(int num_points, const std::vector<std::vector<int>>& cover);

/// Objects (x,y) index x*|H0|+y, arrows (g,h) index g*|H1|+h.
FiniteGroupoid product_groupoid(const FiniteGroupoid& g, const FiniteGroupoid& h);

/// G's ids first, then H's shifted.
FiniteGroupoid disjoint_union(const FiniteGroupoid& g, const FiniteGroupoid& h);

/// Same ids, src/tgt swapped, composition reversed.
FiniteGroupoid opposite_groupoid(const FiniteGroupoid& g);

/// Full subgroupoid over a subset of objects (sorted, deduplicated);
/// surviving arrows keep their relative order.
FiniteGroupoid full_subgroupoid(const FiniteGroupoid& g, std::vector<int> objects);

/// Finite free right action of a group (one-object groupoid) on a point
/// set, with an optional explicit projection onto a base.
struct RightGroupSet {
    GroupoidHandle group;
    int num_points = 0;
    std::vector<std::vector<int>> act;   // act[p][g] = p.g
    std::optional<std::vector<int>> base;  // point -> base index; orbits if absent
};

/// Gauge groupoid (P x P)/G of a free right group set. Arrows are orbits of
/// the diagonal action, named by their lexicographically minimal pair.
/// Throws NotFree, and NotPrincipal when an explicit base fiber is not a
/// single orbit.
FiniteGroupoid gauge_groupoid(const RightGroupSet& ps);

struct OrbitReport {
    std::vector<int> orbit_of_object;           // object -> orbit id (0-based, by min object)
    int num_orbits = 0;
    std::vector<std::vector<int>> isotropy;     // object -> arrows with src == tgt == x
};

OrbitReport orbits_and_isotropy(const FiniteGroupoid& g);

}  // namespace grpd
