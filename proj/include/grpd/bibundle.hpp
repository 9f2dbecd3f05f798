#pragma once

#include "grpd/groupoid.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace grpd {

struct BibundleError : std::runtime_error {
    enum class Kind {
        IndexError,
        AnchorMismatch,       // action defined on the wrong domain
        EquivarianceFailure,  // l/r of an acted point is wrong
        UnitFailure,
        AssociativityFailure,
        CommutationFailure,   // (g.p).h != g.(p.h)
        NotComposable,
        NotPrincipal,
        NotBiprincipal,
        NotEquivariant,
    };
    Kind kind;
    std::vector<int> witness;
    BibundleError(Kind k, std::vector<int> w, const std::string& msg)
        : std::runtime_error(msg), kind(k), witness(std::move(w)) {}
};

/// Finite G-H bibundle: a point set with anchors l, r and commuting partial
/// actions. lact[g][p] is defined (>= 0) exactly when src_G(g) == l[p];
/// ract[p][h] exactly when r[p] == tgt_H(h). Immutable after validation.
struct Bibundle {
    GroupoidHandle left_groupoid;   // G
    GroupoidHandle right_groupoid;  // H
    int num_points = 0;
    std::vector<int> l, r;                    // point -> object
    std::vector<std::vector<int>> lact;       // [G-arrow][point]
    std::vector<std::vector<int>> ract;       // [point][H-arrow]
};

using BibundleHandle = std::shared_ptr<const Bibundle>;

/// Brute-forces every bibundle law; throws BibundleError with the first
/// failing witness.
BibundleHandle validate_bibundle(Bibundle raw);

/// P = G1 with l = tgt, r = src and actions by composition.
BibundleHandle identity_bibundle(GroupoidHandle g);

/// P_phi = {(x, h) : phi0(x) == tgt(h)}, ordered lexicographically by (x, h);
/// g.(x,h) = (tgt g, phi1(g) h), (x,h).h' = (x, h h'). Always right principal.
BibundleHandle hom_bibundle(const GroupoidHom& phi);

/// G0 as a G-1 bibundle (left translation on the base, trivial right action).
BibundleHandle terminal_bibundle(GroupoidHandle g);

/// G0 as a G-Pair(G0) bibundle (the groupoid anchor homomorphism).
BibundleHandle anchor_bibundle(GroupoidHandle g);

/// P = {(h1,h2) : tgt h1 == tgt h2} as a G-(GxG) bibundle, ordered
/// lexicographically; g.(h1,h2) = (g h1, g h2), (h1,h2).(g1,g2) = (h1 g1, h2 g2).
BibundleHandle diagonal_bibundle(GroupoidHandle g);

/// The bibundle of the point inclusion 1 -> G at x: P = t^-1(x) with the
/// right translation action of G.
BibundleHandle point_bibundle(GroupoidHandle g, int object);

struct PrincipalityCertificate {
    bool l_surjective = false;
    std::optional<int> uncovered_object;
    bool action_free = false;                   // characteristic map injective
    std::optional<std::vector<int>> free_witness;  // (p, h1, h2) colliding
    bool fiber_transitive = false;              // characteristic map surjective
    std::optional<std::pair<int, int>> unreachable_pair;  // (p,p') with l(p)=l(p'), no h
    bool ok() const { return l_surjective && action_free && fiber_transitive; }
};

/// Checks (P1) l surjective, and builds the characteristic map
/// (p,h) -> (p, p.h) on {(p,h) : r(p) = tgt(h)}, testing injectivity (P2)
/// and surjectivity onto {(p,p') : l(p) = l(p')} (P3).
PrincipalityCertificate is_right_principal(const Bibundle& p);

struct BiprincipalityCertificate {
    PrincipalityCertificate right_side;  // of P itself
    PrincipalityCertificate left_side;   // of the swapped opposite
    bool ok() const { return right_side.ok() && left_side.ok(); }
};

BiprincipalityCertificate is_biprincipal(const Bibundle& p);

/// The swapped H-G bibundle: same points, l/r exchanged, actions through
/// inverses. Requires a biprincipal input (this is the 2-categorical
/// inverse); throws NotBiprincipal otherwise.
BibundleHandle opposite_bibundle(const BibundleHandle& p);

struct ComposedBibundle {
    BibundleHandle bundle;                       // P o_H Q as a G-K bibundle
    std::vector<std::pair<int, int>> pairs;      // fiber-product pairs (p,q), lex order
    std::vector<int> orbit_of_pair;              // pair index -> composite point
    std::vector<int> representative;             // composite point -> pair index (minimal)
    int pair_index(int p, int q) const;          // -1 when r(p) != l(q)
};

/// Composition by the diagonal quotient (p,q).h = (p.h, h^-1.q), computed
/// with union-find; representatives are minimal pair indices, so the result
/// is deterministic. P must be right principal unless permissive is set, in
/// which case the raw set quotient is computed and flagged.
ComposedBibundle compose_bibundles(const BibundleHandle& p, const BibundleHandle& q,
                                   bool permissive = false);

/// Exhaustive backtracking search (pruned by anchor signatures) for a
/// bijection commuting with l, r and both actions. nullopt is a disproof.
std::optional<std::vector<int>> find_biequivariant_iso(const Bibundle& p,
                                                       const Bibundle& q);

/// Verifies that point_map is a biequivariant bijection P -> Q; throws
/// NotEquivariant with the first failure.
void check_biequivariant(const Bibundle& p, const Bibundle& q,
                         const std::vector<int>& point_map);

}  // namespace grpd
