#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "gtbv/liedata.hpp"
#include "gtbv/qelement.hpp"
#include "gtbv/skeleton.hpp"
#include "gtbv/words.hpp"

namespace gtbv {

// Element of the 1|1-dimensional affine supergroup whose Lie algebra is the
// odd double of aff(1): an even invertible matrix [[a, b], [0, 1]] together
// with an odd row vector y in the coadjoint representation. Group law:
//   (M, y) (M', y') = (M M', y . admat(M') + y').
struct AffElement {
    GMatrix m;                        // 2x2, bottom row (0, 1), even entries
    std::vector<GrassmannElement> y;  // odd row vector of size 2

    AffElement() : m(GMatrix::identity(2)), y(2) {}

    bool operator==(const AffElement& o) const { return m == o.m && y == o.y; }
};

// Matrix of Ad_M on aff(1) = span(X, Y), [X, Y] = Y, realized by X = E00,
// Y = E01. Rows/columns follow the (X, Y) basis; row vectors act from the
// left, so admat(M M') = admat(M) admat(M').
GMatrix aff_admat(const GMatrix& m);

using GroupElement = std::variant<QElement, AffElement>;

GroupElement group_identity(const MetricLie& lie);
GroupElement group_mul(const GroupElement& a, const GroupElement& b);
GroupElement group_inverse(const GroupElement& a);
bool group_equal(const GroupElement& a, const GroupElement& b);

// 1 + sign * tag * x with x = sum_i coords[i] e_i in the realization of lie;
// exact as a group element because tag squares to zero. The coordinate
// vector must be parity-homogeneous (even entries of an AffElement may not
// mix parities).
GroupElement direction_insertion(const MetricLie& lie, const Tensor1& coords,
                                 const GrassmannElement& tag, int sign);

// Unit coordinate vector for a basis direction; basis = -1 selects the
// modular direction nu.
Tensor1 direction_coords(const MetricLie& lie, int basis);
int direction_parity(const MetricLie& lie, int basis);

// A point of the representation variety: one group element per edge of the
// skeleton. Odd coordinates are distinct Grassmann generators; derived
// quantities live in the exterior algebra they span.
struct ModuliPoint {
    GroupKind kind = GroupKind::GL;
    std::size_t matrix_dim = 0;
    std::vector<GroupElement> edge_holonomy;
    int first_free_generator = 0;  // generators consumed by the point data
};

// Fresh generic point: even coordinates are uniform small rationals (the
// even body is retried until invertible), each odd coordinate is a fresh
// Grassmann generator.
ModuliPoint random_point(const Skeleton& sk, const MetricLie& lie, std::uint64_t seed);

GroupElement holonomy(const ModuliPoint& pt, const Word& w);

// Point of the target space of a skeleton move presenting the same flat
// connection: each target edge holonomy is the source holonomy of its
// backward image.
ModuliPoint transport_point(const ModuliPoint& pt, const SkeletonMoveMap& map);

// ---------------------------------------------------------------------------
// Functions on the representation variety.

enum class AtomFn {
    Tr,         // trace of the even part of the holonomy
    Otr,        // odd trace
    Odet,       // odd determinant (its additive logarithm)
    Logdet,     // nilpotent part of log det; only derivatives are defined
    EntryEven,  // single even matrix entry (row, col)
    EntryOdd,   // single odd entry (row, col); for AffElement, y[col]
};

struct Atom {
    AtomFn fn = AtomFn::Tr;
    Word word;  // holonomy argument
    int row = 0;
    int col = 0;

    auto operator<=>(const Atom&) const = default;
};

int atom_parity(const Atom& a);

// Insertion of the split Casimir along a chord between two points on the
// realized curves: sum over the basis of (-1)^{|e_i|} t^{ij} with e_i
// inserted at letter boundary pos1 of atoms[atom1] and e_j, transported by
// the holonomy of via, at pos2 of atoms[atom2]. orientation = -1 applies
// the reversed chord.
struct ChordSpec {
    int atom1 = 0;
    int pos1 = 0;
    int atom2 = 0;
    int pos2 = 0;
    Word via;
    int orientation = 1;
};

// Fixed insertion of the modular direction nu at a letter boundary.
struct NuSpec {
    int atom = 0;
    int pos = 0;
};

// Scalar multiple of a product of atoms, optionally carrying chord and
// modular insertions. The product is taken in atom order.
struct ModuliFunction {
    Rational coeff = Rational(1);
    std::vector<Atom> atoms;
    std::vector<ChordSpec> chords;
    std::vector<NuSpec> nu_legs;
};

ModuliFunction fn_const(const Rational& c);
ModuliFunction fn_atom(AtomFn fn, const Word& w, int row = 0, int col = 0);
ModuliFunction fn_product(const ModuliFunction& a, const ModuliFunction& b);

int function_parity(const ModuliFunction& f, const MetricLie& lie);

// Substitutes every word of f through a skeleton move map. Only defined for
// functions without positional insertions.
ModuliFunction transport_function(const ModuliFunction& f, const SkeletonMoveMap& map);

// One first-order derivative: the left-invariant derivative along basis
// direction `basis` when the slot sits at the tail end of the edge, minus
// the right-invariant one at the head end. basis = -1 is the modular
// direction nu.
struct JetSlot {
    int edge = 0;
    bool at_head = false;
    int basis = 0;

    auto operator<=>(const JetSlot&) const = default;
};

// Evaluates iterated derivatives of functions at a fixed point by exact
// nilpotent perturbation: every slot contributes a tag (a fresh odd
// generator, or a pair for even directions) multiplying its direction, the
// holonomies are perturbed accordingly, and the tags are extracted from the
// resulting exterior-algebra value innermost first.
class JetEvaluator {
public:
    JetEvaluator(const Skeleton& sk, const MetricLie& lie, const ModuliPoint& pt);

    // Derivative of f along the listed slots (outermost first) at the point.
    // Products of atoms are expanded by the graded Leibniz rule over cached
    // single-atom jets; functions with positional insertions are evaluated
    // in one piece.
    GrassmannElement eval(const ModuliFunction& f, const std::vector<JetSlot>& slots);

    // Single-pass evaluation without the Leibniz expansion; used to
    // cross-check the product rule.
    GrassmannElement eval_direct(const ModuliFunction& f, const std::vector<JetSlot>& slots);

    const Skeleton& skeleton() const { return sk_; }
    const MetricLie& lie() const { return lie_; }
    const ModuliPoint& point() const { return pt_; }

private:
    GrassmannElement eval_atom(const Atom& a, const std::vector<JetSlot>& slots);
    GrassmannElement eval_core(const std::vector<Atom>& atoms, const Rational& coeff,
                               const std::vector<ChordSpec>& chords,
                               const std::vector<NuSpec>& nu_legs,
                               const std::vector<JetSlot>& slots);
    const GroupElement& plain_inverse(int edge);

    const Skeleton& sk_;
    const MetricLie& lie_;
    const ModuliPoint& pt_;

    std::map<int, GroupElement> inv_cache_;
    std::map<std::pair<Atom, std::vector<JetSlot>>, GrassmannElement> cache_;
};

}  // namespace gtbv
