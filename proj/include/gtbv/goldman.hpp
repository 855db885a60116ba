#pragma once

#include <cstdint>

#include "gtbv/diagram.hpp"
#include "gtbv/skeleton.hpp"
#include "gtbv/words.hpp"

namespace gtbv {

// Loop bracket: sum over crossings of the two curves, each contributing the
// sign of the crossing times the class of the curves joined at that point.
// With keep_trivial the constant-loop class is kept as a generator;
// otherwise it is dropped (the reduced algebra).
FormalSum loop_bracket(const Skeleton& sk, const CyclicWord& x, const CyclicWord& y,
                       std::uint64_t seed, bool keep_trivial = false);

// Loop cobracket: sum over self-crossings; the crossing splits the curve
// into two loops, wedged with the factor leaving along the branch that makes
// the pair of branch directions positively oriented coming first.
FormalSum loop_cobracket(const Skeleton& sk, const CyclicWord& x, std::uint64_t seed,
                         bool keep_trivial = false);

// Same data as an antisymmetric tensor (a (x) b - b (x) a per crossing).
TensorSum loop_cobracket_tensor(const Skeleton& sk, const CyclicWord& x, std::uint64_t seed,
                                bool keep_trivial = false);

// Bracket on degree-one elements of loops and homology classes: loop-loop is
// the bracket above; a loop against a homology class scales the loop by
// their pairing; two homology classes pair onto the trivial loop (zero when
// the trivial loop is dropped).
FormalSum extended_bracket(const Skeleton& sk, const FormalSum& x, const FormalSum& y,
                           std::uint64_t seed, bool keep_trivial = false);

// Second-order coboundary operator on the exterior algebra of loops and
// homology classes, built from the bracket and the scaled cobracket.
FormalSum bv_delta_wedge(const Skeleton& sk, const FormalSum& input, std::uint64_t seed,
                         const Rational& cobracket_scale, bool keep_trivial = false);

// Defect tensors for the coalgebra axioms on the reduced loop algebra; each
// vanishes exactly when the axiom holds for the sampled class.
TensorSum cojacobi_defect(const Skeleton& sk, const CyclicWord& x, std::uint64_t seed);
TensorSum cocycle_defect(const Skeleton& sk, const CyclicWord& x, const CyclicWord& y,
                         std::uint64_t seed);
FormalSum involutivity_defect(const Skeleton& sk, const CyclicWord& x, std::uint64_t seed);

}  // namespace gtbv
