#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtbv/diagram.hpp"
#include "gtbv/moduli.hpp"

namespace gtbv {

// Linear combination of iterated half-edge derivatives. A term's slot list
// is outermost first, so composition concatenates the lists.
struct JetTerm {
    Rational coeff;
    std::vector<JetSlot> slots;
};
using JetOperator = std::vector<JetTerm>;

JetOperator operator_sum(const JetOperator& a, const JetOperator& b);
JetOperator operator_scale(const JetOperator& op, const Rational& c);
JetOperator operator_compose(const JetOperator& outer, const JetOperator& inner);

GrassmannElement apply_operator(JetEvaluator& ev, const JetOperator& op,
                                const ModuliFunction& f);

// Action of the basis direction (basis = -1: the modular direction) at one
// marked point: the sum of its derivatives over the attached half-edges.
JetOperator vertex_action(const Skeleton& sk, int vertex, int basis);

// The odd second-order operator: at every marked point half the split
// Casimir over ordered pairs of attached half-edges, plus the modular
// direction at the outgoing end of every edge, weighted by half the edge
// rotation.
JetOperator quasi_bv_operator(const Skeleton& sk, const MetricLie& lie);

// The modular part of the operator above, separately.
JetOperator quasi_bv_nu_part(const Skeleton& sk, const MetricLie& lie);

// Action of the cubic Casimir phi: sum over marked points of
// phi^{xyz} rho_p(e_x) rho_p(e_y) rho_p(e_z); the square of the operator
// above equals this action.
JetOperator casimir_cubed(const Skeleton& sk, const MetricLie& lie);

// The pairs coupling the half-edges of v1 with those of v2; together with
// the two vertex contributions this is the operator of the skeleton where
// v2 has been merged into v1.
JetOperator fusion_cross_term(const Skeleton& sk, const MetricLie& lie,
                              const std::string& v1, const std::string& v2);

// ---------------------------------------------------------------------------
// Quasi-Poisson bracket for an even metric algebra.

// {f, g}: for every marked point and pair a < b of its half-edges,
// (1/2) s^{ij} [ (e_i)_a f (e_j)_b g  -  (e_j)_b f (e_i)_a g ].
GrassmannElement fr_bracket(JetEvaluator& ev, const ModuliFunction& f,
                            const ModuliFunction& g);

// Same bracket with additional outer derivatives applied through the
// Leibniz rule (only for even directions).
GrassmannElement fr_bracket_derived(JetEvaluator& ev, const std::vector<JetSlot>& outer,
                                    const ModuliFunction& f, const ModuliFunction& g);

// {f,{g,h}} + {g,{h,f}} + {h,{f,g}}.
GrassmannElement fr_jacobiator(JetEvaluator& ev, const ModuliFunction& f,
                               const ModuliFunction& g, const ModuliFunction& h);

// (1/4) f^{ijk} sum_p rho_p(e_i) f rho_p(e_j) g rho_p(e_k) h, the expected
// value of the Jacobiator.
GrassmannElement fr_quasi_rhs(JetEvaluator& ev, const ModuliFunction& f,
                              const ModuliFunction& g, const ModuliFunction& h);

// ---------------------------------------------------------------------------
// Intersection formulas for the odd operator.

// Derived bracket Delta(fg) - Delta(f) g - (-1)^{|f|} f Delta(g).
GrassmannElement bv_antibracket(JetEvaluator& ev, const JetOperator& delta,
                                const ModuliFunction& f, const ModuliFunction& g);

// Sum over crossings of the realized system (curve i = word of atom i of f)
// of the chord-inserted function, weighted by the local half-edge pair
// reduction (interior double points contribute 1, marked-point crossings
// 1/2), plus the rotation multiples of the modular insertions. Equals the
// odd operator applied to f.
GrassmannElement intersection_delta_rhs(JetEvaluator& ev, const ModuliFunction& f,
                                        const std::vector<bool>& closed, std::uint64_t seed);

// The unreduced form of the same sum: all ordered pairs of strand ends at
// every vertex circle, plus the modular part of the operator. Used to
// cross-check the realization against the operator.
GrassmannElement halfedge_pair_rhs(JetEvaluator& ev, const ModuliFunction& f,
                                   const std::vector<bool>& closed, std::uint64_t seed);

}  // namespace gtbv
