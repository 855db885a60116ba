#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gtbv/qelement.hpp"
#include "gtbv/rational.hpp"

namespace gtbv {

using Tensor1 = std::vector<Rational>;
using Tensor2 = std::vector<std::vector<Rational>>;
using Tensor3 = std::vector<std::vector<std::vector<Rational>>>;

Tensor1 make_tensor1(std::size_t d);
Tensor2 make_tensor2(std::size_t d);
Tensor3 make_tensor3(std::size_t d);

// Plain finite-dimensional Lie algebra over Q given by structure constants:
// [e_i, e_j] = sum_k bracket[i][j][k] e_k.
struct LieAlgebraData {
    std::size_t dim = 0;
    Tensor3 bracket;
};

LieAlgebraData abelian_lie(std::size_t d);
// Non-abelian 2-dim algebra [x, y] = y; its adjoint has nonzero trace.
LieAlgebraData aff1_lie();

enum class GroupKind { GL, Q, OddDouble };

// Lie algebra with an invariant nondegenerate pairing (odd or even) plus the
// derived tensors used by the bivector / BV machinery. Basis conventions:
//   GL(n): matrix units E_(ab), row-major, all even.
//   Q(n):  E_(ab) (even) then xi*E_(ab) (odd), row-major within each block.
//   OddDouble(h): h basis (even) then the dual basis of Pi h^* (odd).
struct MetricLie {
    GroupKind kind = GroupKind::GL;
    bool odd_pairing = false;
    std::size_t matrix_dim = 0;  // n for GL/Q; underlying h realization size for OddDouble
    std::size_t dim = 0;
    std::vector<int> parity;  // 0 even, 1 odd

    Tensor3 bracket;   // f^k_{ij} indexed [i][j][k]
    Tensor2 pairing;   // t_{ij} (or s_{ij})
    Tensor2 cpairing;  // inverse matrix t^{ij}

    Tensor1 nu;  // (-1)^{|e_i|} t^{ij} f^k_{ij}; zero for unimodular algebras

    // Odd case: phi^{xyz} with Delta^2 = sum_p phi^{xyz} rho(e_x)rho(e_y)rho(e_z).
    // Even case: the antisymmetric Cartan tensor f^{ijk} = f^i_{xy} s^{xj} s^{yk}.
    Tensor3 jacobiator;

    // Q(n) extras: associative product constants e_i e_j = sum assoc[i][j][k] e_k
    // and the odd-trace coefficients t_i = otr(e_i).
    bool has_assoc = false;
    Tensor3 assoc;
    Tensor1 otr_coeff;

    // Matrix realization for GL/Q basis elements.
    std::vector<QElement> basis_q;

    // For OddDouble: the input algebra h.
    LieAlgebraData h;

    std::string name;
};

MetricLie build_gl(std::size_t n);
MetricLie build_qn(std::size_t n);
// Throws Error(JacobiViolation) when h's constants fail the Jacobi identity.
MetricLie build_odd_double(const LieAlgebraData& h, const std::string& name = "odd_double");

// Structural checks shared by the builders (graded Jacobi, pairing symmetry,
// invariance, nondegeneracy). Throws on failure.
void validate_metric_lie(const MetricLie& g);

}  // namespace gtbv
