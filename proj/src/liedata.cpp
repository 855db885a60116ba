#include "gtbv/liedata.hpp"

#include "gtbv/errors.hpp"

namespace gtbv {

Tensor1 make_tensor1(std::size_t d) { return Tensor1(d, Rational(0)); }

Tensor2 make_tensor2(std::size_t d) { return Tensor2(d, make_tensor1(d)); }

Tensor3 make_tensor3(std::size_t d) { return Tensor3(d, make_tensor2(d)); }

LieAlgebraData abelian_lie(std::size_t d) {
    LieAlgebraData h;
    h.dim = d;
    h.bracket = make_tensor3(d);
    return h;
}

LieAlgebraData aff1_lie() {
    LieAlgebraData h;
    h.dim = 2;
    h.bracket = make_tensor3(2);
    h.bracket[0][1][1] = 1;
    h.bracket[1][0][1] = -1;
    return h;
}

namespace {

void check_plain_jacobi(const LieAlgebraData& h) {
    std::size_t d = h.dim;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t k = 0; k < d; ++k) {
                    Rational s(0);
                    for (std::size_t m = 0; m < d; ++m) {
                        s += h.bracket[a][b][m] * h.bracket[m][c][k];
                        s += h.bracket[b][c][m] * h.bracket[m][a][k];
                        s += h.bracket[c][a][m] * h.bracket[m][b][k];
                    }
                    if (s != 0)
                        throw Error(ErrorCode::JacobiViolation,
                                    "input structure constants fail Jacobi");
                }
}

// Extract coordinates of a rational-entried QElement in the unit basis.
Tensor1 q_coordinates(const QElement& e, std::size_t n) {
    Tensor1 v = make_tensor1(2 * n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            v[a * n + b] = e.X.at(a, b).body();
            v[n * n + a * n + b] = e.Y.at(a, b).body();
        }
    return v;
}

void fill_derived_tensors(MetricLie& g) {
    std::size_t d = g.dim;
    g.cpairing = rational_matrix_inverse(g.pairing);

    g.nu = make_tensor1(d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Rational c = g.cpairing[i][j] * g.bracket[i][j][k];
                g.nu[k] += (g.parity[i] == 0) ? c : -c;
            }

    g.jacobiator = make_tensor3(d);
    if (g.odd_pairing) {
        // phi^{xyz} = ((-1)^{|e_y|}/24) t^{xj} f^y_{jk} t^{kz}
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y)
                for (std::size_t z = 0; z < d; ++z) {
                    Rational s(0);
                    for (std::size_t j = 0; j < d; ++j) {
                        if (g.cpairing[x][j] == 0) continue;
                        for (std::size_t k = 0; k < d; ++k)
                            s += g.cpairing[x][j] * g.bracket[j][k][y] * g.cpairing[k][z];
                    }
                    if (g.parity[y] == 1) s = -s;
                    g.jacobiator[x][y][z] = s / 24;
                }
    } else {
        // f^{ijk} = f^i_{xy} s^{xj} s^{yk}; here f^i_{xy} is coordinate i of [e_x,e_y].
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k) {
                    Rational s(0);
                    for (std::size_t x = 0; x < d; ++x) {
                        for (std::size_t y = 0; y < d; ++y) {
                            if (g.cpairing[x][j] == 0 || g.cpairing[y][k] == 0) continue;
                            s += g.bracket[x][y][i] * g.cpairing[x][j] * g.cpairing[y][k];
                        }
                    }
                    g.jacobiator[i][j][k] = s;
                }
    }
}

}  // namespace

MetricLie build_gl(std::size_t n) {
    MetricLie g;
    g.kind = GroupKind::GL;
    g.odd_pairing = false;
    g.matrix_dim = n;
    g.dim = n * n;
    g.parity.assign(g.dim, 0);
    g.name = "gl(" + std::to_string(n) + ")";

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) g.basis_q.push_back(QElement::even_unit(n, a, b));

    g.bracket = make_tensor3(g.dim);
    g.pairing = make_tensor2(g.dim);
    for (std::size_t i = 0; i < g.dim; ++i)
        for (std::size_t j = 0; j < g.dim; ++j) {
            QElement br = commutator(g.basis_q[i], g.basis_q[j]);
            Tensor1 v = q_coordinates(br, n);
            for (std::size_t k = 0; k < g.dim; ++k) g.bracket[i][j][k] = v[k];
            g.pairing[i][j] = (g.basis_q[i] * g.basis_q[j]).X.trace().body();
        }

    fill_derived_tensors(g);
    validate_metric_lie(g);
    return g;
}

MetricLie build_qn(std::size_t n) {
    MetricLie g;
    g.kind = GroupKind::Q;
    g.odd_pairing = true;
    g.matrix_dim = n;
    g.dim = 2 * n * n;
    g.parity.assign(g.dim, 0);
    for (std::size_t i = n * n; i < g.dim; ++i) g.parity[i] = 1;
    g.name = "q(" + std::to_string(n) + ")";

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) g.basis_q.push_back(QElement::even_unit(n, a, b));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) g.basis_q.push_back(QElement::odd_unit(n, a, b));

    g.bracket = make_tensor3(g.dim);
    g.pairing = make_tensor2(g.dim);
    g.assoc = make_tensor3(g.dim);
    g.has_assoc = true;
    g.otr_coeff = make_tensor1(g.dim);
    for (std::size_t i = 0; i < g.dim; ++i) {
        g.otr_coeff[i] = otr(g.basis_q[i]).body();
        for (std::size_t j = 0; j < g.dim; ++j) {
            QElement prod = g.basis_q[i] * g.basis_q[j];
            Tensor1 pv = q_coordinates(prod, n);
            for (std::size_t k = 0; k < g.dim; ++k) g.assoc[i][j][k] = pv[k];
            QElement br = commutator(g.basis_q[i], g.basis_q[j]);
            Tensor1 bv = q_coordinates(br, n);
            for (std::size_t k = 0; k < g.dim; ++k) g.bracket[i][j][k] = bv[k];
            g.pairing[i][j] = otr(prod).body();
        }
    }

    fill_derived_tensors(g);
    validate_metric_lie(g);
    return g;
}

MetricLie build_odd_double(const LieAlgebraData& h, const std::string& name) {
    check_plain_jacobi(h);
    std::size_t d = h.dim;
    MetricLie g;
    g.kind = GroupKind::OddDouble;
    g.odd_pairing = true;
    g.matrix_dim = 0;
    g.dim = 2 * d;
    g.parity.assign(g.dim, 0);
    for (std::size_t i = d; i < g.dim; ++i) g.parity[i] = 1;
    g.h = h;
    g.name = name;

    g.bracket = make_tensor3(g.dim);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) g.bracket[a][b][c] = h.bracket[a][b][c];
    // Coadjoint action: [x_a, phi_b] = -sum_c f^b_{ac} phi_c.
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) {
                g.bracket[a][d + b][d + c] = -h.bracket[a][c][b];
                g.bracket[d + b][a][d + c] = h.bracket[a][c][b];
            }

    g.pairing = make_tensor2(g.dim);
    for (std::size_t a = 0; a < d; ++a) {
        g.pairing[a][d + a] = 1;
        g.pairing[d + a][a] = 1;
    }

    fill_derived_tensors(g);
    validate_metric_lie(g);
    return g;
}

void validate_metric_lie(const MetricLie& g) {
    std::size_t d = g.dim;
    auto par = [&](std::size_t i) { return g.parity[i]; };

    // Bracket parity additive; pairing pairs opposite parities (odd) or equal (even).
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = 0; k < d; ++k)
                if (g.bracket[i][j][k] != 0 && par(k) != (par(i) + par(j)) % 2)
                    throw Error(ErrorCode::BadArgument, "bracket violates parity grading");
            int want = g.odd_pairing ? 1 : 0;
            if (g.pairing[i][j] != 0 && (par(i) + par(j)) % 2 != want)
                throw Error(ErrorCode::BadArgument, "pairing violates parity grading");
        }

    // Graded antisymmetry and Jacobi.
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t k = 0; k < d; ++k) {
                // [e_a,e_b] + (-1)^{|a||b|}[e_b,e_a] = 0
                Rational s = g.bracket[a][b][k];
                s += ((par(a) * par(b)) % 2 ? -g.bracket[b][a][k] : g.bracket[b][a][k]);
                if (s != 0) throw Error(ErrorCode::JacobiViolation, "graded antisymmetry fails");
            }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t k = 0; k < d; ++k) {
                    // (-1)^{|a||c|}[[a,b],c] + (-1)^{|b||a|}[[b,c],a] + (-1)^{|c||b|}[[c,a],b] = 0
                    Rational s(0);
                    for (std::size_t m = 0; m < d; ++m) {
                        Rational t1 = g.bracket[a][b][m] * g.bracket[m][c][k];
                        Rational t2 = g.bracket[b][c][m] * g.bracket[m][a][k];
                        Rational t3 = g.bracket[c][a][m] * g.bracket[m][b][k];
                        s += ((par(a) * par(c)) % 2) ? -t1 : t1;
                        s += ((par(b) * par(a)) % 2) ? -t2 : t2;
                        s += ((par(c) * par(b)) % 2) ? -t3 : t3;
                    }
                    if (s != 0) throw Error(ErrorCode::JacobiViolation, "graded Jacobi fails");
                }

    // Graded symmetry of the pairing: <x,y> = (-1)^{|x||y|}<y,x>.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Rational rhs = g.pairing[j][i];
            if ((par(i) * par(j)) % 2) rhs = -rhs;
            if (g.pairing[i][j] != rhs)
                throw Error(ErrorCode::BadArgument, "pairing not graded-symmetric");
        }

    // Invariance: <[x_i,x_j],x_k> + (-1)^{|i||j|} <x_j,[x_i,x_k]> = 0.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                Rational s(0);
                for (std::size_t m = 0; m < d; ++m) {
                    s += g.bracket[i][j][m] * g.pairing[m][k];
                    Rational t = g.bracket[i][k][m] * g.pairing[j][m];
                    s += ((par(i) * par(j)) % 2) ? -t : t;
                }
                if (s != 0) throw Error(ErrorCode::BadArgument, "pairing not invariant");
            }
}

}  // namespace gtbv
