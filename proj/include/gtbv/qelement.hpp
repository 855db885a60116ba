#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gtbv/grassmann.hpp"

namespace gtbv {

// Dense square matrix with Grassmann entries, row-major.
class GMatrix {
public:
    GMatrix() : n_(0) {}
    explicit GMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static GMatrix identity(std::size_t n);

    std::size_t dim() const { return n_; }
    GrassmannElement& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const GrassmannElement& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    bool is_zero() const;
    GrassmannElement trace() const;
    GMatrix parity_flip() const;  // entrywise
    std::vector<std::vector<Rational>> body() const;

    GMatrix operator+(const GMatrix& o) const;
    GMatrix operator-(const GMatrix& o) const;
    GMatrix operator*(const GMatrix& o) const;
    GMatrix operator-() const;
    GMatrix scale(const GrassmannElement& s) const;  // left multiply entries by s

    bool operator==(const GMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

    // Exact inverse; requires the rational body to be invertible
    // (nilpotent correction handled by a terminating Neumann series).
    GMatrix inverse() const;

private:
    std::size_t n_;
    std::vector<GrassmannElement> a_;
};

// Inverse of a rational matrix by Gauss-Jordan elimination.
// Throws Error(NonInvertibleBody) when singular.
std::vector<std::vector<Rational>> rational_matrix_inverse(
    const std::vector<std::vector<Rational>>& m);

// Element X + xi*Y of Mat_n tensor R[xi]/(xi^2-1) with Grassmann coefficients.
// X + xi*Y is shorthand for the block matrix [[X, Y], [Y, X]]; xi = [[0, I], [I, 0]]
// commutes with every such block, so xi is central and products multiply plainly.
// The odd/even grading lives entirely in the Grassmann entries: even elements have
// even-degree X and odd-degree Y, odd elements the reverse.
struct QElement {
    GMatrix X, Y;

    QElement() = default;
    QElement(GMatrix x, GMatrix y);

    static QElement identity(std::size_t n);
    static QElement zero(std::size_t n);
    // Basis elements of the abstract algebra: E_{ab} and xi*E_{ab}.
    static QElement even_unit(std::size_t n, std::size_t a, std::size_t b);
    static QElement odd_unit(std::size_t n, std::size_t a, std::size_t b);

    std::size_t dim() const { return X.dim(); }

    QElement operator+(const QElement& o) const;
    QElement operator-(const QElement& o) const;
    QElement operator*(const QElement& o) const;
    QElement operator-() const;
    bool operator==(const QElement& o) const { return X == o.X && Y == o.Y; }

    bool is_zero() const { return X.is_zero() && Y.is_zero(); }

    // Left multiplication by a Grassmann scalar: lambda*(X + xi Y) =
    // (lambda X) + xi (lambda Y).
    QElement scale(const GrassmannElement& s) const;
    QElement scale(const Rational& c) const;

    // Homogeneous parity in the combined (xi, Grassmann) grading, if any.
    // 0 = even, 1 = odd.
    std::optional<int> parity() const;

    QElement inverse() const;
};

QElement commutator(const QElement& a, const QElement& b);  // graded

GrassmannElement otr(const QElement& a);  // trace of the xi part

// Sum over odd j of Tr((X^{-1} Y)^j)/j; terminates because each power raises
// the minimum Grassmann degree of the nilpotent argument.
GrassmannElement odet(const QElement& a);

}  // namespace gtbv
