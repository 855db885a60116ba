#include "gtbv/qelement.hpp"

#include <bit>

#include "gtbv/errors.hpp"

namespace gtbv {

GMatrix GMatrix::identity(std::size_t n) {
    GMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GrassmannElement::one();
    return m;
}

bool GMatrix::is_zero() const {
    for (const auto& e : a_)
        if (!e.is_zero()) return false;
    return true;
}

GrassmannElement GMatrix::trace() const {
    GrassmannElement t;
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

GMatrix GMatrix::parity_flip() const {
    GMatrix m(n_);
    for (std::size_t i = 0; i < n_ * n_; ++i) m.a_[i] = a_[i].parity_flip();
    return m;
}

std::vector<std::vector<Rational>> GMatrix::body() const {
    std::vector<std::vector<Rational>> b(n_, std::vector<Rational>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) b[i][j] = at(i, j).body();
    return b;
}

GMatrix GMatrix::operator+(const GMatrix& o) const {
    if (n_ != o.n_) throw Error(ErrorCode::DimensionMismatch, "matrix add");
    GMatrix m(n_);
    for (std::size_t i = 0; i < n_ * n_; ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

GMatrix GMatrix::operator-(const GMatrix& o) const {
    if (n_ != o.n_) throw Error(ErrorCode::DimensionMismatch, "matrix sub");
    GMatrix m(n_);
    for (std::size_t i = 0; i < n_ * n_; ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

GMatrix GMatrix::operator-() const {
    GMatrix m(n_);
    for (std::size_t i = 0; i < n_ * n_; ++i) m.a_[i] = -a_[i];
    return m;
}

GMatrix GMatrix::operator*(const GMatrix& o) const {
    if (n_ != o.n_) throw Error(ErrorCode::DimensionMismatch, "matrix mul");
    GMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const GrassmannElement& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                m.at(i, j) += aik * o.at(k, j);
            }
        }
    return m;
}

GMatrix GMatrix::scale(const GrassmannElement& s) const {
    GMatrix m(n_);
    for (std::size_t i = 0; i < n_ * n_; ++i) m.a_[i] = s * a_[i];
    return m;
}

std::vector<std::vector<Rational>> rational_matrix_inverse(
    const std::vector<std::vector<Rational>>& m) {
    std::size_t n = m.size();
    auto work = m;
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work[pivot][col] == 0) ++pivot;
        if (pivot == n) throw Error(ErrorCode::NonInvertibleBody, "singular rational matrix");
        std::swap(work[pivot], work[col]);
        std::swap(inv[pivot], inv[col]);
        Rational p = work[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            work[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || work[row][col] == 0) continue;
            Rational f = work[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                work[row][j] -= f * work[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

GMatrix GMatrix::inverse() const {
    auto binv = rational_matrix_inverse(body());
    GMatrix b_inv(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) b_inv.at(i, j) = GrassmannElement(binv[i][j]);
    // X = B(I + N) with N strictly nilpotent, so X^{-1} = (sum (-N)^k) B^{-1}.
    GMatrix nmat = b_inv * *this - identity(n_);
    GMatrix series = identity(n_);
    GMatrix power = identity(n_);
    for (int k = 1; k <= GrassmannElement::kMaxGenerators + 1; ++k) {
        power = power * nmat;
        if (power.is_zero()) break;
        if (k % 2 == 1)
            series = series - power;
        else
            series = series + power;
    }
    return series * b_inv;
}

QElement::QElement(GMatrix x, GMatrix y) : X(std::move(x)), Y(std::move(y)) {
    if (X.dim() != Y.dim()) throw Error(ErrorCode::DimensionMismatch, "QElement blocks");
}

QElement QElement::identity(std::size_t n) { return QElement(GMatrix::identity(n), GMatrix(n)); }

QElement QElement::zero(std::size_t n) { return QElement(GMatrix(n), GMatrix(n)); }

QElement QElement::even_unit(std::size_t n, std::size_t a, std::size_t b) {
    QElement e = zero(n);
    e.X.at(a, b) = GrassmannElement::one();
    return e;
}

QElement QElement::odd_unit(std::size_t n, std::size_t a, std::size_t b) {
    QElement e = zero(n);
    e.Y.at(a, b) = GrassmannElement::one();
    return e;
}

QElement QElement::operator+(const QElement& o) const { return QElement(X + o.X, Y + o.Y); }

QElement QElement::operator-(const QElement& o) const { return QElement(X - o.X, Y - o.Y); }

QElement QElement::operator-() const { return QElement(-X, -Y); }

QElement QElement::operator*(const QElement& o) const {
    // X + xi Y stands for the block matrix [[X, Y], [Y, X]]; xi = [[0, I], [I, 0]]
    // commutes with every such block matrix, so the product is the plain one.
    return QElement(X * o.X + Y * o.Y, X * o.Y + Y * o.X);
}

QElement QElement::scale(const GrassmannElement& s) const {
    return QElement(X.scale(s), Y.scale(s));
}

QElement QElement::scale(const Rational& c) const { return scale(GrassmannElement(c)); }

std::optional<int> QElement::parity() const {
    bool can_even = true, can_odd = true;
    for (std::size_t i = 0; i < X.dim(); ++i)
        for (std::size_t j = 0; j < X.dim(); ++j) {
            const auto& x = X.at(i, j);
            const auto& y = Y.at(i, j);
            if (!x.is_zero()) {
                if (!x.is_even()) can_even = false;
                if (!x.is_odd()) can_odd = false;
            }
            if (!y.is_zero()) {
                if (!y.is_odd()) can_even = false;
                if (!y.is_even()) can_odd = false;
            }
        }
    if (can_even) return 0;
    if (can_odd) return 1;
    return std::nullopt;
}

QElement QElement::inverse() const {
    // With xi central, (X + xi Y)^{-1} = U + xi V where
    // U = (X - Y X^{-1} Y)^{-1} and V = -X^{-1} Y U.
    GMatrix x_inv = X.inverse();
    GMatrix schur = X - Y * x_inv * Y;
    GMatrix u = schur.inverse();
    GMatrix v = -(x_inv * Y * u);
    return QElement(u, v);
}

QElement commutator(const QElement& a, const QElement& b) {
    auto pa = a.parity(), pb = b.parity();
    if (!pa || !pb)
        throw Error(ErrorCode::BadArgument, "graded commutator needs homogeneous arguments");
    QElement ab = a * b;
    QElement ba = b * a;
    if (*pa == 1 && *pb == 1) return ab + ba;
    return ab - ba;
}

GrassmannElement otr(const QElement& a) { return a.Y.trace(); }

GrassmannElement odet(const QElement& a) {
    GMatrix m = a.X.inverse() * a.Y;
    // Bound the series by the number of generators appearing in X^{-1}Y.
    GrassmannElement::Mask in_play = 0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            for (const auto& [mask, c] : m.at(i, j).terms()) in_play |= mask;
    int budget = std::popcount(in_play);
    GrassmannElement result;
    GMatrix power = m;
    for (int j = 1; j <= budget; ++j) {
        if (power.is_zero()) break;
        if (j % 2 == 1) result += power.trace() * Rational(1, j);
        power = power * m;
    }
    return result;
}

}  // namespace gtbv
