#include "gtbv/grassmann.hpp"

#include <bit>
#include <sstream>

#include "gtbv/errors.hpp"

namespace gtbv {

namespace {

int popcount_above(GrassmannElement::Mask m, int bit) {
    if (bit >= 63) return 0;
    return std::popcount(m >> (bit + 1));
}

int popcount_below(GrassmannElement::Mask m, int bit) {
    if (bit == 0) return 0;
    return std::popcount(m & ((GrassmannElement::Mask(1) << bit) - 1));
}

}  // namespace

int koszul_sign(GrassmannElement::Mask a, GrassmannElement::Mask b) {
    int swaps = 0;
    GrassmannElement::Mask rest = b;
    while (rest) {
        int bit = std::countr_zero(rest);
        rest &= rest - 1;
        swaps += popcount_above(a, bit);
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

GrassmannElement GrassmannElement::generator(int index) {
    if (index < 0 || index >= kMaxGenerators)
        throw Error(ErrorCode::GeneratorBudgetExceeded,
                    "generator index " + std::to_string(index) + " out of range");
    return monomial(Mask(1) << index, Rational(1));
}

GrassmannElement GrassmannElement::monomial(Mask mask, const Rational& coeff) {
    GrassmannElement g;
    if (coeff != 0) g.terms_[mask] = coeff;
    return g;
}

Rational GrassmannElement::coefficient(Mask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool GrassmannElement::is_even() const {
    for (const auto& [m, c] : terms_)
        if (std::popcount(m) % 2 != 0) return false;
    return true;
}

bool GrassmannElement::is_odd() const {
    for (const auto& [m, c] : terms_)
        if (std::popcount(m) % 2 == 0) return false;
    return true;
}

GrassmannElement GrassmannElement::parity_flip() const {
    GrassmannElement r;
    for (const auto& [m, c] : terms_)
        r.terms_[m] = (std::popcount(m) % 2 == 0) ? c : -c;
    return r;
}

GrassmannElement GrassmannElement::derive_left(int index) const {
    GrassmannElement r;
    Mask bit = Mask(1) << index;
    for (const auto& [m, c] : terms_) {
        if (!(m & bit)) continue;
        int sign = (popcount_below(m, index) % 2 == 0) ? 1 : -1;
        r.add_term(m & ~bit, sign > 0 ? c : -c);
    }
    return r;
}

GrassmannElement GrassmannElement::extract_pair(int p, int q) const {
    if (p >= q) throw Error(ErrorCode::BadArgument, "extract_pair needs p < q");
    GrassmannElement r;
    Mask bp = Mask(1) << p, bq = Mask(1) << q;
    Mask between = (bq - 1) & ~(bp | (bp - 1));
    for (const auto& [m, c] : terms_) {
        if ((m & bp) && (m & bq)) {
            int sign = (std::popcount(m & between) % 2 == 0) ? 1 : -1;
            r.add_term(m & ~(bp | bq), sign > 0 ? c : -c);
        }
    }
    return r;
}

void GrassmannElement::add_term(Mask mask, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(mask, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

GrassmannElement GrassmannElement::operator-() const {
    GrassmannElement r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

GrassmannElement GrassmannElement::operator+(const GrassmannElement& o) const {
    GrassmannElement r = *this;
    r += o;
    return r;
}

GrassmannElement GrassmannElement::operator-(const GrassmannElement& o) const {
    GrassmannElement r = *this;
    r -= o;
    return r;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

GrassmannElement GrassmannElement::operator*(const GrassmannElement& o) const {
    GrassmannElement r;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            if (ma & mb) continue;  // repeated generator
            int sign = koszul_sign(ma, mb);
            Rational c = ca * cb;
            r.add_term(ma | mb, sign > 0 ? c : -c);
        }
    }
    return r;
}

GrassmannElement GrassmannElement::operator*(const Rational& c) const {
    GrassmannElement r;
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
    return r;
}

GrassmannElement& GrassmannElement::operator*=(const Rational& c) {
    *this = *this * c;
    return *this;
}

std::string GrassmannElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << to_string(c);
        Mask rest = m;
        while (rest) {
            int bit = std::countr_zero(rest);
            rest &= rest - 1;
            os << "*t" << bit;
        }
    }
    return os.str();
}

}  // namespace gtbv
