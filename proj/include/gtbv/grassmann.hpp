#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gtbv/rational.hpp"

namespace gtbv {

// Element of the exterior algebra over Q on generators theta_0..theta_63.
// A monomial is the ascending product of the generators in its bitmask, so
// theta_1 theta_0 is stored as {0,1} with coefficient -1.
class GrassmannElement {
public:
    static constexpr int kMaxGenerators = 64;

    using Mask = std::uint64_t;
    using Terms = std::map<Mask, Rational>;

    GrassmannElement() = default;
    explicit GrassmannElement(const Rational& c) {
        if (c != 0) terms_[0] = c;
    }

    static GrassmannElement zero() { return GrassmannElement(); }
    static GrassmannElement one() { return GrassmannElement(Rational(1)); }
    static GrassmannElement generator(int index);
    static GrassmannElement monomial(Mask mask, const Rational& coeff);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Coefficient of the (ascending) monomial with the given mask.
    Rational coefficient(Mask mask) const;
    Rational body() const { return coefficient(0); }

    // True when every term has even (resp. odd) generator degree.
    bool is_even() const;
    bool is_odd() const;

    // Multiplies each term by (-1)^degree; implements moving an odd symbol
    // across the element.
    GrassmannElement parity_flip() const;

    // Left derivative d/d theta_index: moves theta_index to the front of each
    // containing monomial (with sign) and cancels it.
    GrassmannElement derive_left(int index) const;

    // Coefficient of the even block theta_p theta_q (p < q): picks the terms
    // containing both generators, signs them by the generators strictly
    // between p and q, and removes the pair.
    GrassmannElement extract_pair(int p, int q) const;

    GrassmannElement operator-() const;
    GrassmannElement operator+(const GrassmannElement& o) const;
    GrassmannElement operator-(const GrassmannElement& o) const;
    GrassmannElement operator*(const GrassmannElement& o) const;
    GrassmannElement operator*(const Rational& c) const;
    GrassmannElement& operator+=(const GrassmannElement& o);
    GrassmannElement& operator-=(const GrassmannElement& o);
    GrassmannElement& operator*=(const Rational& c);

    bool operator==(const GrassmannElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const GrassmannElement& o) const { return terms_ != o.terms_; }

    std::string str() const;

private:
    void add_term(Mask mask, const Rational& coeff);

    Terms terms_;
};

inline GrassmannElement operator*(const Rational& c, const GrassmannElement& g) { return g * c; }

// Koszul sign (-1)^{#{(a,b) in A x B : a > b}} for disjoint masks.
int koszul_sign(GrassmannElement::Mask a, GrassmannElement::Mask b);

}  // namespace gtbv
