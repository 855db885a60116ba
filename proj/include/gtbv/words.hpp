#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gtbv/rational.hpp"

namespace gtbv {

// One traversal step: edge index, forward or inverse.
struct Letter {
    int edge = 0;
    bool inv = false;

    auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

Letter inverse(Letter l);
Word inverse_word(const Word& w);
// Free reduction (cancels adjacent x x^{-1} pairs).
Word reduce(const Word& w);
// Cyclic reduction: free reduction plus cancellation across the wrap.
Word cyclic_reduce(Word w);

// Free homotopy class of a loop: cyclically reduced, lexicographically least
// rotation. The empty word is the trivial class.
class CyclicWord {
public:
    CyclicWord() = default;
    static CyclicWord canonicalize(const Word& w);

    const Word& word() const { return w_; }
    bool trivial() const { return w_.empty(); }
    std::size_t size() const { return w_.size(); }

    // Largest k with w = u^k; 1 for aperiodic nonempty words, 0 for trivial.
    int max_power() const;

    auto operator<=>(const CyclicWord&) const = default;

private:
    Word w_;
};

// Generator of the loop/homology coalgebra: a free loop class or a unit
// vector of H_1 (indexed over the non-tree edges of a skeleton).
struct GElem {
    enum Kind { Loop = 0, H1 = 1 };
    Kind kind = Loop;
    CyclicWord loop;
    int h1_index = 0;

    auto operator<=>(const GElem&) const = default;
};

// Strictly ascending product of odd generators; the empty monomial is the
// unit of the exterior algebra.
using WedgeMonomial = std::vector<GElem>;

// Sorts a sequence of odd generators into a canonical monomial, tracking the
// sign; returns false when a generator repeats (the product vanishes).
bool sort_wedge(WedgeMonomial& m, int& sign);

class FormalSum {
public:
    using Terms = std::map<WedgeMonomial, Rational>;

    FormalSum() = default;
    static FormalSum single(const GElem& g, const Rational& c = Rational(1));
    static FormalSum monomial(const WedgeMonomial& m, const Rational& c = Rational(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const WedgeMonomial& m, const Rational& c);

    FormalSum operator+(const FormalSum& o) const;
    FormalSum operator-(const FormalSum& o) const;
    FormalSum operator*(const Rational& c) const;
    // Exterior product with Koszul signs (every generator is odd).
    FormalSum wedge(const FormalSum& o) const;

    bool operator==(const FormalSum& o) const { return terms_ == o.terms_; }

private:
    Terms terms_;
};

// Plain tensor powers of loop classes, for the coalgebra axiom checks.
using TensorKey = std::vector<CyclicWord>;
using TensorSum = std::map<TensorKey, Rational>;
void tensor_add(TensorSum& t, const TensorKey& k, const Rational& c);

// Word parsing/printing against a table of edge names. Grammar: letters are
// edge ids, inverses marked by a trailing ' or ^-1, separated by '.' or
// whitespace; "1" denotes the empty word.
Word parse_word(const std::string& text, const std::map<std::string, int>& edge_index);
std::string word_to_string(const Word& w, const std::vector<std::string>& edge_names);

}  // namespace gtbv
