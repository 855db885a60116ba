#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "gtbv/errors.hpp"
#include "gtbv/goldman.hpp"
#include "gtbv/homology.hpp"
#include "gtbv/skeleton.hpp"
#include "gtbv/words.hpp"

using namespace gtbv;

namespace {

CyclicWord cw(const Skeleton& sk, const std::string& text) {
    return CyclicWord::canonicalize(parse_word(text, sk.edge_name_index()));
}

GElem loop_elem(const CyclicWord& w) { return GElem{GElem::Loop, w, 0}; }

FormalSum single_loop(const CyclicWord& w) { return FormalSum::single(loop_elem(w)); }

CyclicWord random_primitive_loop(std::mt19937_64& rng, int num_edges, int max_len) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len));
        Word w;
        while (static_cast<int>(w.size()) < len) {
            Letter l{static_cast<int>(rng() % static_cast<std::uint64_t>(num_edges)),
                     (rng() & 1) != 0};
            if (!w.empty() && w.back().edge == l.edge && w.back().inv != l.inv) continue;
            w.push_back(l);
        }
        CyclicWord c = CyclicWord::canonicalize(w);
        if (!c.trivial() && c.max_power() == 1) return c;
    }
    FAIL("could not sample a primitive loop");
    return CyclicWord{};
}

FormalSum transport_sum(const FormalSum& s, const SkeletonMoveMap& map) {
    FormalSum out;
    for (const auto& [m, c] : s.terms()) {
        WedgeMonomial nm;
        for (const GElem& g : m) {
            REQUIRE(g.kind == GElem::Loop);
            nm.push_back(loop_elem(CyclicWord::canonicalize(map.apply(g.loop.word()))));
        }
        int sign = 1;
        if (!sort_wedge(nm, sign)) continue;
        out.add(nm, c * Rational(sign));
    }
    return out;
}

}  // namespace

TEST_CASE("loop bracket joins curves at crossings") {
    Skeleton torus = Skeleton::builtin("torus");
    auto I = intersection_matrix(torus, 1);

    FormalSum br = loop_bracket(torus, cw(torus, "a"), cw(torus, "b"), 1);
    FormalSum expect = single_loop(cw(torus, "a.b")) * I[0][1];
    CHECK(br == expect);

    // Parallel curves do not meet.
    CHECK(loop_bracket(torus, cw(torus, "a"), cw(torus, "a'"), 1).is_zero());

    Skeleton pants = Skeleton::builtin("pants");
    CHECK(loop_bracket(pants, cw(pants, "a"), cw(pants, "b"), 1).is_zero());

    // Powers realize as cables; each strand crosses once.
    CHECK(loop_bracket(torus, cw(torus, "a.a"), cw(torus, "b"), 1) ==
          single_loop(cw(torus, "a.a.b")) * (I[0][1] * 2));
    CHECK(loop_bracket(torus, cw(torus, "a.a"), cw(torus, "a"), 1).is_zero());
    CHECK(loop_cobracket(torus, cw(torus, "a.a"), 1).is_zero());
}

TEST_CASE("loop bracket is antisymmetric and vanishes on equal arguments") {
    std::mt19937_64 rng(17);
    for (const char* name : {"torus", "pants"}) {
        Skeleton sk = Skeleton::builtin(name);
        for (int t = 0; t < 12; ++t) {
            CyclicWord x = random_primitive_loop(rng, 2, 4);
            CyclicWord y = random_primitive_loop(rng, 2, 4);
            FormalSum xy = loop_bracket(sk, x, y, 1);
            FormalSum yx = loop_bracket(sk, y, x, 1);
            CHECK(xy == yx * Rational(-1));
            CHECK(loop_bracket(sk, x, x, 1).is_zero());
        }
    }
}

TEST_CASE("loop bracket is independent of the realization seed") {
    std::mt19937_64 rng(23);
    for (const char* name : {"torus", "pants"}) {
        Skeleton sk = Skeleton::builtin(name);
        for (int t = 0; t < 8; ++t) {
            CyclicWord x = random_primitive_loop(rng, 2, 4);
            CyclicWord y = random_primitive_loop(rng, 2, 4);
            FormalSum base = loop_bracket(sk, x, y, 1);
            FormalSum cob = loop_cobracket(sk, x, 1);
            for (std::uint64_t seed = 2; seed <= 9; ++seed) {
                CHECK(loop_bracket(sk, x, y, seed) == base);
                CHECK(loop_cobracket(sk, x, seed) == cob);
            }
        }
    }
}

TEST_CASE("loop cobracket vanishes on simple curves") {
    Skeleton torus = Skeleton::builtin("torus");
    CHECK(loop_cobracket(torus, cw(torus, "a"), 1).is_zero());
    CHECK(loop_cobracket(torus, cw(torus, "a.b"), 1).is_zero());
    CHECK(loop_cobracket(torus, cw(torus, "a.b'"), 1).is_zero());
    // The (2,1) curve is embedded; two strands share the a band.
    CHECK(loop_cobracket(torus, cw(torus, "a.a.b"), 1).is_zero());
    // The commutator is the boundary loop; its extra crossings cancel.
    CHECK(loop_cobracket(torus, cw(torus, "a.b.a'.b'"), 1).is_zero());

    Skeleton pants = Skeleton::builtin("pants");
    CHECK(loop_cobracket(pants, cw(pants, "a"), 1).is_zero());
    // a.b is parallel to the third boundary circle.
    CHECK(loop_cobracket(pants, cw(pants, "a.b"), 1).is_zero());
}

TEST_CASE("loop cobracket splits a figure eight") {
    Skeleton pants = Skeleton::builtin("pants");
    FormalSum d = loop_cobracket(pants, cw(pants, "a.b'"), 1);
    REQUIRE(d.terms().size() == 1);
    const auto& [m, c] = *d.terms().begin();
    REQUIRE(m.size() == 2);
    WedgeMonomial expect{loop_elem(cw(pants, "a")), loop_elem(cw(pants, "b'"))};
    int sign = 1;
    REQUIRE(sort_wedge(expect, sign));
    CHECK(m == expect);
    CHECK((c == 1 || c == -1));
}

TEST_CASE("wedge cobracket is the antisymmetrized tensor cobracket") {
    std::mt19937_64 rng(31);
    for (const char* name : {"torus", "pants"}) {
        Skeleton sk = Skeleton::builtin(name);
        for (int t = 0; t < 10; ++t) {
            CyclicWord x = random_primitive_loop(rng, 2, 4);
            TensorSum ts = loop_cobracket_tensor(sk, x, 1);
            FormalSum from_tensor;
            for (const auto& [k, c] : ts) {
                WedgeMonomial m{loop_elem(k[0]), loop_elem(k[1])};
                int sign = 1;
                if (!sort_wedge(m, sign)) continue;
                from_tensor.add(m, c * Rational(sign) / Rational(2));
            }
            CHECK(from_tensor == loop_cobracket(sk, x, 1));
        }
    }
}

TEST_CASE("coalgebra axioms hold for sampled loops") {
    std::mt19937_64 rng(41);
    for (const char* name : {"torus", "pants"}) {
        Skeleton sk = Skeleton::builtin(name);
        for (int t = 0; t < 8; ++t) {
            CyclicWord x = random_primitive_loop(rng, 2, 4);
            CyclicWord y = random_primitive_loop(rng, 2, 4);
            CHECK(cojacobi_defect(sk, x, 1).empty());
            CHECK(cocycle_defect(sk, x, y, 1).empty());
            CHECK(involutivity_defect(sk, x, 1).is_zero());
        }
    }
}

TEST_CASE("loop operations transport across skeleton moves") {
    Skeleton torus = Skeleton::builtin("torus");
    MoveResult sl = slide(torus, "b-", "a");
    MoveResult rev = reverse_edge(torus, "a");

    std::mt19937_64 rng(53);
    for (int t = 0; t < 8; ++t) {
        CyclicWord x = random_primitive_loop(rng, 2, 4);
        CyclicWord y = random_primitive_loop(rng, 2, 4);
        for (const MoveResult* mv : {&sl, &rev}) {
            CyclicWord tx = CyclicWord::canonicalize(mv->map.apply(x.word()));
            CyclicWord ty = CyclicWord::canonicalize(mv->map.apply(y.word()));
            CHECK(loop_bracket(mv->target, tx, ty, 1) ==
                  transport_sum(loop_bracket(torus, x, y, 1), mv->map));
            CHECK(loop_cobracket(mv->target, tx, 1) ==
                  transport_sum(loop_cobracket(torus, x, 1), mv->map));
        }
    }

    Skeleton pants = Skeleton::builtin("pants");
    MoveResult psl = slide(pants, "b+", "a");
    CyclicWord fig = cw(pants, "a.b'");
    CyclicWord tfig = CyclicWord::canonicalize(psl.map.apply(fig.word()));
    CHECK(loop_cobracket(psl.target, tfig, 1) ==
          transport_sum(loop_cobracket(pants, fig, 1), psl.map));
}

TEST_CASE("degree-one bracket pairs loops with homology classes") {
    Skeleton torus = Skeleton::builtin("torus");
    auto I = intersection_matrix(torus, 1);
    FormalSum la = single_loop(cw(torus, "a"));
    FormalSum hb = FormalSum::single(GElem{GElem::H1, CyclicWord{}, 1});
    FormalSum ha = FormalSum::single(GElem{GElem::H1, CyclicWord{}, 0});

    // Loop against a class scales the loop by the pairing.
    CHECK(extended_bracket(torus, la, hb, 1) == la * I[0][1]);
    CHECK(extended_bracket(torus, la, ha, 1).is_zero());
    CHECK(extended_bracket(torus, hb, la, 1) == la * (-I[0][1]));

    // Two classes pair onto the trivial loop; dropped in the reduced algebra.
    CHECK(extended_bracket(torus, ha, hb, 1).is_zero());
    FormalSum kept = extended_bracket(torus, ha, hb, 1, true);
    REQUIRE(kept.terms().size() == 1);
    CHECK(kept.terms().begin()->first ==
          WedgeMonomial{GElem{GElem::Loop, CyclicWord{}, 0}});
    CHECK(kept.terms().begin()->second == I[0][1]);

    // Loop-loop reduces to the plain bracket.
    FormalSum lb = single_loop(cw(torus, "b"));
    CHECK(extended_bracket(torus, la, lb, 1) == loop_bracket(torus, cw(torus, "a"),
                                                             cw(torus, "b"), 1));

    FormalSum deg2 = la.wedge(lb);
    CHECK_THROWS_AS(extended_bracket(torus, deg2, la, 1), Error);
}

TEST_CASE("coboundary operator expands by the graded Leibniz pattern") {
    Skeleton pants = Skeleton::builtin("pants");
    CyclicWord fig = cw(pants, "a.b'");
    CyclicWord ca = cw(pants, "a");
    Rational scale(2);

    // Degree zero and one.
    CHECK(bv_delta_wedge(pants, FormalSum::monomial({}), 1, scale).is_zero());
    CHECK(bv_delta_wedge(pants, single_loop(fig), 1, scale) ==
          loop_cobracket(pants, fig, 1) * scale);

    // Degree two: bracket in front, cobrackets in place with alternating sign.
    FormalSum x = single_loop(fig);
    FormalSum y = single_loop(ca);
    FormalSum lhs = bv_delta_wedge(pants, x.wedge(y), 1, scale);
    FormalSum rhs = extended_bracket(pants, x, y, 1) +
                    (loop_cobracket(pants, fig, 1) * scale).wedge(y) -
                    x.wedge(loop_cobracket(pants, ca, 1) * scale);
    CHECK(lhs == rhs);

    // Homology generators are cocycles for the in-place expansion.
    FormalSum hb = FormalSum::single(GElem{GElem::H1, CyclicWord{}, 1});
    FormalSum lhs2 = bv_delta_wedge(pants, x.wedge(hb), 1, scale);
    FormalSum rhs2 = extended_bracket(pants, x, hb, 1) +
                     (loop_cobracket(pants, fig, 1) * scale).wedge(hb);
    CHECK(lhs2 == rhs2);
}

TEST_CASE("coboundary operator squares to zero") {
    std::mt19937_64 rng(67);
    for (const char* name : {"torus", "pants"}) {
        Skeleton sk = Skeleton::builtin(name);
        for (int t = 0; t < 6; ++t) {
            CyclicWord x = random_primitive_loop(rng, 2, 3);
            CyclicWord y = random_primitive_loop(rng, 2, 3);
            if (x == y) continue;
            FormalSum input = single_loop(x).wedge(single_loop(y));
            for (const Rational& scale : {Rational(1), Rational(2)}) {
                FormalSum once = bv_delta_wedge(sk, input, 1, scale);
                CHECK(bv_delta_wedge(sk, once, 1, scale).is_zero());
            }
        }
    }
}
