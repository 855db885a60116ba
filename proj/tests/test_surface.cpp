#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtbv/diagram.hpp"
#include "gtbv/errors.hpp"
#include "gtbv/homology.hpp"
#include "gtbv/skeleton.hpp"
#include "gtbv/words.hpp"

using namespace gtbv;

namespace {

Word W(std::initializer_list<std::pair<int, bool>> ls) {
    Word w;
    for (auto [e, i] : ls) w.push_back(Letter{e, i});
    return w;
}

Word parse_on(const Skeleton& sk, const std::string& text) {
    return parse_word(text, sk.edge_name_index());
}

Word random_reduced_word(std::mt19937_64& rng, int num_edges, int len) {
    Word w;
    while (static_cast<int>(w.size()) < len) {
        Letter l{static_cast<int>(rng() % static_cast<std::uint64_t>(num_edges)),
                 (rng() & 1) != 0};
        if (!w.empty() && w.back().edge == l.edge && w.back().inv != l.inv) continue;
        w.push_back(l);
    }
    return w;
}

}  // namespace

TEST_CASE("word reduction cancels adjacent and wrapped inverse pairs") {
    CHECK(reduce(W({{0, false}, {0, true}, {1, false}})) == W({{1, false}}));
    CHECK(reduce(W({{0, false}, {1, false}, {1, true}, {0, true}, {2, false}})) ==
          W({{2, false}}));
    CHECK(reduce(Word{}).empty());
    CHECK(cyclic_reduce(W({{0, false}, {1, false}, {0, true}})) == W({{1, false}}));
    CHECK(inverse_word(W({{0, false}, {1, true}})) == W({{1, false}, {0, true}}));
}

TEST_CASE("cyclic words canonicalize rotations and detect powers") {
    Word ab = W({{0, false}, {1, false}});
    Word ba = W({{1, false}, {0, false}});
    CHECK(CyclicWord::canonicalize(ab) == CyclicWord::canonicalize(ba));
    CHECK(CyclicWord::canonicalize(ab) != CyclicWord::canonicalize(inverse_word(ab)));
    CHECK(CyclicWord::canonicalize(W({{0, false}, {0, true}})).trivial());
    CHECK(CyclicWord::canonicalize(ab).max_power() == 1);
    CHECK(CyclicWord::canonicalize(W({{0, false}, {1, false}, {0, false}, {1, false}}))
              .max_power() == 2);
    CHECK(CyclicWord::canonicalize(W({{0, false}, {0, false}, {0, false}})).max_power() == 3);
    CHECK(CyclicWord().max_power() == 0);
}

TEST_CASE("word parsing and printing round trip") {
    Skeleton torus = Skeleton::builtin("torus");
    auto names = torus.edge_names();
    auto index = torus.edge_name_index();

    CHECK(parse_word("a.b'", index) == W({{0, false}, {1, true}}));
    CHECK(parse_word("a b^-1 a", index) == W({{0, false}, {1, true}, {0, false}}));
    CHECK(parse_word("1", index).empty());
    CHECK(word_to_string(W({{0, false}, {1, true}}), names) == "a.b'");
    CHECK(word_to_string(Word{}, names) == "1");

    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        Word w = random_reduced_word(rng, 2, 1 + static_cast<int>(rng() % 5));
        CHECK(parse_word(word_to_string(w, names), index) == w);
    }

    CHECK_THROWS_AS(parse_word("a.z", index), ParseError);
}

TEST_CASE("wedge monomials sort with signs and kill repeats") {
    GElem x{GElem::Loop, CyclicWord::canonicalize(W({{0, false}})), 0};
    GElem y{GElem::Loop, CyclicWord::canonicalize(W({{1, false}})), 0};
    REQUIRE(x < y);

    WedgeMonomial m{y, x};
    int sign = 1;
    CHECK(sort_wedge(m, sign));
    CHECK(m == WedgeMonomial{x, y});
    CHECK(sign == -1);

    WedgeMonomial rep{x, x};
    sign = 1;
    CHECK_FALSE(sort_wedge(rep, sign));

    FormalSum fx = FormalSum::single(x);
    FormalSum fy = FormalSum::single(y);
    CHECK(fx.wedge(fy) == fy.wedge(fx) * Rational(-1));
    CHECK(fx.wedge(fx).is_zero());
}

TEST_CASE("builtin surfaces report genus and boundary") {
    auto info = Skeleton::builtin("torus").surface_info();
    CHECK(info.genus == 1);
    CHECK(info.boundary_components == 1);
    CHECK(info.euler_characteristic == -1);

    info = Skeleton::builtin("pants").surface_info();
    CHECK(info.genus == 0);
    CHECK(info.boundary_components == 3);
    CHECK(info.euler_characteristic == -1);

    info = Skeleton::builtin("genus2").surface_info();
    CHECK(info.genus == 2);
    CHECK(info.boundary_components == 1);
    CHECK(info.euler_characteristic == -3);

    CHECK_THROWS_AS(Skeleton::builtin("sphere"), Error);
}

TEST_CASE("skeleton JSON round trip and validation") {
    for (const char* name : {"torus", "pants", "genus2"}) {
        Skeleton sk = Skeleton::builtin(name);
        Skeleton back = Skeleton::from_json_text(sk.to_json_text());
        CHECK(back.to_json_text() == sk.to_json_text());
        CHECK(back.vertex_halfedges() == sk.vertex_halfedges());
    }

    CHECK_THROWS_AS(Skeleton::from_json_text("not json"), ParseError);
    CHECK_THROWS_AS(Skeleton::from_json_text("{\"vertices\": 3}"), Error);
    // A half-edge placed at a vertex but not used by any edge.
    CHECK_THROWS_AS(
        Skeleton::from_json_text(R"({"vertices":[{"id":"v","halfedges":["a+","a-","x"]}],)"
                                 R"("edges":[{"id":"a","tail":"a+","head":"a-"}]})"),
        Error);
    // An edge whose half-edge is never placed.
    CHECK_THROWS_AS(
        Skeleton::from_json_text(R"({"vertices":[{"id":"v","halfedges":["a+"]}],)"
                                 R"("edges":[{"id":"a","tail":"a+","head":"a-"}]})"),
        Error);

    Skeleton torus = Skeleton::builtin("torus");
    CHECK(torus.edge_index("a") == 0);
    CHECK_THROWS_AS(torus.edge_index("zz"), Error);
    CHECK_THROWS_AS(torus.vertex_index("zz"), Error);
    CHECK(torus.halfedge("b-").edge == 1);
    CHECK(torus.halfedge("b-").at_head);
    CHECK(torus.halfedge_position("a-") == 2);
    CHECK(torus.tail_vertex(0) == 0);
}

TEST_CASE("taut path rotation counts vertex half-turns") {
    Skeleton torus = Skeleton::builtin("torus");

    CHECK(torus.path_rotation2(parse_on(torus, "a"), true) == 1);
    CHECK(torus.path_rotation2(parse_on(torus, "b"), true) == 1);
    CHECK(torus.path_rotation2(parse_on(torus, "a.b"), true) == 2);
    CHECK(torus.path_rotation2(parse_on(torus, "a.b'"), true) == 0);
    CHECK(torus.path_rotation2(parse_on(torus, "a'.b'"), true) == -2);

    // Open paths skip the wrap-around turn.
    CHECK(torus.path_rotation2(parse_on(torus, "a"), false) == 0);
    CHECK(torus.path_rotation2(parse_on(torus, "a.b"), false) == 1);

    // Reversing a loop reverses the winding.
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
        Word w = cyclic_reduce(random_reduced_word(rng, 2, 2 + static_cast<int>(rng() % 4)));
        if (w.empty()) continue;
        CHECK(torus.path_rotation2(w, true) == -torus.path_rotation2(inverse_word(w), true));
    }

    // Edge rotation numbers enter with the traversal direction.
    Skeleton twisted = Skeleton::from_json_text(
        R"({"vertices":[{"id":"v","halfedges":["a+","b+","a-","b-"]}],)"
        R"("edges":[{"id":"a","tail":"a+","head":"a-","rot2":3},)"
        R"({"id":"b","tail":"b+","head":"b-","rot2":0}]})");
    CHECK(twisted.path_rotation2(parse_on(twisted, "a"), true) == 4);
    CHECK(twisted.path_rotation2(parse_on(twisted, "a'"), true) == -4);

    CHECK_THROWS_AS(torus.path_rotation2(W({{0, false}, {0, true}}), false), Error);
}

TEST_CASE("composability checks see shared vertices") {
    // Two vertices joined by two parallel edges.
    Skeleton theta = Skeleton::from_json_text(
        R"({"vertices":[{"id":"u","halfedges":["e+","f+"]},{"id":"w","halfedges":["e-","f-"]}],)"
        R"("edges":[{"id":"e","tail":"e+","head":"e-"},{"id":"f","tail":"f+","head":"f-"}]})");
    Word ef_inv = W({{0, false}, {1, true}});
    CHECK_NOTHROW(theta.check_composable(ef_inv, true));
    CHECK_THROWS_AS(theta.check_composable(W({{0, false}, {1, false}}), false), Error);
    CHECK_NOTHROW(theta.check_composable(ef_inv, false));
    CHECK(theta.word_start_vertex(ef_inv) == 0);
    CHECK(theta.word_end_vertex(ef_inv) == 0);
    CHECK(theta.word_end_vertex(W({{0, false}})) == 1);
}

TEST_CASE("edge reversal and slides transport words") {
    Skeleton torus = Skeleton::builtin("torus");

    MoveResult rev = reverse_edge(torus, "a");
    CHECK(rev.target.edge(0).tail_he == "a-");
    CHECK(rev.target.edge(0).head_he == "a+");
    CHECK(rev.map.apply(parse_on(torus, "a.b")) == parse_on(torus, "a'.b"));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        Word w = random_reduced_word(rng, 2, 1 + static_cast<int>(rng() % 5));
        CHECK(rev.map.unapply(rev.map.apply(w)) == reduce(w));
    }

    // Sliding the head of b along a is the unique unambiguous slide here.
    MoveResult sl = slide(torus, "b-", "a");
    CHECK(sl.target.vertex_halfedges()[0] ==
          std::vector<std::string>{"b-", "a+", "b+", "a-"});
    CHECK(sl.target.edge(1).rot2 == 1);
    CHECK(sl.target.surface_info().genus == 1);
    CHECK(sl.target.surface_info().boundary_components == 1);
    CHECK(sl.map.apply(parse_on(torus, "b")) == parse_on(torus, "b.a"));
    for (int t = 0; t < 20; ++t) {
        Word w = random_reduced_word(rng, 2, 1 + static_cast<int>(rng() % 5));
        CHECK(sl.map.unapply(sl.map.apply(w)) == reduce(w));
        CHECK(sl.map.apply(sl.map.unapply(w)) == reduce(w));
    }

    // Transport preserves the taut rotation of closed loops.
    for (int t = 0; t < 25; ++t) {
        Word w = cyclic_reduce(random_reduced_word(rng, 2, 2 + static_cast<int>(rng() % 4)));
        if (w.empty()) continue;
        Word moved = cyclic_reduce(sl.map.apply(w));
        if (moved.empty()) continue;
        CHECK(torus.path_rotation2(w, true) == sl.target.path_rotation2(moved, true));
    }

    CHECK_THROWS_AS(slide(torus, "a+", "a"), Error);   // along its own edge
    CHECK_THROWS_AS(slide(torus, "b+", "a"), Error);   // both ends adjacent
    CHECK_THROWS_AS(slide(torus, "b-", "zz"), Error);  // unknown edge

    // Composition of the two move maps.
    SkeletonMoveMap both = rev.map.then(slide(rev.target, "b-", "a").map);
    for (int t = 0; t < 10; ++t) {
        Word w = random_reduced_word(rng, 2, 1 + static_cast<int>(rng() % 5));
        CHECK(both.unapply(both.apply(w)) == reduce(w));
    }
}

TEST_CASE("vertex fusion glues surfaces") {
    Skeleton torus = Skeleton::builtin("torus");
    Skeleton other = Skeleton::from_json_text(
        R"({"vertices":[{"id":"w0","halfedges":["c+","d+","c-","d-"]}],)"
        R"("edges":[{"id":"c","tail":"c+","head":"c-"},{"id":"d","tail":"d+","head":"d-"}]})");

    Skeleton both = disjoint_union(torus, other);
    CHECK(both.num_vertices() == 2);
    CHECK(both.num_edges() == 4);
    CHECK_FALSE(both.connected());
    CHECK_THROWS_AS(both.surface_info(), Error);

    MoveResult fused = fuse(both, "v0", "w0");
    CHECK(fused.target.num_vertices() == 1);
    CHECK(fused.target.vertex_halfedges()[0] ==
          std::vector<std::string>{"a+", "b+", "a-", "b-", "c+", "d+", "c-", "d-"});
    auto info = fused.target.surface_info();
    CHECK(info.genus == 2);
    CHECK(info.boundary_components == 1);

    CHECK_THROWS_AS(fuse(both, "v0", "v0"), Error);
    CHECK_THROWS_AS(disjoint_union(torus, torus), Error);
}

TEST_CASE("homology basis classes and representatives") {
    Skeleton torus = Skeleton::builtin("torus");
    HomologyBasis h(torus);
    CHECK(h.dim() == 2);
    CHECK(h.cls(parse_on(torus, "a.b")) == std::vector<Rational>{Rational(1), Rational(1)});
    CHECK(h.cls(parse_on(torus, "a.b.a'.b'")) ==
          std::vector<Rational>{Rational(0), Rational(0)});

    CHECK(HomologyBasis(Skeleton::builtin("pants")).dim() == 2);
    CHECK(HomologyBasis(Skeleton::builtin("genus2")).dim() == 4);

    // Two-vertex surface: the spanning tree absorbs one edge.
    Skeleton theta = Skeleton::from_json_text(
        R"({"vertices":[{"id":"u","halfedges":["e+","f+","g+"]},)"
        R"({"id":"w","halfedges":["e-","f-","g-"]}],)"
        R"("edges":[{"id":"e","tail":"e+","head":"e-"},{"id":"f","tail":"f+","head":"f-"},)"
        R"({"id":"g","tail":"g+","head":"g-"}]})");
    HomologyBasis ht(theta);
    CHECK(ht.dim() == 2);
    int tree_edges = 0;
    for (int e = 0; e < 3; ++e) tree_edges += ht.in_tree(e) ? 1 : 0;
    CHECK(tree_edges == 1);

    std::mt19937_64 rng(5);
    for (const Skeleton* skp : {&torus, &theta}) {
        HomologyBasis hb(*skp);
        for (int i = 0; i < hb.dim(); ++i) {
            Word rep = hb.representative(i);
            skp->check_composable(rep, true);
            std::vector<Rational> unit(static_cast<std::size_t>(hb.dim()), Rational(0));
            unit[static_cast<std::size_t>(i)] = Rational(1);
            CHECK(hb.cls(rep) == unit);
        }
        for (int t = 0; t < 10; ++t) {
            std::vector<Rational> v;
            for (int i = 0; i < hb.dim(); ++i) {
                v.push_back(Rational(static_cast<int>(rng() % 5) - 2));
            }
            Word rep = hb.representative(v);
            if (rep.empty()) continue;
            skp->check_composable(rep, true);
            CHECK(hb.cls(rep) == v);
        }
    }
}

TEST_CASE("intersection pairings are antisymmetric and seed independent") {
    Skeleton torus = Skeleton::builtin("torus");
    auto m = intersection_matrix(torus, 1);
    REQUIRE(m.size() == 2);
    CHECK(m[0][0] == 0);
    CHECK(m[1][1] == 0);
    CHECK(m[0][1] == -m[1][0]);
    CHECK((m[0][1] == 1 || m[0][1] == -1));
    for (std::uint64_t seed = 2; seed < 8; ++seed) {
        CHECK(intersection_matrix(torus, seed) == m);
    }

    // The two handle loops of the pair of pants are disjoint.
    auto mp = intersection_matrix(Skeleton::builtin("pants"), 1);
    CHECK(mp[0][1] == 0);
    CHECK(mp[1][0] == 0);

    // Genus two: symplectic pairs, zero across the handles.
    auto m2 = intersection_matrix(Skeleton::builtin("genus2"), 1);
    REQUIRE(m2.size() == 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(m2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                  -m2[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
        }
    }
    CHECK(m2[0][1] == m2[2][3]);
    CHECK((m2[0][1] == 1 || m2[0][1] == -1));
    CHECK(m2[0][2] == 0);
    CHECK(m2[0][3] == 0);
    CHECK(m2[1][2] == 0);
    CHECK(m2[1][3] == 0);

    // Bilinearity of the pairing on classes.
    HomologyBasis h(torus);
    std::vector<Rational> u{Rational(2), Rational(-1)};
    std::vector<Rational> v{Rational(1), Rational(3)};
    Rational expect = (u[0] * v[1] - u[1] * v[0]) * m[0][1];
    CHECK(intersection_pairing(torus, u, v, 1) == expect);
}

TEST_CASE("realized diagrams are deterministic with ordered crossings") {
    Skeleton torus = Skeleton::builtin("torus");

    std::vector<Word> words{parse_on(torus, "a"), parse_on(torus, "b")};
    LoopSystem sys = realize(torus, words, {true, true}, 1);
    REQUIRE(sys.passages.size() == 2);
    CHECK(sys.crossings.size() == 1);
    CHECK(sys.crossings[0].p1 < sys.crossings[0].p2);
    CHECK((sys.crossings[0].sign == 1 || sys.crossings[0].sign == -1));
    CHECK_FALSE(sys.crossings[0].boundary);

    // The taut loop a.b is simple.
    LoopSystem simple = realize(torus, {parse_on(torus, "a.b")}, {true}, 1);
    CHECK(simple.crossings.empty());
    CHECK(simple.passages.size() == 2);
    for (int p : simple.passages_of(0)) {
        CHECK_FALSE(sys.passages[static_cast<std::size_t>(p)].terminal());
    }

    // Re-realization with the same seed is bytewise identical.
    std::vector<Word> sysw{parse_on(torus, "a.b'"), parse_on(torus, "a.a.b")};
    for (std::uint64_t seed : {1ull, 2ull, 9ull}) {
        LoopSystem s1 = realize(torus, sysw, {true, true}, seed);
        LoopSystem s2 = realize(torus, sysw, {true, true}, seed);
        REQUIRE(s1.crossings.size() == s2.crossings.size());
        for (std::size_t i = 0; i < s1.crossings.size(); ++i) {
            CHECK(s1.crossings[i].p1 == s2.crossings[i].p1);
            CHECK(s1.crossings[i].p2 == s2.crossings[i].p2);
            CHECK(s1.crossings[i].sign == s2.crossings[i].sign);
        }
    }

    // Open paths end at the vertex marked point.
    LoopSystem open_sys = realize(torus, {parse_on(torus, "a")}, {false}, 1);
    REQUIRE(open_sys.passages.size() == 2);
    CHECK(open_sys.passages[0].start_terminal);
    CHECK(open_sys.passages[1].end_terminal);
    CHECK(open_sys.passages[0].gap_pos >= 0);
    for (const Crossing& c : open_sys.crossings) {
        bool both_terminal = open_sys.passages[static_cast<std::size_t>(c.p1)].terminal() &&
                             open_sys.passages[static_cast<std::size_t>(c.p2)].terminal();
        CHECK(c.boundary == both_terminal);
    }

    // Closed inputs must be cyclically reduced; powers cable through the bands.
    CHECK_THROWS_AS(realize(torus, {W({{0, false}, {0, true}})}, {true}, 1), Error);
    LoopSystem cable =
        realize(torus, {W({{0, false}, {1, false}, {0, false}, {1, false}})}, {true}, 1);
    CHECK(cable.passages.size() == 4);
}
