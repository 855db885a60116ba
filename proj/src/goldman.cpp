#include "gtbv/goldman.hpp"

#include "gtbv/errors.hpp"
#include "gtbv/homology.hpp"

namespace gtbv {

namespace {

Word rotate_word(const Word& w, int b) {
    Word out;
    const int k = static_cast<int>(w.size());
    out.reserve(w.size());
    for (int i = 0; i < k; ++i) out.push_back(w[static_cast<std::size_t>((b + i) % k)]);
    return out;
}

// Cyclic slice [from, to) of a closed word.
Word cyclic_slice(const Word& w, int from, int to) {
    Word out;
    const int k = static_cast<int>(w.size());
    int len = (to - from + k) % k;
    for (int i = 0; i < len; ++i) out.push_back(w[static_cast<std::size_t>((from + i) % k)]);
    return out;
}

struct SplitPair {
    CyclicWord first;
    CyclicWord second;
};

// Resolves the self-crossing of `w` between passages at boundaries b1, b2,
// with (b1, b2) already ordered so their branch pair is positive.
SplitPair split_at(const Word& w, int b1, int b2) {
    SplitPair s;
    s.first = CyclicWord::canonicalize(cyclic_slice(w, b1, b2));
    s.second = CyclicWord::canonicalize(cyclic_slice(w, b2, b1));
    return s;
}

}  // namespace

FormalSum loop_bracket(const Skeleton& sk, const CyclicWord& x, const CyclicWord& y,
                       std::uint64_t seed, bool keep_trivial) {
    LoopSystem sys = realize(sk, {x.word(), y.word()}, {true, true}, seed);
    FormalSum out;
    for (const Crossing& c : sys.crossings) {
        const Passage& a = sys.passages[static_cast<std::size_t>(c.p1)];
        const Passage& b = sys.passages[static_cast<std::size_t>(c.p2)];
        if (a.word == b.word) continue;
        // Passages are grouped by word, so a is on x and b on y.
        Word merged = rotate_word(x.word(), a.boundary);
        Word m2 = rotate_word(y.word(), b.boundary);
        merged.insert(merged.end(), m2.begin(), m2.end());
        CyclicWord cls = CyclicWord::canonicalize(merged);
        if (cls.trivial() && !keep_trivial) continue;
        out.add(WedgeMonomial{GElem{GElem::Loop, cls, 0}}, Rational(c.sign));
    }
    return out;
}

namespace {

template <typename Emit>
void for_each_self_crossing(const Skeleton& sk, const CyclicWord& x, std::uint64_t seed,
                            Emit&& emit) {
    LoopSystem sys = realize(sk, {x.word()}, {true}, seed);
    for (const Crossing& c : sys.crossings) {
        const Passage& a = sys.passages[static_cast<std::size_t>(c.p1)];
        const Passage& b = sys.passages[static_cast<std::size_t>(c.p2)];
        int b1 = a.boundary;
        int b2 = b.boundary;
        if (c.sign < 0) std::swap(b1, b2);
        emit(split_at(x.word(), b1, b2));
    }
}

}  // namespace

FormalSum loop_cobracket(const Skeleton& sk, const CyclicWord& x, std::uint64_t seed,
                         bool keep_trivial) {
    FormalSum out;
    for_each_self_crossing(sk, x, seed, [&](const SplitPair& s) {
        if (!keep_trivial && (s.first.trivial() || s.second.trivial())) return;
        out.add(WedgeMonomial{GElem{GElem::Loop, s.first, 0}, GElem{GElem::Loop, s.second, 0}},
                Rational(1));
    });
    return out;
}

TensorSum loop_cobracket_tensor(const Skeleton& sk, const CyclicWord& x, std::uint64_t seed,
                                bool keep_trivial) {
    TensorSum out;
    for_each_self_crossing(sk, x, seed, [&](const SplitPair& s) {
        if (!keep_trivial && (s.first.trivial() || s.second.trivial())) return;
        tensor_add(out, {s.first, s.second}, Rational(1));
        tensor_add(out, {s.second, s.first}, Rational(-1));
    });
    return out;
}

FormalSum extended_bracket(const Skeleton& sk, const FormalSum& x, const FormalSum& y,
                           std::uint64_t seed, bool keep_trivial) {
    HomologyBasis basis(sk);
    auto I = intersection_matrix(sk, seed);
    FormalSum out;
    for (const auto& [mx, cx] : x.terms()) {
        if (mx.size() != 1) {
            throw Error(ErrorCode::BadArgument, "bracket arguments must be degree-one");
        }
        for (const auto& [my, cy] : y.terms()) {
            if (my.size() != 1) {
                throw Error(ErrorCode::BadArgument, "bracket arguments must be degree-one");
            }
            const GElem& g = mx[0];
            const GElem& h = my[0];
            const Rational c = cx * cy;
            if (g.kind == GElem::Loop && h.kind == GElem::Loop) {
                out = out + loop_bracket(sk, g.loop, h.loop, seed, keep_trivial) * c;
            } else if (g.kind == GElem::Loop && h.kind == GElem::H1) {
                std::vector<Rational> cls = basis.cls(g.loop.word());
                Rational pair(0);
                for (std::size_t i = 0; i < cls.size(); ++i) {
                    pair += cls[i] * I[i][static_cast<std::size_t>(h.h1_index)];
                }
                out.add(WedgeMonomial{g}, c * pair);
            } else if (g.kind == GElem::H1 && h.kind == GElem::Loop) {
                std::vector<Rational> cls = basis.cls(h.loop.word());
                Rational pair(0);
                for (std::size_t i = 0; i < cls.size(); ++i) {
                    pair += cls[i] * I[i][static_cast<std::size_t>(g.h1_index)];
                }
                out.add(WedgeMonomial{h}, -c * pair);
            } else {
                if (keep_trivial) {
                    Rational pair = I[static_cast<std::size_t>(g.h1_index)]
                                     [static_cast<std::size_t>(h.h1_index)];
                    out.add(WedgeMonomial{GElem{GElem::Loop, CyclicWord{}, 0}}, c * pair);
                }
            }
        }
    }
    return out;
}

FormalSum bv_delta_wedge(const Skeleton& sk, const FormalSum& input, std::uint64_t seed,
                         const Rational& cobracket_scale, bool keep_trivial) {
    FormalSum out;
    for (const auto& [m, c] : input.terms()) {
        const int n = static_cast<int>(m.size());
        // Bracket terms: contract generators i < j (1-based), result in front.
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                int sign = ((i + j + 1) % 2 == 0) ? 1 : -1;
                FormalSum br = extended_bracket(
                    sk, FormalSum::single(m[static_cast<std::size_t>(i - 1)]),
                    FormalSum::single(m[static_cast<std::size_t>(j - 1)]), seed, keep_trivial);
                for (const auto& [bm, bc] : br.terms()) {
                    WedgeMonomial nm = bm;
                    for (int k = 1; k <= n; ++k) {
                        if (k == i || k == j) continue;
                        nm.push_back(m[static_cast<std::size_t>(k - 1)]);
                    }
                    out.add(nm, c * Rational(sign) * bc);
                }
            }
        }
        // Cobracket terms: expand generator i in place.
        for (int i = 1; i <= n; ++i) {
            const GElem& g = m[static_cast<std::size_t>(i - 1)];
            if (g.kind != GElem::Loop) continue;  // zero on homology classes
            int sign = (i % 2 == 1) ? 1 : -1;
            FormalSum cob = loop_cobracket(sk, g.loop, seed, keep_trivial) * cobracket_scale;
            for (const auto& [cm, cc] : cob.terms()) {
                WedgeMonomial nm;
                for (int k = 1; k < i; ++k) nm.push_back(m[static_cast<std::size_t>(k - 1)]);
                nm.insert(nm.end(), cm.begin(), cm.end());
                for (int k = i + 1; k <= n; ++k) nm.push_back(m[static_cast<std::size_t>(k - 1)]);
                out.add(nm, c * Rational(sign) * cc);
            }
        }
    }
    return out;
}

TensorSum cojacobi_defect(const Skeleton& sk, const CyclicWord& x, std::uint64_t seed) {
    TensorSum inner = loop_cobracket_tensor(sk, x, seed);
    TensorSum defect;
    for (const auto& [ab, c] : inner) {
        TensorSum da = loop_cobracket_tensor(sk, ab[0], seed);
        for (const auto& [uv, d] : da) {
            // All three cyclic rotations of u (x) v (x) b.
            tensor_add(defect, {uv[0], uv[1], ab[1]}, c * d);
            tensor_add(defect, {ab[1], uv[0], uv[1]}, c * d);
            tensor_add(defect, {uv[1], ab[1], uv[0]}, c * d);
        }
    }
    return defect;
}

TensorSum cocycle_defect(const Skeleton& sk, const CyclicWord& x, const CyclicWord& y,
                         std::uint64_t seed) {
    TensorSum defect;
    FormalSum br = loop_bracket(sk, x, y, seed);
    for (const auto& [m, c] : br.terms()) {
        TensorSum d = loop_cobracket_tensor(sk, m[0].loop, seed);
        for (const auto& [ab, e] : d) tensor_add(defect, ab, c * e);
    }
    auto subtract_action = [&](const CyclicWord& actor, const CyclicWord& target,
                               const Rational& outer_sign) {
        TensorSum dt = loop_cobracket_tensor(sk, target, seed);
        for (const auto& [ab, c] : dt) {
            FormalSum left = loop_bracket(sk, actor, ab[0], seed);
            for (const auto& [m, d] : left.terms()) {
                tensor_add(defect, {m[0].loop, ab[1]}, -outer_sign * c * d);
            }
            FormalSum right = loop_bracket(sk, actor, ab[1], seed);
            for (const auto& [m, d] : right.terms()) {
                tensor_add(defect, {ab[0], m[0].loop}, -outer_sign * c * d);
            }
        }
    };
    // delta[x,y] = x . delta(y) - y . delta(x)
    subtract_action(x, y, Rational(1));
    subtract_action(y, x, Rational(-1));
    return defect;
}

FormalSum involutivity_defect(const Skeleton& sk, const CyclicWord& x, std::uint64_t seed) {
    FormalSum cob = loop_cobracket(sk, x, seed);
    FormalSum out;
    for (const auto& [m, c] : cob.terms()) {
        out = out + loop_bracket(sk, m[0].loop, m[1].loop, seed) * c;
    }
    return out;
}

}  // namespace gtbv
