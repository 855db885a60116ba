#include "gtbv/operators.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "gtbv/errors.hpp"

namespace gtbv {

JetOperator operator_sum(const JetOperator& a, const JetOperator& b) {
    JetOperator r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

JetOperator operator_scale(const JetOperator& op, const Rational& c) {
    JetOperator r;
    if (c == 0) return r;
    r.reserve(op.size());
    for (const JetTerm& t : op) r.push_back(JetTerm{t.coeff * c, t.slots});
    return r;
}

JetOperator operator_compose(const JetOperator& outer, const JetOperator& inner) {
    JetOperator r;
    r.reserve(outer.size() * inner.size());
    for (const JetTerm& o : outer) {
        for (const JetTerm& i : inner) {
            JetTerm t;
            t.coeff = o.coeff * i.coeff;
            t.slots = o.slots;
            t.slots.insert(t.slots.end(), i.slots.begin(), i.slots.end());
            r.push_back(std::move(t));
        }
    }
    return r;
}

GrassmannElement apply_operator(JetEvaluator& ev, const JetOperator& op,
                                const ModuliFunction& f) {
    GrassmannElement acc;
    for (const JetTerm& t : op) acc += ev.eval(f, t.slots) * t.coeff;
    return acc;
}

JetOperator vertex_action(const Skeleton& sk, int vertex, int basis) {
    JetOperator op;
    for (const std::string& he : sk.vertex_halfedges().at(static_cast<std::size_t>(vertex))) {
        Skeleton::HalfEdge h = sk.halfedge(he);
        op.push_back(JetTerm{Rational(1), {JetSlot{h.edge, h.at_head, basis}}});
    }
    return op;
}

JetOperator quasi_bv_nu_part(const Skeleton& sk, const MetricLie& lie) {
    JetOperator op;
    bool nu_zero = true;
    for (const Rational& c : lie.nu) {
        if (c != 0) nu_zero = false;
    }
    if (nu_zero) return op;
    for (std::size_t e = 0; e < sk.num_edges(); ++e) {
        int rot2 = sk.edges()[e].rot2;
        if (rot2 == 0) continue;
        op.push_back(JetTerm{Rational(rot2) / Rational(4),
                             {JetSlot{static_cast<int>(e), false, -1}}});
    }
    return op;
}

JetOperator quasi_bv_operator(const Skeleton& sk, const MetricLie& lie) {
    if (!lie.odd_pairing) {
        throw Error(ErrorCode::BadArgument, "the odd operator needs an odd pairing");
    }
    JetOperator op;
    for (std::size_t v = 0; v < sk.num_vertices(); ++v) {
        const auto& hes = sk.vertex_halfedges()[v];
        for (std::size_t a = 0; a < hes.size(); ++a) {
            Skeleton::HalfEdge ha = sk.halfedge(hes[a]);
            for (std::size_t b = a + 1; b < hes.size(); ++b) {
                Skeleton::HalfEdge hb = sk.halfedge(hes[b]);
                for (std::size_t i = 0; i < lie.dim; ++i) {
                    for (std::size_t j = 0; j < lie.dim; ++j) {
                        const Rational& t = lie.cpairing[i][j];
                        if (t == 0) continue;
                        Rational c = t / Rational(2);
                        if (lie.parity[i] == 1) c = -c;
                        op.push_back(
                            JetTerm{c,
                                    {JetSlot{ha.edge, ha.at_head, static_cast<int>(i)},
                                     JetSlot{hb.edge, hb.at_head, static_cast<int>(j)}}});
                    }
                }
            }
        }
    }
    return operator_sum(op, quasi_bv_nu_part(sk, lie));
}

JetOperator casimir_cubed(const Skeleton& sk, const MetricLie& lie) {
    JetOperator op;
    for (std::size_t v = 0; v < sk.num_vertices(); ++v) {
        std::vector<Skeleton::HalfEdge> hs;
        for (const std::string& he : sk.vertex_halfedges()[v]) hs.push_back(sk.halfedge(he));
        for (std::size_t x = 0; x < lie.dim; ++x) {
            for (std::size_t y = 0; y < lie.dim; ++y) {
                for (std::size_t z = 0; z < lie.dim; ++z) {
                    const Rational& phi = lie.jacobiator[x][y][z];
                    if (phi == 0) continue;
                    for (const auto& ha : hs) {
                        for (const auto& hb : hs) {
                            for (const auto& hc : hs) {
                                op.push_back(
                                    JetTerm{phi,
                                            {JetSlot{ha.edge, ha.at_head, static_cast<int>(x)},
                                             JetSlot{hb.edge, hb.at_head, static_cast<int>(y)},
                                             JetSlot{hc.edge, hc.at_head, static_cast<int>(z)}}});
                            }
                        }
                    }
                }
            }
        }
    }
    return op;
}

JetOperator fusion_cross_term(const Skeleton& sk, const MetricLie& lie,
                              const std::string& v1, const std::string& v2) {
    int i1 = sk.vertex_index(v1);
    int i2 = sk.vertex_index(v2);
    JetOperator op;
    for (const std::string& ha_id : sk.vertex_halfedges()[static_cast<std::size_t>(i1)]) {
        Skeleton::HalfEdge ha = sk.halfedge(ha_id);
        for (const std::string& hb_id : sk.vertex_halfedges()[static_cast<std::size_t>(i2)]) {
            Skeleton::HalfEdge hb = sk.halfedge(hb_id);
            for (std::size_t i = 0; i < lie.dim; ++i) {
                for (std::size_t j = 0; j < lie.dim; ++j) {
                    const Rational& t = lie.cpairing[i][j];
                    if (t == 0) continue;
                    Rational c = t / Rational(2);
                    if (lie.parity[i] == 1) c = -c;
                    op.push_back(JetTerm{c,
                                         {JetSlot{ha.edge, ha.at_head, static_cast<int>(i)},
                                          JetSlot{hb.edge, hb.at_head, static_cast<int>(j)}}});
                }
            }
        }
    }
    return op;
}

// ---------------------------------------------------------------------------

GrassmannElement fr_bracket_derived(JetEvaluator& ev, const std::vector<JetSlot>& outer,
                                    const ModuliFunction& f, const ModuliFunction& g) {
    const Skeleton& sk = ev.skeleton();
    const MetricLie& lie = ev.lie();
    if (lie.odd_pairing) {
        throw Error(ErrorCode::BadArgument, "the bivector bracket needs an even pairing");
    }
    for (const JetSlot& s : outer) {
        if (direction_parity(lie, s.basis) != 0) {
            throw Error(ErrorCode::BadArgument, "outer derivatives must be even");
        }
    }
    GrassmannElement acc;
    std::size_t nmask = static_cast<std::size_t>(1) << outer.size();
    for (std::size_t v = 0; v < sk.num_vertices(); ++v) {
        const auto& hes = sk.vertex_halfedges()[v];
        for (std::size_t a = 0; a < hes.size(); ++a) {
            Skeleton::HalfEdge ha = sk.halfedge(hes[a]);
            for (std::size_t b = a + 1; b < hes.size(); ++b) {
                Skeleton::HalfEdge hb = sk.halfedge(hes[b]);
                for (std::size_t i = 0; i < lie.dim; ++i) {
                    for (std::size_t j = 0; j < lie.dim; ++j) {
                        const Rational& s = lie.cpairing[i][j];
                        if (s == 0) continue;
                        Rational c = s / Rational(2);
                        JetSlot ai{ha.edge, ha.at_head, static_cast<int>(i)};
                        JetSlot bj{hb.edge, hb.at_head, static_cast<int>(j)};
                        JetSlot aj{ha.edge, ha.at_head, static_cast<int>(j)};
                        JetSlot bi{hb.edge, hb.at_head, static_cast<int>(i)};
                        for (std::size_t mask = 0; mask < nmask; ++mask) {
                            std::vector<JetSlot> of, og;
                            for (std::size_t k = 0; k < outer.size(); ++k) {
                                if (mask & (static_cast<std::size_t>(1) << k)) {
                                    of.push_back(outer[k]);
                                } else {
                                    og.push_back(outer[k]);
                                }
                            }
                            auto with = [](std::vector<JetSlot> v0, const JetSlot& s0) {
                                v0.push_back(s0);
                                return v0;
                            };
                            GrassmannElement term =
                                ev.eval(f, with(of, ai)) * ev.eval(g, with(og, bj)) -
                                ev.eval(f, with(of, bj)) * ev.eval(g, with(og, ai));
                            acc += term * c;
                        }
                    }
                }
            }
        }
    }
    return acc;
}

GrassmannElement fr_bracket(JetEvaluator& ev, const ModuliFunction& f,
                            const ModuliFunction& g) {
    return fr_bracket_derived(ev, {}, f, g);
}

GrassmannElement fr_jacobiator(JetEvaluator& ev, const ModuliFunction& f,
                               const ModuliFunction& g, const ModuliFunction& h) {
    const Skeleton& sk = ev.skeleton();
    const MetricLie& lie = ev.lie();
    auto outer_bracket = [&](const ModuliFunction& x, const ModuliFunction& y,
                             const ModuliFunction& z) {
        // {x, {y, z}}
        GrassmannElement acc;
        for (std::size_t v = 0; v < sk.num_vertices(); ++v) {
            const auto& hes = sk.vertex_halfedges()[v];
            for (std::size_t a = 0; a < hes.size(); ++a) {
                Skeleton::HalfEdge ha = sk.halfedge(hes[a]);
                for (std::size_t b = a + 1; b < hes.size(); ++b) {
                    Skeleton::HalfEdge hb = sk.halfedge(hes[b]);
                    for (std::size_t i = 0; i < lie.dim; ++i) {
                        for (std::size_t j = 0; j < lie.dim; ++j) {
                            const Rational& s = lie.cpairing[i][j];
                            if (s == 0) continue;
                            Rational c = s / Rational(2);
                            JetSlot ai{ha.edge, ha.at_head, static_cast<int>(i)};
                            JetSlot bj{hb.edge, hb.at_head, static_cast<int>(j)};
                            GrassmannElement term =
                                ev.eval(x, {ai}) * fr_bracket_derived(ev, {bj}, y, z) -
                                ev.eval(x, {bj}) * fr_bracket_derived(ev, {ai}, y, z);
                            acc += term * c;
                        }
                    }
                }
            }
        }
        return acc;
    };
    return outer_bracket(f, g, h) + outer_bracket(g, h, f) + outer_bracket(h, f, g);
}

GrassmannElement fr_quasi_rhs(JetEvaluator& ev, const ModuliFunction& f,
                              const ModuliFunction& g, const ModuliFunction& h) {
    const Skeleton& sk = ev.skeleton();
    const MetricLie& lie = ev.lie();
    GrassmannElement acc;
    for (std::size_t v = 0; v < sk.num_vertices(); ++v) {
        std::vector<GrassmannElement> rf(lie.dim), rg(lie.dim), rh(lie.dim);
        for (std::size_t i = 0; i < lie.dim; ++i) {
            JetOperator rho = vertex_action(sk, static_cast<int>(v), static_cast<int>(i));
            rf[i] = apply_operator(ev, rho, f);
            rg[i] = apply_operator(ev, rho, g);
            rh[i] = apply_operator(ev, rho, h);
        }
        for (std::size_t i = 0; i < lie.dim; ++i) {
            if (rf[i].is_zero()) continue;
            for (std::size_t j = 0; j < lie.dim; ++j) {
                if (rg[j].is_zero()) continue;
                for (std::size_t k = 0; k < lie.dim; ++k) {
                    const Rational& c = lie.jacobiator[i][j][k];
                    if (c == 0) continue;
                    acc += rf[i] * rg[j] * rh[k] * (c / Rational(4));
                }
            }
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------

GrassmannElement bv_antibracket(JetEvaluator& ev, const JetOperator& delta,
                                const ModuliFunction& f, const ModuliFunction& g) {
    const MetricLie& lie = ev.lie();
    GrassmannElement whole = apply_operator(ev, delta, fn_product(f, g));
    GrassmannElement left = apply_operator(ev, delta, f) * ev.eval(g, {});
    GrassmannElement right = ev.eval(f, {}) * apply_operator(ev, delta, g);
    if (function_parity(f, lie) == 1) right = -right;
    return whole - left - right;
}

namespace {

struct BandLeg {
    int position = 0;
    int s = 0;  // +1 departing, -1 arriving
};

std::vector<BandLeg> band_legs(const Passage& p) {
    std::vector<BandLeg> v;
    if (!p.start_terminal) v.push_back(BandLeg{p.in_pos, -1});
    if (!p.end_terminal) v.push_back(BandLeg{p.out_pos, +1});
    return v;
}

std::vector<Word> trial_words(const ModuliFunction& f, const std::vector<bool>& closed) {
    if (!f.chords.empty() || !f.nu_legs.empty()) {
        throw Error(ErrorCode::BadArgument, "trial function must not carry insertions");
    }
    if (f.atoms.size() != closed.size()) {
        throw Error(ErrorCode::DimensionMismatch, "one closed flag per atom");
    }
    std::vector<Word> words;
    words.reserve(f.atoms.size());
    for (const Atom& a : f.atoms) words.push_back(a.word);
    return words;
}

}  // namespace

GrassmannElement intersection_delta_rhs(JetEvaluator& ev, const ModuliFunction& f,
                                        const std::vector<bool>& closed, std::uint64_t seed) {
    const Skeleton& sk = ev.skeleton();
    std::vector<Word> words = trial_words(f, closed);
    LoopSystem sys = realize(sk, words, closed, seed);

    GrassmannElement acc;
    for (const Crossing& cr : sys.crossings) {
        const Passage& pa = sys.passages[static_cast<std::size_t>(cr.p1)];
        const Passage& pb = sys.passages[static_cast<std::size_t>(cr.p2)];
        std::vector<BandLeg> la = band_legs(pa);
        std::vector<BandLeg> lb = band_legs(pb);
        int min_a = la.empty() ? 0 : std::min_element(la.begin(), la.end(), [](auto& x, auto& y) {
                                         return x.position < y.position;
                                     })->position;
        int min_b = lb.empty() ? 0 : std::min_element(lb.begin(), lb.end(), [](auto& x, auto& y) {
                                         return x.position < y.position;
                                     })->position;
        const Passage& first = min_a <= min_b ? pa : pb;
        const Passage& second = min_a <= min_b ? pb : pa;
        const std::vector<BandLeg>& lf = min_a <= min_b ? la : lb;
        const std::vector<BandLeg>& ls = min_a <= min_b ? lb : la;
        Rational coeff;
        for (const BandLeg& u : lf) {
            for (const BandLeg& v : ls) {
                int d = u.position < v.position ? 1 : -1;
                coeff += Rational(u.s * v.s * d) / Rational(2);
            }
        }
        if (coeff == 0) continue;
        ModuliFunction with_chord = f;
        with_chord.chords.push_back(
            ChordSpec{first.word, first.boundary, second.word, second.boundary, Word{}, 1});
        acc += ev.eval(with_chord, {}) * coeff;
    }

    for (std::size_t w = 0; w < words.size(); ++w) {
        if (words[w].empty()) continue;
        int rot2 = sk.path_rotation2(words[w], closed[w]);
        if (rot2 == 0) continue;
        ModuliFunction with_nu = f;
        with_nu.nu_legs.push_back(NuSpec{static_cast<int>(w), 0});
        acc += ev.eval(with_nu, {}) * (Rational(rot2) / Rational(4));
    }
    return acc;
}

GrassmannElement halfedge_pair_rhs(JetEvaluator& ev, const ModuliFunction& f,
                                   const std::vector<bool>& closed, std::uint64_t seed) {
    const Skeleton& sk = ev.skeleton();
    const MetricLie& lie = ev.lie();
    std::vector<Word> words = trial_words(f, closed);
    LoopSystem sys = realize(sk, words, closed, seed);

    struct VertexLeg {
        BandLeg leg;
        int word = 0;
        int boundary = 0;
    };
    std::map<int, std::vector<VertexLeg>> by_vertex;
    for (const Passage& p : sys.passages) {
        for (const BandLeg& l : band_legs(p)) {
            by_vertex[p.vertex].push_back(VertexLeg{l, p.word, p.boundary});
        }
    }

    GrassmannElement acc;
    for (auto& [v, legs] : by_vertex) {
        std::sort(legs.begin(), legs.end(),
                  [](const VertexLeg& x, const VertexLeg& y) {
                      return x.leg.position < y.leg.position;
                  });
        for (std::size_t a = 0; a < legs.size(); ++a) {
            for (std::size_t b = a + 1; b < legs.size(); ++b) {
                ModuliFunction with_chord = f;
                with_chord.chords.push_back(ChordSpec{legs[a].word, legs[a].boundary,
                                                      legs[b].word, legs[b].boundary, Word{},
                                                      1});
                Rational c = Rational(legs[a].leg.s * legs[b].leg.s) / Rational(2);
                acc += ev.eval(with_chord, {}) * c;
            }
        }
    }
    return acc + apply_operator(ev, quasi_bv_nu_part(sk, lie), f);
}

}  // namespace gtbv
