#include "gtbv/moduli.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <utility>

#include "gtbv/errors.hpp"

namespace gtbv {

namespace {

// Realization of the aff(1) basis inside 2x2 matrices: X = E00, Y = E01.
GMatrix aff_basis_matrix(int i) {
    GMatrix m(2);
    if (i == 0) {
        m.at(0, 0) = GrassmannElement::one();
    } else if (i == 1) {
        m.at(0, 1) = GrassmannElement::one();
    } else {
        throw Error(ErrorCode::BadArgument, "aff(1) has two even basis directions");
    }
    return m;
}

bool is_aff_shape(const GMatrix& m) {
    return m.dim() == 2 && m.at(1, 0).is_zero() && m.at(1, 1) == GrassmannElement::one();
}

}  // namespace

GMatrix aff_admat(const GMatrix& m) {
    if (!is_aff_shape(m)) {
        throw Error(ErrorCode::BadArgument, "matrix is not of affine shape [[a,b],[0,1]]");
    }
    GMatrix a(2);
    a.at(0, 0) = GrassmannElement::one();
    a.at(1, 0) = -m.at(0, 1);
    a.at(1, 1) = m.at(0, 0);
    return a;
}

GroupElement group_identity(const MetricLie& lie) {
    if (lie.kind == GroupKind::OddDouble) return AffElement();
    return QElement::identity(lie.matrix_dim);
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
    if (std::holds_alternative<QElement>(a) && std::holds_alternative<QElement>(b)) {
        return std::get<QElement>(a) * std::get<QElement>(b);
    }
    if (std::holds_alternative<AffElement>(a) && std::holds_alternative<AffElement>(b)) {
        const AffElement& x = std::get<AffElement>(a);
        const AffElement& y = std::get<AffElement>(b);
        AffElement r;
        r.m = x.m * y.m;
        GMatrix ad = aff_admat(y.m);
        for (std::size_t j = 0; j < 2; ++j) {
            GrassmannElement s = y.y[j];
            for (std::size_t k = 0; k < 2; ++k) s += x.y[k] * ad.at(k, j);
            r.y[j] = s;
        }
        return r;
    }
    throw Error(ErrorCode::BadArgument, "mixed group element kinds");
}

GroupElement group_inverse(const GroupElement& a) {
    if (std::holds_alternative<QElement>(a)) return std::get<QElement>(a).inverse();
    const AffElement& x = std::get<AffElement>(a);
    AffElement r;
    r.m = x.m.inverse();
    GMatrix ad = aff_admat(r.m);
    for (std::size_t j = 0; j < 2; ++j) {
        GrassmannElement s;
        for (std::size_t k = 0; k < 2; ++k) s += x.y[k] * ad.at(k, j);
        r.y[j] = -s;
    }
    return r;
}

bool group_equal(const GroupElement& a, const GroupElement& b) {
    if (std::holds_alternative<QElement>(a) && std::holds_alternative<QElement>(b)) {
        return std::get<QElement>(a) == std::get<QElement>(b);
    }
    if (std::holds_alternative<AffElement>(a) && std::holds_alternative<AffElement>(b)) {
        return std::get<AffElement>(a) == std::get<AffElement>(b);
    }
    return false;
}

namespace {

// Parity of a homogeneous direction given by basis coordinates.
int coords_parity(const MetricLie& lie, const Tensor1& coords) {
    int parity = -1;
    for (std::size_t i = 0; i < lie.dim; ++i) {
        if (coords[i] == 0) continue;
        int p = lie.parity[i];
        if (parity == -1) parity = p;
        if (parity != p) {
            throw Error(ErrorCode::BadArgument, "direction coordinates mix parities");
        }
    }
    return parity == -1 ? 0 : parity;
}

}  // namespace

GroupElement direction_insertion(const MetricLie& lie, const Tensor1& coords,
                                 const GrassmannElement& tag, int sign) {
    if (coords.size() != lie.dim) {
        throw Error(ErrorCode::DimensionMismatch, "direction coordinate size");
    }
    // Odd directions pick up an extra sign: the derivation attached to an odd
    // tangent vector pairs with coordinate functions through the parity
    // involution, which costs (-1) exactly in odd degree.
    int twist = coords_parity(lie, coords) == 1 ? -1 : 1;
    GrassmannElement s = tag * Rational(sign * twist);
    if (lie.kind == GroupKind::OddDouble) {
        std::size_t d = lie.h.dim;
        AffElement r;
        for (std::size_t i = 0; i < d; ++i) {
            if (coords[i] == 0) continue;
            GMatrix base = aff_basis_matrix(static_cast<int>(i));
            r.m = r.m + base.scale(s * coords[i]);
        }
        for (std::size_t j = 0; j < d; ++j) {
            if (coords[d + j] == 0) continue;
            r.y[j] += s * coords[d + j];
        }
        return r;
    }
    QElement x = QElement::zero(lie.matrix_dim);
    for (std::size_t i = 0; i < lie.dim; ++i) {
        if (coords[i] == 0) continue;
        x = x + lie.basis_q[i].scale(coords[i]);
    }
    return QElement::identity(lie.matrix_dim) + x.scale(s);
}

Tensor1 direction_coords(const MetricLie& lie, int basis) {
    if (basis == -1) return lie.nu;
    if (basis < 0 || static_cast<std::size_t>(basis) >= lie.dim) {
        throw Error(ErrorCode::BadArgument, "basis index out of range");
    }
    Tensor1 c = make_tensor1(lie.dim);
    c[static_cast<std::size_t>(basis)] = Rational(1);
    return c;
}

int direction_parity(const MetricLie& lie, int basis) {
    if (basis == -1) return lie.odd_pairing ? 1 : 0;
    if (basis < 0 || static_cast<std::size_t>(basis) >= lie.dim) {
        throw Error(ErrorCode::BadArgument, "basis index out of range");
    }
    return lie.parity[static_cast<std::size_t>(basis)];
}

ModuliPoint random_point(const Skeleton& sk, const MetricLie& lie, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> small(-3, 3);
    ModuliPoint pt;
    pt.kind = lie.kind;
    pt.matrix_dim = lie.matrix_dim;
    int next_gen = 0;
    for (std::size_t e = 0; e < sk.num_edges(); ++e) {
        if (lie.kind == GroupKind::OddDouble) {
            AffElement g;
            for (int attempt = 0;; ++attempt) {
                if (attempt > 100) {
                    throw Error(ErrorCode::RetryExhausted, "invertible affine part");
                }
                int a = small(rng);
                int b = small(rng);
                if (a == 0) continue;
                g.m.at(0, 0) = GrassmannElement(Rational(a));
                g.m.at(0, 1) = GrassmannElement(Rational(b));
                break;
            }
            for (std::size_t j = 0; j < 2; ++j) {
                if (next_gen >= GrassmannElement::kMaxGenerators) {
                    throw Error(ErrorCode::GeneratorBudgetExceeded, "point odd coordinates");
                }
                g.y[j] = GrassmannElement::generator(next_gen++);
            }
            pt.edge_holonomy.emplace_back(std::move(g));
            continue;
        }
        std::size_t n = lie.matrix_dim;
        GMatrix x(n);
        for (int attempt = 0;; ++attempt) {
            if (attempt > 100) {
                throw Error(ErrorCode::RetryExhausted, "invertible even part");
            }
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    x.at(i, j) = GrassmannElement(Rational(small(rng)));
                }
            }
            try {
                rational_matrix_inverse(x.body());
                break;
            } catch (const Error&) {
                continue;
            }
        }
        GMatrix y(n);
        if (lie.kind == GroupKind::Q) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (next_gen >= GrassmannElement::kMaxGenerators) {
                        throw Error(ErrorCode::GeneratorBudgetExceeded, "point odd coordinates");
                    }
                    y.at(i, j) = GrassmannElement::generator(next_gen++);
                }
            }
        }
        pt.edge_holonomy.emplace_back(QElement(std::move(x), std::move(y)));
    }
    pt.first_free_generator = next_gen;
    return pt;
}

// Holonomies compose like linear maps between the fibers: the factor of a
// later letter multiplies from the left, so hol(uv) = hol(v after u) means
// g_{last} ... g_{first}.
GroupElement holonomy(const ModuliPoint& pt, const Word& w) {
    GroupElement acc = pt.kind == GroupKind::OddDouble
                           ? GroupElement(AffElement())
                           : GroupElement(QElement::identity(pt.matrix_dim));
    for (const Letter& l : w) {
        std::size_t e = static_cast<std::size_t>(l.edge);
        if (e >= pt.edge_holonomy.size()) {
            throw Error(ErrorCode::UnknownEdge, "edge index outside the point");
        }
        const GroupElement& g = pt.edge_holonomy[e];
        acc = group_mul(l.inv ? group_inverse(g) : g, acc);
    }
    return acc;
}

ModuliPoint transport_point(const ModuliPoint& pt, const SkeletonMoveMap& map) {
    ModuliPoint out;
    out.kind = pt.kind;
    out.matrix_dim = pt.matrix_dim;
    out.first_free_generator = pt.first_free_generator;
    for (const Word& w : map.backward) {
        out.edge_holonomy.push_back(holonomy(pt, w));
    }
    return out;
}

// ---------------------------------------------------------------------------

int atom_parity(const Atom& a) {
    switch (a.fn) {
        case AtomFn::Tr:
        case AtomFn::Logdet:
        case AtomFn::EntryEven:
            return 0;
        case AtomFn::Otr:
        case AtomFn::Odet:
        case AtomFn::EntryOdd:
            return 1;
    }
    return 0;
}

ModuliFunction fn_const(const Rational& c) {
    ModuliFunction f;
    f.coeff = c;
    return f;
}

ModuliFunction fn_atom(AtomFn fn, const Word& w, int row, int col) {
    ModuliFunction f;
    f.atoms.push_back(Atom{fn, w, row, col});
    return f;
}

ModuliFunction fn_product(const ModuliFunction& a, const ModuliFunction& b) {
    if (!a.chords.empty() || !a.nu_legs.empty() || !b.chords.empty() || !b.nu_legs.empty()) {
        throw Error(ErrorCode::BadArgument, "cannot multiply functions carrying insertions");
    }
    ModuliFunction f;
    f.coeff = a.coeff * b.coeff;
    f.atoms = a.atoms;
    f.atoms.insert(f.atoms.end(), b.atoms.begin(), b.atoms.end());
    return f;
}

int function_parity(const ModuliFunction& f, const MetricLie& lie) {
    int p = 0;
    for (const Atom& a : f.atoms) p += atom_parity(a);
    int pairing_parity = lie.odd_pairing ? 1 : 0;
    p += static_cast<int>(f.chords.size()) * 2 * pairing_parity;  // both legs
    p += static_cast<int>(f.nu_legs.size()) * pairing_parity;
    return p % 2;
}

ModuliFunction transport_function(const ModuliFunction& f, const SkeletonMoveMap& map) {
    if (!f.chords.empty() || !f.nu_legs.empty()) {
        throw Error(ErrorCode::BadArgument, "cannot transport a function carrying insertions");
    }
    ModuliFunction out;
    out.coeff = f.coeff;
    for (const Atom& a : f.atoms) {
        Atom b = a;
        b.word = map.apply(a.word);
        out.atoms.push_back(std::move(b));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Determinant of a matrix with commuting (even) entries by minor expansion.
GrassmannElement even_det(const GMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
    if (cols.empty()) return GrassmannElement::one();
    GrassmannElement acc;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::size_t c = cols[k];
        if (m.at(row, c).is_zero()) continue;
        std::vector<std::size_t> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t t = 0; t < cols.size(); ++t) {
            if (t != k) rest.push_back(cols[t]);
        }
        GrassmannElement term = m.at(row, c) * even_det(m, rest, row + 1);
        if (k % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

GrassmannElement even_det(const GMatrix& m) {
    std::vector<std::size_t> cols(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) cols[i] = i;
    return even_det(m, cols, 0);
}

// log of det/body(det): the constant term is dropped, which is why bare
// (underived) evaluation of a Logdet atom is refused upstream.
GrassmannElement log_nilpotent(const GrassmannElement& d) {
    Rational c = d.body();
    if (c == 0) throw Error(ErrorCode::NonInvertibleBody, "determinant body vanishes");
    GrassmannElement u = d * (Rational(1) / c) - GrassmannElement::one();
    GrassmannElement acc;
    GrassmannElement power = GrassmannElement::one();
    for (int k = 1; k <= GrassmannElement::kMaxGenerators + 1; ++k) {
        power = power * u;
        if (power.is_zero()) break;
        GrassmannElement term = power * (Rational(1) / Rational(k));
        if (k % 2 == 0) term = -term;
        acc += term;
    }
    return acc;
}

struct FixedInsertion {
    int atom = 0;
    int pos = 0;
    GroupElement u;
};

struct ExtractStep {
    bool pair = false;
    int g1 = 0;
    int g2 = 0;
};

GrassmannElement apply_schedule(GrassmannElement v, const std::vector<ExtractStep>& schedule) {
    for (auto it = schedule.rbegin(); it != schedule.rend(); ++it) {
        if (it->pair) {
            v = v.extract_pair(it->g1, it->g2);
        } else {
            // Odd tags are stripped from the right: the coefficient of a
            // monomial written with the tag last. Equivalently, flip the
            // parity of the left-derivative.
            v = v.derive_left(it->g1).parity_flip();
        }
        if (v.is_zero()) break;
    }
    return v;
}

}  // namespace

JetEvaluator::JetEvaluator(const Skeleton& sk, const MetricLie& lie, const ModuliPoint& pt)
    : sk_(sk), lie_(lie), pt_(pt) {
    if (pt.edge_holonomy.size() != sk.num_edges()) {
        throw Error(ErrorCode::DimensionMismatch, "point does not match the skeleton");
    }
    if (pt.kind != lie.kind) {
        throw Error(ErrorCode::BadArgument, "point and algebra kinds differ");
    }
}

const GroupElement& JetEvaluator::plain_inverse(int edge) {
    auto it = inv_cache_.find(edge);
    if (it == inv_cache_.end()) {
        it = inv_cache_
                 .emplace(edge, group_inverse(pt_.edge_holonomy[static_cast<std::size_t>(edge)]))
                 .first;
    }
    return it->second;
}

GrassmannElement JetEvaluator::eval_core(const std::vector<Atom>& atoms, const Rational& coeff,
                                         const std::vector<ChordSpec>& chords,
                                         const std::vector<NuSpec>& nu_legs,
                                         const std::vector<JetSlot>& slots) {
    if (coeff == 0) return GrassmannElement::zero();

    bool nu_zero = true;
    for (const Rational& c : lie_.nu) {
        if (c != 0) {
            nu_zero = false;
            break;
        }
    }
    bool has_logdet = false;
    for (const Atom& a : atoms) {
        if (a.fn == AtomFn::Logdet) has_logdet = true;
    }
    if (has_logdet) {
        if (atoms.size() != 1 || (slots.empty() && chords.empty() && nu_legs.empty())) {
            throw Error(ErrorCode::LogdetNotEvaluable,
                        "log det atoms evaluate only alone and under a derivative");
        }
    }

    // A derivative along an edge no word mentions vanishes identically.
    for (const JetSlot& s : slots) {
        if (s.basis == -1 && nu_zero) return GrassmannElement::zero();
        bool present = false;
        for (const Atom& a : atoms) {
            for (const Letter& l : a.word) {
                if (l.edge == s.edge) present = true;
            }
        }
        for (const ChordSpec& c : chords) {
            for (const Letter& l : c.via) {
                if (l.edge == s.edge) present = true;
            }
        }
        if (!present) return GrassmannElement::zero();
    }
    if (!nu_legs.empty() && nu_zero) return GrassmannElement::zero();

    // Tags for the derivative slots, in written (outermost-first) order.
    int next_gen = pt_.first_free_generator;
    auto allocate = [&next_gen](int parity) -> std::pair<GrassmannElement, ExtractStep> {
        int need = parity == 1 ? 1 : 2;
        if (next_gen + need > GrassmannElement::kMaxGenerators) {
            throw Error(ErrorCode::GeneratorBudgetExceeded, "derivative tags");
        }
        if (parity == 1) {
            int g = next_gen++;
            return {GrassmannElement::generator(g), ExtractStep{false, g, 0}};
        }
        int p = next_gen++;
        int q = next_gen++;
        return {GrassmannElement::generator(p) * GrassmannElement::generator(q),
                ExtractStep{true, p, q}};
    };

    std::vector<GrassmannElement> slot_tag(slots.size());
    std::vector<ExtractStep> slot_steps;
    slot_steps.reserve(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) {
        auto [tag, step] = allocate(direction_parity(lie_, slots[k].basis));
        slot_tag[k] = tag;
        slot_steps.push_back(step);
    }
    const int gen_after_slots = next_gen;

    // Perturbed edge holonomies; shared by every chord configuration.
    std::map<int, GroupElement> pert;
    std::map<int, GroupElement> pert_inv;
    {
        std::set<int> touched;
        for (const JetSlot& s : slots) touched.insert(s.edge);
        for (int e : touched) {
            GroupElement left = group_identity(lie_);
            GroupElement right = group_identity(lie_);
            for (std::size_t k = 0; k < slots.size(); ++k) {
                if (slots[k].edge != e) continue;
                Tensor1 coords = direction_coords(lie_, slots[k].basis);
                if (slots[k].at_head) {
                    GroupElement u = direction_insertion(lie_, coords, slot_tag[k], -1);
                    left = group_mul(u, left);
                } else {
                    GroupElement u = direction_insertion(lie_, coords, slot_tag[k], +1);
                    right = group_mul(right, u);
                }
            }
            GroupElement g =
                group_mul(group_mul(left, pt_.edge_holonomy[static_cast<std::size_t>(e)]), right);
            pert_inv.emplace(e, group_inverse(g));
            pert.emplace(e, std::move(g));
        }
    }

    auto letter_factor = [&](const Letter& l) -> const GroupElement& {
        auto it = l.inv ? pert_inv.find(l.edge) : pert.find(l.edge);
        if (l.inv) {
            if (it != pert_inv.end()) return it->second;
            return plain_inverse(l.edge);
        }
        if (it != pert.end()) return it->second;
        std::size_t e = static_cast<std::size_t>(l.edge);
        if (e >= pt_.edge_holonomy.size()) {
            throw Error(ErrorCode::UnknownEdge, "edge index outside the point");
        }
        return pt_.edge_holonomy[e];
    };

    auto word_holonomy = [&](const Word& w) {
        GroupElement acc = group_identity(lie_);
        for (const Letter& l : w) acc = group_mul(letter_factor(l), acc);
        return acc;
    };

    // Value of one fully configured product: perturbed letters with the
    // fixed insertions interleaved at their letter boundaries.
    auto configured_value = [&](const std::vector<FixedInsertion>& fixed) {
        GrassmannElement total = GrassmannElement::one();
        for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
            const Atom& a = atoms[ai];
            GroupElement acc = group_identity(lie_);
            std::size_t m = a.word.size();
            // Letter boundary pos sits between the factors of letters pos
            // and pos-1; the product is assembled from the left (the end of
            // the path) to the right (its start).
            for (std::size_t pos = m + 1; pos-- > 0;) {
                for (const FixedInsertion& ins : fixed) {
                    if (ins.atom == static_cast<int>(ai) && ins.pos == static_cast<int>(pos)) {
                        acc = group_mul(acc, ins.u);
                    }
                }
                if (pos > 0) acc = group_mul(acc, letter_factor(a.word[pos - 1]));
            }
            GrassmannElement value;
            if (lie_.kind == GroupKind::OddDouble) {
                const AffElement& g = std::get<AffElement>(acc);
                switch (a.fn) {
                    case AtomFn::Tr:
                        value = g.m.trace();
                        break;
                    case AtomFn::EntryEven:
                        value = g.m.at(static_cast<std::size_t>(a.row),
                                       static_cast<std::size_t>(a.col));
                        break;
                    case AtomFn::EntryOdd:
                        value = g.y.at(static_cast<std::size_t>(a.col));
                        break;
                    default:
                        throw Error(ErrorCode::BadArgument,
                                    "atom kind undefined for affine group elements");
                }
            } else {
                const QElement& g = std::get<QElement>(acc);
                switch (a.fn) {
                    case AtomFn::Tr:
                        value = g.X.trace();
                        break;
                    case AtomFn::Otr:
                        value = otr(g);
                        break;
                    case AtomFn::Odet:
                        value = odet(g);
                        break;
                    case AtomFn::Logdet:
                        if (lie_.kind != GroupKind::GL) {
                            throw Error(ErrorCode::BadArgument,
                                        "log det requires commuting matrix entries");
                        }
                        value = log_nilpotent(even_det(g.X));
                        break;
                    case AtomFn::EntryEven:
                        value = g.X.at(static_cast<std::size_t>(a.row),
                                       static_cast<std::size_t>(a.col));
                        break;
                    case AtomFn::EntryOdd:
                        value = g.Y.at(static_cast<std::size_t>(a.row),
                                       static_cast<std::size_t>(a.col));
                        break;
                }
            }
            total = total * value;
            if (total.is_zero()) break;
        }
        return total;
    };

    // Sum over the basis configurations of the chords, then the modular
    // insertions, extracting each configuration separately.
    GrassmannElement result;
    std::vector<FixedInsertion> fixed;
    std::vector<ExtractStep> schedule = slot_steps;

    auto run_config = [&](Rational factor) {
        int saved_gen = next_gen;
        std::size_t saved_fixed = fixed.size();
        std::size_t saved_sched = schedule.size();
        int nu_parity = lie_.odd_pairing ? 1 : 0;
        for (const NuSpec& nl : nu_legs) {
            auto [tag, step] = allocate(nu_parity);
            fixed.push_back(FixedInsertion{nl.atom, nl.pos,
                                           direction_insertion(lie_, lie_.nu, tag, +1)});
            schedule.push_back(step);
        }
        GrassmannElement v = apply_schedule(configured_value(fixed), schedule);
        result += v * factor;
        fixed.resize(saved_fixed);
        schedule.resize(saved_sched);
        next_gen = saved_gen;
    };

    std::function<void(std::size_t, Rational)> over_chords = [&](std::size_t c, Rational factor) {
        if (c == chords.size()) {
            run_config(factor);
            return;
        }
        const ChordSpec& ch = chords[c];
        GroupElement via_h = group_identity(lie_);
        GroupElement via_h_inv = via_h;
        bool via_trivial = ch.via.empty();
        if (!via_trivial) {
            via_h = word_holonomy(ch.via);
            via_h_inv = group_inverse(via_h);
        }
        for (std::size_t i = 0; i < lie_.dim; ++i) {
            for (std::size_t j = 0; j < lie_.dim; ++j) {
                const Rational& t = lie_.cpairing[i][j];
                if (t == 0) continue;
                Rational f = factor * t * Rational(ch.orientation);
                if (lie_.parity[i] == 1) f = -f;
                int saved_gen = next_gen;
                std::size_t saved_fixed = fixed.size();
                std::size_t saved_sched = schedule.size();
                auto [tag1, step1] = allocate(lie_.parity[i]);
                auto [tag2, step2] = allocate(lie_.parity[j]);
                fixed.push_back(FixedInsertion{
                    ch.atom1, ch.pos1,
                    direction_insertion(lie_, direction_coords(lie_, static_cast<int>(i)), tag1,
                                        +1)});
                GroupElement u2 = direction_insertion(
                    lie_, direction_coords(lie_, static_cast<int>(j)), tag2, +1);
                if (!via_trivial) u2 = group_mul(group_mul(via_h, u2), via_h_inv);
                fixed.push_back(FixedInsertion{ch.atom2, ch.pos2, std::move(u2)});
                schedule.push_back(step1);
                schedule.push_back(step2);
                over_chords(c + 1, f);
                fixed.resize(saved_fixed);
                schedule.resize(saved_sched);
                next_gen = saved_gen;
            }
        }
    };

    (void)gen_after_slots;
    over_chords(0, coeff);
    return result;
}

GrassmannElement JetEvaluator::eval_atom(const Atom& a, const std::vector<JetSlot>& slots) {
    auto key = std::make_pair(a, slots);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    GrassmannElement v = eval_core({a}, Rational(1), {}, {}, slots);
    cache_.emplace(std::move(key), v);
    return v;
}

GrassmannElement JetEvaluator::eval_direct(const ModuliFunction& f,
                                           const std::vector<JetSlot>& slots) {
    if (f.atoms.empty() && f.chords.empty() && f.nu_legs.empty()) {
        return slots.empty() ? GrassmannElement(f.coeff) : GrassmannElement::zero();
    }
    return eval_core(f.atoms, f.coeff, f.chords, f.nu_legs, slots);
}

GrassmannElement JetEvaluator::eval(const ModuliFunction& f, const std::vector<JetSlot>& slots) {
    if (!f.chords.empty() || !f.nu_legs.empty()) {
        return eval_direct(f, slots);
    }
    if (f.atoms.empty()) {
        return slots.empty() ? GrassmannElement(f.coeff) : GrassmannElement::zero();
    }
    if (f.atoms.size() == 1) {
        return eval_atom(f.atoms[0], slots) * f.coeff;
    }

    // Graded Leibniz rule: distribute the slots over the atoms. Slots are
    // stripped innermost first, and an odd derivative acting on atom k signs
    // past every factor to its right; at that moment factor l carries parity
    // base(l) plus one flip per odd slot already stripped from it.
    std::vector<int> base_parity(f.atoms.size());
    for (std::size_t i = 0; i < f.atoms.size(); ++i) base_parity[i] = atom_parity(f.atoms[i]);

    std::vector<std::vector<std::size_t>> candidates(slots.size());
    for (std::size_t r = 0; r < slots.size(); ++r) {
        for (std::size_t b = 0; b < f.atoms.size(); ++b) {
            bool mentions = false;
            for (const Letter& l : f.atoms[b].word) {
                if (l.edge == slots[r].edge) mentions = true;
            }
            if (mentions) candidates[r].push_back(b);
        }
        if (candidates[r].empty()) return GrassmannElement::zero();
    }

    GrassmannElement acc;
    std::vector<std::size_t> target(slots.size(), 0);
    std::vector<std::size_t> choice(slots.size(), 0);
    for (;;) {
        for (std::size_t r = 0; r < slots.size(); ++r) target[r] = candidates[r][choice[r]];

        int exponent = 0;
        for (std::size_t r = 0; r < slots.size(); ++r) {
            if (direction_parity(lie_, slots[r].basis) != 1) continue;
            for (std::size_t l = target[r] + 1; l < f.atoms.size(); ++l) {
                exponent += base_parity[l];
            }
            for (std::size_t q = r + 1; q < slots.size(); ++q) {
                if (direction_parity(lie_, slots[q].basis) == 1 && target[r] < target[q]) {
                    ++exponent;
                }
            }
        }

        std::vector<std::vector<JetSlot>> assigned(f.atoms.size());
        for (std::size_t r = 0; r < slots.size(); ++r) assigned[target[r]].push_back(slots[r]);

        GrassmannElement prod = GrassmannElement::one();
        for (std::size_t b = 0; b < f.atoms.size() && !prod.is_zero(); ++b) {
            prod = prod * eval_atom(f.atoms[b], assigned[b]);
        }
        if (exponent % 2 == 1) prod = -prod;
        acc += prod;

        std::size_t r = slots.size();
        while (r-- > 0) {
            if (++choice[r] < candidates[r].size()) break;
            choice[r] = 0;
            if (r == 0) return acc * f.coeff;
        }
        if (r == std::numeric_limits<std::size_t>::max()) break;
    }
    return acc * f.coeff;
}

}  // namespace gtbv
