#include "gtbv/homology.hpp"

#include <deque>

#include "gtbv/diagram.hpp"
#include "gtbv/errors.hpp"

namespace gtbv {

HomologyBasis::HomologyBasis(const Skeleton& sk) : sk_(&sk) {
    const std::size_t V = sk.num_vertices();
    const std::size_t E = sk.num_edges();
    in_tree_.assign(E, false);
    tree_path_.assign(V, Word{});
    std::vector<bool> reached(V, false);
    reached[0] = true;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (std::size_t e = 0; e < E; ++e) {
            int t = sk.tail_vertex(static_cast<int>(e));
            int h = sk.head_vertex(static_cast<int>(e));
            int other = -1;
            bool forward = false;
            if (t == v && !reached[static_cast<std::size_t>(h)]) {
                other = h;
                forward = true;
            } else if (h == v && !reached[static_cast<std::size_t>(t)]) {
                other = t;
                forward = false;
            }
            if (other < 0) continue;
            in_tree_[e] = true;
            reached[static_cast<std::size_t>(other)] = true;
            tree_path_[static_cast<std::size_t>(other)] = tree_path_[static_cast<std::size_t>(v)];
            tree_path_[static_cast<std::size_t>(other)].push_back(
                Letter{static_cast<int>(e), !forward});
            queue.push_back(other);
        }
    }
    for (std::size_t v = 0; v < V; ++v) {
        if (!reached[v]) {
            throw Error(ErrorCode::MalformedSkeleton, "skeleton is not connected");
        }
    }
    for (std::size_t e = 0; e < E; ++e) {
        if (!in_tree_[e]) basis_edges_.push_back(static_cast<int>(e));
    }
}

std::vector<Rational> HomologyBasis::cls(const Word& closed_word) const {
    std::vector<Rational> out(basis_edges_.size(), Rational(0));
    for (std::size_t i = 0; i < basis_edges_.size(); ++i) {
        for (const Letter& l : closed_word) {
            if (l.edge == basis_edges_[i]) out[i] += l.inv ? Rational(-1) : Rational(1);
        }
    }
    return out;
}

Word HomologyBasis::representative(int basis_index) const {
    int e = basis_edges_.at(static_cast<std::size_t>(basis_index));
    int t = sk_->tail_vertex(e);
    int h = sk_->head_vertex(e);
    Word w = tree_path_[static_cast<std::size_t>(t)];
    w.push_back(Letter{e, false});
    Word back = inverse_word(tree_path_[static_cast<std::size_t>(h)]);
    w.insert(w.end(), back.begin(), back.end());
    return reduce(w);
}

Word HomologyBasis::representative(const std::vector<Rational>& v) const {
    if (v.size() != basis_edges_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "homology vector has wrong dimension");
    }
    Word w;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1) {
            throw Error(ErrorCode::BadArgument,
                        "only integral classes have loop representatives");
        }
        long n = v[i].get_num().get_si();
        Word piece = representative(static_cast<int>(i));
        if (n < 0) piece = inverse_word(piece);
        for (long k = 0; k < std::abs(n); ++k) {
            w.insert(w.end(), piece.begin(), piece.end());
        }
    }
    return reduce(w);
}

std::vector<std::vector<Rational>> intersection_matrix(const Skeleton& sk, std::uint64_t seed) {
    HomologyBasis basis(sk);
    const int d = basis.dim();
    std::vector<std::vector<Rational>> I(static_cast<std::size_t>(d),
                                         std::vector<Rational>(static_cast<std::size_t>(d), 0));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Word wi = CyclicWord::canonicalize(basis.representative(i)).word();
            Word wj = CyclicWord::canonicalize(basis.representative(j)).word();
            LoopSystem sys = realize(sk, {wi, wj}, {true, true}, seed);
            Rational total(0);
            for (const Crossing& c : sys.crossings) {
                const Passage& a = sys.passages[static_cast<std::size_t>(c.p1)];
                const Passage& b = sys.passages[static_cast<std::size_t>(c.p2)];
                if (a.word == b.word) continue;
                // Passages are listed word 0 first, so c.p1 is on word 0.
                total += Rational(c.sign);
            }
            I[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = total;
        }
    }
    return I;
}

Rational intersection_pairing(const Skeleton& sk, const std::vector<Rational>& u,
                              const std::vector<Rational>& v, std::uint64_t seed) {
    auto I = intersection_matrix(sk, seed);
    if (u.size() != I.size() || v.size() != I.size()) {
        throw Error(ErrorCode::DimensionMismatch, "homology vector has wrong dimension");
    }
    Rational total(0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            total += u[i] * I[i][j] * v[j];
        }
    }
    return total;
}

}  // namespace gtbv
