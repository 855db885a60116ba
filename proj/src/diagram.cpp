#include "gtbv/diagram.hpp"

#include <algorithm>
#include <random>

#include "gtbv/errors.hpp"

namespace gtbv {

std::vector<int> LoopSystem::passages_of(int word) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < passages.size(); ++i) {
        if (passages[i].word == word) out.push_back(static_cast<int>(i));
    }
    std::sort(out.begin(), out.end(),
              [&](int a, int b) { return passages[static_cast<std::size_t>(a)].boundary <
                                         passages[static_cast<std::size_t>(b)].boundary; });
    return out;
}

namespace {

struct Occurrence {
    int word;
    int letter;
};

// Position of y strictly inside the counterclockwise arc from s to t.
bool in_arc(int y, int s, int t, int m) {
    int len = (t - s + m) % m;
    int off = (y - s + m) % m;
    return off > 0 && off < len;
}

}  // namespace

LoopSystem realize(const Skeleton& sk, const std::vector<Word>& words,
                   const std::vector<bool>& closed, std::uint64_t seed) {
    if (words.size() != closed.size()) {
        throw Error(ErrorCode::BadArgument, "words/closed flag count mismatch");
    }
    LoopSystem sys;
    sys.words = words;
    sys.closed = closed;

    for (std::size_t w = 0; w < words.size(); ++w) {
        const Word& word = words[w];
        if (closed[w]) {
            if (cyclic_reduce(word).size() != word.size()) {
                throw Error(ErrorCode::BadArgument,
                            "closed words must be cyclically reduced before realization");
            }
        } else {
            if (reduce(word).size() != word.size()) {
                throw Error(ErrorCode::BadArgument, "open words must be reduced");
            }
        }
        sk.check_composable(word, closed[w]);
    }

    // Transverse order of the strands inside each edge band.
    const std::size_t E = sk.num_edges();
    std::vector<std::vector<Occurrence>> occ(E);
    for (std::size_t w = 0; w < words.size(); ++w) {
        for (std::size_t k = 0; k < words[w].size(); ++k) {
            occ[static_cast<std::size_t>(words[w][k].edge)].push_back(
                Occurrence{static_cast<int>(w), static_cast<int>(k)});
        }
    }
    std::mt19937_64 rng(seed);
    for (std::size_t e = 0; e < E; ++e) {
        std::shuffle(occ[e].begin(), occ[e].end(), rng);
    }

    // Circle positions of the two ends of every strand segment. Seen from a
    // vertex, the cross-section order of a band appears in list order at the
    // head attachment and reversed at the tail attachment.
    std::vector<std::vector<int>> head_pos(E), tail_pos(E);
    for (std::size_t e = 0; e < E; ++e) {
        head_pos[e].assign(occ[e].size(), -1);
        tail_pos[e].assign(occ[e].size(), -1);
    }
    std::vector<int> vertex_slots(sk.num_vertices(), 0);
    for (std::size_t v = 0; v < sk.num_vertices(); ++v) {
        int counter = 0;
        for (const std::string& he : sk.vertex_halfedges()[v]) {
            Skeleton::HalfEdge h = sk.halfedge(he);
            auto& positions = h.at_head ? head_pos[static_cast<std::size_t>(h.edge)]
                                        : tail_pos[static_cast<std::size_t>(h.edge)];
            const std::size_t m = positions.size();
            for (std::size_t i = 0; i < m; ++i) {
                std::size_t idx = h.at_head ? i : m - 1 - i;
                positions[idx] = counter++;
            }
        }
        vertex_slots[v] = counter;
    }

    // Index of each letter's occurrence within its edge band.
    std::vector<std::vector<int>> occ_index(words.size());
    for (std::size_t w = 0; w < words.size(); ++w) occ_index[w].assign(words[w].size(), -1);
    for (std::size_t e = 0; e < E; ++e) {
        for (std::size_t i = 0; i < occ[e].size(); ++i) {
            occ_index[static_cast<std::size_t>(occ[e][i].word)]
                     [static_cast<std::size_t>(occ[e][i].letter)] = static_cast<int>(i);
        }
    }

    auto arrive_pos = [&](int w, int k) {
        const Letter& l = words[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)];
        int i = occ_index[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)];
        return l.inv ? tail_pos[static_cast<std::size_t>(l.edge)][static_cast<std::size_t>(i)]
                     : head_pos[static_cast<std::size_t>(l.edge)][static_cast<std::size_t>(i)];
    };
    auto depart_pos = [&](int w, int k) {
        const Letter& l = words[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)];
        int i = occ_index[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)];
        return l.inv ? head_pos[static_cast<std::size_t>(l.edge)][static_cast<std::size_t>(i)]
                     : tail_pos[static_cast<std::size_t>(l.edge)][static_cast<std::size_t>(i)];
    };
    auto arrive_vertex = [&](int w, int k) {
        const Letter& l = words[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)];
        return l.inv ? sk.tail_vertex(l.edge) : sk.head_vertex(l.edge);
    };
    auto depart_vertex = [&](int w, int k) {
        const Letter& l = words[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)];
        return l.inv ? sk.head_vertex(l.edge) : sk.tail_vertex(l.edge);
    };

    for (std::size_t w = 0; w < words.size(); ++w) {
        const int k = static_cast<int>(words[w].size());
        if (k == 0) continue;
        if (closed[w]) {
            for (int b = 0; b < k; ++b) {
                Passage p;
                p.word = static_cast<int>(w);
                p.boundary = b;
                int prev = (b + k - 1) % k;
                p.in_pos = arrive_pos(static_cast<int>(w), prev);
                p.out_pos = depart_pos(static_cast<int>(w), b);
                p.vertex = arrive_vertex(static_cast<int>(w), prev);
                sys.passages.push_back(p);
            }
        } else {
            for (int b = 0; b <= k; ++b) {
                Passage p;
                p.word = static_cast<int>(w);
                p.boundary = b;
                if (b == 0) {
                    p.start_terminal = true;
                    p.out_pos = depart_pos(static_cast<int>(w), 0);
                    p.vertex = depart_vertex(static_cast<int>(w), 0);
                } else if (b == k) {
                    p.end_terminal = true;
                    p.in_pos = arrive_pos(static_cast<int>(w), k - 1);
                    p.vertex = arrive_vertex(static_cast<int>(w), k - 1);
                } else {
                    p.in_pos = arrive_pos(static_cast<int>(w), b - 1);
                    p.out_pos = depart_pos(static_cast<int>(w), b);
                    p.vertex = arrive_vertex(static_cast<int>(w), b - 1);
                }
                sys.passages.push_back(p);
            }
        }
    }

    // Path endpoints share the marked point in the gap after the last
    // attachment, micro-ordered by their own strand's attachment so that
    // every pair of endpoint chords links exactly once.
    std::vector<int> circle_size = vertex_slots;
    {
        std::vector<std::vector<std::pair<int, int>>> terminals(sk.num_vertices());
        for (std::size_t i = 0; i < sys.passages.size(); ++i) {
            Passage& p = sys.passages[i];
            if (!p.terminal()) continue;
            int adjacent = p.start_terminal ? p.out_pos : p.in_pos;
            terminals[static_cast<std::size_t>(p.vertex)].emplace_back(adjacent,
                                                                       static_cast<int>(i));
        }
        for (std::size_t v = 0; v < terminals.size(); ++v) {
            std::sort(terminals[v].begin(), terminals[v].end());
            for (const auto& [adj, pi] : terminals[v]) {
                (void)adj;
                sys.passages[static_cast<std::size_t>(pi)].gap_pos = circle_size[v]++;
            }
        }
    }

    // Crossings: linked chords on a common vertex circle.
    for (std::size_t i = 0; i < sys.passages.size(); ++i) {
        for (std::size_t j = i + 1; j < sys.passages.size(); ++j) {
            const Passage& a = sys.passages[i];
            const Passage& b = sys.passages[j];
            if (a.vertex != b.vertex) continue;
            const int m = circle_size[static_cast<std::size_t>(a.vertex)];
            int s1 = a.chord_src(), t1 = a.chord_dst();
            int s2 = b.chord_src(), t2 = b.chord_dst();
            bool s2_in = in_arc(s2, s1, t1, m);
            bool t2_in = in_arc(t2, s1, t1, m);
            if (s2_in == t2_in) continue;  // unlinked chords do not cross
            Crossing c;
            c.p1 = static_cast<int>(i);
            c.p2 = static_cast<int>(j);
            c.sign = s2_in ? 1 : -1;
            c.boundary = a.terminal() && b.terminal();
            c.vertex = a.vertex;
            sys.crossings.push_back(c);
        }
    }
    return sys;
}

}  // namespace gtbv
