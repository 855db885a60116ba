#pragma once

#include <cstdint>
#include <vector>

#include "gtbv/skeleton.hpp"
#include "gtbv/words.hpp"

namespace gtbv {

// One visit of a strand to a vertex: either a pass-through between two
// consecutive letters, or a path endpoint resting at the vertex's marked
// point. Circle positions index attachment points counterclockwise; path
// endpoints share the gap after the last attachment (all paths ending at a
// vertex are based at its single marked point).
struct Passage {
    int word = 0;
    int boundary = 0;  // letter boundary index within the word
    int vertex = 0;
    int in_pos = -1;   // circle position of the arriving strand end
    int out_pos = -1;  // circle position of the departing strand end
    bool start_terminal = false;
    bool end_terminal = false;
    int gap_pos = -1;  // circle position of the endpoint within the gap

    // Chord endpoints on the vertex circle, in the direction of travel.
    int chord_src() const { return start_terminal ? gap_pos : in_pos; }
    int chord_dst() const { return end_terminal ? gap_pos : out_pos; }
    bool terminal() const { return start_terminal || end_terminal; }
};

// Transverse double point of the realized curves: the chords of passages
// p1 < p2 link on their vertex circle. The sign is the orientation of the
// ordered pair of branches (p1's, p2's) against the surface orientation.
struct Crossing {
    int p1 = 0;
    int p2 = 0;
    int sign = 0;
    bool boundary = false;  // both branches are path endpoints
    int vertex = 0;
};

struct LoopSystem {
    std::vector<Word> words;
    std::vector<bool> closed;
    std::vector<Passage> passages;
    std::vector<Crossing> crossings;

    // Passage indices of one word, ordered by boundary index.
    std::vector<int> passages_of(int word) const;
};

// Draws the given curves tautly along the skeleton: strands run in parallel
// through each edge band (in a seed-determined transverse order) and cross
// only inside vertex disks, where each passage is a straight chord. Closed
// words must be cyclically reduced; open words must be reduced.
LoopSystem realize(const Skeleton& sk, const std::vector<Word>& words,
                   const std::vector<bool>& closed, std::uint64_t seed);

}  // namespace gtbv
