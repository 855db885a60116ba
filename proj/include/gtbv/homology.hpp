#pragma once

#include <cstdint>
#include <vector>

#include "gtbv/rational.hpp"
#include "gtbv/skeleton.hpp"
#include "gtbv/words.hpp"

namespace gtbv {

// First homology of the surface, with basis dual to the edges outside a
// fixed spanning tree. Classes of loops are exponent sums over those edges.
class HomologyBasis {
public:
    explicit HomologyBasis(const Skeleton& sk);

    int dim() const { return static_cast<int>(basis_edges_.size()); }
    const std::vector<int>& basis_edges() const { return basis_edges_; }
    bool in_tree(int edge) const { return in_tree_.at(static_cast<std::size_t>(edge)); }

    std::vector<Rational> cls(const Word& closed_word) const;
    // A loop through the spanning tree crossing the basis edge once.
    Word representative(int basis_index) const;
    // Representative of an arbitrary class (product of basis loops).
    Word representative(const std::vector<Rational>& v) const;

private:
    const Skeleton* sk_;
    std::vector<bool> in_tree_;
    std::vector<int> basis_edges_;
    std::vector<Word> tree_path_;  // per vertex, word from the root
};

// Intersection numbers of the basis loops, computed from realized signed
// crossings. Antisymmetry and vanishing diagonal are consequences, not
// assumptions.
std::vector<std::vector<Rational>> intersection_matrix(const Skeleton& sk, std::uint64_t seed);

Rational intersection_pairing(const Skeleton& sk, const std::vector<Rational>& u,
                              const std::vector<Rational>& v, std::uint64_t seed);

}  // namespace gtbv
