#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtbv/rational.hpp"
#include "gtbv/words.hpp"

namespace gtbv {

// Oriented graph with a linear (ciliated) order on the half-edges at each
// vertex and a framing integer per edge (twice the rotation the edge
// contributes when traversed forward). This presents a compact oriented
// surface with boundary together with a trivialized tangent framing.
class Skeleton {
public:
    struct Edge {
        std::string id;
        std::string tail_he;  // half-edge id at the start vertex
        std::string head_he;  // half-edge id at the end vertex
        int rot2 = 0;         // twice the rotation of the forward traversal
    };

    Skeleton() = default;
    Skeleton(std::vector<std::string> vertex_ids,
             std::vector<std::vector<std::string>> vertex_halfedges,
             std::vector<Edge> edges);

    static Skeleton from_json_text(const std::string& text);
    std::string to_json_text() const;

    // Built-in examples: one-vertex torus, three-holed sphere, genus-2.
    static Skeleton builtin(const std::string& name);

    std::size_t num_vertices() const { return vertex_ids_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
    const std::vector<std::vector<std::string>>& vertex_halfedges() const {
        return vertex_halfedges_;
    }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_.at(static_cast<std::size_t>(i)); }

    int edge_index(const std::string& id) const;        // throws UnknownEdge
    int vertex_index(const std::string& id) const;      // throws UnknownVertex
    std::vector<std::string> edge_names() const;
    std::map<std::string, int> edge_name_index() const;

    // Half-edge lookups. A half-edge is identified by (edge, end); at_head
    // selects the head end.
    struct HalfEdge {
        int edge = 0;
        bool at_head = false;
    };
    HalfEdge halfedge(const std::string& he_id) const;
    const std::string& halfedge_id(int edge, bool at_head) const;
    int halfedge_vertex(const std::string& he_id) const;
    int halfedge_position(const std::string& he_id) const;  // index in the vertex list

    // Endpoints of an edge: vertex of the tail / head half-edge.
    int tail_vertex(int edge) const;
    int head_vertex(int edge) const;

    // Structural validation: ids consistent, every half-edge used exactly
    // once by an edge and once in a vertex list. Always enforced on
    // construction; validate() additionally requires connectivity.
    void validate() const;
    bool connected() const;

    struct SurfaceInfo {
        int vertices = 0;
        int edges = 0;
        int boundary_components = 0;
        int genus = 0;
        int euler_characteristic = 0;
    };
    SurfaceInfo surface_info() const;

    // Twice the rotation number of the taut representative of a word drawn
    // along the skeleton. Closed words also count the wrap-around passage.
    // Words must be composable and contain no backtracking.
    int path_rotation2(const Word& w, bool closed) const;

    // Checks that consecutive letters share a vertex (and the wrap for
    // closed words); throws NonComposablePath otherwise.
    void check_composable(const Word& w, bool closed) const;
    int word_start_vertex(const Word& w) const;
    int word_end_vertex(const Word& w) const;

private:
    std::vector<std::string> vertex_ids_;
    std::vector<std::vector<std::string>> vertex_halfedges_;
    std::vector<Edge> edges_;

    std::map<std::string, int> edge_index_;
    std::map<std::string, int> vertex_index_;
    std::map<std::string, std::pair<int, int>> he_location_;  // he -> (vertex, position)
    std::map<std::string, HalfEdge> he_edge_;

    void rebuild_tables();
    void validate_structure() const;

    friend class SkeletonOps;
};

// Substitution of source-edge letters by target words (and back) induced by
// a skeleton move. Edges keep their indices across the moves implemented
// here, so both directions are indexed by the common edge list.
struct SkeletonMoveMap {
    std::vector<Word> forward;   // source edge -> word in the target skeleton
    std::vector<Word> backward;  // target edge -> word in the source skeleton

    static SkeletonMoveMap identity(std::size_t num_edges);
    Word apply(const Word& w) const;    // substitute forward, then reduce
    Word unapply(const Word& w) const;  // substitute backward, then reduce
    // Composite map: this move followed by `next`.
    SkeletonMoveMap then(const SkeletonMoveMap& next) const;
};

struct MoveResult {
    Skeleton target;
    SkeletonMoveMap map;
};

// Reverses the orientation of one edge (rot2 negates, tail/head swap).
MoveResult reverse_edge(const Skeleton& sk, const std::string& edge_id);

// Slides the half-edge `moving_he` along the edge `along`: the moving end
// must sit immediately next to an end of `along` in the cyclic-free linear
// order at their common vertex, and is carried to the far end of `along`.
MoveResult slide(const Skeleton& sk, const std::string& moving_he, const std::string& along);

// Merges vertex v2 into v1 (concatenating the half-edge lists, v1's first).
MoveResult fuse(const Skeleton& sk, const std::string& v1, const std::string& v2);

// Disjoint union of two skeletons; ids must not collide.
Skeleton disjoint_union(const Skeleton& a, const Skeleton& b);

}  // namespace gtbv
