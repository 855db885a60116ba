#include "gtbv/skeleton.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <json.hpp>

#include "gtbv/errors.hpp"

namespace gtbv {

using nlohmann::json;

Skeleton::Skeleton(std::vector<std::string> vertex_ids,
                   std::vector<std::vector<std::string>> vertex_halfedges,
                   std::vector<Edge> edges)
    : vertex_ids_(std::move(vertex_ids)),
      vertex_halfedges_(std::move(vertex_halfedges)),
      edges_(std::move(edges)) {
    rebuild_tables();
    validate_structure();
}

void Skeleton::rebuild_tables() {
    edge_index_.clear();
    vertex_index_.clear();
    he_location_.clear();
    he_edge_.clear();
    if (vertex_ids_.size() != vertex_halfedges_.size()) {
        throw Error(ErrorCode::MalformedSkeleton, "vertex id/halfedge list size mismatch");
    }
    for (std::size_t v = 0; v < vertex_ids_.size(); ++v) {
        if (!vertex_index_.emplace(vertex_ids_[v], static_cast<int>(v)).second) {
            throw Error(ErrorCode::MalformedSkeleton, "duplicate vertex id " + vertex_ids_[v]);
        }
        for (std::size_t p = 0; p < vertex_halfedges_[v].size(); ++p) {
            const std::string& he = vertex_halfedges_[v][p];
            if (!he_location_.emplace(he, std::make_pair(static_cast<int>(v), static_cast<int>(p)))
                     .second) {
                throw Error(ErrorCode::MalformedSkeleton, "half-edge " + he + " listed twice");
            }
        }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (!edge_index_.emplace(ed.id, static_cast<int>(e)).second) {
            throw Error(ErrorCode::MalformedSkeleton, "duplicate edge id " + ed.id);
        }
        if (!he_edge_.emplace(ed.tail_he, HalfEdge{static_cast<int>(e), false}).second) {
            throw Error(ErrorCode::MalformedSkeleton,
                        "half-edge " + ed.tail_he + " used by two edges");
        }
        if (!he_edge_.emplace(ed.head_he, HalfEdge{static_cast<int>(e), true}).second) {
            throw Error(ErrorCode::MalformedSkeleton,
                        "half-edge " + ed.head_he + " used by two edges");
        }
    }
}

void Skeleton::validate_structure() const {
    for (const auto& [he, loc] : he_location_) {
        (void)loc;
        if (he_edge_.find(he) == he_edge_.end()) {
            throw Error(ErrorCode::MalformedSkeleton,
                        "half-edge " + he + " attached to a vertex but not to any edge");
        }
    }
    for (const auto& [he, ref] : he_edge_) {
        (void)ref;
        if (he_location_.find(he) == he_location_.end()) {
            throw Error(ErrorCode::MalformedSkeleton,
                        "half-edge " + he + " used by an edge but not placed at a vertex");
        }
    }
    if (vertex_ids_.empty()) {
        throw Error(ErrorCode::MalformedSkeleton, "skeleton has no vertices");
    }
}

bool Skeleton::connected() const {
    std::vector<int> comp(vertex_ids_.size());
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (comp[static_cast<std::size_t>(x)] != x) {
            comp[static_cast<std::size_t>(x)] =
                comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(x)])];
            x = comp[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        int a = find(tail_vertex(static_cast<int>(e)));
        int b = find(head_vertex(static_cast<int>(e)));
        if (a != b) comp[static_cast<std::size_t>(a)] = b;
    }
    int root = find(0);
    for (std::size_t v = 1; v < vertex_ids_.size(); ++v) {
        if (find(static_cast<int>(v)) != root) return false;
    }
    return true;
}

void Skeleton::validate() const {
    validate_structure();
    if (!connected()) {
        throw Error(ErrorCode::MalformedSkeleton, "skeleton is not connected");
    }
}

int Skeleton::edge_index(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw Error(ErrorCode::UnknownEdge, "unknown edge " + id);
    return it->second;
}

int Skeleton::vertex_index(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) throw Error(ErrorCode::UnknownVertex, "unknown vertex " + id);
    return it->second;
}

std::vector<std::string> Skeleton::edge_names() const {
    std::vector<std::string> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) out.push_back(e.id);
    return out;
}

std::map<std::string, int> Skeleton::edge_name_index() const { return edge_index_; }

Skeleton::HalfEdge Skeleton::halfedge(const std::string& he_id) const {
    auto it = he_edge_.find(he_id);
    if (it == he_edge_.end()) {
        throw Error(ErrorCode::MalformedSkeleton, "unknown half-edge " + he_id);
    }
    return it->second;
}

const std::string& Skeleton::halfedge_id(int edge, bool at_head) const {
    const Edge& e = edges_.at(static_cast<std::size_t>(edge));
    return at_head ? e.head_he : e.tail_he;
}

int Skeleton::halfedge_vertex(const std::string& he_id) const {
    auto it = he_location_.find(he_id);
    if (it == he_location_.end()) {
        throw Error(ErrorCode::MalformedSkeleton, "unplaced half-edge " + he_id);
    }
    return it->second.first;
}

int Skeleton::halfedge_position(const std::string& he_id) const {
    auto it = he_location_.find(he_id);
    if (it == he_location_.end()) {
        throw Error(ErrorCode::MalformedSkeleton, "unplaced half-edge " + he_id);
    }
    return it->second.second;
}

int Skeleton::tail_vertex(int edge) const {
    return halfedge_vertex(edges_.at(static_cast<std::size_t>(edge)).tail_he);
}

int Skeleton::head_vertex(int edge) const {
    return halfedge_vertex(edges_.at(static_cast<std::size_t>(edge)).head_he);
}

Skeleton::SurfaceInfo Skeleton::surface_info() const {
    validate();
    SurfaceInfo info;
    info.vertices = static_cast<int>(vertex_ids_.size());
    info.edges = static_cast<int>(edges_.size());
    info.euler_characteristic = info.vertices - info.edges;
    // Trace boundary cycles of the fattened surface. A dart is an oriented
    // traversal of an edge; arriving at a vertex it continues along the next
    // half-edge counterclockwise.
    const int E = info.edges;
    std::vector<bool> seen(static_cast<std::size_t>(2 * E), false);
    int faces = 0;
    for (int start = 0; start < 2 * E; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        ++faces;
        int d = start;
        while (!seen[static_cast<std::size_t>(d)]) {
            seen[static_cast<std::size_t>(d)] = true;
            int e = d / 2;
            bool forward = (d % 2) == 0;
            const std::string& arrive_he = forward ? edges_[static_cast<std::size_t>(e)].head_he
                                                   : edges_[static_cast<std::size_t>(e)].tail_he;
            auto [v, pos] = he_location_.at(arrive_he);
            const auto& list = vertex_halfedges_[static_cast<std::size_t>(v)];
            int next_pos = (pos + 1) % static_cast<int>(list.size());
            HalfEdge next = halfedge(list[static_cast<std::size_t>(next_pos)]);
            // Leaving through the tail runs the edge forward.
            d = 2 * next.edge + (next.at_head ? 1 : 0);
        }
    }
    info.boundary_components = faces;
    info.genus = (2 - faces - info.euler_characteristic) / 2;
    return info;
}

namespace {

struct PassageEnds {
    int arrive_vertex;
    int arrive_pos;
    int depart_vertex;
    int depart_pos;
};

}  // namespace

void Skeleton::check_composable(const Word& w, bool closed) const {
    if (w.empty()) return;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].edge < 0 || w[i].edge >= static_cast<int>(edges_.size())) {
            throw Error(ErrorCode::UnknownEdge, "word letter uses an unknown edge index");
        }
    }
    std::size_t last = closed ? w.size() : w.size() - 1;
    for (std::size_t i = 0; i < last; ++i) {
        const Letter& cur = w[i];
        const Letter& nxt = w[(i + 1) % w.size()];
        int v_end = cur.inv ? tail_vertex(cur.edge) : head_vertex(cur.edge);
        int v_start = nxt.inv ? head_vertex(nxt.edge) : tail_vertex(nxt.edge);
        if (v_end != v_start) {
            throw Error(ErrorCode::NonComposablePath,
                        "consecutive letters do not share a vertex");
        }
    }
}

int Skeleton::word_start_vertex(const Word& w) const {
    if (w.empty()) throw Error(ErrorCode::BadArgument, "empty word has no start vertex");
    return w.front().inv ? head_vertex(w.front().edge) : tail_vertex(w.front().edge);
}

int Skeleton::word_end_vertex(const Word& w) const {
    if (w.empty()) throw Error(ErrorCode::BadArgument, "empty word has no end vertex");
    return w.back().inv ? tail_vertex(w.back().edge) : head_vertex(w.back().edge);
}

int Skeleton::path_rotation2(const Word& w, bool closed) const {
    if (w.empty()) return 0;
    check_composable(w, closed);
    int rot2 = 0;
    for (const Letter& l : w) {
        rot2 += l.inv ? -edges_[static_cast<std::size_t>(l.edge)].rot2
                      : edges_[static_cast<std::size_t>(l.edge)].rot2;
    }
    std::size_t last = closed ? w.size() : w.size() - 1;
    for (std::size_t i = 0; i < last; ++i) {
        const Letter& cur = w[i];
        const Letter& nxt = w[(i + 1) % w.size()];
        const Edge& ce = edges_[static_cast<std::size_t>(cur.edge)];
        const Edge& ne = edges_[static_cast<std::size_t>(nxt.edge)];
        const std::string& arrive = cur.inv ? ce.tail_he : ce.head_he;
        const std::string& depart = nxt.inv ? ne.head_he : ne.tail_he;
        if (arrive == depart) {
            throw Error(ErrorCode::BadArgument,
                        "word backtracks; rotation requires a reduced word");
        }
        int pa = halfedge_position(arrive);
        int pd = halfedge_position(depart);
        // Taut chord through the vertex: departing further counterclockwise
        // costs a half-turn clockwise, and vice versa.
        rot2 += (pd > pa) ? -1 : 1;
    }
    return rot2;
}

Skeleton Skeleton::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid skeleton JSON: ") + e.what(),
                         static_cast<std::size_t>(e.byte));
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") ||
        !j["vertices"].is_array() || !j["edges"].is_array()) {
        throw Error(ErrorCode::MalformedSkeleton,
                    "skeleton JSON must be an object with vertices and edges arrays");
    }
    std::vector<std::string> vids;
    std::vector<std::vector<std::string>> vhes;
    for (const auto& v : j["vertices"]) {
        if (!v.is_object() || !v.contains("id") || !v.contains("halfedges") ||
            !v["id"].is_string() || !v["halfedges"].is_array()) {
            throw Error(ErrorCode::MalformedSkeleton,
                        "each vertex needs a string id and a halfedges array");
        }
        vids.push_back(v["id"].get<std::string>());
        std::vector<std::string> hes;
        for (const auto& h : v["halfedges"]) {
            if (!h.is_string()) {
                throw Error(ErrorCode::MalformedSkeleton, "halfedge ids must be strings");
            }
            hes.push_back(h.get<std::string>());
        }
        vhes.push_back(std::move(hes));
    }
    std::vector<Edge> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_object() || !e.contains("id") || !e.contains("tail") || !e.contains("head") ||
            !e["id"].is_string() || !e["tail"].is_string() || !e["head"].is_string()) {
            throw Error(ErrorCode::MalformedSkeleton,
                        "each edge needs string id, tail, head fields");
        }
        Edge ed;
        ed.id = e["id"].get<std::string>();
        ed.tail_he = e["tail"].get<std::string>();
        ed.head_he = e["head"].get<std::string>();
        if (e.contains("rot2")) {
            if (!e["rot2"].is_number_integer()) {
                throw Error(ErrorCode::MalformedSkeleton, "edge rot2 must be an integer");
            }
            ed.rot2 = e["rot2"].get<int>();
        }
        edges.push_back(std::move(ed));
    }
    Skeleton sk(std::move(vids), std::move(vhes), std::move(edges));
    sk.validate();
    return sk;
}

std::string Skeleton::to_json_text() const {
    json j;
    j["vertices"] = json::array();
    for (std::size_t v = 0; v < vertex_ids_.size(); ++v) {
        json jv;
        jv["id"] = vertex_ids_[v];
        jv["halfedges"] = vertex_halfedges_[v];
        j["vertices"].push_back(jv);
    }
    j["edges"] = json::array();
    for (const Edge& e : edges_) {
        json je;
        je["id"] = e.id;
        je["tail"] = e.tail_he;
        je["head"] = e.head_he;
        je["rot2"] = e.rot2;
        j["edges"].push_back(je);
    }
    return j.dump(2);
}

Skeleton Skeleton::builtin(const std::string& name) {
    if (name == "torus") {
        return Skeleton({"v0"}, {{"a+", "b+", "a-", "b-"}},
                        {{"a", "a+", "a-", 0}, {"b", "b+", "b-", 0}});
    }
    if (name == "pants") {
        return Skeleton({"v0"}, {{"a+", "a-", "b+", "b-"}},
                        {{"a", "a+", "a-", 0}, {"b", "b+", "b-", 0}});
    }
    if (name == "genus2") {
        return Skeleton({"v0"}, {{"a+", "b+", "a-", "b-", "c+", "d+", "c-", "d-"}},
                        {{"a", "a+", "a-", 0},
                         {"b", "b+", "b-", 0},
                         {"c", "c+", "c-", 0},
                         {"d", "d+", "d-", 0}});
    }
    throw Error(ErrorCode::BadArgument, "unknown builtin surface " + name);
}

SkeletonMoveMap SkeletonMoveMap::identity(std::size_t num_edges) {
    SkeletonMoveMap m;
    m.forward.resize(num_edges);
    m.backward.resize(num_edges);
    for (std::size_t e = 0; e < num_edges; ++e) {
        m.forward[e] = {Letter{static_cast<int>(e), false}};
        m.backward[e] = {Letter{static_cast<int>(e), false}};
    }
    return m;
}

namespace {

Word substitute(const Word& w, const std::vector<Word>& table) {
    Word out;
    for (const Letter& l : w) {
        const Word& rep = table.at(static_cast<std::size_t>(l.edge));
        if (!l.inv) {
            out.insert(out.end(), rep.begin(), rep.end());
        } else {
            Word r = inverse_word(rep);
            out.insert(out.end(), r.begin(), r.end());
        }
    }
    return reduce(out);
}

}  // namespace

Word SkeletonMoveMap::apply(const Word& w) const { return substitute(w, forward); }
Word SkeletonMoveMap::unapply(const Word& w) const { return substitute(w, backward); }

SkeletonMoveMap SkeletonMoveMap::then(const SkeletonMoveMap& next) const {
    SkeletonMoveMap out;
    out.forward.resize(forward.size());
    out.backward.resize(next.backward.size());
    for (std::size_t e = 0; e < forward.size(); ++e) {
        out.forward[e] = next.apply(forward[e]);
    }
    for (std::size_t e = 0; e < next.backward.size(); ++e) {
        out.backward[e] = unapply(next.backward[e]);
    }
    return out;
}

MoveResult reverse_edge(const Skeleton& sk, const std::string& edge_id) {
    int ei = sk.edge_index(edge_id);
    std::vector<Skeleton::Edge> edges = sk.edges();
    std::swap(edges[static_cast<std::size_t>(ei)].tail_he,
              edges[static_cast<std::size_t>(ei)].head_he);
    edges[static_cast<std::size_t>(ei)].rot2 = -edges[static_cast<std::size_t>(ei)].rot2;
    MoveResult res{Skeleton(sk.vertex_ids(), sk.vertex_halfedges(), std::move(edges)),
                   SkeletonMoveMap::identity(sk.num_edges())};
    res.map.forward[static_cast<std::size_t>(ei)] = {Letter{ei, true}};
    res.map.backward[static_cast<std::size_t>(ei)] = {Letter{ei, true}};
    return res;
}

MoveResult slide(const Skeleton& sk, const std::string& moving_he, const std::string& along) {
    const Skeleton::HalfEdge m = sk.halfedge(moving_he);
    const int ei = sk.edge_index(along);
    if (m.edge == ei) {
        throw Error(ErrorCode::IllegalSlide, "cannot slide an edge end along its own edge");
    }
    const Skeleton::Edge& e = sk.edge(ei);
    const int v = sk.halfedge_vertex(moving_he);
    const int pos_m = sk.halfedge_position(moving_he);

    // Find the unique end of `along` adjacent to the moving half-edge at v.
    std::string hv;
    bool along_head_at_v = false;
    int found = 0;
    for (bool at_head : {false, true}) {
        const std::string& cand = at_head ? e.head_he : e.tail_he;
        if (sk.halfedge_vertex(cand) == v &&
            std::abs(sk.halfedge_position(cand) - pos_m) == 1) {
            hv = cand;
            along_head_at_v = at_head;
            ++found;
        }
    }
    if (found == 0) {
        throw Error(ErrorCode::IllegalSlide,
                    "moving half-edge is not adjacent to an end of the slide edge");
    }
    if (found == 2) {
        throw Error(ErrorCode::IllegalSlide,
                    "slide is ambiguous: both ends of the edge are adjacent");
    }
    const std::string hu = along_head_at_v ? e.tail_he : e.head_he;
    const int u = sk.halfedge_vertex(hu);
    const bool after_hv = pos_m == sk.halfedge_position(hv) + 1;

    // Rebuild vertex lists: remove the moving half-edge from v, insert next
    // to hu at u. Passing the far attachment on the side away from the band:
    // an end that trailed hv lands just before hu, and conversely.
    std::vector<std::vector<std::string>> vhes = sk.vertex_halfedges();
    {
        auto& lv = vhes[static_cast<std::size_t>(v)];
        lv.erase(std::find(lv.begin(), lv.end(), moving_he));
    }
    {
        auto& lu = vhes[static_cast<std::size_t>(u)];
        auto it = std::find(lu.begin(), lu.end(), hu);
        if (after_hv) {
            lu.insert(it, moving_he);
        } else {
            lu.insert(it + 1, moving_he);
        }
    }

    // Transport of the slid edge through the band of `along`.
    const int f = m.edge;
    SkeletonMoveMap map = SkeletonMoveMap::identity(sk.num_edges());
    Word fwd, bwd;
    if (!m.at_head) {
        // Tail of f moves: the old f is (path v -> u) then the new f.
        if (along_head_at_v) {
            fwd = {Letter{ei, true}, Letter{f, false}};
            bwd = {Letter{ei, false}, Letter{f, false}};
        } else {
            fwd = {Letter{ei, false}, Letter{f, false}};
            bwd = {Letter{ei, true}, Letter{f, false}};
        }
    } else {
        // Head of f moves: the old f is the new f then (path u -> v).
        if (along_head_at_v) {
            fwd = {Letter{f, false}, Letter{ei, false}};
            bwd = {Letter{f, false}, Letter{ei, true}};
        } else {
            fwd = {Letter{f, false}, Letter{ei, true}};
            bwd = {Letter{f, false}, Letter{ei, false}};
        }
    }
    map.forward[static_cast<std::size_t>(f)] = fwd;
    map.backward[static_cast<std::size_t>(f)] = bwd;

    std::vector<Skeleton::Edge> edges = sk.edges();
    edges[static_cast<std::size_t>(f)].rot2 = sk.path_rotation2(bwd, false);

    MoveResult res{Skeleton(sk.vertex_ids(), std::move(vhes), std::move(edges)), std::move(map)};
    return res;
}

MoveResult fuse(const Skeleton& sk, const std::string& v1, const std::string& v2) {
    int i1 = sk.vertex_index(v1);
    int i2 = sk.vertex_index(v2);
    if (i1 == i2) throw Error(ErrorCode::IllegalFusion, "cannot fuse a vertex with itself");
    std::vector<std::string> vids;
    std::vector<std::vector<std::string>> vhes;
    for (std::size_t v = 0; v < sk.num_vertices(); ++v) {
        if (static_cast<int>(v) == i2) continue;
        vids.push_back(sk.vertex_ids()[v]);
        std::vector<std::string> list = sk.vertex_halfedges()[v];
        if (static_cast<int>(v) == i1) {
            const auto& l2 = sk.vertex_halfedges()[static_cast<std::size_t>(i2)];
            list.insert(list.end(), l2.begin(), l2.end());
        }
        vhes.push_back(std::move(list));
    }
    MoveResult res{Skeleton(std::move(vids), std::move(vhes), sk.edges()),
                   SkeletonMoveMap::identity(sk.num_edges())};
    return res;
}

Skeleton disjoint_union(const Skeleton& a, const Skeleton& b) {
    std::set<std::string> ids;
    for (const auto& v : a.vertex_ids()) ids.insert(v);
    for (const auto& v : b.vertex_ids()) {
        if (!ids.insert(v).second) {
            throw Error(ErrorCode::IllegalFusion, "vertex id collision in union: " + v);
        }
    }
    std::set<std::string> eids;
    std::set<std::string> hids;
    for (const auto& e : a.edges()) {
        eids.insert(e.id);
        hids.insert(e.tail_he);
        hids.insert(e.head_he);
    }
    for (const auto& e : b.edges()) {
        if (!eids.insert(e.id).second) {
            throw Error(ErrorCode::IllegalFusion, "edge id collision in union: " + e.id);
        }
        if (!hids.insert(e.tail_he).second || !hids.insert(e.head_he).second) {
            throw Error(ErrorCode::IllegalFusion, "half-edge id collision in union");
        }
    }
    std::vector<std::string> vids = a.vertex_ids();
    vids.insert(vids.end(), b.vertex_ids().begin(), b.vertex_ids().end());
    std::vector<std::vector<std::string>> vhes = a.vertex_halfedges();
    vhes.insert(vhes.end(), b.vertex_halfedges().begin(), b.vertex_halfedges().end());
    std::vector<Skeleton::Edge> edges = a.edges();
    edges.insert(edges.end(), b.edges().begin(), b.edges().end());
    return Skeleton(std::move(vids), std::move(vhes), std::move(edges));
}

}  // namespace gtbv
