#include "cb/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "cb/error.hpp"

namespace cb {

int orientation(const Point& a, const Point& b, const Point& c) {
    Interval cr = (Interval(b.x) - Interval(a.x)) * (Interval(c.y) - Interval(a.y)) -
                  (Interval(b.y) - Interval(a.y)) * (Interval(c.x) - Interval(a.x));
    return cr.sign();
}

TriMesh::TriMesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
    const int nv = int(vertices_.size());
    std::set<std::pair<double, double>> seen;
    for (int v = 0; v < nv; ++v) {
        const auto& p = vertices_[std::size_t(v)];
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw InvalidComplex("vertex " + std::to_string(v) + " has a non-finite coordinate");
        if (!seen.insert({p.x, p.y}).second) throw InvalidComplex("duplicate vertex " + std::to_string(v));
    }
    std::map<std::array<int, 2>, int> edge_id;
    std::set<std::array<int, 3>> tri_seen;
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        auto tri = triangles_[t];
        for (int v : tri)
            if (v < 0 || v >= nv)
                throw InvalidComplex("triangle " + std::to_string(t) + " uses unknown vertex " + std::to_string(v));
        auto sorted = tri;
        std::sort(sorted.begin(), sorted.end());
        if (sorted[0] == sorted[1] || sorted[1] == sorted[2])
            throw InvalidComplex("triangle " + std::to_string(t) + " repeats a vertex");
        if (!tri_seen.insert(sorted).second) throw InvalidComplex("duplicate triangle " + std::to_string(t));
        if (orientation(vertices_[std::size_t(tri[0])], vertices_[std::size_t(tri[1])],
                        vertices_[std::size_t(tri[2])]) == 0)
            throw InvalidComplex("triangle " + std::to_string(t) + " is degenerate");
        for (int i = 0; i < 3; ++i) {
            std::array<int, 2> e{sorted[i == 2 ? 1 : 0], sorted[i == 0 ? 1 : 2]};
            edge_id.emplace(e, 0);
        }
    }
    for (auto& [e, id] : edge_id) {
        id = int(edges_.size());
        edges_.push_back(e);
    }
    edge_tris_.assign(edges_.size(), {});
    tri_edges_.resize(triangles_.size());
    vertex_tris_.assign(std::size_t(nv), {});
    vertex_edges_.assign(std::size_t(nv), {});
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        for (int i = 0; i < 3; ++i) {
            int a = tri[std::size_t(i)], b = tri[std::size_t((i + 1) % 3)];
            int e = edge_id.at({std::min(a, b), std::max(a, b)});
            tri_edges_[t][std::size_t(i)] = e;
            edge_tris_[std::size_t(e)].push_back(int(t));
            vertex_tris_[std::size_t(a)].push_back(int(t));
        }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        vertex_edges_[std::size_t(edges_[e][0])].push_back(int(e));
        vertex_edges_[std::size_t(edges_[e][1])].push_back(int(e));
        const auto& ts = edge_tris_[e];
        if (ts.size() > 2) throw InvalidComplex("edge " + std::to_string(e) + " has more than two triangles");
        if (ts.size() == 2) {
            const auto& a = vertices_[std::size_t(edges_[e][0])];
            const auto& b = vertices_[std::size_t(edges_[e][1])];
            int s0 = orientation(a, b, vertices_[std::size_t(opposite(ts[0], int(e)))]);
            int s1 = orientation(a, b, vertices_[std::size_t(opposite(ts[1], int(e)))]);
            if (s0 == s1) throw InvalidComplex("edge " + std::to_string(e) + " has both triangles on one side");
        }
    }
}

int TriMesh::find_edge(int a, int b) const {
    std::array<int, 2> key{std::min(a, b), std::max(a, b)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return -1;
    return int(it - edges_.begin());
}

int TriMesh::opposite(int t, int e) const {
    const auto& ed = edges_[std::size_t(e)];
    for (int v : triangles_[std::size_t(t)])
        if (v != ed[0] && v != ed[1]) return v;
    throw InternalError("edge is not a side of the triangle");
}

double TriMesh::edge_length(int e) const {
    const auto& a = vertices_[std::size_t(edges_[std::size_t(e)][0])];
    const auto& b = vertices_[std::size_t(edges_[std::size_t(e)][1])];
    return std::hypot(b.x - a.x, b.y - a.y);
}

}  // namespace cb
