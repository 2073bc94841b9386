#pragma once

#include <array>
#include <vector>

#include "cb/interval.hpp"

namespace cb {

struct Point {
    double x = 0;
    double y = 0;
};

// Planar triangle mesh with derived edge adjacency.
class TriMesh {
public:
    TriMesh() = default;
    // Throws InvalidComplex for out-of-range indices, duplicate vertices,
    // degenerate or folded triangles, or edges with more than two triangles.
    TriMesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles);

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
    // Edges as sorted vertex pairs, in lexicographic order.
    const std::vector<std::array<int, 2>>& edges() const { return edges_; }
    const std::vector<int>& edge_triangles(int e) const { return edge_tris_[std::size_t(e)]; }
    const std::array<int, 3>& triangle_edges(int t) const { return tri_edges_[std::size_t(t)]; }
    const std::vector<int>& vertex_triangles(int v) const { return vertex_tris_[std::size_t(v)]; }
    const std::vector<int>& vertex_edges(int v) const { return vertex_edges_[std::size_t(v)]; }
    int find_edge(int a, int b) const;  // -1 if absent
    bool boundary_edge(int e) const { return edge_tris_[std::size_t(e)].size() == 1; }
    // Vertex of triangle t not on edge e.
    int opposite(int t, int e) const;
    double edge_length(int e) const;

private:
    std::vector<Point> vertices_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<std::vector<int>> edge_tris_;
    std::vector<std::array<int, 3>> tri_edges_;
    std::vector<std::vector<int>> vertex_tris_, vertex_edges_;
};

// Sign of the orientation of (a, b, c), evaluated in interval arithmetic;
// 0 when undecided.
int orientation(const Point& a, const Point& b, const Point& c);

}  // namespace cb
