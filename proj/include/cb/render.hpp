#pragma once

#include <string>
#include <vector>

#include "cb/mesh.hpp"
#include "cb/pipeline.hpp"

namespace cb {

struct RenderLayers {
    bool mesh = true;
    bool ticks = true;  // needs a report
    bool sets = true;   // needs set triangles
};

struct RenderInput {
    const TriMesh* mesh = nullptr;
    const TransversalityReport* report = nullptr;
    // Triangle indices per invariant set, shaded in order.
    std::vector<std::vector<int>> set_triangles;
    int size = 800;  // output width and height in pixels
};

// Deterministic SVG 1.1: one element with class "tick" per edge, one polygon
// with class "set" per shaded triangle, one polygon with class "tri" per mesh
// triangle.
std::string render_svg(const RenderInput& in, const RenderLayers& layers = {});

}  // namespace cb
