#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cb/complex.hpp"
#include "cb/error.hpp"
#include "cb/expr.hpp"
#include "cb/mesh.hpp"
#include "cb/mvf.hpp"

namespace cb {

struct PipelineOptions {
    int depth = 8;       // bisection depth for edges and triangles
    double eps = 0.0;    // required distance of a determined enclosure from 0
    unsigned jobs = 1;
};

enum class Status { determined, outflow, undetermined };
const char* to_string(Status s);

struct EdgeVerdict {
    Status status = Status::undetermined;
    int entered = -1;  // triangle index when determined
    int sign = 0;      // sign of n.f, n = (y1 - y0, x0 - x1) for the sorted endpoints
    Interval flux;     // hull of the enclosures of n.f over all pieces
    std::string note;
};

struct TriangleVerdict {
    bool verified = false;  // f has no zero on the triangle
    Interval box_x, box_y;  // offending sub-box when not verified
    std::string note;
};

struct VertexVerdict {
    Status status = Status::undetermined;
    int entered = -1;
    Interval fx, fy;
    std::string note;
};

struct TransversalityReport {
    std::vector<EdgeVerdict> edges;
    std::vector<TriangleVerdict> triangles;
    std::vector<VertexVerdict> vertices;

    // Every edge and vertex determined or outflow. Triangle verdicts are
    // informational here; certification requires them separately.
    bool fully_determined() const;
    std::vector<int> undetermined_edges() const;
    std::vector<int> undetermined_vertices() const;
};

std::array<Interval, 2> interval_eval(const VectorField& f, const Interval& x, const Interval& y);

EdgeVerdict check_edge(const TriMesh& m, const VectorField& f, int edge, const PipelineOptions& opt = {});
TriangleVerdict check_triangle(const TriMesh& m, const VectorField& f, int tri, const PipelineOptions& opt = {});
VertexVerdict vertex_ift(const TriMesh& m, const VectorField& f, int vertex, const PipelineOptions& opt = {});
TransversalityReport check_mesh(const TriMesh& m, const VectorField& f, const PipelineOptions& opt = {});

class Undetermined : public Error {
public:
    Undetermined(const std::string& msg, std::vector<std::string> cells) : Error(msg), cells_(std::move(cells)) {}
    const std::vector<std::string>& cells() const { return cells_; }

private:
    std::vector<std::string> cells_;
};

// Everything derived from a mesh and a field.
struct FlowModel {
    TriMesh mesh;
    CellComplex complex;
    TransversalityReport report;
    MultivectorField mvf;
    std::vector<Cell> vertex_cell, edge_cell, tri_cell;
    std::vector<int> tri_of_cell;  // triangle index per cell, -1 for lower cells
    std::vector<Cell> ift;         // toplex entered by each cell, -1 for outflow
    CellSet outflow;
    CellSet domain;                // all cells except outflow
};

CellComplex mesh_complex(const TriMesh& m);

// Throws Undetermined naming the offending cells.
FlowModel build_mvf(const TriMesh& m, const VectorField& f, const PipelineOptions& opt = {});
FlowModel build_mvf(const TriMesh& m, const VectorField& f, TransversalityReport report, const PipelineOptions& opt);

// Best-effort random jitter of vertices of undetermined cells.
TriMesh perturb_mesh(const TriMesh& m, const VectorField& f, std::uint64_t seed, int rounds,
                     const PipelineOptions& opt = {});

// Immediate future of each cell for a combinatorial field: the toplex of its
// multivector when there is exactly one, -1 otherwise.
std::vector<Cell> ift_from_mvf(const CellComplex& c, const MultivectorField& v);

// Shared cells of the two toplexes flow into each of them. Throws
// PreconditionError when the toplexes share no cell or coincide.
bool detect_circular_intersection(const CellComplex& c, const std::vector<Cell>& ift, Cell s, Cell t);

}  // namespace cb
