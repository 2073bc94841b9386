#include "cb/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cb/parallel.hpp"

namespace cb {

const char* to_string(Status s) {
    switch (s) {
        case Status::determined: return "determined";
        case Status::outflow: return "outflow";
        case Status::undetermined: return "undetermined";
    }
    return "?";
}

bool TransversalityReport::fully_determined() const {
    return undetermined_edges().empty() && undetermined_vertices().empty();
}

std::vector<int> TransversalityReport::undetermined_edges() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].status == Status::undetermined) out.push_back(int(i));
    return out;
}

std::vector<int> TransversalityReport::undetermined_vertices() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].status == Status::undetermined) out.push_back(int(i));
    return out;
}

std::array<Interval, 2> interval_eval(const VectorField& f, const Interval& x, const Interval& y) {
    return {f.fx->eval(x, y), f.fy->eval(x, y)};
}

namespace {

Interval cross(const Interval& ax, const Interval& ay, const Interval& bx, const Interval& by) {
    return ax * by - ay * bx;
}

Interval dot(const Interval& ax, const Interval& ay, const Interval& bx, const Interval& by) {
    return ax * bx + ay * by;
}

}  // namespace

EdgeVerdict check_edge(const TriMesh& m, const VectorField& f, int edge, const PipelineOptions& opt) {
    EdgeVerdict out;
    const auto& ed = m.edges().at(std::size_t(edge));
    const Point& p0 = m.vertices()[std::size_t(ed[0])];
    const Point& p1 = m.vertices()[std::size_t(ed[1])];
    if (p0.x == p1.x && p0.y == p1.y) throw InvalidComplex("edge " + std::to_string(edge) + " has zero length");
    const Interval dx = Interval(p1.x) - Interval(p0.x);
    const Interval dy = Interval(p1.y) - Interval(p0.y);

    // Adaptive bisection of the parameter range; each piece is enclosed by
    // substituting x = x0 + t dx, y = y0 + t dy with t ranging over the piece.
    struct Piece {
        double t0, t1;
        int depth;
    };
    std::vector<Piece> todo{{0.0, 1.0, 0}};
    int sign = 0;
    bool first = true;
    while (!todo.empty()) {
        Piece pc = todo.back();
        todo.pop_back();
        Interval t(pc.t0, pc.t1);
        Interval x = Interval(p0.x) + t * dx;
        Interval y = Interval(p0.y) + t * dy;
        auto fv = interval_eval(f, x, y);
        Interval flux = dy * fv[0] - dx * fv[1];
        out.flux = first ? flux : hull(out.flux, flux);
        first = false;
        int s = flux.sign(opt.eps);
        if (s == 0) {
            if (pc.depth < opt.depth) {
                double mid = 0.5 * (pc.t0 + pc.t1);
                todo.push_back({mid, pc.t1, pc.depth + 1});
                todo.push_back({pc.t0, mid, pc.depth + 1});
                continue;
            }
            out.note = "normal component not sign-definite near t in " + to_string(t);
            return out;
        }
        if (sign != 0 && s != sign) {
            out.note = "normal component changes sign along the edge";
            return out;
        }
        sign = s;
    }
    out.sign = sign;
    // n = (dy, -dx) points to the side where orientation(p0, p1, w) < 0.
    const int wanted = sign > 0 ? -1 : 1;
    for (int t : m.edge_triangles(edge)) {
        int w = m.opposite(t, edge);
        if (orientation(p0, p1, m.vertices()[std::size_t(w)]) == wanted) {
            out.status = Status::determined;
            out.entered = t;
            return out;
        }
    }
    out.status = Status::outflow;
    return out;
}

TriangleVerdict check_triangle(const TriMesh& m, const VectorField& f, int tri, const PipelineOptions& opt) {
    TriangleVerdict out;
    const auto& tv = m.triangles().at(std::size_t(tri));
    Point p[3];
    for (int i = 0; i < 3; ++i) p[i] = m.vertices()[std::size_t(tv[std::size_t(i)])];
    const int orient = orientation(p[0], p[1], p[2]);

    // A box is skipped when it lies strictly outside one of the edge lines.
    auto outside = [&](const Interval& bx, const Interval& by) {
        for (int i = 0; i < 3; ++i) {
            const Point& a = p[i];
            const Point& b = p[(i + 1) % 3];
            Interval c = cross(Interval(b.x) - Interval(a.x), Interval(b.y) - Interval(a.y), bx - Interval(a.x),
                               by - Interval(a.y));
            if (c.sign() == -orient) return true;
        }
        return false;
    };

    struct Box {
        Interval x, y;
        int depth;
    };
    Box root{{std::min({p[0].x, p[1].x, p[2].x}), std::max({p[0].x, p[1].x, p[2].x})},
             {std::min({p[0].y, p[1].y, p[2].y}), std::max({p[0].y, p[1].y, p[2].y})},
             0};
    std::vector<Box> todo{root};
    while (!todo.empty()) {
        Box b = todo.back();
        todo.pop_back();
        if (b.depth > 0 && outside(b.x, b.y)) continue;
        auto fv = interval_eval(f, b.x, b.y);
        if (fv[0].sign(opt.eps) != 0 || fv[1].sign(opt.eps) != 0) continue;
        if (b.depth >= opt.depth) {
            out.box_x = b.x;
            out.box_y = b.y;
            out.note = "cannot exclude a zero of f in box " + to_string(b.x) + " x " + to_string(b.y);
            return out;
        }
        double mx = b.x.mid(), my = b.y.mid();
        todo.push_back({{b.x.lo, mx}, {b.y.lo, my}, b.depth + 1});
        todo.push_back({{mx, b.x.hi}, {b.y.lo, my}, b.depth + 1});
        todo.push_back({{b.x.lo, mx}, {my, b.y.hi}, b.depth + 1});
        todo.push_back({{mx, b.x.hi}, {my, b.y.hi}, b.depth + 1});
    }
    out.verified = true;
    return out;
}

VertexVerdict vertex_ift(const TriMesh& m, const VectorField& f, int vertex, const PipelineOptions& opt) {
    VertexVerdict out;
    const Point& v = m.vertices().at(std::size_t(vertex));
    auto fv = interval_eval(f, Interval(v.x), Interval(v.y));
    out.fx = fv[0];
    out.fy = fv[1];
    if (fv[0].sign(opt.eps) == 0 && fv[1].sign(opt.eps) == 0) {
        out.note = "f may vanish at the vertex";
        return out;
    }
    auto dir = [&](int w) {
        const Point& q = m.vertices()[std::size_t(w)];
        return std::array<Interval, 2>{Interval(q.x) - Interval(v.x), Interval(q.y) - Interval(v.y)};
    };
    std::vector<int> inside;
    for (int t : m.vertex_triangles(vertex)) {
        std::vector<int> others;
        for (int w : m.triangles()[std::size_t(t)])
            if (w != vertex) others.push_back(w);
        auto u1 = dir(others[0]);
        auto u2 = dir(others[1]);
        int s = cross(u1[0], u1[1], u2[0], u2[1]).sign();
        if (s == 0) continue;
        int a = cross(u1[0], u1[1], fv[0], fv[1]).sign(opt.eps);
        int b = cross(fv[0], fv[1], u2[0], u2[1]).sign(opt.eps);
        if (a == s && b == s) inside.push_back(t);
    }
    if (inside.size() == 1) {
        out.status = Status::determined;
        out.entered = inside.front();
        return out;
    }
    if (inside.size() > 1) {
        out.note = "direction lies in several sectors";
        return out;
    }
    for (int e : m.vertex_edges(vertex)) {
        const auto& ed = m.edges()[std::size_t(e)];
        auto u = dir(ed[0] == vertex ? ed[1] : ed[0]);
        bool avoids = cross(u[0], u[1], fv[0], fv[1]).sign(opt.eps) != 0 ||
                      dot(u[0], u[1], fv[0], fv[1]).sign(opt.eps) < 0;
        if (!avoids) {
            out.note = "direction of f meets the edge towards vertex " + std::to_string(ed[0] == vertex ? ed[1] : ed[0]);
            return out;
        }
    }
    out.status = Status::outflow;
    return out;
}

TransversalityReport check_mesh(const TriMesh& m, const VectorField& f, const PipelineOptions& opt) {
    TransversalityReport r;
    r.edges.resize(m.edges().size());
    r.triangles.resize(m.triangles().size());
    r.vertices.resize(m.vertices().size());
    const std::size_t ne = r.edges.size(), nt = r.triangles.size(), nv = r.vertices.size();
    parallel_for(ne + nt + nv, opt.jobs, [&](std::size_t i) {
        if (i < ne)
            r.edges[i] = check_edge(m, f, int(i), opt);
        else if (i < ne + nt)
            r.triangles[i - ne] = check_triangle(m, f, int(i - ne), opt);
        else
            r.vertices[i - ne - nt] = vertex_ift(m, f, int(i - ne - nt), opt);
    });
    return r;
}

CellComplex mesh_complex(const TriMesh& m) {
    std::vector<std::vector<int>> simplices;
    for (const auto& t : m.triangles()) simplices.push_back({t[0], t[1], t[2]});
    return CellComplex::simplicial(int(m.vertices().size()), simplices);
}

FlowModel build_mvf(const TriMesh& m, const VectorField& f, const PipelineOptions& opt) {
    return build_mvf(m, f, check_mesh(m, f, opt), opt);
}

FlowModel build_mvf(const TriMesh& m, const VectorField& f, TransversalityReport report, const PipelineOptions& opt) {
    (void)f;
    FlowModel fm;
    fm.mesh = m;
    fm.complex = mesh_complex(m);
    fm.report = std::move(report);
    const auto& c = fm.complex;

    std::vector<std::string> bad;
    for (int e : fm.report.undetermined_edges()) {
        const auto& ed = m.edges()[std::size_t(e)];
        bad.push_back(c.name(*c.find_simplex({ed[0], ed[1]})));
    }
    for (int v : fm.report.undetermined_vertices()) bad.push_back(c.name(*c.find_simplex({v})));
    if (!bad.empty()) {
        std::string msg = "undetermined cells:";
        for (const auto& b : bad) msg += " " + b;
        throw Undetermined(msg, bad);
    }

    fm.tri_of_cell.assign(c.size(), -1);
    fm.ift.assign(c.size(), -1);
    for (std::size_t v = 0; v < m.vertices().size(); ++v) fm.vertex_cell.push_back(*c.find_simplex({int(v)}));
    for (const auto& ed : m.edges()) fm.edge_cell.push_back(*c.find_simplex({ed[0], ed[1]}));
    for (std::size_t t = 0; t < m.triangles().size(); ++t) {
        const auto& tv = m.triangles()[t];
        Cell cell = *c.find_simplex({tv[0], tv[1], tv[2]});
        fm.tri_cell.push_back(cell);
        fm.tri_of_cell[std::size_t(cell)] = int(t);
        fm.ift[std::size_t(cell)] = cell;
    }
    for (std::size_t e = 0; e < m.edges().size(); ++e) {
        const auto& ev = fm.report.edges[e];
        if (ev.status == Status::determined) fm.ift[std::size_t(fm.edge_cell[e])] = fm.tri_cell[std::size_t(ev.entered)];
    }
    for (std::size_t v = 0; v < m.vertices().size(); ++v) {
        const auto& vv = fm.report.vertices[v];
        if (vv.status == Status::determined)
            fm.ift[std::size_t(fm.vertex_cell[v])] = fm.tri_cell[std::size_t(vv.entered)];
    }

    std::vector<CellSet> mvs;
    std::vector<int> slot(c.size(), -1);
    for (Cell t : fm.tri_cell) {
        slot[std::size_t(t)] = int(mvs.size());
        mvs.push_back({});
    }
    for (Cell x = 0; x < Cell(c.size()); ++x) {
        Cell target = fm.ift[std::size_t(x)];
        if (target < 0) {
            fm.outflow.push_back(x);
            mvs.push_back({x});
        } else {
            mvs[std::size_t(slot[std::size_t(target)])].push_back(x);
        }
    }
    fm.mvf = MultivectorField::build(c, std::move(mvs), opt.jobs);
    fm.domain = set_difference(c.all(), fm.outflow);
    return fm;
}

TriMesh perturb_mesh(const TriMesh& m, const VectorField& f, std::uint64_t seed, int rounds,
                     const PipelineOptions& opt) {
    if (rounds <= 0) return m;
    auto score = [&](const TransversalityReport& r) {
        return r.undetermined_edges().size() + r.undetermined_vertices().size();
    };
    TriMesh best = m;
    std::size_t best_score = score(check_mesh(m, f, opt));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int round = 0; round < rounds && best_score > 0; ++round) {
        TransversalityReport r = check_mesh(best, f, opt);
        std::set<int> movers;
        for (int e : r.undetermined_edges())
            for (int v : best.edges()[std::size_t(e)]) movers.insert(v);
        for (int v : r.undetermined_vertices()) movers.insert(v);
        std::vector<Point> pts = best.vertices();
        for (int v : movers) {
            double len = 0;
            for (int e : best.vertex_edges(v)) len = len == 0 ? best.edge_length(e) : std::min(len, best.edge_length(e));
            double rad = 0.1 * len;
            pts[std::size_t(v)].x += rad * unit(rng);
            pts[std::size_t(v)].y += rad * unit(rng);
        }
        try {
            TriMesh cand(pts, best.triangles());
            std::size_t s = score(check_mesh(cand, f, opt));
            if (s < best_score) {
                best = std::move(cand);
                best_score = s;
            }
        } catch (const InvalidComplex&) {
            // jitter folded a triangle; try again
        }
    }
    return best;
}

std::vector<Cell> ift_from_mvf(const CellComplex& c, const MultivectorField& v) {
    const CellSet top = toplexes(c);
    std::vector<Cell> ift(c.size(), -1);
    for (const auto& mv : v.multivectors()) {
        CellSet tops = set_intersection(mv, top);
        if (tops.size() != 1) continue;
        for (Cell x : mv) ift[std::size_t(x)] = tops.front();
    }
    return ift;
}

bool detect_circular_intersection(const CellComplex& c, const std::vector<Cell>& ift, Cell s, Cell t) {
    if (s == t) throw PreconditionError("circular intersection needs two distinct toplexes");
    CellSet shared = set_intersection(c.poset().down(s), c.poset().down(t));
    if (shared.empty()) throw PreconditionError("toplexes " + c.name(s) + " and " + c.name(t) + " share no cell");
    bool into_t = false, into_s = false;
    for (Cell x : shared) {
        into_t = into_t || ift[std::size_t(x)] == t;
        into_s = into_s || ift[std::size_t(x)] == s;
    }
    return into_t && into_s;
}

}  // namespace cb
