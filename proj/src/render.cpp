#include "cb/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cb/error.hpp"

namespace cb {

namespace {

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string render_svg(const RenderInput& in, const RenderLayers& layers) {
    if (!in.mesh) throw PreconditionError("render needs a mesh");
    const TriMesh& m = *in.mesh;
    if (m.vertices().empty()) throw PreconditionError("render needs a non-empty mesh");
    double x0 = m.vertices()[0].x, x1 = x0, y0 = m.vertices()[0].y, y1 = y0;
    for (const auto& p : m.vertices()) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-12});
    const double margin = 0.03 * in.size;
    const double scale = (in.size - 2 * margin) / span;
    auto px = [&](double x) { return margin + (x - x0) * scale; };
    auto py = [&](double y) { return in.size - margin - (y - y0) * scale; };
    auto point = [&](const Point& p) { return fmt(px(p.x)) + "," + fmt(py(p.y)); };
    auto polygon = [&](int t) {
        const auto& tv = m.triangles()[std::size_t(t)];
        return point(m.vertices()[std::size_t(tv[0])]) + " " + point(m.vertices()[std::size_t(tv[1])]) + " " +
               point(m.vertices()[std::size_t(tv[2])]);
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << in.size << "\" height=\""
        << in.size << "\" viewBox=\"0 0 " << in.size << " " << in.size << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << in.size << "\" height=\"" << in.size << "\" fill=\"white\"/>\n";

    if (layers.sets) {
        out << "<g id=\"sets\">\n";
        for (std::size_t k = 0; k < in.set_triangles.size(); ++k) {
            std::vector<int> tris = in.set_triangles[k];
            std::sort(tris.begin(), tris.end());
            const char* colour = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
            for (int t : tris)
                out << "<polygon class=\"set\" id=\"set" << k << "-t" << t << "\" points=\"" << polygon(t)
                    << "\" fill=\"" << colour << "\" fill-opacity=\"0.45\" stroke=\"none\"/>\n";
        }
        out << "</g>\n";
    }

    if (layers.mesh) {
        out << "<g id=\"mesh\" fill=\"none\" stroke=\"#555555\" stroke-width=\"0.6\">\n";
        for (std::size_t t = 0; t < m.triangles().size(); ++t)
            out << "<polygon class=\"tri\" id=\"t" << t << "\" points=\"" << polygon(int(t)) << "\"/>\n";
        out << "</g>\n";
    }

    if (layers.ticks && in.report) {
        out << "<g id=\"ticks\" stroke-width=\"1.2\">\n";
        for (std::size_t e = 0; e < m.edges().size(); ++e) {
            const auto& ed = m.edges()[e];
            const Point& a = m.vertices()[std::size_t(ed[0])];
            const Point& b = m.vertices()[std::size_t(ed[1])];
            const double mx = px(0.5 * (a.x + b.x)), my = py(0.5 * (a.y + b.y));
            // Screen-space unit normal (dy, -dx) of the edge in model coordinates.
            double nx = b.y - a.y, ny = -(b.x - a.x);
            const double len = std::hypot(nx, ny);
            nx /= len;
            ny /= len;
            const double tick = 0.25 * m.edge_length(int(e)) * scale;
            const auto& v = in.report->edges.at(e);
            std::string colour = "#999999";
            double sx = 0, sy = 0;
            if (v.status != Status::undetermined) {
                colour = v.status == Status::outflow ? "#ff7f0e" : "#000000";
                sx = v.sign * nx * tick;
                sy = -v.sign * ny * tick;  // screen y grows downward
            } else {
                colour = "#e377c2";
                sx = 0.5 * tick * (b.x - a.x) / m.edge_length(int(e));
                sy = -0.5 * tick * (b.y - a.y) / m.edge_length(int(e));
            }
            out << "<line class=\"tick\" id=\"tick-e" << e << "\" x1=\"" << fmt(mx) << "\" y1=\"" << fmt(my)
                << "\" x2=\"" << fmt(mx + sx) << "\" y2=\"" << fmt(my + sy) << "\" stroke=\"" << colour << "\"/>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace cb
