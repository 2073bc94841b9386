#include "cb/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cb/error.hpp"

namespace cb {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("cannot write " + path);
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
    }
}

namespace {

// Wraps nlohmann type errors so callers see one error family.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(std::string("bad ") + what + " JSON: " + e.what());
    }
}

}  // namespace

ComplexSpec complex_spec_from_json(const json& j) {
    return guarded("complex", [&] {
        ComplexSpec s;
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "simplicial") {
            s.kind = ComplexKind::simplicial;
            s.vertices = j.at("vertices").get<int>();
            s.simplices = j.at("cells").get<std::vector<std::vector<int>>>();
        } else if (kind == "cw") {
            s.kind = ComplexKind::cw;
            for (const auto& cj : j.at("cells")) {
                CwCellSpec cs;
                cs.id = cj.at("id").get<std::string>();
                cs.dim = cj.at("dim").get<int>();
                if (cj.contains("facets"))
                    for (const auto& fj : cj.at("facets"))
                        cs.facets.emplace_back(fj.at("id").get<std::string>(), fj.at("sign").get<int>());
                s.cells.push_back(std::move(cs));
            }
        } else {
            throw Error("unknown complex kind '" + kind + "'");
        }
        return s;
    });
}

json complex_spec_to_json(const ComplexSpec& s) {
    json j;
    if (s.kind == ComplexKind::simplicial) {
        j["kind"] = "simplicial";
        j["vertices"] = s.vertices;
        j["cells"] = s.simplices;
    } else {
        j["kind"] = "cw";
        json cells = json::array();
        for (const auto& cs : s.cells) {
            json facets = json::array();
            for (const auto& [id, sign] : cs.facets) facets.push_back({{"id", id}, {"sign", sign}});
            cells.push_back({{"id", cs.id}, {"dim", cs.dim}, {"facets", facets}});
        }
        j["cells"] = cells;
    }
    return j;
}

json complex_to_json(const CellComplex& c) { return complex_spec_to_json(c.spec()); }

CellComplex read_complex(const std::string& path) {
    return CellComplex::build(complex_spec_from_json(parse_json(read_file(path))));
}

std::vector<CellSet> mvf_from_json(const CellComplex& c, const json& j) {
    return guarded("multivector field", [&] {
        std::vector<CellSet> out;
        for (const auto& mj : j.at("multivectors")) out.push_back(c.ids(mj.get<std::vector<std::string>>()));
        return out;
    });
}

json mvf_to_json(const CellComplex& c, const MultivectorField& v) {
    json mvs = json::array();
    for (const auto& m : v.multivectors()) mvs.push_back(c.names(m));
    return {{"multivectors", mvs}};
}

TriMesh mesh_from_json(const json& j) {
    return guarded("mesh", [&] {
        std::vector<Point> pts;
        for (const auto& pj : j.at("vertices")) {
            if (pj.size() != 2) throw Error("mesh vertex needs two coordinates");
            pts.push_back({pj.at(0).get<double>(), pj.at(1).get<double>()});
        }
        auto tris = j.at("triangles").get<std::vector<std::array<int, 3>>>();
        return TriMesh(std::move(pts), std::move(tris));
    });
}

json mesh_to_json(const TriMesh& m) {
    json verts = json::array();
    for (const auto& p : m.vertices()) verts.push_back({p.x, p.y});
    return {{"vertices", verts}, {"triangles", m.triangles()}};
}

TriMesh read_mesh(const std::string& path) { return mesh_from_json(parse_json(read_file(path))); }

VectorField read_field(const std::string& path_or_text) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(path_or_text, ec)) return parse_vector_field(read_file(path_or_text));
    return parse_vector_field(path_or_text);
}

json cells_to_json(const CellComplex& c, const CellSet& s) { return c.names(s); }

CellSet cells_from_json(const CellComplex& c, const json& j) {
    return guarded("cell list", [&] { return c.ids(j.get<std::vector<std::string>>()); });
}

namespace {

json bound_to_json(double d) {
    if (std::isfinite(d)) return d;
    return d > 0 ? "inf" : "-inf";
}

double bound_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        throw Error("bad interval bound '" + s + "'");
    }
    return j.get<double>();
}

Status status_from_string(const std::string& s) {
    if (s == "determined") return Status::determined;
    if (s == "outflow") return Status::outflow;
    if (s == "undetermined") return Status::undetermined;
    throw Error("unknown verdict status '" + s + "'");
}

}  // namespace

json interval_to_json(const Interval& i) { return {bound_to_json(i.lo), bound_to_json(i.hi)}; }

Interval interval_from_json(const json& j) { return {bound_from_json(j.at(0)), bound_from_json(j.at(1))}; }

json report_to_json(const TriMesh& m, const TransversalityReport& r) {
    json edges = json::array(), tris = json::array(), verts = json::array();
    for (std::size_t i = 0; i < r.edges.size(); ++i) {
        const auto& e = r.edges[i];
        edges.push_back({{"id", i},
                         {"vertices", m.edges()[i]},
                         {"status", to_string(e.status)},
                         {"entered", e.entered},
                         {"sign", e.sign},
                         {"flux", interval_to_json(e.flux)},
                         {"note", e.note}});
    }
    for (std::size_t i = 0; i < r.triangles.size(); ++i) {
        const auto& t = r.triangles[i];
        tris.push_back({{"id", i},
                        {"vertices", m.triangles()[i]},
                        {"verified", t.verified},
                        {"box_x", interval_to_json(t.box_x)},
                        {"box_y", interval_to_json(t.box_y)},
                        {"note", t.note}});
    }
    for (std::size_t i = 0; i < r.vertices.size(); ++i) {
        const auto& v = r.vertices[i];
        verts.push_back({{"id", i},
                         {"status", to_string(v.status)},
                         {"entered", v.entered},
                         {"fx", interval_to_json(v.fx)},
                         {"fy", interval_to_json(v.fy)},
                         {"note", v.note}});
    }
    return {{"fully_determined", r.fully_determined()},
            {"undetermined_edges", r.undetermined_edges()},
            {"undetermined_vertices", r.undetermined_vertices()},
            {"edges", edges},
            {"triangles", tris},
            {"vertices", verts}};
}

TransversalityReport report_from_json(const json& j) {
    return guarded("report", [&] {
        TransversalityReport r;
        for (const auto& ej : j.at("edges")) {
            EdgeVerdict e;
            e.status = status_from_string(ej.at("status").get<std::string>());
            e.entered = ej.at("entered").get<int>();
            e.sign = ej.at("sign").get<int>();
            e.flux = interval_from_json(ej.at("flux"));
            e.note = ej.at("note").get<std::string>();
            r.edges.push_back(std::move(e));
        }
        for (const auto& tj : j.at("triangles")) {
            TriangleVerdict t;
            t.verified = tj.at("verified").get<bool>();
            t.box_x = interval_from_json(tj.at("box_x"));
            t.box_y = interval_from_json(tj.at("box_y"));
            t.note = tj.at("note").get<std::string>();
            r.triangles.push_back(std::move(t));
        }
        for (const auto& vj : j.at("vertices")) {
            VertexVerdict v;
            v.status = status_from_string(vj.at("status").get<std::string>());
            v.entered = vj.at("entered").get<int>();
            v.fx = interval_from_json(vj.at("fx"));
            v.fy = interval_from_json(vj.at("fy"));
            v.note = vj.at("note").get<std::string>();
            r.vertices.push_back(std::move(v));
        }
        return r;
    });
}

json morse_to_json(const CellComplex& c, const MorseDecomposition& md) {
    json sets = json::array();
    for (std::size_t i = 0; i < md.sets.size(); ++i)
        sets.push_back({{"id", i}, {"index", md.sets[i].index}, {"cells", c.names(md.sets[i].cells)}});
    json edges = json::array();
    for (auto [a, b] : md.edges) edges.push_back({a, b});
    return {{"sets", sets}, {"edges", edges}};
}

MorseDecomposition morse_from_json(const CellComplex& c, const json& j) {
    return guarded("Morse graph", [&] {
        MorseDecomposition md;
        for (const auto& sj : j.at("sets"))
            md.sets.push_back({cells_from_json(c, sj.at("cells")), sj.at("index").get<std::vector<int>>()});
        for (const auto& ej : j.at("edges")) md.edges.emplace_back(ej.at(0).get<int>(), ej.at(1).get<int>());
        return md;
    });
}

std::string morse_to_dot(const CellComplex& c, const MorseDecomposition& md) {
    std::ostringstream out;
    out << "digraph morse {\n";
    for (std::size_t i = 0; i < md.sets.size(); ++i)
        out << "  m" << i << " [label=\"M" << i << "\\n" << to_string(md.sets[i].index) << "\\n"
            << md.sets[i].cells.size() << " cells\"];\n";
    for (auto [a, b] : md.edges) out << "  m" << a << " -> m" << b << ";\n";
    out << "}\n";
    (void)c;
    return out.str();
}

json section_to_json(const CellComplex& c, const SectionData& sd) {
    json levels = json::array(), shifts = json::array();
    for (const auto& l : sd.levels) levels.push_back(c.names(l));
    for (const auto& s : sd.shifts) shifts.push_back(c.names(s));
    return {{"A", c.names(sd.A)},    {"P", c.names(sd.P)},       {"H", c.names(sd.H)}, {"R", c.names(sd.R)},
            {"Pbar", c.names(sd.Pbar)}, {"dist", sd.dist},       {"L", sd.L},          {"nbar", sd.nbar},
            {"levels", levels},      {"n", sd.n},                {"shifts", shifts},   {"kmax", sd.kmax}};
}

SectionData section_from_json(const CellComplex& c, const json& j) {
    return guarded("section", [&] {
        SectionData sd;
        sd.A = cells_from_json(c, j.at("A"));
        sd.P = cells_from_json(c, j.at("P"));
        sd.H = cells_from_json(c, j.at("H"));
        sd.R = cells_from_json(c, j.at("R"));
        sd.Pbar = cells_from_json(c, j.at("Pbar"));
        sd.dist = j.at("dist").get<std::vector<int>>();
        sd.L = j.at("L").get<std::vector<int>>();
        sd.nbar = j.at("nbar").get<int>();
        for (const auto& l : j.at("levels")) sd.levels.push_back(cells_from_json(c, l));
        sd.n = j.at("n").get<std::vector<int>>();
        for (const auto& s : j.at("shifts")) sd.shifts.push_back(cells_from_json(c, s));
        sd.kmax = j.at("kmax").get<int>();
        return sd;
    });
}

json certificate_to_json(const Certificate& cert) {
    json ledger = json::array();
    for (const auto& e : cert.ledger) ledger.push_back({{"name", e.name}, {"ok", e.ok}, {"evidence", e.evidence}});
    return {{"issued", cert.issued},
            {"version", cert.version},
            {"complex_hash", cert.complex_hash},
            {"field_hash", cert.field_hash},
            {"A", cert.A},
            {"index", cert.index},
            {"r", cert.r},
            {"P", cert.P},
            {"kmax", cert.kmax},
            {"families", cert.families},
            {"ledger", ledger},
            {"theorem_backed", cert.theorem_backed},
            {"rejection", cert.rejection}};
}

Certificate certificate_from_json(const json& j) {
    return guarded("certificate", [&] {
        Certificate cert;
        cert.issued = j.at("issued").get<bool>();
        cert.version = j.at("version").get<std::string>();
        cert.complex_hash = j.at("complex_hash").get<std::string>();
        cert.field_hash = j.at("field_hash").get<std::string>();
        cert.A = j.at("A").get<std::vector<std::string>>();
        cert.index = j.at("index").get<std::vector<int>>();
        cert.r = j.at("r").get<std::vector<int>>();
        cert.P = j.at("P").get<std::vector<std::string>>();
        cert.kmax = j.at("kmax").get<int>();
        cert.families = j.at("families").get<std::vector<std::vector<std::string>>>();
        for (const auto& e : j.at("ledger"))
            cert.ledger.push_back({e.at("name").get<std::string>(), e.at("ok").get<bool>(),
                                   e.at("evidence").get<std::string>()});
        cert.theorem_backed = j.at("theorem_backed").get<std::vector<std::string>>();
        cert.rejection = j.at("rejection").get<std::string>();
        return cert;
    });
}

}  // namespace cb
