// Command-line front end: validate, mvf, invariant-sets, section, certify, render.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cb/certify.hpp"
#include "cb/error.hpp"
#include "cb/io.hpp"
#include "cb/render.hpp"

namespace {

using namespace cb;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kRejected = 2;

struct RunConfig {
    std::string mesh, field, complex, mvf;
    std::string out, dot, mesh_out;
    std::string cells, section;
    int set_id = -1;
    int depth = 8;
    double eps = 0.0;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    int perturb_rounds = 0;
    bool no_ticks = false, no_sets = false, no_mesh = false;
};

// Flags beat environment variables, which beat built-in defaults.
void apply_environment(RunConfig& cfg, const CLI::App& app) {
    auto given = [&](const char* flag) { return app.get_option(flag)->count() > 0; };
    try {
        if (!given("--depth"))
            if (const char* v = std::getenv("CB_DEPTH")) cfg.depth = std::stoi(v);
        if (!given("--eps"))
            if (const char* v = std::getenv("CB_EPS")) cfg.eps = std::stod(v);
        if (!given("--seed"))
            if (const char* v = std::getenv("CB_SEED")) cfg.seed = std::stoull(v);
    } catch (const std::exception&) {
        throw Error("malformed CB_DEPTH, CB_EPS or CB_SEED environment variable");
    }
    if (cfg.depth < 0) throw Error("depth must be nonnegative");
    if (cfg.eps < 0) throw Error("eps must be nonnegative");
}

PipelineOptions options(const RunConfig& cfg) { return {cfg.depth, cfg.eps, cfg.jobs}; }

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty() || cfg.out == "-")
        std::cout << text;
    else
        write_file(cfg.out, text);
}

// The analysed model, from a mesh and field or from a complex and field file.
struct Model {
    std::optional<FlowModel> flow;
    CellComplex complex;
    MultivectorField mvf;
    CellSet domain;
    std::string field_source;

    const CellComplex& c() const { return flow ? flow->complex : complex; }
    const MultivectorField& v() const { return flow ? flow->mvf : mvf; }
};

Model load_model(const RunConfig& cfg) {
    Model m;
    if (!cfg.mesh.empty()) {
        if (cfg.field.empty()) throw Error("--mesh needs --field");
        TriMesh mesh = read_mesh(cfg.mesh);
        VectorField f = read_field(cfg.field);
        m.field_source = f.source;
        m.flow = build_mvf(mesh, f, options(cfg));
        m.domain = m.flow->domain;
    } else if (!cfg.complex.empty()) {
        if (cfg.mvf.empty()) throw Error("--complex needs --mvf");
        m.complex = read_complex(cfg.complex);
        m.mvf = MultivectorField::build(m.complex, mvf_from_json(m.complex, parse_json(read_file(cfg.mvf))),
                                        cfg.jobs);
        m.domain = m.complex.all();
    } else {
        throw Error("give --mesh and --field, or --complex and --mvf");
    }
    return m;
}

CellSet parse_cells(const CellComplex& c, const std::string& text) {
    std::vector<std::string> names;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) names.push_back(item);
    return c.ids(names);
}

CellSet select_set(const Model& m, const RunConfig& cfg) {
    if (!cfg.cells.empty()) return parse_cells(m.c(), cfg.cells);
    if (cfg.set_id < 0) throw Error("give --set-id or --cells");
    MorseDecomposition md = morse_decomposition(m.c(), m.v(), m.domain, cfg.jobs);
    if (std::size_t(cfg.set_id) >= md.sets.size())
        throw Error("--set-id " + std::to_string(cfg.set_id) + " out of range (" + std::to_string(md.sets.size()) +
                    " sets)");
    return md.sets[std::size_t(cfg.set_id)].cells;
}

int cmd_validate(const RunConfig& cfg) {
    if (cfg.mesh.empty() || cfg.field.empty()) throw Error("validate needs --mesh and --field");
    TriMesh mesh = read_mesh(cfg.mesh);
    VectorField f = read_field(cfg.field);
    if (cfg.perturb_rounds > 0) {
        mesh = perturb_mesh(mesh, f, cfg.seed, cfg.perturb_rounds, options(cfg));
        if (!cfg.mesh_out.empty()) write_file(cfg.mesh_out, mesh_to_json(mesh).dump() + "\n");
    }
    TransversalityReport r = check_mesh(mesh, f, options(cfg));
    emit(cfg, report_to_json(mesh, r).dump(1) + "\n");
    if (r.fully_determined()) return kOk;
    for (int e : r.undetermined_edges())
        std::cerr << "undetermined edge " << e << " (" << mesh.edges()[std::size_t(e)][0] << "-"
                  << mesh.edges()[std::size_t(e)][1] << "): " << r.edges[std::size_t(e)].note << "\n";
    for (int v : r.undetermined_vertices())
        std::cerr << "undetermined vertex " << v << ": " << r.vertices[std::size_t(v)].note << "\n";
    return kRejected;
}

int cmd_mvf(const RunConfig& cfg) {
    Model m = load_model(cfg);
    json j = mvf_to_json(m.c(), m.v());
    j["complex"] = complex_to_json(m.c());
    if (m.flow) j["outflow"] = m.c().names(m.flow->outflow);
    emit(cfg, j.dump(1) + "\n");
    return kOk;
}

int cmd_invariant_sets(const RunConfig& cfg) {
    Model m = load_model(cfg);
    MorseDecomposition md = morse_decomposition(m.c(), m.v(), m.domain, cfg.jobs);
    json j = morse_to_json(m.c(), md);
    for (std::size_t i = 0; i < md.sets.size(); ++i) {
        const CellSet tops = set_intersection(md.sets[i].cells, toplexes(m.c()));
        j["sets"][i]["toplexes"] = tops.size();
        j["sets"][i]["isolated"] = is_isolated_invariant(m.c(), m.v(), md.sets[i].cells).isolated;
    }
    emit(cfg, j.dump(1) + "\n");
    if (!cfg.dot.empty()) write_file(cfg.dot, morse_to_dot(m.c(), md));
    for (std::size_t i = 0; i < md.sets.size(); ++i)
        std::cerr << "set " << i << ": " << md.sets[i].cells.size() << " cells, index "
                  << to_string(md.sets[i].index) << "\n";
    return kOk;
}

int cmd_section(const RunConfig& cfg) {
    Model m = load_model(cfg);
    CellSet a = select_set(m, cfg);
    std::vector<CellSet> candidates;
    if (!cfg.section.empty())
        candidates.push_back(parse_cells(m.c(), cfg.section));
    else
        candidates = propose_sections(m.c(), m.v(), a);
    std::string last = "no section candidate";
    for (const auto& p : candidates) {
        SectionResult res = analyze_section(m.c(), m.v(), a, p);
        if (res.section) {
            emit(cfg, section_to_json(m.c(), *res.section).dump(1) + "\n");
            return kOk;
        }
        last = res.rejection;
    }
    std::cerr << "section rejected: " << last << "\n";
    emit(cfg, json{{"rejection", last}}.dump(1) + "\n");
    return kRejected;
}

int cmd_certify(const RunConfig& cfg) {
    Model m = load_model(cfg);
    CertifyInput in;
    in.complex = &m.c();
    in.mvf = &m.v();
    in.A = select_set(m, cfg);
    if (!cfg.section.empty()) in.P = parse_cells(m.c(), cfg.section);
    in.flow = m.flow ? &*m.flow : nullptr;
    in.field_source = m.field_source;
    Certificate cert = certify(in);
    emit(cfg, certificate_to_json(cert).dump(1) + "\n");
    for (const auto& e : cert.ledger)
        std::cerr << (e.ok ? "  ok   " : "  FAIL ") << e.name << ": " << e.evidence << "\n";
    if (cert.issued) return kOk;
    std::cerr << "rejected: " << cert.rejection << "\n";
    return kRejected;
}

int cmd_render(const RunConfig& cfg) {
    if (cfg.mesh.empty() || cfg.field.empty()) throw Error("render needs --mesh and --field");
    TriMesh mesh = read_mesh(cfg.mesh);
    VectorField f = read_field(cfg.field);
    TransversalityReport report = check_mesh(mesh, f, options(cfg));
    RenderInput in;
    in.mesh = &mesh;
    in.report = &report;
    if (!cfg.no_sets && report.fully_determined()) {
        FlowModel fm = build_mvf(mesh, f, report, options(cfg));
        MorseDecomposition md = morse_decomposition(fm.complex, fm.mvf, fm.domain, cfg.jobs);
        for (const auto& s : md.sets) {
            std::vector<int> tris;
            for (Cell t : set_intersection(s.cells, toplexes(fm.complex))) tris.push_back(fm.tri_of_cell[std::size_t(t)]);
            in.set_triangles.push_back(std::move(tris));
        }
    }
    RenderLayers layers;
    layers.ticks = !cfg.no_ticks;
    layers.sets = !cfg.no_sets;
    layers.mesh = !cfg.no_mesh;
    emit(cfg, render_svg(in, layers));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial periodic-orbit certification for planar flows"};
    app.set_version_flag("--version", cb::kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--depth", cfg.depth, "bisection depth (env CB_DEPTH, default 8)");
    app.add_option("--eps", cfg.eps, "strictness margin (env CB_EPS, default 0)");
    app.add_option("--seed", cfg.seed, "perturbation seed (env CB_SEED, default 0)");
    app.add_option("-o,--out", cfg.out, "output file, standard output when omitted");

    auto inputs = [&](CLI::App* sub, bool combinatorial) {
        sub->add_option("--mesh", cfg.mesh, "mesh JSON");
        sub->add_option("--field", cfg.field, "vector field file or inline text");
        if (combinatorial) {
            sub->add_option("--complex", cfg.complex, "complex JSON");
            sub->add_option("--mvf", cfg.mvf, "multivector field JSON");
        }
    };
    auto selection = [&](CLI::App* sub) {
        sub->add_option("--set-id", cfg.set_id, "index into the invariant-sets list");
        sub->add_option("--cells", cfg.cells, "comma-separated cell names of the invariant set");
        sub->add_option("--section", cfg.section, "comma-separated cell names of the section candidate");
    };

    auto* validate = app.add_subcommand("validate", "check transversality of a mesh");
    inputs(validate, false);
    validate->add_option("--perturb", cfg.perturb_rounds, "random perturbation rounds before checking");
    validate->add_option("--mesh-out", cfg.mesh_out, "write the perturbed mesh here");
    auto* mvf = app.add_subcommand("mvf", "emit the induced multivector field");
    inputs(mvf, true);
    auto* sets = app.add_subcommand("invariant-sets", "Morse sets with Conley indices");
    inputs(sets, true);
    sets->add_option("--dot", cfg.dot, "also write the Morse graph in GraphViz format");
    auto* section = app.add_subcommand("section", "build a Poincare section and its shifts");
    inputs(section, true);
    selection(section);
    auto* cert = app.add_subcommand("certify", "check the periodic-orbit hypotheses");
    inputs(cert, true);
    selection(cert);
    auto* render = app.add_subcommand("render", "SVG of mesh, crossings and invariant sets");
    inputs(render, false);
    render->add_flag("--no-ticks", cfg.no_ticks, "omit crossing ticks");
    render->add_flag("--no-sets", cfg.no_sets, "omit invariant-set shading");
    render->add_flag("--no-mesh", cfg.no_mesh, "omit triangle outlines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        apply_environment(cfg, app);
        if (*validate) return cmd_validate(cfg);
        if (*mvf) return cmd_mvf(cfg);
        if (*sets) return cmd_invariant_sets(cfg);
        if (*section) return cmd_section(cfg);
        if (*cert) return cmd_certify(cfg);
        if (*render) return cmd_render(cfg);
    } catch (const cb::Undetermined& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRejected;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
