#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cb/certify.hpp"
#include "cb/complex.hpp"
#include "cb/mesh.hpp"
#include "cb/mvf.hpp"
#include "cb/pipeline.hpp"
#include "cb/section.hpp"

namespace cb {

using json = nlohmann::json;

// Throws Error when the file cannot be read or written.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Throws ParseError carrying the byte offset of malformed JSON.
json parse_json(const std::string& text);

// {"kind":"simplicial","vertices":N,"cells":[[v...],...]} or
// {"kind":"cw","cells":[{"id","dim","facets":[{"id","sign"}...]}...]}
ComplexSpec complex_spec_from_json(const json& j);
json complex_spec_to_json(const ComplexSpec& s);
json complex_to_json(const CellComplex& c);
CellComplex read_complex(const std::string& path);

// {"multivectors":[["cellid",...],...]}
std::vector<CellSet> mvf_from_json(const CellComplex& c, const json& j);
json mvf_to_json(const CellComplex& c, const MultivectorField& v);

// {"vertices":[[x,y],...],"triangles":[[i,j,k],...]}
TriMesh mesh_from_json(const json& j);
json mesh_to_json(const TriMesh& m);
TriMesh read_mesh(const std::string& path);

// A field file, or inline text when the argument is not an existing file.
VectorField read_field(const std::string& path_or_text);

json cells_to_json(const CellComplex& c, const CellSet& s);
CellSet cells_from_json(const CellComplex& c, const json& j);

json interval_to_json(const Interval& i);
Interval interval_from_json(const json& j);

json report_to_json(const TriMesh& m, const TransversalityReport& r);
TransversalityReport report_from_json(const json& j);

json morse_to_json(const CellComplex& c, const MorseDecomposition& md);
MorseDecomposition morse_from_json(const CellComplex& c, const json& j);
std::string morse_to_dot(const CellComplex& c, const MorseDecomposition& md);

json section_to_json(const CellComplex& c, const SectionData& sd);
SectionData section_from_json(const CellComplex& c, const json& j);

json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const json& j);

}  // namespace cb
