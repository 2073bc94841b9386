#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cb/mvf.hpp"

namespace cb {

struct SectionData {
    CellSet A, P, H, R, Pbar;
    // Aligned with R.
    std::vector<int> dist;  // fence distance to Pbar inside R
    std::vector<int> L;     // Lyapunov values
    int nbar = 0;
    std::vector<CellSet> levels;  // L_0 .. L_kmax
    std::vector<int> n;           // n_k for k = 2 .. kmax, stored at index k
    std::vector<CellSet> shifts;  // A_0 .. A_{kmax-1}
    int kmax = 0;

    int L_of(Cell c) const;  // -1 outside R
};

struct SectionResult {
    std::optional<SectionData> section;
    std::string rejection;  // set when the conditions fail
};

// Computes H, R, Pbar and checks the three section conditions. Throws
// PreconditionError if a is not an isolated invariant set or p is not a
// non-empty, locally closed, V-compatible subset of a.
SectionResult build_section(const CellComplex& c, const MultivectorField& v, const CellSet& a, const CellSet& p);

void lyapunov(const CellComplex& c, const MultivectorField& v, SectionData& sd);
// Level recursion and shifts. Throws InternalError if the recursion stalls.
void compute_shifts(const CellComplex& c, const MultivectorField& v, SectionData& sd);

struct Coarsening {
    bool ok = false;
    std::vector<CellSet> families;  // A^top_i = A_{kmax-1-i} intersected with the toplexes
    std::string rejection;
};

Coarsening toplex_coarsening(const CellComplex& c, const SectionData& sd);

struct PropCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

std::vector<PropCheck> check_propositions(const CellComplex& c, const MultivectorField& v, const SectionData& sd);

// build_section followed by lyapunov and compute_shifts when accepted.
SectionResult analyze_section(const CellComplex& c, const MultivectorField& v, const CellSet& a, const CellSet& p);

// Candidate sections for a: unions of 1..max_chain consecutive multivectors
// along the dynamics inside a, each locally closed. Deterministic order.
std::vector<CellSet> propose_sections(const CellComplex& c, const MultivectorField& v, const CellSet& a,
                                      int max_chain = 3);

}  // namespace cb
