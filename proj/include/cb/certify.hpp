#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cb/mvf.hpp"
#include "cb/pipeline.hpp"
#include "cb/section.hpp"

namespace cb {

inline constexpr const char* kToolVersion = "cbrick 1.0.0";

// Every multivector meeting a has zero relative homology. Throws
// PreconditionError if a is not V-compatible.
bool check_regularity(const CellComplex& c, const MultivectorField& v, const CellSet& a);

// Some cell of cl tau lies in the multivector of sigma. Throws
// PreconditionError unless tau and sigma are distinct toplexes with regular
// multivectors.
bool check_sharp_pair(const CellComplex& c, const MultivectorField& v, Cell tau, Cell sigma);

struct ConditionF {
    bool ok = false;
    std::string detail;  // first violation
};

// Graph check on the sharp-pair digraph of the toplexes of a. exempt lists
// cells counted as leaving the region (outflow cells). ift gives the toplex
// entered by each cell, -1 when none. Throws PreconditionError for fewer than
// three families, overlapping families, or families not covering the
// toplexes of a.
ConditionF check_condition_f_direct(const CellComplex& c, const MultivectorField& v, const CellSet& a,
                                    const std::vector<CellSet>& families, const std::vector<Cell>& ift,
                                    const CellSet& exempt = {});

struct LedgerEntry {
    std::string name;
    bool ok = false;
    std::string evidence;

    bool operator==(const LedgerEntry&) const = default;
};

struct Certificate {
    bool issued = false;
    std::string complex_hash;
    std::string field_hash;
    std::vector<std::string> A;
    std::vector<int> index;
    std::vector<int> r;
    std::vector<std::string> P;
    int kmax = 0;
    std::vector<std::vector<std::string>> families;
    std::vector<LedgerEntry> ledger;
    std::vector<std::string> theorem_backed;
    std::string version = kToolVersion;
    std::string rejection;  // "<entry>: <evidence>" of the first failed entry

    bool operator==(const Certificate&) const = default;
};

struct CertifyInput {
    const CellComplex* complex = nullptr;
    const MultivectorField* mvf = nullptr;
    CellSet A;
    std::optional<CellSet> P;      // auto-proposed when absent
    const FlowModel* flow = nullptr;  // mesh-derived data, if any
    std::string field_source;      // hashed into the certificate
};

Certificate certify(const CertifyInput& in);

// FNV-1a, 64 bit, as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace cb
