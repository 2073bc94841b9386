#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cb/complex.hpp"
#include "cb/homology.hpp"

namespace cb {

// Violations of the multivector-field axioms: every cell in exactly one
// multivector, multivectors non-empty and locally closed.
std::vector<std::string> validate_mvf(const CellComplex& c, const std::vector<CellSet>& mvs);

class MultivectorField {
public:
    MultivectorField() = default;

    // Throws PreconditionError listing the validate_mvf report.
    static MultivectorField build(const CellComplex& c, std::vector<CellSet> mvs, unsigned jobs = 1);

    std::size_t count() const { return mvs_.size(); }
    const std::vector<CellSet>& multivectors() const { return mvs_; }
    const CellSet& mv(int i) const { return mvs_.at(std::size_t(i)); }
    int owner(Cell c) const { return owner_.at(std::size_t(c)); }
    const CellSet& mv_of(Cell c) const { return mvs_[std::size_t(owner(c))]; }
    bool regular(int i) const { return regular_.at(std::size_t(i)); }
    bool critical_cell(Cell c) const { return !regular_[std::size_t(owner(c))]; }
    const BettiVector& index(int i) const { return index_.at(std::size_t(i)); }

private:
    std::vector<CellSet> mvs_;
    std::vector<int> owner_;
    std::vector<char> regular_;
    std::vector<BettiVector> index_;
};

// F_V(s) = cl s united with the multivector of s.
CellSet fv(const CellComplex& c, const MultivectorField& v, Cell s);

bool is_compatible(const MultivectorField& v, const CellSet& s);
// Smallest V-compatible superset.
CellSet compatible_hull(const MultivectorField& v, const CellSet& s);

struct Component {
    CellSet cells;
    bool essential = false;
};

// The directed graph s -> t for t in F_V(s), restricted to n, with its
// strongly connected components listed in topological order (every edge
// between different components goes from a lower to a higher position).
class DynGraph {
public:
    DynGraph(const CellComplex& c, const MultivectorField& v, const CellSet& n);

    const CellSet& nodes() const { return nodes_; }
    int local(Cell c) const { return c >= 0 && std::size_t(c) < local_.size() ? local_[std::size_t(c)] : -1; }
    const std::vector<int>& succ(int i) const { return succ_[std::size_t(i)]; }
    const std::vector<int>& pred(int i) const { return pred_[std::size_t(i)]; }
    const std::vector<Component>& components() const { return comps_; }
    int component_of(int i) const { return comp_[std::size_t(i)]; }
    // Distinct successor components of component k.
    std::vector<int> component_succ(int k) const;

    // Nodes reachable from (or, backwards, reaching) the given nodes, sources included.
    std::vector<char> forward(const std::vector<int>& from) const;
    std::vector<char> backward(const std::vector<int>& from) const;

private:
    CellSet nodes_;
    std::vector<int> local_;
    std::vector<std::vector<int>> succ_, pred_;
    std::vector<int> comp_;
    std::vector<Component> comps_;
};

std::vector<Component> essential_components(const CellComplex& c, const MultivectorField& v, const CellSet& n);
CellSet invariant_part(const CellComplex& c, const MultivectorField& v, const CellSet& n);

struct IsolationReport {
    bool isolated = false;
    std::vector<std::string> reasons;
};

// n defaults to cl s.
IsolationReport is_isolated_invariant(const CellComplex& c, const MultivectorField& v, const CellSet& s,
                                      const std::optional<CellSet>& n = std::nullopt);

struct MorseSet {
    CellSet cells;
    BettiVector index;
};

struct MorseDecomposition {
    std::vector<MorseSet> sets;
    // (i, j): set j is reachable from set i; transitive reduction.
    std::vector<std::pair<int, int>> edges;
};

MorseDecomposition morse_decomposition(const CellComplex& c, const MultivectorField& v, const CellSet& n,
                                       unsigned jobs = 1);

}  // namespace cb
