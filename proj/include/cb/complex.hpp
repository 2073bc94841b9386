#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cb/chain.hpp"
#include "cb/fintop.hpp"

namespace cb {

enum class ComplexKind { simplicial, cw };

struct CwCellSpec {
    std::string id;
    int dim = 0;
    std::vector<std::pair<std::string, int>> facets;  // (facet id, sign)
};

// Raw description of a complex, as read from a file, before any checking.
struct ComplexSpec {
    ComplexKind kind = ComplexKind::simplicial;
    int vertices = 0;                          // simplicial
    std::vector<std::vector<int>> simplices;   // simplicial; faces are added implicitly
    std::vector<CwCellSpec> cells;             // cw
};

struct Incidence {
    Cell facet;
    int sign;
};

class CellComplex {
public:
    CellComplex() = default;

    // Throws InvalidComplex carrying the validate() report.
    static CellComplex build(const ComplexSpec& spec);
    static CellComplex simplicial(int vertices, const std::vector<std::vector<int>>& simplices);

    ComplexKind kind() const { return kind_; }
    std::size_t size() const { return dim_.size(); }
    const FinitePoset& poset() const { return poset_; }
    int dim(Cell c) const { return dim_.at(c); }
    int max_dim() const { return max_dim_; }
    const std::string& name(Cell c) const { return name_.at(c); }
    std::optional<Cell> find(const std::string& name) const;
    Cell id(const std::string& name) const;  // throws Error for unknown names
    const std::vector<Incidence>& facets(Cell c) const { return facets_.at(c); }
    // Sorted vertex list of a simplicial cell.
    const std::vector<int>& vertices(Cell c) const { return verts_.at(c); }
    std::optional<Cell> find_simplex(std::vector<int> verts) const;
    CellSet cells_of_dim(int k) const;
    CellSet all() const { return poset_.all(); }

    std::vector<std::string> names(const CellSet& s) const;
    CellSet ids(const std::vector<std::string>& names) const;

    ComplexSpec spec() const;

private:
    void finish();

    ComplexKind kind_ = ComplexKind::simplicial;
    int max_dim_ = -1;
    std::vector<int> dim_;
    std::vector<std::string> name_;
    std::vector<std::vector<Incidence>> facets_;
    std::vector<std::vector<int>> verts_;
    std::map<std::string, Cell> by_name_;
    std::map<std::vector<int>, Cell> by_verts_;
    FinitePoset poset_;
    int nvertices_ = 0;
};

// Violations found in a raw description; empty means valid. Each entry starts
// with a category word: "missing face", "grading", "duplicate", "sign",
// "boundary".
std::vector<std::string> validate(const ComplexSpec& spec);

CellSet toplexes(const CellComplex& c);
CellSet frame(const CellComplex& c);
CellSet skeleton_cells(const CellComplex& c, int k);
CellComplex skeleton(const CellComplex& c, int k);

// Relative chain complex of the closed pair (a, b), b a subset of a.
ChainComplex chain_complex(const CellComplex& c, const CellSet& a, const CellSet& b);

}  // namespace cb
