#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "cb/fintop.hpp"

namespace cb {

// Column-major sparse matrix with exact rational entries.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, mpq_class>>> columns;  // (row, value), rows ascending
};

// Relative cellular chain complex. basis[k] lists the k-cells in use, d[k]
// is the boundary C_k -> C_{k-1} (d[0] has zero rows).
struct ChainComplex {
    std::vector<CellSet> basis;
    std::vector<SparseMatrix> d;

    int top_degree() const { return int(basis.size()) - 1; }
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
bool is_zero(const SparseMatrix& m);

}  // namespace cb
