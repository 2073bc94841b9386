#pragma once

#include <string>
#include <vector>

#include "cb/chain.hpp"
#include "cb/complex.hpp"

namespace cb {

using BettiVector = std::vector<int>;

// Rank over the rationals by sparse elimination.
int rank(const SparseMatrix& m);

// Throws InvalidComplex when some composite boundary map is nonzero.
BettiVector betti(const ChainComplex& cc);

// H(cl s, Mo s), one entry per degree up to the dimension of c. Throws PreconditionError if s is not locally closed.
BettiVector conley_index_pair(const CellComplex& c, const CellSet& s);

// Values r in {0, 1} with b[2n+r] == b[2n+1+r] for all n; empty if none, or if
// b is identically zero.
std::vector<int> homology_condition(const BettiVector& b);

// Drops trailing zeros except the first entry; (0,0,0) becomes (0).
BettiVector trim(BettiVector b);
// Pads with zeros to at least n entries.
BettiVector pad(BettiVector b, std::size_t n);
std::string to_string(const BettiVector& b);

}  // namespace cb
