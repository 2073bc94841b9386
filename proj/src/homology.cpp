#include "cb/homology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cb/error.hpp"

namespace cb {

int rank(const SparseMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    // Work on rows; each row maps column -> value.
    std::vector<std::map<int, mpq_class>> rows(std::size_t(m.rows));
    std::vector<std::set<int>> col_rows(std::size_t(m.cols));
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, v] : m.columns[j]) {
            if (v == 0) continue;
            rows[i][j] = v;
            col_rows[j].insert(i);
        }

    int r = 0;
    for (;;) {
        // Markowitz-style choice: sparsest column, then sparsest row in it.
        int pc = -1;
        std::size_t best_col = 0;
        for (int j = 0; j < m.cols; ++j) {
            std::size_t n = col_rows[j].size();
            if (n && (pc < 0 || n < best_col)) {
                pc = j;
                best_col = n;
                if (n == 1) break;
            }
        }
        if (pc < 0) break;
        int pr = -1;
        std::size_t best_row = 0;
        for (int i : col_rows[pc]) {
            std::size_t n = rows[i].size();
            if (pr < 0 || n < best_row) {
                pr = i;
                best_row = n;
            }
        }
        ++r;
        std::map<int, mpq_class> prow = std::move(rows[pr]);
        rows[pr].clear();
        for (const auto& [j, v] : prow) col_rows[j].erase(pr);
        const mpq_class pivot = prow.at(pc);

        std::vector<int> targets(col_rows[pc].begin(), col_rows[pc].end());
        for (int i : targets) {
            auto& row = rows[i];
            mpq_class factor = row.at(pc) / pivot;
            for (const auto& [j, v] : prow) {
                auto it = row.find(j);
                if (it == row.end()) {
                    row.emplace(j, -factor * v);
                    col_rows[j].insert(i);
                } else {
                    it->second -= factor * v;
                    if (it->second == 0) {
                        row.erase(it);
                        col_rows[j].erase(i);
                    }
                }
            }
        }
    }
    return r;
}

BettiVector betti(const ChainComplex& cc) {
    const int top = cc.top_degree();
    if (top < 0) return {0};
    for (int k = 1; k < top; ++k)
        if (!is_zero(multiply(cc.d[k], cc.d[k + 1])))
            throw InvalidComplex("boundary of boundary is nonzero in degree " + std::to_string(k + 1));
    std::vector<int> rk(std::size_t(top + 2), 0);
    for (int k = 1; k <= top; ++k) rk[k] = rank(cc.d[k]);
    BettiVector b(std::size_t(top + 1));
    for (int k = 0; k <= top; ++k) b[k] = int(cc.basis[k].size()) - rk[k] - rk[k + 1];
    return b;
}

BettiVector conley_index_pair(const CellComplex& c, const CellSet& s) {
    const auto& p = c.poset();
    if (!p.is_locally_closed(s)) throw PreconditionError("conley_index_pair: set is not locally closed");
    return pad(betti(chain_complex(c, p.closure(s), p.mouth(s))), std::size_t(std::max(c.max_dim(), 0) + 1));
}

std::vector<int> homology_condition(const BettiVector& b) {
    // Indices run over all integers; entries outside the stored range are zero.
    auto at = [&](long k) { return k >= 0 && k < long(b.size()) ? b[std::size_t(k)] : 0; };
    long total = 0;
    for (int v : b) total += v;
    std::vector<int> out;
    if (total <= 0) return out;
    for (int r = 0; r <= 1; ++r) {
        bool ok = true;
        for (long k = r - 2; k < long(b.size()) + 2; k += 2)
            if (at(k) != at(k + 1)) ok = false;
        if (ok) out.push_back(r);
    }
    return out;
}

BettiVector trim(BettiVector b) {
    while (b.size() > 1 && b.back() == 0) b.pop_back();
    if (b.empty()) b.push_back(0);
    return b;
}

BettiVector pad(BettiVector b, std::size_t n) {
    if (b.size() < n) b.resize(n, 0);
    return b;
}

std::string to_string(const BettiVector& b) {
    std::string s = "(";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(b[i]);
    }
    return s + ")";
}

}  // namespace cb
