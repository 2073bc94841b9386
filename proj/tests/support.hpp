#pragma once

// Fixtures, random generators and brute-force oracles shared by the unit
// tests, the property suites and the acceptance binary. The oracles work from
// the raw order relation and never call the operators they are compared to.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cb/complex.hpp"
#include "cb/error.hpp"
#include "cb/fintop.hpp"
#include "cb/homology.hpp"
#include "cb/mvf.hpp"

#ifndef CB_DATA_DIR
#define CB_DATA_DIR "data"
#endif

namespace cbt {

using namespace cb;

inline std::string data_path(const std::string& name) { return std::string(CB_DATA_DIR) + "/" + name; }

// ---------------------------------------------------------------- fixtures

// Simplicial one-edge complex: cells "0", "1", "0-1".
inline CellComplex one_edge() { return CellComplex::simplicial(2, {{0, 1}}); }

inline CellComplex triangle() { return CellComplex::simplicial(3, {{0, 1, 2}}); }

// CW circle with vertices v0..v{n-1} and edges e0..e{n-1}; e_i runs from v_i to v_{i+1}.
inline CellComplex circle(int n) {
    ComplexSpec s;
    s.kind = ComplexKind::cw;
    for (int i = 0; i < n; ++i) s.cells.push_back({"v" + std::to_string(i), 0, {}});
    for (int i = 0; i < n; ++i)
        s.cells.push_back(
            {"e" + std::to_string(i), 1, {{"v" + std::to_string(i), -1}, {"v" + std::to_string((i + 1) % n), 1}}});
    return CellComplex::build(s);
}

// V_i = {v_i, e_i}.
inline MultivectorField circle_field(const CellComplex& c, int n) {
    std::vector<CellSet> mvs;
    for (int i = 0; i < n; ++i) mvs.push_back(c.ids({"v" + std::to_string(i), "e" + std::to_string(i)}));
    return MultivectorField::build(c, mvs);
}

inline CellSet cells(const CellComplex& c, const std::vector<std::string>& names) { return c.ids(names); }

// Zigzag annulus with m vertices on each boundary circle, 2m triangles.
// Inner vertices 0..m-1, outer m..2m-1.
inline CellComplex annulus(int m) {
    std::vector<std::vector<int>> tris;
    for (int i = 0; i < m; ++i) {
        int a = i, a1 = (i + 1) % m, b = m + i, b1 = m + (i + 1) % m;
        tris.push_back({a, a1, b});
        tris.push_back({b, b1, a1});
    }
    return CellComplex::simplicial(2 * m, tris);
}

// ---------------------------------------------------------------- order oracles

using Matrix = std::vector<std::vector<char>>;

// leq[a][b] iff a <= b, from the cover lists by Warshall's algorithm.
inline Matrix leq_matrix(const FinitePoset& p) {
    const std::size_t n = p.size();
    Matrix m(n, std::vector<char>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        m[a][a] = 1;
        for (Cell b : p.upper_covers(Cell(a))) m[a][std::size_t(b)] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (m[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (m[k][j]) m[i][j] = 1;
    return m;
}

inline CellSet brute_closure(const Matrix& leq, const CellSet& a) {
    CellSet out;
    for (std::size_t x = 0; x < leq.size(); ++x)
        for (Cell y : a)
            if (leq[x][std::size_t(y)]) {
                out.push_back(Cell(x));
                break;
            }
    return out;
}

inline CellSet brute_opn(const Matrix& leq, const CellSet& a) {
    CellSet out;
    for (std::size_t x = 0; x < leq.size(); ++x)
        for (Cell y : a)
            if (leq[std::size_t(y)][x]) {
                out.push_back(Cell(x));
                break;
            }
    return out;
}

inline bool brute_is_closed(const Matrix& leq, const CellSet& a) { return brute_closure(leq, a) == a; }

// Convexity: x, z in a and x <= y <= z imply y in a.
inline bool brute_convex(const Matrix& leq, const CellSet& a) {
    std::vector<char> in(leq.size(), 0);
    for (Cell x : a) in[std::size_t(x)] = 1;
    for (Cell x : a)
        for (Cell z : a)
            for (std::size_t y = 0; y < leq.size(); ++y)
                if (!in[y] && leq[std::size_t(x)][y] && leq[y][std::size_t(z)]) return false;
    return true;
}

inline CellSet subset_of_mask(unsigned mask, std::size_t n) {
    CellSet s;
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u) s.push_back(Cell(i));
    return s;
}

// a is a difference of two closed sets; exhaustive over closed sets, n <= 10.
inline bool brute_difference_of_closed(const Matrix& leq, const CellSet& a) {
    const std::size_t n = leq.size();
    std::vector<CellSet> closed;
    for (unsigned m = 0; m < (1u << n); ++m) {
        CellSet s = subset_of_mask(m, n);
        if (brute_is_closed(leq, s)) closed.push_back(s);
    }
    for (const auto& c1 : closed)
        for (const auto& c2 : closed)
            if (is_subset(c2, c1) && set_difference(c1, c2) == a) return true;
    return false;
}

inline bool comparable(const Matrix& leq, Cell a, Cell b) {
    return leq[std::size_t(a)][std::size_t(b)] || leq[std::size_t(b)][std::size_t(a)];
}

// Breadth-first search over the comparability graph restricted to a.
inline std::optional<int> brute_fence(const Matrix& leq, const CellSet& a, Cell s, Cell t) {
    std::map<Cell, int> dist{{s, 0}};
    std::queue<Cell> q;
    q.push(s);
    while (!q.empty()) {
        Cell u = q.front();
        q.pop();
        if (u == t) return dist[u];
        for (Cell w : a)
            if (!dist.count(w) && comparable(leq, u, w)) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return std::nullopt;
}

inline int brute_component_count(const Matrix& leq, const CellSet& a) {
    std::set<Cell> seen;
    int count = 0;
    for (Cell s : a) {
        if (seen.count(s)) continue;
        ++count;
        for (Cell t : a)
            if (brute_fence(leq, a, s, t)) seen.insert(t);
    }
    return count;
}

inline CellSet brute_rel_closure(const Matrix& leq, const CellSet& r, const CellSet& b) {
    return set_intersection(brute_closure(leq, b), r);
}

inline CellSet brute_rel_interior(const Matrix& leq, const CellSet& r, const CellSet& b) {
    CellSet out;
    for (Cell x : b)
        if (is_subset(set_intersection(brute_opn(leq, {x}), r), b)) out.push_back(x);
    return out;
}

// ---------------------------------------------------------------- dynamics oracles

// reach[a][b]: b reachable from a along fv edges inside n, in at least one step.
inline Matrix brute_reach(const CellComplex& c, const MultivectorField& v, const CellSet& n) {
    const Matrix leq = leq_matrix(c.poset());
    const std::size_t sz = c.size();
    Matrix r(sz, std::vector<char>(sz, 0));
    std::vector<char> in(sz, 0);
    for (Cell x : n) in[std::size_t(x)] = 1;
    for (Cell a : n)
        for (Cell b : n)
            if (leq[std::size_t(b)][std::size_t(a)] || v.owner(a) == v.owner(b)) r[std::size_t(a)][std::size_t(b)] = 1;
    for (std::size_t k = 0; k < sz; ++k)
        for (std::size_t i = 0; i < sz; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < sz; ++j)
                    if (r[k][j]) r[i][j] = 1;
    return r;
}

// Strongly connected classes of the fv graph in n, each with its essential flag.
inline std::vector<std::pair<CellSet, bool>> brute_components(const CellComplex& c, const MultivectorField& v,
                                                              const CellSet& n) {
    Matrix r = brute_reach(c, v, n);
    std::vector<std::pair<CellSet, bool>> out;
    std::set<Cell> done;
    for (Cell a : n) {
        if (done.count(a)) continue;
        CellSet comp{a};
        for (Cell b : n)
            if (b != a && r[std::size_t(a)][std::size_t(b)] && r[std::size_t(b)][std::size_t(a)]) comp.push_back(b);
        comp = make_set(comp);
        for (Cell b : comp) done.insert(b);
        std::set<int> owners;
        bool critical = false;
        for (Cell b : comp) {
            owners.insert(v.owner(b));
            critical = critical || !v.regular(v.owner(b));
        }
        out.push_back({comp, critical || owners.size() >= 2});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- homology oracle

// Rank by fraction-free Gaussian elimination (Bareiss) over the integers.
inline int bareiss_rank(std::vector<std::vector<mpz_class>> a) {
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = t;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return int(r);
}

// Betti numbers of the relative pair (a, b) of closed sets, with boundary
// matrices assembled from the facet incidences and ranks from Bareiss.
inline BettiVector brute_betti(const CellComplex& c, const CellSet& a, const CellSet& b) {
    CellSet rel = set_difference(a, b);
    int top = 0;
    for (Cell x : rel) top = std::max(top, c.dim(x));
    std::vector<CellSet> basis(std::size_t(top + 1));
    for (Cell x : rel) basis[std::size_t(c.dim(x))].push_back(x);
    std::vector<int> rk(std::size_t(top + 2), 0);
    for (int k = 1; k <= top; ++k) {
        const auto& rowsb = basis[std::size_t(k - 1)];
        const auto& colsb = basis[std::size_t(k)];
        if (rowsb.empty() || colsb.empty()) continue;
        std::vector<std::vector<mpz_class>> m(rowsb.size(), std::vector<mpz_class>(colsb.size(), 0));
        for (std::size_t j = 0; j < colsb.size(); ++j)
            for (const auto& inc : c.facets(colsb[j])) {
                auto it = std::lower_bound(rowsb.begin(), rowsb.end(), inc.facet);
                if (it != rowsb.end() && *it == inc.facet) m[std::size_t(it - rowsb.begin())][j] += inc.sign;
            }
        rk[std::size_t(k)] = bareiss_rank(m);
    }
    BettiVector out(std::size_t(top + 1));
    for (int k = 0; k <= top; ++k)
        out[std::size_t(k)] = int(basis[std::size_t(k)].size()) - rk[std::size_t(k)] - rk[std::size_t(k + 1)];
    if (rel.empty()) return {0};
    return out;
}

// ---------------------------------------------------------------- random inputs

// Random strict order on n elements: i < j with probability p for i < j in a
// random labelling.
inline FinitePoset random_poset(std::mt19937_64& rng, int n, double p) {
    std::vector<Cell> label(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) label[std::size_t(i)] = i;
    std::shuffle(label.begin(), label.end(), rng);
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<Cell, Cell>> rel;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) rel.push_back({label[std::size_t(i)], label[std::size_t(j)]});
    return FinitePoset::from_relation(std::size_t(n), rel);
}

inline CellSet random_subset(std::mt19937_64& rng, std::size_t n, double p = 0.5) {
    std::bernoulli_distribution coin(p);
    CellSet s;
    for (std::size_t i = 0; i < n; ++i)
        if (coin(rng)) s.push_back(Cell(i));
    return s;
}

// Random simplicial complex with at most max_cells cells (faces included).
inline CellComplex random_simplicial(std::mt19937_64& rng, int max_cells, int max_dim = 2) {
    std::uniform_int_distribution<int> nv_dist(2, 6);
    const int nv = nv_dist(rng);
    std::set<std::vector<int>> faces;
    std::vector<std::vector<int>> tops;
    auto count_with = [&](const std::vector<int>& s) {
        std::set<std::vector<int>> f = faces;
        const int k = int(s.size());
        for (unsigned m = 1; m < (1u << k); ++m) {
            std::vector<int> sub;
            for (int i = 0; i < k; ++i)
                if (m >> i & 1u) sub.push_back(s[std::size_t(i)]);
            if (sub.size() >= 2) f.insert(sub);
        }
        return int(f.size()) + nv;
    };
    std::uniform_int_distribution<int> dim_dist(1, max_dim);
    std::uniform_int_distribution<int> vert(0, nv - 1);
    for (int attempt = 0; attempt < 20; ++attempt) {
        int d = std::min(dim_dist(rng), nv - 1);
        std::set<int> vs;
        while (int(vs.size()) < d + 1) vs.insert(vert(rng));
        std::vector<int> s(vs.begin(), vs.end());
        if (count_with(s) > max_cells) continue;
        const int k = int(s.size());
        for (unsigned m = 1; m < (1u << k); ++m) {
            std::vector<int> sub;
            for (int i = 0; i < k; ++i)
                if (m >> i & 1u) sub.push_back(s[std::size_t(i)]);
            if (sub.size() >= 2) faces.insert(sub);
        }
        tops.push_back(s);
    }
    return CellComplex::simplicial(nv, tops);
}

// Random multivector field: singletons merged along face relations as long as
// the union stays locally closed.
inline std::vector<CellSet> random_partition(std::mt19937_64& rng, const CellComplex& c, int merges) {
    const FinitePoset& p = c.poset();
    std::vector<int> owner(c.size());
    std::vector<CellSet> groups;
    for (std::size_t i = 0; i < c.size(); ++i) {
        owner[i] = int(i);
        groups.push_back({Cell(i)});
    }
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    for (int m = 0; m < merges; ++m) {
        Cell x = Cell(pick(rng));
        const auto& cov = p.upper_covers(x);
        if (cov.empty()) continue;
        Cell y = cov[std::uniform_int_distribution<std::size_t>(0, cov.size() - 1)(rng)];
        int gx = owner[std::size_t(x)], gy = owner[std::size_t(y)];
        if (gx == gy) continue;
        CellSet u = set_union(groups[std::size_t(gx)], groups[std::size_t(gy)]);
        if (!p.is_locally_closed(u)) continue;
        groups[std::size_t(gx)] = u;
        groups[std::size_t(gy)].clear();
        for (Cell z : u) owner[std::size_t(z)] = gx;
    }
    std::vector<CellSet> out;
    for (auto& g : groups)
        if (!g.empty()) out.push_back(g);
    return out;
}

}  // namespace cbt
