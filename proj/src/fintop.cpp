#include "cb/fintop.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "cb/error.hpp"

namespace cb {

CellSet make_set(std::vector<Cell> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

bool contains(const CellSet& s, Cell c) { return std::binary_search(s.begin(), s.end(), c); }

bool is_subset(const CellSet& a, const CellSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

CellSet set_union(const CellSet& a, const CellSet& b) {
    CellSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

CellSet set_intersection(const CellSet& a, const CellSet& b) {
    CellSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

CellSet set_difference(const CellSet& a, const CellSet& b) {
    CellSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool intersects(const CellSet& a, const CellSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            return true;
    }
    return false;
}

FinitePoset FinitePoset::from_covers(std::size_t n, const std::vector<std::pair<Cell, Cell>>& covers) {
    FinitePoset p;
    p.lower_.assign(n, {});
    p.upper_.assign(n, {});
    for (auto [lo, hi] : covers) {
        if (lo < 0 || hi < 0 || std::size_t(lo) >= n || std::size_t(hi) >= n)
            throw AmbientMismatch("cover pair references element outside 0.." + std::to_string(n - 1));
        if (lo == hi)
            throw InvalidComplex("element " + std::to_string(lo) + " covers itself");
        p.lower_[hi].push_back(lo);
        p.upper_[lo].push_back(hi);
    }
    for (auto& v : p.lower_) v = make_set(std::move(v));
    for (auto& v : p.upper_) v = make_set(std::move(v));
    p.finish();
    return p;
}

FinitePoset FinitePoset::from_relation(std::size_t n, const std::vector<std::pair<Cell, Cell>>& less) {
    // Build the full strict order, then keep only the pairs with nothing in between.
    FinitePoset full = from_covers(n, less);
    std::vector<std::pair<Cell, Cell>> covers;
    for (Cell hi = 0; hi < Cell(n); ++hi) {
        for (Cell lo : full.down_[hi]) {
            if (lo == hi) continue;
            bool direct = true;
            for (Cell mid : full.down_[hi]) {
                if (mid != lo && mid != hi && full.leq(lo, mid)) {
                    direct = false;
                    break;
                }
            }
            if (direct) covers.emplace_back(lo, hi);
        }
    }
    return from_covers(n, covers);
}

void FinitePoset::finish() {
    const std::size_t n = lower_.size();
    // Kahn order from minimal elements upward; a leftover element means a cycle.
    std::vector<int> indeg(n);
    for (std::size_t c = 0; c < n; ++c) indeg[c] = int(lower_[c].size());
    std::vector<Cell> order;
    order.reserve(n);
    for (std::size_t c = 0; c < n; ++c)
        if (indeg[c] == 0) order.push_back(Cell(c));
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Cell u : upper_[order[i]])
            if (--indeg[u] == 0) order.push_back(u);
    if (order.size() != n) throw InvalidComplex("order relation contains a cycle (antisymmetry fails)");

    down_.assign(n, {});
    for (Cell c : order) {
        CellSet d{c};
        for (Cell l : lower_[c]) d = set_union(d, down_[l]);
        down_[c] = std::move(d);
    }
    up_.assign(n, {});
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        CellSet u{*it};
        for (Cell h : upper_[*it]) u = set_union(u, up_[h]);
        up_[*it] = std::move(u);
    }
}

CellSet FinitePoset::all() const {
    CellSet s(size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = Cell(i);
    return s;
}

bool FinitePoset::leq(Cell a, Cell b) const { return contains(down_.at(b), a); }

void FinitePoset::check_members(const CellSet& a) const {
    for (Cell c : a)
        if (c < 0 || std::size_t(c) >= size())
            throw AmbientMismatch("cell " + std::to_string(c) + " is not an element of the poset");
}

CellSet FinitePoset::closure(const CellSet& a) const {
    check_members(a);
    std::vector<Cell> out;
    for (Cell c : a) out.insert(out.end(), down_[c].begin(), down_[c].end());
    return make_set(std::move(out));
}

CellSet FinitePoset::opn(const CellSet& a) const {
    check_members(a);
    std::vector<Cell> out;
    for (Cell c : a) out.insert(out.end(), up_[c].begin(), up_[c].end());
    return make_set(std::move(out));
}

CellSet FinitePoset::mouth(const CellSet& a) const { return set_difference(closure(a), a); }

bool FinitePoset::is_closed(const CellSet& a) const { return closure(a) == a; }

bool FinitePoset::is_open(const CellSet& a) const { return opn(a) == a; }

bool FinitePoset::is_locally_closed(const CellSet& a) const { return is_closed(mouth(a)); }

namespace {

// Neighbours of c in the comparability graph restricted to a (c itself excluded).
template <class F>
void for_each_comparable(const FinitePoset& p, const std::vector<char>& in, Cell c, F&& f) {
    for (Cell x : p.down(c))
        if (x != c && in[x]) f(x);
    for (Cell x : p.up(c))
        if (x != c && in[x]) f(x);
}

}  // namespace

std::vector<CellSet> FinitePoset::connected_components(const CellSet& a) const {
    check_members(a);
    std::vector<char> in(size(), 0), seen(size(), 0);
    for (Cell c : a) in[c] = 1;
    std::vector<CellSet> comps;
    for (Cell start : a) {
        if (seen[start]) continue;
        std::vector<Cell> comp{start};
        seen[start] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for_each_comparable(*this, in, comp[i], [&](Cell x) {
                if (!seen[x]) {
                    seen[x] = 1;
                    comp.push_back(x);
                }
            });
        }
        comps.push_back(make_set(std::move(comp)));
    }
    return comps;
}

std::vector<int> FinitePoset::fence_distances(const CellSet& a, const CellSet& sources) const {
    check_members(a);
    if (!is_subset(sources, a)) throw PreconditionError("fence sources must lie inside the set");
    std::vector<char> in(size(), 0);
    for (Cell c : a) in[c] = 1;
    std::vector<int> dist(size(), -1);
    std::deque<Cell> queue;
    for (Cell s : sources) {
        dist[s] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        Cell c = queue.front();
        queue.pop_front();
        for_each_comparable(*this, in, c, [&](Cell x) {
            if (dist[x] < 0) {
                dist[x] = dist[c] + 1;
                queue.push_back(x);
            }
        });
    }
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = dist[a[i]];
    return out;
}

std::optional<int> FinitePoset::fence_distance(const CellSet& a, Cell s, Cell t) const {
    if (!contains(a, s) || !contains(a, t)) throw PreconditionError("fence endpoints must lie inside the set");
    auto d = fence_distances(a, CellSet{s});
    int v = d[std::lower_bound(a.begin(), a.end(), t) - a.begin()];
    if (v < 0) return std::nullopt;
    return v;
}

CellSet FinitePoset::rel_closure(const CellSet& r, const CellSet& b) const {
    if (!is_subset(b, r)) throw PreconditionError("relative operator: set is not contained in the subspace");
    return set_intersection(closure(b), r);
}

CellSet FinitePoset::rel_opn(const CellSet& r, const CellSet& b) const {
    if (!is_subset(b, r)) throw PreconditionError("relative operator: set is not contained in the subspace");
    return set_intersection(opn(b), r);
}

CellSet FinitePoset::rel_interior(const CellSet& r, const CellSet& b) const {
    if (!is_subset(b, r)) throw PreconditionError("relative operator: set is not contained in the subspace");
    check_members(r);
    CellSet out;
    for (Cell c : b)
        if (is_subset(set_intersection(up_[c], r), b)) out.push_back(c);
    return out;
}

CellSet FinitePoset::rel_boundary(const CellSet& r, const CellSet& b) const {
    return set_intersection(rel_closure(r, b), rel_closure(r, set_difference(r, b)));
}

}  // namespace cb
