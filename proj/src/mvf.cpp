#include "cb/mvf.hpp"

#include <algorithm>
#include <set>

#include "cb/error.hpp"
#include "cb/parallel.hpp"

namespace cb {

std::vector<std::string> validate_mvf(const CellComplex& c, const std::vector<CellSet>& mvs) {
    std::vector<std::string> bad;
    std::vector<int> hits(c.size(), 0);
    for (std::size_t i = 0; i < mvs.size(); ++i) {
        const CellSet& m = mvs[i];
        if (m.empty()) {
            bad.push_back("empty: multivector " + std::to_string(i) + " has no cells");
            continue;
        }
        bool in_range = true;
        for (Cell x : m) {
            if (x < 0 || std::size_t(x) >= c.size()) {
                bad.push_back("partition: multivector " + std::to_string(i) + " refers to unknown cell " +
                              std::to_string(x));
                in_range = false;
                continue;
            }
            ++hits[std::size_t(x)];
        }
        if (in_range && !c.poset().is_locally_closed(m))
            bad.push_back("locally closed: multivector " + std::to_string(i) + " {" + c.names(m).front() +
                          ", ...} has a mouth that is not closed");
    }
    for (std::size_t x = 0; x < c.size(); ++x) {
        if (hits[x] == 0) bad.push_back("partition: cell " + c.name(Cell(x)) + " is in no multivector");
        if (hits[x] > 1) bad.push_back("partition: cell " + c.name(Cell(x)) + " is in several multivectors");
    }
    return bad;
}

MultivectorField MultivectorField::build(const CellComplex& c, std::vector<CellSet> mvs, unsigned jobs) {
    for (auto& m : mvs) m = make_set(std::move(m));
    auto bad = validate_mvf(c, mvs);
    if (!bad.empty()) {
        std::string msg = "invalid multivector field:";
        for (const auto& b : bad) msg += "\n  " + b;
        throw PreconditionError(msg);
    }
    MultivectorField v;
    v.mvs_ = std::move(mvs);
    v.owner_.assign(c.size(), -1);
    for (std::size_t i = 0; i < v.mvs_.size(); ++i)
        for (Cell x : v.mvs_[i]) v.owner_[std::size_t(x)] = int(i);
    v.index_.resize(v.mvs_.size());
    parallel_for(v.mvs_.size(), jobs, [&](std::size_t i) { v.index_[i] = conley_index_pair(c, v.mvs_[i]); });
    v.regular_.resize(v.mvs_.size());
    for (std::size_t i = 0; i < v.mvs_.size(); ++i) {
        const auto& b = v.index_[i];
        v.regular_[i] = std::all_of(b.begin(), b.end(), [](int x) { return x == 0; });
    }
    return v;
}

CellSet fv(const CellComplex& c, const MultivectorField& v, Cell s) {
    return set_union(c.poset().down(s), v.mv_of(s));
}

bool is_compatible(const MultivectorField& v, const CellSet& s) {
    for (Cell x : s)
        if (!is_subset(v.mv_of(x), s)) return false;
    return true;
}

CellSet compatible_hull(const MultivectorField& v, const CellSet& s) {
    std::vector<Cell> out;
    std::set<int> seen;
    for (Cell x : s)
        if (seen.insert(v.owner(x)).second) {
            const auto& m = v.mv_of(x);
            out.insert(out.end(), m.begin(), m.end());
        }
    return make_set(std::move(out));
}

DynGraph::DynGraph(const CellComplex& c, const MultivectorField& v, const CellSet& n) : nodes_(n) {
    c.poset().check_members(n);
    local_.assign(c.size(), -1);
    for (std::size_t i = 0; i < n.size(); ++i) local_[std::size_t(n[i])] = int(i);
    succ_.assign(n.size(), {});
    pred_.assign(n.size(), {});
    for (std::size_t i = 0; i < n.size(); ++i) {
        for (Cell t : fv(c, v, n[i])) {
            int j = local_[std::size_t(t)];
            if (j < 0 || j == int(i)) continue;
            succ_[i].push_back(j);
            pred_[std::size_t(j)].push_back(int(i));
        }
    }

    // Iterative Tarjan. Components come out sinks first.
    const int sz = int(n.size());
    std::vector<int> index(std::size_t(sz), -1), low(std::size_t(sz), 0), stack;
    std::vector<char> on_stack(std::size_t(sz), 0);
    std::vector<std::vector<int>> raw;
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0;
    for (int root = 0; root < sz; ++root) {
        if (index[root] >= 0) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [u, pos] = call.back();
            if (pos < succ_[u].size()) {
                int w = succ_[u][pos++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[u] = std::min(low[u], index[w]);
                }
                continue;
            }
            int done = u;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != done);
                raw.push_back(std::move(comp));
            }
        }
    }
    std::reverse(raw.begin(), raw.end());
    comp_.assign(std::size_t(sz), -1);
    for (std::size_t k = 0; k < raw.size(); ++k) {
        Component comp;
        std::vector<Cell> cells;
        std::set<int> owners;
        bool critical = false;
        for (int i : raw[k]) {
            comp_[std::size_t(i)] = int(k);
            cells.push_back(n[std::size_t(i)]);
            owners.insert(v.owner(n[std::size_t(i)]));
            critical = critical || v.critical_cell(n[std::size_t(i)]);
        }
        comp.cells = make_set(std::move(cells));
        comp.essential = critical || owners.size() >= 2;
        comps_.push_back(std::move(comp));
    }
}

std::vector<int> DynGraph::component_succ(int k) const {
    std::set<int> out;
    for (Cell x : comps_[std::size_t(k)].cells)
        for (int j : succ_[std::size_t(local(x))])
            if (comp_[std::size_t(j)] != k) out.insert(comp_[std::size_t(j)]);
    return {out.begin(), out.end()};
}

namespace {

std::vector<char> sweep(const std::vector<std::vector<int>>& adj, const std::vector<int>& from) {
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> todo;
    for (int f : from)
        if (!seen[std::size_t(f)]) {
            seen[std::size_t(f)] = 1;
            todo.push_back(f);
        }
    while (!todo.empty()) {
        int u = todo.back();
        todo.pop_back();
        for (int w : adj[std::size_t(u)])
            if (!seen[std::size_t(w)]) {
                seen[std::size_t(w)] = 1;
                todo.push_back(w);
            }
    }
    return seen;
}

}  // namespace

std::vector<char> DynGraph::forward(const std::vector<int>& from) const { return sweep(succ_, from); }

std::vector<char> DynGraph::backward(const std::vector<int>& from) const { return sweep(pred_, from); }

std::vector<Component> essential_components(const CellComplex& c, const MultivectorField& v, const CellSet& n) {
    return DynGraph(c, v, n).components();
}

namespace {

CellSet invariant_part(const DynGraph& g) {
    std::vector<int> seeds;
    for (const auto& comp : g.components())
        if (comp.essential)
            for (Cell x : comp.cells) seeds.push_back(g.local(x));
    auto fwd = g.forward(seeds);
    auto bwd = g.backward(seeds);
    CellSet out;
    for (std::size_t i = 0; i < g.nodes().size(); ++i)
        if (fwd[i] && bwd[i]) out.push_back(g.nodes()[i]);
    return out;
}

}  // namespace

CellSet invariant_part(const CellComplex& c, const MultivectorField& v, const CellSet& n) {
    return invariant_part(DynGraph(c, v, n));
}

IsolationReport is_isolated_invariant(const CellComplex& c, const MultivectorField& v, const CellSet& s,
                                      const std::optional<CellSet>& n_opt) {
    IsolationReport rep;
    const auto& p = c.poset();
    p.check_members(s);
    if (s.empty()) {
        rep.reasons.push_back("empty set");
        return rep;
    }
    CellSet n = n_opt ? *n_opt : p.closure(s);
    if (!is_subset(s, n)) rep.reasons.push_back("isolating set does not contain the set");
    if (!is_compatible(v, s)) rep.reasons.push_back("not V-compatible");
    if (!p.is_locally_closed(s)) rep.reasons.push_back("not locally closed");
    if (invariant_part(c, v, s) != s) rep.reasons.push_back("not invariant");
    if (rep.reasons.empty()) {
        DynGraph g(c, v, n);
        std::vector<int> outside;
        for (Cell x : s)
            for (int j : g.succ(g.local(x)))
                if (!contains(s, g.nodes()[std::size_t(j)])) outside.push_back(j);
        // Walk only through cells of n outside s; stepping back into s is a failure.
        std::vector<char> seen(n.size(), 0);
        while (!outside.empty()) {
            int u = outside.back();
            outside.pop_back();
            if (seen[std::size_t(u)]) continue;
            seen[std::size_t(u)] = 1;
            for (int w : g.succ(u)) {
                Cell cw = g.nodes()[std::size_t(w)];
                if (contains(s, cw)) {
                    rep.reasons.push_back("path leaves the set through " + c.name(g.nodes()[std::size_t(u)]) +
                                          " and returns at " + c.name(cw));
                    outside.clear();
                    break;
                }
                if (!seen[std::size_t(w)]) outside.push_back(w);
            }
        }
    }
    rep.isolated = rep.reasons.empty();
    return rep;
}

MorseDecomposition morse_decomposition(const CellComplex& c, const MultivectorField& v, const CellSet& n,
                                       unsigned jobs) {
    DynGraph g(c, v, n);
    const auto& comps = g.components();
    std::vector<int> morse_id(comps.size(), -1);
    MorseDecomposition md;
    for (std::size_t k = 0; k < comps.size(); ++k)
        if (comps[k].essential) {
            if (!c.poset().is_locally_closed(comps[k].cells))
                throw PreconditionError("a strongly connected component is not locally closed in the domain; outflow cells of the mesh cut it");
            morse_id[k] = int(md.sets.size());
            md.sets.push_back({comps[k].cells, {}});
        }
    parallel_for(md.sets.size(), jobs,
                 [&](std::size_t i) { md.sets[i].index = conley_index_pair(c, md.sets[i].cells); });

    // reach[k]: Morse sets reachable from component k (excluding k itself).
    // Components are topologically ordered, so a backward sweep suffices.
    std::vector<std::set<int>> reach(comps.size());
    for (std::size_t k = comps.size(); k-- > 0;) {
        for (int j : g.component_succ(int(k))) {
            reach[k].insert(reach[std::size_t(j)].begin(), reach[std::size_t(j)].end());
            if (morse_id[std::size_t(j)] >= 0) reach[k].insert(morse_id[std::size_t(j)]);
        }
    }
    for (std::size_t k = 0; k < comps.size(); ++k) {
        if (morse_id[k] < 0) continue;
        for (int j : reach[k]) {
            bool direct = true;
            for (int m : reach[k]) {
                if (m == j) continue;
                // find the component of Morse set m
                auto it = std::find(morse_id.begin(), morse_id.end(), m);
                if (reach[std::size_t(it - morse_id.begin())].count(j)) {
                    direct = false;
                    break;
                }
            }
            if (direct) md.edges.emplace_back(morse_id[k], j);
        }
    }
    std::sort(md.edges.begin(), md.edges.end());
    return md;
}

}  // namespace cb
