#include "cb/section.hpp"

#include <algorithm>
#include <set>

#include "cb/error.hpp"

namespace cb {

int SectionData::L_of(Cell c) const {
    auto it = std::lower_bound(R.begin(), R.end(), c);
    if (it == R.end() || *it != c || L.empty()) return -1;
    return L[std::size_t(it - R.begin())];
}

SectionResult build_section(const CellComplex& c, const MultivectorField& v, const CellSet& a, const CellSet& p) {
    const auto& X = c.poset();
    X.check_members(a);
    X.check_members(p);
    if (p.empty()) throw PreconditionError("section candidate is empty");
    if (!is_subset(p, a)) throw PreconditionError("section candidate is not contained in the invariant set");
    if (!X.is_locally_closed(p)) throw PreconditionError("section candidate is not locally closed");
    if (!is_compatible(v, p)) throw PreconditionError("section candidate is not V-compatible");
    auto iso = is_isolated_invariant(c, v, a);
    if (!iso.isolated) throw PreconditionError("set is not an isolated invariant set: " + iso.reasons.front());

    SectionData sd;
    sd.A = a;
    sd.P = p;
    const CellSet cl_a = X.closure(a);
    sd.H = X.closure(set_intersection(a, X.mouth(p)));
    sd.R = set_difference(cl_a, sd.H);

    SectionResult res;
    if (sd.H.empty()) {
        res.rejection = "H = cl(A & Mo P) is empty";
        return res;
    }
    if (sd.R.empty() || !X.is_connected(sd.R)) {
        res.rejection = "R = cl A \\ H is not connected";
        return res;
    }
    // Every maximal essential solution in cl A must reach H or Mo A, i.e. the
    // rest of cl A carries no essential component.
    CellSet rest = set_difference(a, sd.H);
    for (const auto& comp : essential_components(c, v, rest)) {
        if (comp.essential) {
            res.rejection = "an essential solution avoids H and Mo A (through " +
                            c.name(comp.cells.front()) + ")";
            return res;
        }
    }
    sd.Pbar = X.rel_closure(sd.R, set_intersection(p, sd.R));
    CellSet bd = X.rel_boundary(sd.R, sd.Pbar);
    CellSet clash = set_intersection(sd.H, X.closure(bd));
    if (!clash.empty()) {
        res.rejection = "H meets cl Bd_R Pbar at " + c.name(clash.front());
        return res;
    }
    res.section = std::move(sd);
    return res;
}

void lyapunov(const CellComplex& c, const MultivectorField& v, SectionData& sd) {
    sd.dist = c.poset().fence_distances(sd.R, sd.Pbar);
    for (std::size_t i = 0; i < sd.R.size(); ++i)
        if (sd.dist[i] < 0) throw InternalError("R is not connected to Pbar");
    DynGraph g(c, v, sd.R);
    const auto& comps = g.components();
    std::vector<int> value(comps.size(), 0);
    // Components are topologically ordered; successors sit at higher positions.
    for (std::size_t k = comps.size(); k-- > 0;) {
        int best = 0;
        for (Cell x : comps[k].cells) best = std::max(best, sd.dist[std::size_t(g.local(x))]);
        for (int j : g.component_succ(int(k))) best = std::max(best, value[std::size_t(j)]);
        value[k] = best;
    }
    sd.L.resize(sd.R.size());
    for (std::size_t i = 0; i < sd.R.size(); ++i) sd.L[i] = value[std::size_t(g.component_of(int(i)))];
}

void compute_shifts(const CellComplex& c, const MultivectorField& v, SectionData& sd) {
    (void)v;
    const auto& X = c.poset();
    if (sd.L.size() != sd.R.size()) throw InternalError("Lyapunov values have not been computed");
    const CellSet cl_a = X.closure(sd.A);
    CellSet candidates = set_difference(set_intersection(X.opn(sd.H), cl_a), X.closure(sd.P));
    if (candidates.empty()) throw InternalError("Opn H \\ cl P is empty, threshold undefined");
    sd.nbar = -1;
    for (Cell t : candidates) {
        int l = sd.L_of(t);
        if (l < 0) throw InternalError("threshold candidate " + c.name(t) + " lies outside R");
        sd.nbar = sd.nbar < 0 ? l : std::min(sd.nbar, l);
    }

    sd.levels = {CellSet{}, sd.Pbar};
    sd.n.assign(2, 0);
    for (int k = 2;; ++k) {
        const CellSet& prev = sd.levels.back();
        if (prev == sd.R) throw InternalError("level recursion reached R without meeting the stop rule");
        int nk = -1;
        for (Cell s : set_difference(sd.R, prev))
            if (intersects(X.down(s), prev)) nk = std::max(nk, sd.L_of(s));
        if (nk < 0) throw InternalError("level recursion stalled: B_" + std::to_string(k) + " is empty");
        sd.n.push_back(nk);
        if (nk >= sd.nbar) {
            sd.levels.push_back(sd.R);
            sd.kmax = k;
            break;
        }
        CellSet next;
        for (std::size_t i = 0; i < sd.R.size(); ++i)
            if (sd.L[i] <= nk) next.push_back(sd.R[i]);
        sd.levels.push_back(std::move(next));
    }

    sd.shifts.clear();
    for (int i = 0; i < sd.kmax; ++i) {
        CellSet s = set_difference(sd.levels[std::size_t(i + 1)], X.rel_interior(sd.R, sd.levels[std::size_t(i)]));
        if (s.empty()) throw InternalError("shift A_" + std::to_string(i) + " is empty");
        sd.shifts.push_back(std::move(s));
    }
}

SectionResult analyze_section(const CellComplex& c, const MultivectorField& v, const CellSet& a, const CellSet& p) {
    SectionResult res = build_section(c, v, a, p);
    if (res.section) {
        lyapunov(c, v, *res.section);
        compute_shifts(c, v, *res.section);
    }
    return res;
}

Coarsening toplex_coarsening(const CellComplex& c, const SectionData& sd) {
    Coarsening out;
    const CellSet top = toplexes(c);
    for (int i = 0; i < sd.kmax; ++i) {
        int j = sd.kmax - 1 - i;
        CellSet f = set_intersection(sd.shifts[std::size_t(j)], top);
        if (f.empty() && out.rejection.empty())
            out.rejection = "shift A_" + std::to_string(j) + " contains no toplex";
        out.families.push_back(std::move(f));
    }
    CellSet uni;
    for (std::size_t i = 0; i < out.families.size(); ++i) {
        if (intersects(uni, out.families[i]) && out.rejection.empty())
            out.rejection = "toplex families are not pairwise disjoint";
        uni = set_union(uni, out.families[i]);
    }
    if (uni != set_intersection(sd.A, top) && out.rejection.empty())
        out.rejection = "toplex families do not cover the toplexes of A";
    out.ok = out.rejection.empty();
    return out;
}

std::vector<PropCheck> check_propositions(const CellComplex& c, const MultivectorField& v, const SectionData& sd) {
    const auto& X = c.poset();
    std::vector<PropCheck> out;

    PropCheck lyap{"L non-increasing", true, ""};
    for (std::size_t i = 0; i < sd.R.size() && lyap.ok; ++i)
        for (Cell s : fv(c, v, sd.R[i])) {
            int ls = sd.L_of(s);
            if (ls >= 0 && ls > sd.L[i]) {
                lyap.ok = false;
                lyap.detail = "L increases from " + c.name(sd.R[i]) + " to " + c.name(s);
                break;
            }
        }
    out.push_back(lyap);

    PropCheck cl{"levels closed and compatible", true, ""};
    for (int k = 0; k < sd.kmax && cl.ok; ++k) {
        const CellSet& lk = sd.levels[std::size_t(k)];
        if (X.rel_closure(sd.R, lk) != lk) {
            cl.ok = false;
            cl.detail = "L_" + std::to_string(k) + " is not closed in R";
        } else if (!is_subset(compatible_hull(v, set_intersection(lk, sd.A)), lk)) {
            // Compatibility with the restriction of V to A: cells of Mo A carry
            // multivectors from outside cl A.
            cl.ok = false;
            cl.detail = "L_" + std::to_string(k) + " is not V-compatible";
        }
    }
    out.push_back(cl);

    PropCheck lint{"levels nested in interiors", true, ""};
    for (int k = 1; k <= sd.kmax && lint.ok; ++k)
        if (!is_subset(sd.levels[std::size_t(k - 1)], X.rel_interior(sd.R, sd.levels[std::size_t(k)]))) {
            lint.ok = false;
            lint.detail = "L_" + std::to_string(k - 1) + " is not inside int_R L_" + std::to_string(k);
        }
    out.push_back(lint);

    PropCheck extreme{"inner shifts avoid H", true, ""};
    for (int i = 1; i < sd.kmax - 1 && extreme.ok; ++i)
        if (intersects(sd.H, X.closure(sd.shifts[std::size_t(i)]))) {
            extreme.ok = false;
            extreme.detail = "H meets cl A_" + std::to_string(i);
        }
    out.push_back(extreme);

    PropCheck order{"only neighbouring shifts meet", true, ""};
    for (int i = 0; i < sd.kmax && order.ok; ++i)
        for (int j = i + 2; j < sd.kmax; ++j)
            if (intersects(sd.shifts[std::size_t(i)], sd.shifts[std::size_t(j)])) {
                order.ok = false;
                order.detail = "A_" + std::to_string(i) + " meets A_" + std::to_string(j);
                break;
            }
    out.push_back(order);

    PropCheck ring{"closures of neighbouring shifts meet", true, ""};
    for (int i = 0; i < sd.kmax && ring.ok; ++i) {
        int j = (i + 1) % sd.kmax;
        if (!intersects(X.closure(sd.shifts[std::size_t(i)]), X.closure(sd.shifts[std::size_t(j)]))) {
            ring.ok = false;
            ring.detail = "cl A_" + std::to_string(i) + " misses cl A_" + std::to_string(j);
        }
    }
    out.push_back(ring);
    return out;
}

std::vector<CellSet> propose_sections(const CellComplex& c, const MultivectorField& v, const CellSet& a,
                                      int max_chain) {
    DynGraph g(c, v, a);
    std::set<int> owners;
    for (Cell x : a) owners.insert(v.owner(x));

    // Next multivector along the dynamics: the smallest-index multivector
    // other than m entered by an edge leaving m.
    auto next_mv = [&](int m) {
        int best = -1;
        for (Cell x : v.mv(m)) {
            int li = g.local(x);
            if (li < 0) continue;
            for (int j : g.succ(li)) {
                int o = v.owner(g.nodes()[std::size_t(j)]);
                if (o != m && (best < 0 || o < best)) best = o;
            }
        }
        return best;
    };

    std::vector<CellSet> out;
    std::set<CellSet> seen;
    for (int len = 1; len <= max_chain; ++len) {
        for (int m : owners) {
            CellSet p;
            int cur = m;
            bool ok = true;
            for (int step = 0; step < len; ++step) {
                if (cur < 0 || !owners.count(cur)) {
                    ok = false;
                    break;
                }
                p = set_union(p, v.mv(cur));
                cur = next_mv(cur);
            }
            if (!ok || !c.poset().is_locally_closed(p)) continue;
            if (seen.insert(p).second) out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace cb
