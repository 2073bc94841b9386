#include "cb/certify.hpp"

#include <cstdio>
#include <functional>
#include <set>

#include "cb/error.hpp"
#include "cb/io.hpp"

namespace cb {

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool check_regularity(const CellComplex& c, const MultivectorField& v, const CellSet& a) {
    c.poset().check_members(a);
    if (!is_compatible(v, a)) throw PreconditionError("regularity check needs a V-compatible set");
    for (Cell x : a)
        if (!v.regular(v.owner(x))) return false;
    return true;
}

bool check_sharp_pair(const CellComplex& c, const MultivectorField& v, Cell tau, Cell sigma) {
    const CellSet top = toplexes(c);
    if (tau == sigma) throw PreconditionError("sharp pair needs two distinct toplexes");
    if (!contains(top, tau) || !contains(top, sigma)) throw PreconditionError("sharp pair needs toplexes");
    if (!v.regular(v.owner(tau)) || !v.regular(v.owner(sigma)))
        throw PreconditionError("sharp pair needs regular multivectors");
    return intersects(c.poset().down(tau), v.mv_of(sigma));
}

namespace {

// Sharp-pair digraph on the given toplexes, as adjacency lists of positions.
std::vector<std::vector<int>> sharp_graph(const CellComplex& c, const MultivectorField& v, const CellSet& tops) {
    std::vector<std::vector<int>> adj(tops.size());
    for (std::size_t i = 0; i < tops.size(); ++i)
        for (std::size_t j = 0; j < tops.size(); ++j)
            if (i != j && check_sharp_pair(c, v, tops[i], tops[j])) adj[i].push_back(int(j));
    return adj;
}

}  // namespace

ConditionF check_condition_f_direct(const CellComplex& c, const MultivectorField& v, const CellSet& a,
                                    const std::vector<CellSet>& families, const std::vector<Cell>& ift,
                                    const CellSet& exempt) {
    const auto& X = c.poset();
    const std::size_t p = families.size();
    if (p < 3) throw PreconditionError("condition (f) needs at least three families");
    const CellSet tops = set_intersection(a, toplexes(c));
    std::vector<int> family(tops.size(), -1);
    for (std::size_t i = 0; i < p; ++i)
        for (Cell t : families[i]) {
            auto it = std::lower_bound(tops.begin(), tops.end(), t);
            if (it == tops.end() || *it != t)
                throw PreconditionError("family member " + c.name(t) + " is not a toplex of the set");
            int& slot = family[std::size_t(it - tops.begin())];
            if (slot >= 0) throw PreconditionError("families overlap at " + c.name(t));
            slot = int(i);
        }
    for (std::size_t k = 0; k < tops.size(); ++k)
        if (family[k] < 0) throw PreconditionError("families miss the toplex " + c.name(tops[k]));

    const auto adj = sharp_graph(c, v, tops);
    const CellSet leave = set_union(X.mouth(a), exempt);
    std::vector<char> good(tops.size(), 0);
    for (std::size_t k = 0; k < tops.size(); ++k) {
        bool ok = true;
        for (Cell x : X.down(tops[k]))
            if (x != tops[k] && ift[std::size_t(x)] != tops[k] && !contains(leave, x)) ok = false;
        good[k] = ok;
    }

    ConditionF out;
    for (std::size_t i = 0; i < p; ++i) {
        const int skip = int((i + 1) % p), target = int((i + 2) % p);
        std::vector<char> seen(tops.size(), 0);
        std::vector<int> todo;
        for (std::size_t k = 0; k < tops.size(); ++k)
            if (family[k] == int(i)) {
                seen[k] = 1;
                todo.push_back(int(k));
            }
        while (!todo.empty()) {
            int u = todo.back();
            todo.pop_back();
            for (int w : adj[std::size_t(u)]) {
                if (family[std::size_t(w)] == skip || seen[std::size_t(w)]) continue;
                if (family[std::size_t(w)] == target) {
                    out.detail = "family " + std::to_string(i) + " reaches family " + std::to_string(target) +
                                 " at " + c.name(tops[std::size_t(w)]) + " avoiding family " + std::to_string(skip);
                    return out;
                }
                seen[std::size_t(w)] = 1;
                todo.push_back(w);
            }
        }
        // Cycles among the reached toplexes: strongly connected pieces of size >= 2.
        std::vector<int> reached;
        for (std::size_t k = 0; k < tops.size(); ++k)
            if (seen[k]) reached.push_back(int(k));
        std::vector<int> index(tops.size(), -1), low(tops.size(), 0), stack;
        std::vector<char> on(tops.size(), 0);
        int counter = 0;
        std::function<void(int)> dfs = [&](int u) {
            index[std::size_t(u)] = low[std::size_t(u)] = counter++;
            stack.push_back(u);
            on[std::size_t(u)] = 1;
            for (int w : adj[std::size_t(u)]) {
                if (!seen[std::size_t(w)]) continue;
                if (index[std::size_t(w)] < 0) {
                    dfs(w);
                    low[std::size_t(u)] = std::min(low[std::size_t(u)], low[std::size_t(w)]);
                } else if (on[std::size_t(w)]) {
                    low[std::size_t(u)] = std::min(low[std::size_t(u)], index[std::size_t(w)]);
                }
            }
            if (low[std::size_t(u)] == index[std::size_t(u)]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[std::size_t(w)] = 0;
                    comp.push_back(w);
                } while (w != u);
                if (comp.size() < 2) return;
                bool exits = false;
                for (int k : comp) exits = exits || good[std::size_t(k)];
                if (!exits && out.detail.empty())
                    out.detail = "cycle through " + c.name(tops[std::size_t(comp.front())]) + " reachable from family " +
                                 std::to_string(i) + " never leaves the set";
            }
        };
        for (int k : reached)
            if (index[std::size_t(k)] < 0) dfs(k);
        if (!out.detail.empty()) return out;
    }
    out.ok = true;
    return out;
}

namespace {

std::string join_names(const CellComplex& c, const CellSet& s, std::size_t limit = 8) {
    std::string out;
    for (std::size_t i = 0; i < s.size() && i < limit; ++i) out += (i ? " " : "") + c.name(s[i]);
    if (s.size() > limit) out += " ...";
    return out;
}

struct SectionOutcome {
    std::optional<SectionData> sd;
    Coarsening coarsening;
    std::vector<LedgerEntry> entries;
    bool all_ok = false;
};

SectionOutcome evaluate_section(const CellComplex& c, const MultivectorField& v, const CellSet& a, const CellSet& p,
                                const std::vector<Cell>& ift, const CellSet& exempt) {
    SectionOutcome out;
    auto add = [&](const std::string& name, bool ok, const std::string& ev) { out.entries.push_back({name, ok, ev}); };
    SectionResult res;
    std::string pre;
    try {
        res = analyze_section(c, v, a, p);
    } catch (const PreconditionError& e) {
        pre = e.what();
    }
    if (!res.section) {
        add("section accepted", false, pre.empty() ? res.rejection : "invalid candidate: " + pre);
        for (const char* name : {"kmax at least 3", "shifts contain toplexes", "section propositions",
                                 "condition (f) direct"})
            add(name, false, "no accepted section");
        return out;
    }
    const SectionData& sd = *res.section;
    add("section accepted", true, "P = {" + join_names(c, p) + "}");
    add("kmax at least 3", sd.kmax >= 3, "kmax = " + std::to_string(sd.kmax));
    out.coarsening = toplex_coarsening(c, sd);
    add("shifts contain toplexes", out.coarsening.ok,
        out.coarsening.ok ? std::to_string(out.coarsening.families.size()) + " disjoint toplex families"
                          : out.coarsening.rejection);
    std::string failed;
    for (const auto& pc : check_propositions(c, v, sd))
        if (!pc.ok && failed.empty()) failed = pc.name + ": " + pc.detail;
    add("section propositions", failed.empty(), failed.empty() ? "all six checks hold" : failed);
    if (out.coarsening.ok && sd.kmax >= 3) {
        ConditionF f = check_condition_f_direct(c, v, a, out.coarsening.families, ift, exempt);
        add("condition (f) direct", f.ok, f.ok ? "sharp-pair digraph check holds" : f.detail);
    } else {
        add("condition (f) direct", false, "coarsening unavailable");
    }
    out.all_ok = true;
    for (const auto& e : out.entries) out.all_ok = out.all_ok && e.ok;
    out.sd = res.section;
    return out;
}

}  // namespace

Certificate certify(const CertifyInput& in) {
    if (!in.complex || !in.mvf) throw PreconditionError("certify needs a complex and a multivector field");
    const CellComplex& c = *in.complex;
    const MultivectorField& v = *in.mvf;
    const auto& X = c.poset();
    X.check_members(in.A);
    if (in.P) X.check_members(*in.P);

    Certificate cert;
    cert.complex_hash = fnv1a_hex(complex_to_json(c).dump());
    cert.field_hash = in.field_source.empty() ? "" : fnv1a_hex(in.field_source);
    cert.A = c.names(in.A);
    cert.theorem_backed = {"closure of A is an isolating block with exit set Mo A",
                           "closed subcomplexes, hence cl A and Mo A, are compact ANRs"};

    const std::vector<Cell> ift = in.flow ? in.flow->ift : ift_from_mvf(c, v);
    const CellSet exempt = in.flow ? in.flow->outflow : CellSet{};
    std::vector<LedgerEntry>& L = cert.ledger;
    auto add = [&](const std::string& name, bool ok, const std::string& ev) { L.push_back({name, ok, ev}); };

    const bool nonempty = !in.A.empty();
    const bool connected = nonempty && X.is_connected(in.A);
    add("A connected", connected,
        !nonempty ? "A is empty" : std::to_string(X.connected_components(in.A).size()) + " fence component(s)");

    IsolationReport iso;
    if (nonempty) iso = is_isolated_invariant(c, v, in.A);
    add("A isolated invariant", iso.isolated, iso.isolated ? "checked in N = cl A" : iso.reasons.empty() ? "A is empty" : iso.reasons.front());

    const bool lc = nonempty && X.is_locally_closed(in.A);
    if (lc) {
        cert.index = conley_index_pair(c, in.A);
        cert.r = homology_condition(cert.index);
    }
    add("homology condition", !cert.r.empty(),
        lc ? "index " + to_string(cert.index) + (cert.r.empty() ? " admits no r" : " r = " + [&] {
            std::string s;
            for (int r : cert.r) s += (s.empty() ? "" : ",") + std::to_string(r);
            return s;
        }())
           : "A is not locally closed");

    bool compatible = nonempty && is_compatible(v, in.A);
    bool regular = compatible && check_regularity(c, v, in.A);
    std::string reg_ev = "every multivector in A has zero index";
    if (!compatible) reg_ev = "A is not V-compatible";
    else if (!regular)
        for (Cell x : in.A)
            if (!v.regular(v.owner(x))) {
                reg_ev = "critical multivector containing " + c.name(x) + " with index " +
                         to_string(v.index(v.owner(x)));
                break;
            }
    add("multivectors regular", regular, reg_ev);

    // Section-dependent entries.
    std::vector<LedgerEntry> sect;
    if (connected && iso.isolated) {
        std::vector<CellSet> candidates = in.P ? std::vector<CellSet>{*in.P} : propose_sections(c, v, in.A);
        std::optional<SectionOutcome> chosen;
        for (const auto& p : candidates) {
            SectionOutcome o = evaluate_section(c, v, in.A, p, ift, exempt);
            bool better = !chosen || (o.all_ok && !chosen->all_ok) || (o.sd && !chosen->sd);
            if (better) {
                chosen = std::move(o);
                cert.P = c.names(p);
            }
            if (chosen->all_ok) break;
        }
        if (chosen) {
            sect = chosen->entries;
            if (chosen->sd) cert.kmax = chosen->sd->kmax;
            for (const auto& f : chosen->coarsening.families) cert.families.push_back(c.names(f));
        } else {
            sect.push_back({"section accepted", false, "no locally closed section candidate along the dynamics"});
        }
    } else {
        sect.push_back({"section accepted", false, "A is not a connected isolated invariant set"});
    }
    for (const char* name :
         {"section accepted", "kmax at least 3", "shifts contain toplexes", "section propositions"}) {
        auto it = std::find_if(sect.begin(), sect.end(), [&](const LedgerEntry& e) { return e.name == name; });
        L.push_back(it != sect.end() ? *it : LedgerEntry{name, false, "no accepted section"});
    }

    // Circular intersections among toplexes of A sharing a cell.
    const CellSet tops = set_intersection(in.A, toplexes(c));
    std::string circ;
    for (std::size_t i = 0; i < tops.size() && circ.empty(); ++i)
        for (std::size_t j = i + 1; j < tops.size() && circ.empty(); ++j)
            if (intersects(X.down(tops[i]), X.down(tops[j])) &&
                detect_circular_intersection(c, ift, tops[i], tops[j]))
                circ = c.name(tops[i]) + " and " + c.name(tops[j]);
    add("no circular intersection", circ.empty(),
        circ.empty() ? std::to_string(tops.size()) + " toplexes checked" : "circular intersection of " + circ);

    const CellSet cl_a = X.closure(in.A);
    const CellSet bad_out = set_intersection(cl_a, exempt);
    add("no outflow in cl A", bad_out.empty(), bad_out.empty() ? "none" : "outflow cells " + join_names(c, bad_out));

    auto f = std::find_if(sect.begin(), sect.end(), [](const LedgerEntry& e) { return e.name == "condition (f) direct"; });
    L.push_back(f != sect.end() ? *f : LedgerEntry{"condition (f) direct", false, "no accepted section"});

    if (in.flow) {
        std::string bad;
        for (Cell t : tops) {
            int ti = in.flow->tri_of_cell[std::size_t(t)];
            if (ti >= 0 && !in.flow->report.triangles[std::size_t(ti)].verified) {
                bad = c.name(t) + " (" + in.flow->report.triangles[std::size_t(ti)].note + ")";
                break;
            }
        }
        add("toplexes equilibrium-free", bad.empty(), bad.empty() ? "interval exclusion on every toplex" : bad);
    } else {
        add("toplexes equilibrium-free", true, "combinatorial input without a vector field");
    }

    cert.issued = true;
    for (const auto& e : L)
        if (!e.ok) {
            cert.issued = false;
            cert.rejection = e.name + ": " + e.evidence;
            break;
        }
    return cert;
}

}  // namespace cb
