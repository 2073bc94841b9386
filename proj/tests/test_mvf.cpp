#include <doctest.h>

#include "cb/io.hpp"
#include "support.hpp"

using namespace cbt;

namespace {

// Simplicial path 0-1-2-3 with multivectors {0}, {0-1,1}, {1-2,2}, {2-3}, {3}:
// the critical edge 2-3 flows down to the critical vertex 0 through the
// regular connectors and also into the critical vertex 3.
struct Chain {
    CellComplex c = CellComplex::simplicial(4, {{0, 1}, {1, 2}, {2, 3}});
    MultivectorField v = MultivectorField::build(
        c, {cells(c, {"0"}), cells(c, {"0-1", "1"}), cells(c, {"1-2", "2"}), cells(c, {"2-3"}), cells(c, {"3"})});
};

std::vector<std::pair<CellSet, bool>> library_components(const CellComplex& c, const MultivectorField& v,
                                                         const CellSet& n) {
    std::vector<std::pair<CellSet, bool>> out;
    DynGraph g(c, v, n);
    for (const auto& comp : g.components()) out.push_back({comp.cells, comp.essential});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("mvf") {

TEST_CASE("multivector field validation") {
    CellComplex c = circle(3);
    CHECK(validate_mvf(c, {cells(c, {"v0", "e0"}), cells(c, {"v1", "e1"}), cells(c, {"v2", "e2"})}).empty());
    auto overlap = validate_mvf(c, {cells(c, {"v0", "e0"}), cells(c, {"e0", "v1", "e1"}), cells(c, {"v2", "e2"})});
    REQUIRE_FALSE(overlap.empty());
    CHECK(overlap.front().rfind("partition", 0) == 0);
    auto missing = validate_mvf(c, {cells(c, {"v0", "e0"}), cells(c, {"v1", "e1"})});
    CHECK_FALSE(missing.empty());

    // {v0, e1} on the circle: the library verdict matches the exhaustive oracle.
    Matrix leq = leq_matrix(c.poset());
    const CellSet odd = cells(c, {"v0", "e1"});
    auto report = validate_mvf(c, {odd, cells(c, {"v1", "e0"}), cells(c, {"v2", "e2"})});
    CHECK(report.empty() == brute_difference_of_closed(leq, odd));

    CellComplex t = triangle();
    std::vector<CellSet> mvs{cells(t, {"0", "0-1-2"})};
    for (const char* name : {"1", "2", "0-1", "0-2", "1-2"}) mvs.push_back(cells(t, {name}));
    auto bad = validate_mvf(t, mvs);
    REQUIRE(bad.size() == 1);
    CHECK(bad.front().rfind("locally closed", 0) == 0);
    CHECK_THROWS_AS(MultivectorField::build(t, mvs), PreconditionError);
}

TEST_CASE("regularity and indices of multivectors") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(v.regular(i));
        CHECK(trim(v.index(i)) == BettiVector{0});
    }
    CellComplex t = triangle();
    std::vector<CellSet> single;
    for (Cell x : t.all()) single.push_back({x});
    MultivectorField s = MultivectorField::build(t, single);
    CHECK(s.critical_cell(t.id("0-1-2")));
    CHECK(s.index(s.owner(t.id("0-1-2"))) == BettiVector{0, 0, 1});
}

TEST_CASE("fv on the circle") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    CHECK(fv(c, v, c.id("e0")) == cells(c, {"v0", "v1", "e0"}));
    CHECK(fv(c, v, c.id("v0")) == cells(c, {"v0", "e0"}));
    for (Cell x : c.all()) CHECK(is_subset(c.poset().closure({x}), fv(c, v, x)));
}

TEST_CASE("compatibility") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    CHECK(is_compatible(v, cells(c, {"v0", "e0"})));
    CHECK_FALSE(is_compatible(v, cells(c, {"v0"})));
    CHECK(compatible_hull(v, cells(c, {"v0", "e1"})) == cells(c, {"v0", "e0", "v1", "e1"}));
}

TEST_CASE("essential components on the circle") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    auto all = essential_components(c, v, c.all());
    REQUIRE(all.size() == 1);
    CHECK(all.front().essential);
    CHECK(all.front().cells == c.all());

    auto one = essential_components(c, v, cells(c, {"v0", "e0"}));
    REQUIRE(one.size() == 1);
    CHECK_FALSE(one.front().essential);

    CellComplex t = triangle();
    std::vector<CellSet> single;
    for (Cell x : t.all()) single.push_back({x});
    MultivectorField s = MultivectorField::build(t, single);
    auto comps = essential_components(t, s, {t.id("0-1-2")});
    REQUIRE(comps.size() == 1);
    CHECK(comps.front().essential);
}

TEST_CASE("invariant part") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    CHECK(invariant_part(c, v, c.all()) == c.all());
    CHECK(invariant_part(c, v, cells(c, {"v0", "e0"})).empty());

    Chain ch;
    CHECK(invariant_part(ch.c, ch.v, ch.c.all()) == ch.c.all());
    CellSet cut = set_difference(ch.c.all(), {ch.c.id("2-3")});
    CHECK(invariant_part(ch.c, ch.v, cut) == cells(ch.c, {"0", "3"}));
}

TEST_CASE("isolated invariant sets") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    CHECK(is_isolated_invariant(c, v, c.all()).isolated);
    auto regular = is_isolated_invariant(c, v, cells(c, {"v0", "e0"}));
    CHECK_FALSE(regular.isolated);
    CHECK(std::find(regular.reasons.begin(), regular.reasons.end(), "not invariant") != regular.reasons.end());
    auto cut = is_isolated_invariant(c, v, set_difference(c.all(), {c.id("e2")}));
    CHECK_FALSE(cut.isolated);
    CHECK(std::find(cut.reasons.begin(), cut.reasons.end(), "not V-compatible") != cut.reasons.end());

    // Two critical cells whose connectors lie outside the closure.
    Chain ch;
    CHECK(is_isolated_invariant(ch.c, ch.v, cells(ch.c, {"0", "2-3"})).isolated);
    auto tail = is_isolated_invariant(ch.c, ch.v, cells(ch.c, {"0", "0-1", "1"}));
    CHECK_FALSE(tail.isolated);
    CHECK(std::find(tail.reasons.begin(), tail.reasons.end(), "not invariant") != tail.reasons.end());
    CHECK(is_isolated_invariant(ch.c, ch.v, cells(ch.c, {"0"})).isolated);
}

TEST_CASE("Morse decomposition of the circle and the chain") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    MorseDecomposition md = morse_decomposition(c, v, c.all());
    REQUIRE(md.sets.size() == 1);
    CHECK(md.sets.front().index == BettiVector{1, 1});
    CHECK(md.edges.empty());

    Chain ch;
    MorseDecomposition mc = morse_decomposition(ch.c, ch.v, ch.c.all());
    REQUIRE(mc.sets.size() == 3);
    std::map<CellSet, int> at;
    for (std::size_t i = 0; i < mc.sets.size(); ++i) at[mc.sets[i].cells] = int(i);
    REQUIRE(at.count(cells(ch.c, {"2-3"})));
    REQUIRE(at.count(cells(ch.c, {"0"})));
    REQUIRE(at.count(cells(ch.c, {"3"})));
    const int top = at[cells(ch.c, {"2-3"})];
    CHECK(mc.sets[std::size_t(top)].index == BettiVector{0, 1});
    auto edges = mc.edges;
    std::sort(edges.begin(), edges.end());
    std::vector<std::pair<int, int>> want{{top, at[cells(ch.c, {"0"})]}, {top, at[cells(ch.c, {"3"})]}};
    std::sort(want.begin(), want.end());
    CHECK(edges == want);
}

TEST_CASE("gradient field has an empty decomposition") {
    CellComplex c = one_edge();
    MultivectorField v = MultivectorField::build(c, {cells(c, {"0", "0-1"}), cells(c, {"1"})});
    MorseDecomposition md = morse_decomposition(c, v, c.all());
    REQUIRE(md.sets.size() == 1);
    CHECK(md.sets.front().cells == cells(c, {"1"}));

    CellComplex circ = circle(4);
    MultivectorField open = MultivectorField::build(
        circ, {cells(circ, {"v0", "e0"}), cells(circ, {"v1", "e1"}), cells(circ, {"v2", "e2"}), cells(circ, {"v3", "e3"})});
    CellSet n = cells(circ, {"v0", "e0", "v1", "e1"});
    CHECK(morse_decomposition(circ, open, n).sets.empty());
}

TEST_CASE("combinatorial Lorenz data") {
    CellComplex c = read_complex(data_path("lorenz.complex.json"));
    MultivectorField v = MultivectorField::build(c, mvf_from_json(c, parse_json(read_file(data_path("lorenz.mvf.json")))));
    MorseDecomposition md = morse_decomposition(c, v, c.all());
    REQUIRE(md.sets.size() == 4);
    std::map<BettiVector, int> count;
    for (const auto& s : md.sets) ++count[s.index];
    CHECK(count[BettiVector{1, 1, 0}] == 2);
    CHECK(count[BettiVector{0, 1, 0}] == 1);
    // The top set: the repeller carrying all fifteen triangles.
    CHECK(count[BettiVector{0, 0, 0}] == 1);
    for (const auto& s : md.sets) {
        CHECK(is_isolated_invariant(c, v, s.cells).isolated);
        if (s.index == BettiVector{0, 1, 0}) CHECK(s.cells == cells(c, {"2-11"}));
        if (s.index == BettiVector{0, 0, 0}) CHECK(set_intersection(s.cells, toplexes(c)).size() == 15);
    }
    CHECK(md.edges.size() == 3);
}

TEST_CASE("dynamics graph against the reachability oracle") {
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int k = 0; k < 300; ++k) {
        CellComplex c = k % 3 ? random_simplicial(rng, 12, 2) : circle(2 + k % 5);
        MultivectorField v = MultivectorField::build(c, random_partition(rng, c, int(c.size())));
        CellSet n = c.poset().closure(random_subset(rng, c.size(), 0.5));
        CHECK(library_components(c, v, n) == brute_components(c, v, n));
        CHECK(library_components(c, v, c.all()) == brute_components(c, v, c.all()));

        // Each multivector sits inside one strongly connected component.
        DynGraph g(c, v, c.all());
        for (const auto& m : v.multivectors())
            for (Cell x : m) CHECK(g.component_of(g.local(x)) == g.component_of(g.local(m.front())));

        // Invariant part: idempotent, monotone, contained in n.
        CellSet inv = invariant_part(c, v, n);
        CHECK(is_subset(inv, n));
        CHECK(is_subset(inv, invariant_part(c, v, c.all())));
        if (!inv.empty() && c.poset().is_locally_closed(inv)) CHECK(invariant_part(c, v, inv) == inv);

        for (const auto& s : morse_decomposition(c, v, c.all()).sets) {
            auto rep = is_isolated_invariant(c, v, s.cells);
            if (!rep.isolated) continue;
            ++checked;
            CHECK(c.poset().is_closed(c.poset().mouth(s.cells)));
            CHECK(is_compatible(v, s.cells));
        }
    }
    CHECK(checked > 0);
}

}  // TEST_SUITE
