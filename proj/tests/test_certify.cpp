#include <doctest.h>

#include "cb/certify.hpp"
#include "cb/io.hpp"
#include "properties.hpp"

using namespace cbt;

namespace {

Certificate certify_circle(const CellComplex& c, const MultivectorField& v, const CellSet& a,
                           std::optional<CellSet> p) {
    CertifyInput in;
    in.complex = &c;
    in.mvf = &v;
    in.A = a;
    in.P = std::move(p);
    return certify(in);
}

const LedgerEntry* entry(const Certificate& cert, const std::string& name) {
    for (const auto& e : cert.ledger)
        if (e.name == name) return &e;
    return nullptr;
}

}  // namespace

TEST_SUITE("certify") {

TEST_CASE("regularity") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    CHECK(check_regularity(c, v, c.all()));
    CHECK(check_regularity(c, v, {}));
    CHECK_THROWS_AS(check_regularity(c, v, cells(c, {"v0"})), PreconditionError);

    CellComplex t = triangle();
    std::vector<CellSet> single;
    for (Cell x : t.all()) single.push_back({x});
    MultivectorField s = MultivectorField::build(t, single);
    CHECK_FALSE(check_regularity(t, s, {t.id("0-1-2")}));
}

TEST_CASE("sharp pairs") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    CHECK(check_sharp_pair(c, v, c.id("e0"), c.id("e1")));
    CHECK_FALSE(check_sharp_pair(c, v, c.id("e0"), c.id("e2")));
    CHECK_THROWS_AS(check_sharp_pair(c, v, c.id("e0"), c.id("e0")), PreconditionError);
    CHECK_THROWS_AS(check_sharp_pair(c, v, c.id("v0"), c.id("e1")), PreconditionError);
}

TEST_CASE("condition (f) on the circle") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    auto ift = ift_from_mvf(c, v);
    std::vector<CellSet> fam{cells(c, {"e1"}), cells(c, {"e2"}), cells(c, {"e0"})};
    CHECK(check_condition_f_direct(c, v, c.all(), fam, ift).ok);
    std::vector<CellSet> swapped{cells(c, {"e2"}), cells(c, {"e1"}), cells(c, {"e0"})};
    ConditionF bad = check_condition_f_direct(c, v, c.all(), swapped, ift);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.detail.empty());
    CHECK_THROWS_AS(check_condition_f_direct(c, v, c.all(), {cells(c, {"e1"}), cells(c, {"e0", "e2"})}, ift),
                    PreconditionError);
    CHECK_THROWS_AS(
        check_condition_f_direct(c, v, c.all(), {cells(c, {"e1"}), cells(c, {"e2"}), cells(c, {"e0", "e2"})}, ift),
        PreconditionError);
    CHECK_THROWS_AS(check_condition_f_direct(c, v, c.all(), {cells(c, {"e1"}), cells(c, {"e2"}), {}}, ift),
                    PreconditionError);
}

TEST_CASE("certificate for the circle") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    Certificate cert = certify_circle(c, v, c.all(), cells(c, {"v0", "e0"}));
    CHECK_MESSAGE(cert.issued, cert.rejection);
    CHECK(cert.index == std::vector<int>{1, 1});
    CHECK(cert.r == std::vector<int>{0});
    CHECK(cert.kmax == 3);
    CHECK(cert.P == std::vector<std::string>{"v0", "e0"});
    REQUIRE(cert.families.size() == 3);
    CHECK(cert.families[0] == std::vector<std::string>{"e1"});
    CHECK(cert.families[1] == std::vector<std::string>{"e2"});
    CHECK(cert.families[2] == std::vector<std::string>{"e0"});
    CHECK(cert.ledger.size() == 12);
    for (const auto& e : cert.ledger) CHECK_MESSAGE(e.ok, e.name << ": " << e.evidence);
    CHECK(cert.rejection.empty());

    Certificate automatic = certify_circle(c, v, c.all(), std::nullopt);
    CHECK(automatic.issued);
}

TEST_CASE("ledger order") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    Certificate cert = certify_circle(c, v, c.all(), cells(c, {"v0", "e0"}));
    std::vector<std::string> names;
    for (const auto& e : cert.ledger) names.push_back(e.name);
    CHECK(names == std::vector<std::string>{"A connected", "A isolated invariant", "homology condition",
                                            "multivectors regular", "section accepted", "kmax at least 3",
                                            "shifts contain toplexes", "section propositions",
                                            "no circular intersection", "no outflow in cl A", "condition (f) direct",
                                            "toplexes equilibrium-free"});
}

TEST_CASE("rejections") {
    CellComplex c2 = circle(2);
    MultivectorField v2 = circle_field(c2, 2);
    Certificate short_cycle = certify_circle(c2, v2, c2.all(), cells(c2, {"v0", "e0"}));
    CHECK_FALSE(short_cycle.issued);
    REQUIRE(entry(short_cycle, "kmax at least 3"));
    CHECK_FALSE(entry(short_cycle, "kmax at least 3")->ok);
    CHECK(short_cycle.rejection.rfind("kmax at least 3", 0) == 0);

    CellComplex t = triangle();
    std::vector<CellSet> single;
    for (Cell x : t.all()) single.push_back({x});
    MultivectorField s = MultivectorField::build(t, single);
    Certificate critical = certify_circle(t, s, {t.id("0-1-2")}, std::nullopt);
    CHECK_FALSE(critical.issued);
    CHECK(critical.index == std::vector<int>{0, 0, 1});
    CHECK(critical.rejection.rfind("homology condition", 0) == 0);

    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    Certificate part = certify_circle(c, v, cells(c, {"v0", "e0"}), std::nullopt);
    CHECK_FALSE(part.issued);
    CHECK_FALSE(entry(part, "A isolated invariant")->ok);
    Certificate bad_p = certify_circle(c, v, c.all(), c.all());
    CHECK_FALSE(bad_p.issued);
    CHECK_FALSE(entry(bad_p, "section accepted")->ok);
}

TEST_CASE("determinism and hashing") {
    CellComplex c = circle(3);
    MultivectorField v = circle_field(c, 3);
    Certificate a = certify_circle(c, v, c.all(), std::nullopt);
    Certificate b = certify_circle(c, v, c.all(), std::nullopt);
    CHECK(a == b);
    CHECK(certificate_to_json(a).dump() == certificate_to_json(b).dump());
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(a.complex_hash.size() == 16);
}

TEST_CASE("issued certificates agree with the oracles") {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> cn(3, 6);
    int issued = 0, with_f = 0;
    for (int k = 0; k < 400; ++k) {
        const int n = cn(rng);
        CellComplex c = circle(n);
        // Half of the fields turn consistently around the circle, in either
        // direction; the rest are random partitions.
        std::vector<CellSet> mvs;
        if (k % 2) {
            const bool forward = k % 4 == 1;
            for (int i = 0; i < n; ++i) {
                const int vi = forward ? i : (i + 1) % n;
                mvs.push_back(cells(c, {"v" + std::to_string(vi), "e" + std::to_string(i)}));
            }
        } else {
            mvs = random_partition(rng, c, int(c.size()));
        }
        MultivectorField v = MultivectorField::build(c, mvs);
        const Matrix leq = leq_matrix(c.poset());
        for (const auto& ms : morse_decomposition(c, v, c.all()).sets) {
            Certificate cert = certify_circle(c, v, ms.cells, std::nullopt);
            if (!cert.issued) continue;
            ++issued;
            CHECK(brute_component_count(leq, ms.cells) == 1);
            CHECK(brute_convex(leq, ms.cells));
            CellSet cl = brute_closure(leq, ms.cells);
            BettiVector idx = brute_betti(c, cl, set_difference(cl, ms.cells));
            CHECK(trim(idx) == trim(BettiVector(cert.index.begin(), cert.index.end())));
            for (int r : cert.r) {
                BettiVector p = pad(idx, 4);
                for (std::size_t i = 0; i < p.size(); ++i)
                    CHECK(p[i] == ((int(i) == r || int(i) == r + 1) ? 1 : 0));
            }
            for (const auto& comp : brute_components(c, v, ms.cells)) CHECK(comp.second);
        }

        // Condition (f) holds whenever a section yields a coarsening.
        for (const auto& ms : morse_decomposition(c, v, c.all()).sets) {
            if (!is_isolated_invariant(c, v, ms.cells).isolated) continue;
            for (const auto& p : propose_sections(c, v, ms.cells)) {
                SectionResult sr = analyze_section(c, v, ms.cells, p);
                if (!sr.section || sr.section->kmax < 3) continue;
                Coarsening co = toplex_coarsening(c, *sr.section);
                if (!co.ok) continue;
                ++with_f;
                CHECK(check_condition_f_direct(c, v, ms.cells, co.families, ift_from_mvf(c, v)).ok);
            }
        }
    }
    CHECK(issued > 20);
    CHECK(with_f > 20);
}

}  // TEST_SUITE
