#include <doctest.h>

#include "properties.hpp"

using namespace cbt;

namespace {

void require_clean(const SuiteResult& r, int min_cases) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.cases >= min_cases);
    CHECK(r.failures == 0);
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("Alexandrov axioms and duality") { require_clean(suite_alexandrov(1000, 1), 1000); }

TEST_CASE("local closedness") { require_clean(suite_locally_closed(1000, 2), 1000); }

TEST_CASE("boundary of a boundary") { require_clean(suite_boundary_squared(1000, 3), 1000); }

TEST_CASE("Betti numbers") { require_clean(suite_betti(1000, 4), 1000); }

TEST_CASE("sections") {
    SectionSuite s = suite_sections(1000, 5);
    for (const SuiteResult* r : {&s.lyapunov, &s.levels, &s.interior, &s.extreme, &s.adjacent, &s.ring, &s.library})
        require_clean(*r, 1000);
}

}  // TEST_SUITE
