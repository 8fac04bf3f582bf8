#include <doctest.h>

#include <stdexcept>

#include "sqfap/verify.hpp"

using namespace sqfap;

TEST_SUITE("verify") {

TEST_CASE("every suite passes") {
    for (const char* suite : {"identities", "expsums", "psi", "sieve"}) {
        const auto rep = verify(suite, 1);
        CHECK(!rep.results.empty());
        for (const auto& r : rep.results) {
            INFO(r.suite << ": " << r.invariant << " " << r.counterexample);
            CHECK(r.pass);
            CHECK(r.cases > 0);
        }
    }
}

TEST_CASE("all runs the four suites and other seeds pass too") {
    const auto rep = verify("all", 12345);
    CHECK(rep.all_pass());
    CHECK(rep.results.size() == verify("identities").results.size() + verify("expsums").results.size() +
                                    verify("psi").results.size() + verify("sieve").results.size());
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(verify("nope"), std::invalid_argument); }

TEST_CASE("invariant rows") {
    InvariantResult r;
    r.suite = "psi";
    r.invariant = "x";
    r.pass = false;
    r.counterexample = "Y=5";
    const Row row = invariant_row(r);
    REQUIRE(row.fields.size() == 6);
    CHECK(std::get<bool>(row.fields[2].second) == false);
    CHECK(std::get<std::string>(row.fields[5].second) == "Y=5");
}

}  // TEST_SUITE
