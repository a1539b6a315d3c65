#include "painleve/selfcheck.hpp"

#include <doctest.h>

using namespace painleve;

TEST_SUITE("selfcheck") {

TEST_CASE("check helpers encode relation and verdict") {
    CHECK(check_less("op", "q", 1.0, 2.0).passed);
    CHECK_FALSE(check_less("op", "q", 2.0, 2.0).passed);
    CHECK(check_greater("op", "q", 3.0, 2.0).passed);
    CHECK(check_within("op", "q", 16.0, 12.0, 20.0).passed);
    CHECK_FALSE(check_within("op", "q", 21.0, 12.0, 20.0).passed);
    CHECK_FALSE(check_less("op", "q", std::nan(""), 1.0).passed);
}

TEST_CASE("report has the documented shape") {
    const SelfcheckReport rep = run_selfcheck(5, {4, 10});
    const auto j = to_json(rep);
    CHECK(j["generator"] == "mt19937_64");
    CHECK(j["seed"] == 5);
    REQUIRE(j["criteria"].size() == 2);
    for (const auto& c : j["criteria"]) {
        CHECK(c.contains("id"));
        CHECK(c.contains("passed"));
        for (const auto& chk : c["checks"])
            for (const char* key : {"operation", "quantity", "value", "tolerance", "relation", "passed"})
                CHECK(chk.contains(key));
    }
    CHECK(j["criteria"][1]["details"].contains("derived_relabeling"));
    CHECK(rep.all_passed());
}

TEST_CASE("same seed gives the same report") {
    const std::string a = to_json(run_selfcheck(8, {2, 12})).dump();
    const std::string b = to_json(run_selfcheck(8, {2, 12})).dump();
    CHECK(a == b);
    CHECK(a != to_json(run_selfcheck(9, {2, 12})).dump());
}

TEST_CASE("criterion ids outside 1..14 are rejected") {
    CHECK_THROWS_AS(run_selfcheck(1, {15}), Error);
    CHECK_THROWS_AS(criterion_name(0), Error);
}

}
