#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <regex>

#include "cas/pipeline.hpp"

using namespace cas;

static const std::vector<Stage> all_stages = {Stage::gcd, Stage::norm,
                                              Stage::local, Stage::tunnell};

TEST_CASE("squarefree_upto") {
    CHECK(squarefree_upto(10) ==
          std::vector<uint64_t>{1, 2, 3, 5, 6, 7, 10});
    CHECK(squarefree_upto(150).size() == 92);
}

TEST_CASE("enumerate_triples counts") {
    CHECK(enumerate_triples(2).size() == 8);
    CHECK(enumerate_triples(10).size() == 343);
    CHECK(enumerate_triples(150).size() == 778688);
}

TEST_CASE("gcd_stage examples") {
    CHECK(gcd_stage({3, 1, 2}));
    CHECK(!gcd_stage({2, 2, 1}));
    CHECK(gcd_stage({6, 1, 10}));
}

TEST_CASE("parse_stages") {
    CHECK(parse_stages("gcd").size() == 1);
    CHECK(parse_stages("gcd,norm,local,tunnell").size() == 4);
    CHECK_THROWS_AS(parse_stages("norm"), std::invalid_argument);
    CHECK_THROWS_AS(parse_stages("gcd,local"), std::invalid_argument);
    CHECK_THROWS_AS(parse_stages("gcd,norm,local,tunnell,extra"),
                    std::invalid_argument);
}

TEST_CASE("gcd stage at bound 2") {
    StageReport rep = run_pipeline(2, {Stage::gcd});
    auto has = [&](Triple t) {
        return std::find(rep.survivors.begin(), rep.survivors.end(), t) !=
               rep.survivors.end();
    };
    CHECK(has({1, 1, 1}));
    CHECK(has({1, 2, 1}));
    CHECK(has({2, 1, 1}));
    CHECK(has({1, 1, 2}));
    CHECK(has({2, 1, 2}));
    CHECK(!has({1, 2, 2}));
    CHECK(!has({2, 2, 1}));
    CHECK(!has({2, 2, 2}));
}

TEST_CASE("small full pipeline run") {
    StageReport rep = run_pipeline(20, all_stages);
    REQUIRE(rep.stage_counts.size() == 5);
    CHECK(rep.stage_counts[0].first == "enumerate");
    CHECK(rep.stage_counts[0].second == 13 * 13 * 13);
    for (size_t i = 1; i < rep.stage_counts.size(); ++i)
        CHECK(rep.stage_counts[i].second <= rep.stage_counts[i - 1].second);
    CHECK(rep.stage_counts.back().second == rep.survivors.size());
    CHECK(std::is_sorted(rep.survivors.begin(), rep.survivors.end()));
    // the n=48 triple must survive every filter
    CHECK(std::find(rep.survivors.begin(), rep.survivors.end(),
                    Triple{3, 1, 2}) != rep.survivors.end());
}

TEST_CASE("determinism modulo timestamp") {
    auto strip = [](std::string s) {
        return std::regex_replace(s, std::regex("\"timestamp\": \"[^\"]*\""),
                                  "\"timestamp\": \"\"");
    };
    PipelineOptions two_jobs;
    two_jobs.jobs = 2;
    std::string r1 = strip(report_to_json(run_pipeline(15, all_stages)));
    std::string r2 = strip(report_to_json(run_pipeline(15, all_stages, two_jobs)));
    CHECK(r1 == r2);
}

TEST_CASE("search_solutions small cases") {
    CHECK(search_solutions(100, 2).empty());

    auto sols = search_solutions(1000, 150);
    REQUIRE(sols.size() == 12);
    CHECK(sols.front().n == 48);
    CHECK(sols.back().n == 846);
    for (const Solution& s : sols) {
        CHECK(s.a * s.x * s.x == s.n);
        CHECK(s.b * s.y * s.y == s.n + 1);
        CHECK(s.c * s.z * s.z == s.n + 2);
        CHECK(!s.trivial);
    }
}

TEST_CASE("csv layout") {
    auto sols = search_solutions(100, 150);
    std::string csv = solutions_to_csv(sols);
    CHECK(csv.rfind("n,sfp(n),sfp(n+1),sfp(n+2),x,y,z\n", 0) == 0);
    CHECK(csv.find("48,3,1,2,4,7,5\n") != std::string::npos);
    CHECK(csv.find("98,2,11,1,7,3,10\n") != std::string::npos);
}

TEST_CASE("cross_check") {
    StageReport rep = run_pipeline(20, all_stages);
    auto sols = search_solutions(2000, 20);
    CHECK(cross_check(rep, sols));
    CHECK(cross_check(rep, {}));

    // injected fault: remove a realized solution's triple
    REQUIRE(!sols.empty());
    StageReport broken = rep;
    std::erase(broken.survivors,
               Triple{sols[0].a, sols[0].b, sols[0].c});
    CHECK(!cross_check(broken, sols));
}
