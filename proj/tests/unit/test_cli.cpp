#include "doctest.h"

#include "cli.hpp"
#include "json.hpp"

#include <sstream>

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = mhaar::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(MHAAR_FIXTURES) + "/" + name; }

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("gen prints the canonical matrix")
    {
        auto r = run({"gen", "--m", "2"});
        REQUIRE(r.code == 0);
        auto j = json::parse(r.out);
        CHECK(j["generators"]["matrix"].size() == 2);
        CHECK(j["config"]["command"] == "gen");
    }

    TEST_CASE("cz on the boundary fixture")
    {
        auto r = run({"cz", "--in", fixture("cz_boundary.json"), "--lambda", "2/1", "--m", "2"});
        REQUIRE(r.code == 0);
        auto j = json::parse(r.out);
        CHECK(j.dump().find("cz7") != std::string::npos);
        auto bad = run({"cz", "--in", fixture("cz_boundary.json"), "--lambda", "1/2", "--m", "2"});
        CHECK(bad.code == 2);
    }

    TEST_CASE("malformed input exits with 1")
    {
        CHECK(run({"cz", "--in", fixture("cz_boundary.json"), "--lambda", "2", "--m", "2"}).code == 1);
        CHECK(run({"check-weight", "--weight", "gauss"}).code == 1);
        CHECK(run({"nonsense"}).code == 1);
        CHECK(run({"expand", "--m", "2", "--in", "/nonexistent.json"}).code == 1);
        CHECK(run({"uncond", "--weight", "unit"}).code == 1); // --seed is required
    }

    TEST_CASE("check-weight reports divergence for x^2")
    {
        auto r = run({"check-weight", "--weight", "power:c=0/1:r=2", "--p", "2", "--condition", "mp"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("Divergent") != std::string::npos);
        CHECK(r.out.find("fails") != std::string::npos);
    }

    TEST_CASE("expand and partial-sum")
    {
        auto e = run({"expand", "--m", "2", "--in", fixture("half_indicator.json")});
        REQUIRE(e.code == 0);
        auto p = run({"partial-sum", "--m", "2", "--in", fixture("half_indicator.json"), "--k", "1", "--j", "1"});
        CHECK(p.code == 0);
        auto q = run({"partial-sum", "--m", "2", "--in", fixture("half_indicator.json"), "--k", "1", "--j", "1",
                      "--pointed", "1/2:r"});
        CHECK(q.code == 0);
    }

    TEST_CASE("output is deterministic for a fixed seed")
    {
        std::vector<std::string> args{"uncond", "--weight", "unit", "--trials", "4", "--depth", "3", "--seed", "9"};
        auto a = run(args), b = run(args);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
    }

    TEST_CASE("pointed experiment without hypotheses exits with 2")
    {
        auto r = run({"uncond", "--weight", "power:c=0/1:r=1", "--point", "0/1:r", "--trials", "3", "--depth", "3",
                      "--seed", "1"});
        CHECK(r.code == 2);
    }

    TEST_CASE("schemas")
    {
        auto r = run({"--json-schema"});
        REQUIRE(r.code == 0);
        auto j = json::parse(r.out);
        CHECK(j.contains("cz"));
        CHECK(j.contains("weight_report"));
    }

    TEST_CASE("annihilator and wavelet-ineq")
    {
        auto a = run({"annihilator", "--m", "3", "--N", "1", "--depth", "2", "--one-sided"});
        REQUIRE(a.code == 0);
        CHECK(json::parse(a.out)["annihilator"]["dimension"] == 1);
        auto w = run({"wavelet-ineq", "--m", "2", "--K", "10", "--grid", "0.1:5:20:log"});
        CHECK(w.code == 0);
        CHECK(run({"wavelet-ineq", "--grid", "0.1:5"}).code == 1);
    }
}
