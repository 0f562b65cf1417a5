#include "vsec/census.hpp"
#include "vsec/cli_config.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

using namespace vsec;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

int run_tool(const std::string& args) {
    const char* tool = std::getenv("VSEC_TOOL");
    REQUIRE(tool != nullptr);
    int rc = std::system((std::string(tool) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

} // namespace

TEST_CASE("plane classification census at q=2") {
    FieldTower T(2, {1, 2, 3});
    auto r = classify_all_planes(T, 0, 2);
    CHECK(r.counts.at("planes_total") == 1395);
    CHECK(r.counts.at("contained") == 15);
    CHECK(r.counts.at("conic") == 7);
    CHECK(r.counts.at("tangent") == 7);
    CHECK(r.counts.at("nucleus") == 1);
    CHECK(r.counts.at("unclassified") == 0);
    CHECK(r.counts.at("solids_total") == 651);
    CHECK(r.counts.at("solids_contained") == 0);

    SECTION("report bytes do not depend on the worker count") {
        auto j1 = report_to_json(classify_all_planes(T, 0, 1)).dump();
        auto j8 = report_to_json(classify_all_planes(T, 0, 8)).dump();
        CHECK(report_to_json(r).dump() == j1);
        CHECK(j1 == j8);
    }
    SECTION("matches the golden report byte for byte") {
        const char* dir = std::getenv("VSEC_GOLDEN");
        REQUIRE(dir != nullptr);
        auto golden = read_file(std::string(dir) + "/classify_planes_q2.json");
        CHECK(report_to_json(r).dump(2) + "\n" == golden);
    }
}

TEST_CASE("plane classification census at q=3 has no nucleus plane") {
    FieldTower T(3, {1});
    auto r = classify_all_planes(T, 0, 8);
    CHECK(r.counts.at("planes_total") == 33880);
    CHECK(r.counts.at("nucleus") == 0);
    CHECK(r.counts.at("unclassified") == 0);
    CHECK(r.counts.at("contained") == r.counts.at("conic") + r.counts.at("tangent"));
}

TEST_CASE("disjoint-plane census over PG(5,4)") {
    FieldTower T(2, {1, 2, 3});
    auto dc = disjoint_plane_census(T, 1, 2, 8);
    auto& c = dc.report.counts;
    CHECK(c.at("planes_total") == 376805);
    CHECK(c.at("disjoint") == 960);
    CHECK(c.at("three_conjugate_lines") == 960);
    CHECK(c.at("other_profile") == 0);
    CHECK(c.at("triple_points") == 2880);
    CHECK(c.at("triple_count") == 960);
    CHECK(c.at("oracle_match") == 1);
    CHECK(dc.plane_indices.size() == 960);
}

TEST_CASE("restricted-slice linear-set search") {
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    Q2SearchContext ctx(T, P);

    SECTION("the Desarguesian spec survives the fast filter") {
        std::uint64_t dbits = desarguesian_spec_bits(T, P, 2);
        CHECK(ctx.survives(dbits));
        CHECK(ctx.canon_pair(std::uint32_t(dbits & 0xfff)) == (dbits & 0xfff));
    }
    SECTION("full slice run") {
        LinsetSearchConfig cfg;
        cfg.threads = 8;
        auto res = linset_search(ctx, cfg, 2);
        auto& c = res.report.counts;
        CHECK(c.at("candidates") == std::uint64_t(1) << 24);
        CHECK(c.at("disjoint") == 80);
        CHECK(c.at("plane") == 20);
        CHECK(c.at("non_plane") == 60);
        CHECK(c.at("oracle_agreement") == 80);
        CHECK(c.at("desarguesian_found") == 1);

        LinsetSearchConfig cfg1 = cfg;
        cfg1.threads = 1;
        auto res1 = linset_search(ctx, cfg1, 2);
        CHECK(report_to_json(res.report).dump() == report_to_json(res1.report).dump());
    }
    SECTION("rejection depth profile is monotone") {
        auto surv = rejection_profile(ctx, 100000, 0);
        CHECK(surv[0] == 100000);
        CHECK(surv[64] == 0);
        for (int k = 1; k < 65; ++k) CHECK(surv[std::size_t(k)] <= surv[std::size_t(k - 1)]);
    }
}

TEST_CASE("search checkpointing") {
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    Q2SearchContext ctx(T, P);
    auto cp = temp_path("vsec_test_cp.json");
    std::filesystem::remove(cp);

    LinsetSearchConfig ref;
    ref.threads = 4;
    auto full_bytes = report_to_json(linset_search(ctx, ref, 2).report).dump();

    LinsetSearchConfig killed = ref;
    killed.checkpoint_path = cp;
    killed.checkpoint_interval = 1u << 20;
    killed.stop_after = 5'000'000;
    CHECK_THROWS_AS(linset_search(ctx, killed, 2), SearchInterrupted);
    REQUIRE(std::filesystem::exists(cp));

    LinsetSearchConfig resume = killed;
    resume.stop_after = 0;
    resume.threads = 2; // a different worker count must not change the bytes
    auto res = linset_search(ctx, resume, 2);
    CHECK(report_to_json(res.report).dump() == full_bytes);

    write_file_atomic(cp, "{not json");
    CHECK_THROWS_AS(linset_search(ctx, resume, 2), std::runtime_error);
    std::filesystem::remove(cp);
}

TEST_CASE("command configuration round-trips through JSON") {
    CommandConfig c;
    c.subcommand = "search-linsets";
    c.seed = 77;
    c.threads = 3;
    c.out = "/tmp/r.json";
    c.strategy = "restricted-slice";
    c.budget = 123456789;
    CHECK(config_from_json(config_to_json(c)) == c);
    CHECK_THROWS(config_from_json(json::object()));
}

TEST_CASE("CSV export lists every counter") {
    CensusReport r;
    r.command = "x";
    r.counts["b"] = 2;
    r.counts["a"] = 1;
    CHECK(report_csv(r) == "key,value\na,1\nb,2\n");
}

TEST_CASE("command-line tool") {
    SECTION("selftest passes") { CHECK(run_tool("selftest") == 0); }
    SECTION("classification writes a report identical to the golden file") {
        const char* dir = std::getenv("VSEC_GOLDEN");
        REQUIRE(dir != nullptr);
        auto out = temp_path("vsec_test_cl2.json");
        CHECK(run_tool("classify-planes --order 2 --threads 4 --out " + out) == 0);
        CHECK(read_file(out) == read_file(std::string(dir) + "/classify_planes_q2.json"));
        std::filesystem::remove(out);
    }
    SECTION("usage errors exit with 2") {
        CHECK(run_tool("") == 2);
        CHECK(run_tool("classify-planes --order 7") == 2);
        CHECK(run_tool("disjoint-planes --q 4") == 2);
        CHECK(run_tool("verify-spread --input /nonexistent.json") == 2);
    }
    SECTION("a broken spread set is reported") {
        // {0, I, J} where J - I is singular: not a spread set, partition fails
        auto in = temp_path("vsec_test_bad_spread.json");
        json bad = {{"n", 2},
                    {"field", 4},
                    {"matrices", {{0, 0, 0, 0}, {1, 0, 0, 1}, {1, 0, 0, 2}}}};
        write_file_atomic(in, bad.dump());
        CHECK(run_tool("verify-spread --input " + in) != 0);
        std::filesystem::remove(in);
    }
}
