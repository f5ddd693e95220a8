#include "nodal/app.hpp"
#include "nodal/errors.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>

using namespace nodal;
using nlohmann::json;

namespace {

RunConfig parse(std::vector<std::string> args)
{
    std::string help;
    auto cfg = parse_command_line(args, help);
    REQUIRE(cfg.has_value());
    return *cfg;
}

RunResult run_args(std::vector<std::string> args)
{
    args.push_back("--no-timestamp");
    return run(parse(std::move(args)));
}

json run_json(std::vector<std::string> args, int expected_exit = exit_ok)
{
    const auto res = run_args(std::move(args));
    CHECK(res.exit_code == expected_exit);
    return json::parse(res.output);
}

} // namespace

TEST_CASE("command line parsing")
{
    const auto cfg = parse({"fit", "--order", "3", "--degrees", "14,16", "--k3", "2,6", "--threads", "4"});
    CHECK(cfg.command == "fit");
    CHECK(cfg.order == 3);
    CHECK(cfg.degrees == std::pair<int, int>{14, 16});
    CHECK(cfg.k3 == std::pair<long, long>{2, 6});
    CHECK(cfg.threads == 4);
    CHECK(cfg.timestamp);

    const auto neg = parse({"decompose", "--L2", "1", "--LK", "-3", "--c1sq", "9", "--c2", "3"});
    CHECK(neg.LK == -3);

    std::string help;
    CHECK_FALSE(parse_command_line({"--help"}, help).has_value());
    CHECK(help.find("severi") != std::string::npos);

    CHECK_THROWS_AS(parse_command_line({}, help), ValidationError);
    CHECK_THROWS_AS(parse_command_line({"nonsense"}, help), ValidationError);
    CHECK_THROWS_AS(parse_command_line({"severi", "--d", "x"}, help), ValidationError);
    CHECK_THROWS_AS(parse_command_line({"fit", "--degrees", "9"}, help), ValidationError);
    CHECK_THROWS_AS(parse_command_line({"severi", "--format", "xml"}, help), ValidationError);
}

TEST_CASE("documented examples")
{
    auto doc = run_json({"decompose", "--L2", "1", "--LK", "-3", "--c1sq", "9", "--c2", "3"});
    CHECK(doc["schema_version"] == RunConfig::schema_version);
    CHECK(doc["result"] == json({{"a1", 0}, {"a2", 1}, {"a3", 0}, {"a4", 0}}));
    CHECK_FALSE(doc.contains("timestamp"));

    doc = run_json({"severi", "--d", "3", "--delta", "1"});
    CHECK(doc["result"]["value"] == "12");

    doc = run_json({"fit", "--order", "1"});
    const auto& t1 = doc["result"]["T"][1];
    CHECK(t1["r"] == 1);
    json expected = json::array();
    expected.push_back({{"coeff", "1"}, {"exponents", {0, 0, 0, 1}}});
    expected.push_back({{"coeff", "2"}, {"exponents", {0, 1, 0, 0}}});
    expected.push_back({{"coeff", "3"}, {"exponents", {1, 0, 0, 0}}});
    CHECK(t1["terms"] == expected);
    CHECK(doc["result"]["consistent"] == true);
}

TEST_CASE("every command runs")
{
    // Conics through four points tangent to a line.
    auto doc = run_json({"severi", "--d", "2", "--delta", "0", "--beta", "2^1"});
    CHECK(doc["result"]["value"] == "2");

    doc = run_json({"severi-table", "--dmax", "4", "--deltamax", "2"});
    CHECK(doc["result"].size() == 12);

    doc = run_json({"evaluate", "--L2", "16", "--LK", "-12", "--c1sq", "9", "--c2", "3", "--order", "2"});
    CHECK(doc["result"]["series"]["coefficients"] == json({"1", "27", "225"}));

    doc = run_json({"decompose", "--L2", "2", "--LK", "0", "--c1sq", "0", "--c2", "24", "--alt"});
    CHECK(doc["result"]["a3"] == 21);
    CHECK(doc["result"]["alt"]["chiL"] == 3);

    doc = run_json({"close-relation", "--v1", "1,-3,9,3", "--v2", "1,-3,9,3", "--gD", "0", "--degLD", "1"});
    CHECK(doc["result"]["v3"] == json({0, -2, 8, 4}));
    CHECK(doc["result"]["v0"] == json({2, -4, 10, 2}));

    doc = run_json({"genus-series", "--r", "0", "--Ksq", "0", "--m", "0", "--chiO", "2", "--order", "3"});
    CHECK(doc.dump().find("3200") != std::string::npos);

    doc = run_json({"validate", "--d", "11", "--order", "2"});
    CHECK(doc["result"]["matches"] == true);

    doc = run_json({"forms", "--order", "3"});
    CHECK(doc["result"]["format_version"] == 1);
}

TEST_CASE("errors and exit codes")
{
    auto doc = run_json({"decompose", "--L2", "1", "--LK", "0", "--c1sq", "9", "--c2", "3"}, exit_validation);
    CHECK(doc["error"]["kind"] == "validation");
    CHECK(doc["error"]["message"].get<std::string>().find("parity") != std::string::npos);

    doc = run_json({"fit", "--order", "2", "--degrees", "5,6"}, exit_validation);
    CHECK(doc.contains("config"));

    doc = run_json({"severi", "--d", "3", "--delta", "1", "--alpha", "1^1"}, exit_validation);
    CHECK(doc["error"]["message"].get<std::string>().find("weight") != std::string::npos);

    // Below the threshold the three-node prediction for conics is -32, not 0.
    doc = run_json({"validate", "--d", "2", "--order", "3", "--unsafe"}, exit_inconsistent);
    CHECK(doc["result"]["matches"] == false);
    CHECK(doc["result"]["first_difference"] == 3);
    CHECK(doc["result"]["predicted"]["coefficients"][3] == "-32");

    RunConfig bad;
    bad.command = "frobnicate";
    CHECK(run(bad).exit_code == exit_validation);
}

TEST_CASE("output formats")
{
    auto csv = run_args({"severi-table", "--dmax", "3", "--deltamax", "1", "--format", "csv"});
    CHECK(csv.exit_code == exit_ok);
    CHECK(csv.output.rfind("d,delta,N\n", 0) == 0);
    CHECK(csv.output.find("3,1,12") != std::string::npos);

    auto pretty = run_args({"decompose", "--L2", "1", "--LK", "-3", "--c1sq", "9", "--c2", "3", "--format", "pretty"});
    CHECK(pretty.output.find("a2 = 1") != std::string::npos);

    auto with_ts = run(parse({"severi", "--d", "2", "--delta", "1"}));
    CHECK(json::parse(with_ts.output).contains("timestamp"));
}

TEST_CASE("deterministic output")
{
    const auto a = run_args({"fit", "--order", "2", "--threads", "1"});
    const auto b = run_args({"fit", "--order", "2", "--threads", "0"});
    CHECK(a.exit_code == exit_ok);
    CHECK(a.output == b.output);

    const auto cfg = parse({"fit", "--order", "2", "--no-timestamp"});
    const auto echoed = json::parse(run(cfg).output)["config"];
    CHECK(echoed == cfg.to_json());
}

TEST_CASE("cache file")
{
    const auto path = std::filesystem::temp_directory_path() / "nodal_app_cache.tsv";
    std::filesystem::remove(path);
    const auto first = run_args({"severi", "--d", "7", "--delta", "3", "--cache", path.string()});
    CHECK(std::filesystem::exists(path));
    const auto second = run_args({"severi", "--d", "7", "--delta", "3", "--cache", path.string()});
    CHECK(first.output == second.output);
    std::filesystem::remove(path);
}
