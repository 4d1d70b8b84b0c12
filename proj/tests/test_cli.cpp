#include <doctest.h>

#include "dce/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace dce::cli;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> v;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        v.push_back(line);
    }
    return v;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> v;
    std::istringstream is(line);
    for (std::string cell; std::getline(is, cell, ',');) {
        v.push_back(cell);
    }
    return v;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("dce_cli_test_" + name);
}

}  // namespace

TEST_CASE("evolve CSV")
{
    const auto r = run({"evolve", "--epsilon", "1e-3", "--tmax", "2000", "--steps", "4"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "t,n_a,n_b,Q,S,delta,sigma_xx,sigma_pp,sigma_xp");
    const auto last = split(rows[5]);
    CHECK(std::stod(last[0]) == doctest::Approx(2000.0));
    CHECK(std::stod(last[1]) == doctest::Approx(1.38110).epsilon(1e-5));
}

TEST_CASE("evolve sweep adds parameter columns")
{
    const auto r = run({"evolve", "--epsilon", "1e-3,2e-3", "--g", "0", "--kappa", "0,1e-4", "--tmax", "10",
                        "--steps", "1"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows[0].rfind("epsilon,g,kappa,t,", 0) == 0);
    CHECK(rows.size() == 1 + 4 * 2);
}

TEST_CASE("JSON output carries config and data")
{
    const auto r = run({"pdf", "--epsilon", "1e-3", "--t", "2000", "--mmax", "6", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["config"]["command"] == "pdf");
    CHECK(doc["config"]["mmax"] == 6);
    REQUIRE(doc["data"].is_array());
    CHECK(doc["data"].size() == 7);
    CHECK(doc["data"][0]["m"] == 0);
    CHECK(doc["data"][1]["f"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pdf of the vacuum")
{
    const auto r = run({"pdf", "--t", "5", "--mmax", "3"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "m,f");
    CHECK(rows[1] == "0,1");
    CHECK(rows[2] == "1,0");
}

TEST_CASE("regime row")
{
    const auto inside = run({"regime", "--beta", "1", "--g", "0", "--kappa", "1.999"});
    const auto outside = run({"regime", "--beta", "1", "--g", "0", "--kappa", "2.001"});
    REQUIRE(inside.code == 0);
    REQUIRE(outside.code == 0);
    const auto header = split(lines(inside.out)[0]);
    const auto in_row = split(lines(inside.out)[1]);
    const auto out_row = split(lines(outside.out)[1]);
    const auto col = std::find(header.begin(), header.end(), "possible") - header.begin();
    CHECK(in_row[col] == "1");
    CHECK(out_row[col] == "0");
}

TEST_CASE("map raster agrees with the closed-form conditions")
{
    const auto r = run({"map", "--beta", "1", "--nx", "9", "--ny", "5", "--kappa-min", "-4", "--kappa-max", "4",
                        "--g-min", "0", "--g-max", "4"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 1 + 9 * 5);
    CHECK(rows[0] == "kappa,g,possible,growth_rate,marginal");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto cells = split(rows[i]);
        const double k = std::stod(cells[0]);
        const double g = std::stod(cells[1]);
        const double slack = 1e-9;
        const bool c1 = k * k + g * g - 2.0 >= -slack;
        const bool c2 = 1.0 - g * g + g * g * k * k >= -slack;
        const bool c3 = (k * k - g * g) * (k * k - g * g) - 4.0 * k * k >= -slack;
        CAPTURE(rows[i]);
        CHECK((cells[2] == "1") == !(c1 && c2 && c3));
    }
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"evolve", "--steps"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"evolve", "--format", "xml"}).code == 2);
    CHECK(run({"evolve", "--precision", "5"}).code == 2);
    CHECK(run({"evolve", "--precision", "18"}).code == 2);
    CHECK(run({"evolve", "--steps", "0"}).code == 2);
    CHECK(run({"map", "--nx", "1"}).code == 2);

    const auto eps = run({"evolve", "--epsilon", "0.6", "--tmax", "1"});
    CHECK(eps.code == 2);
    CHECK(eps.err.find("epsilon") != std::string::npos);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("numerical failures exit with 1")
{
    const auto r = run({"evolve", "--epsilon", "0.4", "--tmax", "1e5", "--steps", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("precision bounds the printed digits")
{
    const auto r6 = run({"evolve", "--epsilon", "1e-3", "--tmax", "1000", "--steps", "1", "--precision", "6"});
    REQUIRE(r6.code == 0);
    const auto n = split(lines(r6.out)[2])[1];
    CHECK(n == "0.27154");

    CHECK(format_number(0.1, 17) == "0.1");
    CHECK(format_number(1.0 / 3.0, 6) == "0.333333");
    CHECK(format_number(0.0, 12) == "0");
    CHECK(std::stod(format_number(2.0 / 3.0, 17)) == 2.0 / 3.0);
}

TEST_CASE("config file with explicit flags taking precedence")
{
    const auto cfg_path = temp_file("config.ini");
    {
        std::ofstream f(cfg_path);
        f << "epsilon=1e-3\ntmax=500\nsteps=7\nprecision=8\n";
    }
    const auto cfg = parse_run_config({"evolve", "--config", cfg_path.string(), "--steps", "3"});
    CHECK(cfg.epsilon == std::vector<double>{1e-3});
    CHECK(cfg.t_max == 500.0);
    CHECK(cfg.steps == 3);
    CHECK(cfg.precision == 8);
    std::filesystem::remove(cfg_path);

    CHECK_THROWS_AS(parse_run_config({"evolve", "--config", "/nonexistent/dce.ini"}), UsageError);
}

TEST_CASE("output file")
{
    const auto path = temp_file("out.csv");
    const auto r = run({"regime", "--beta", "1", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header.rfind("beta,g,kappa", 0) == 0);
    std::filesystem::remove(path);
}
