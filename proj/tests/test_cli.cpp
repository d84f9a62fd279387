#include <catch_amalgamated.hpp>

#include <cli.hpp>
#include <json.hpp>
#include <twofold/twofold.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

using twofold::cli::run_cli;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int rc = run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) break;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "twofold_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("usage errors", "[cli]") {
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"find-cycle", "--C", "abc"}).code == 2);
    CHECK(run({"find-cycle", "--format", "xml"}).code == 2);
    CHECK(run({"find-cycle", "--C", "0"}).code == 2);
    CHECK(run({"scan", "--count", "1"}).code == 2);
    CHECK(run({"stability-band", "--grid", "1"}).code == 2);

    const Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("stability-band") != std::string::npos);
    CHECK(run({"simulate", "--help"}).code == 0);
}

TEST_CASE("config files", "[cli]") {
    const fs::path bad = scratch("bad.json");
    write_file(bad, "{\"C\": 1.0, \"H\": ");
    const Run r = run({"find-cycle", "--config", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("malformed") != std::string::npos);

    const fs::path unknown = scratch("unknown.json");
    write_file(unknown, R"({"C": 1.0, "Hh": 0.04})");
    CHECK(run({"find-cycle", "--config", unknown.string()}).code == 2);

    const fs::path typed = scratch("typed.json");
    write_file(typed, R"({"C": "one"})");
    CHECK(run({"find-cycle", "--config", typed.string()}).code == 2);

    CHECK(run({"find-cycle", "--config", scratch("missing.json").string()}).code == 2);

    // file values apply, flags win
    const fs::path good = scratch("good.json");
    write_file(good, R"({"C": 1.0, "H": 0.5, "Lambda": 1.0, "format": "json"})");
    const Run a = run({"classify-conic", "--config", good.string()});
    REQUIRE(a.code == 0);
    CHECK(json::parse(a.out)["params"]["H"] == 0.5);
    const Run b = run({"classify-conic", "--config", good.string(), "--H", "2"});
    REQUIRE(b.code == 0);
    CHECK(json::parse(b.out)["params"]["H"] == 2.0);
    CHECK(json::parse(b.out)["kind"] == "ellipse");
}

TEST_CASE("find-cycle", "[cli]") {
    const double H = twofold::critical_H(1.0) - 0.125 * twofold::band_width(1.0);
    const Run r = run({"find-cycle", "--C", "1", "--H", std::to_string(H), "--Lambda", "1"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["residual"].get<double>() <= 1e-9);
    const double x0 = j["p0"][0], y0 = j["p0"][1], x1 = j["p1"][0], y1 = j["p1"][1];
    CHECK(std::abs(x1 + y0) <= 1e-8);
    CHECK(std::abs(y1 + x0) <= 1e-8);
    CHECK(j["multipliers"].size() == 3);
    CHECK(std::abs(j["multipliers"][0]["re"].get<double>() - 1.0) <= 1e-7);
    CHECK(j["stable"] == true);

    // with an explicit seed
    const Run s = run({"find-cycle", "--C", "1", "--H", std::to_string(H), "--seed", std::to_string(y0 * 1.2)});
    REQUIRE(s.code == 0);
    CHECK(json::parse(s.out)["p0"][1].get<double>() == Catch::Approx(y0).epsilon(1e-9));

    const Run csv_out = run({"find-cycle", "--H", std::to_string(H), "--format", "csv"});
    REQUIRE(csv_out.code == 0);
    CHECK(csv(csv_out.out).size() == 2);

    // no cycle above the critical H
    const Run none = run({"find-cycle", "--C", "1", "--H", "0.2"});
    CHECK(none.code == 1);
    CHECK_FALSE(none.err.empty());
}

TEST_CASE("simulate returns to the start after one period", "[cli]") {
    const Run r = run({"simulate", "--C", "1", "--from-cycle", "--format", "json", "--dt", "0.1"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["return_error"].get<double>() <= 1e-6);
    int crossings = 0;
    for (const auto& e : j["events"])
        if (e["event"] == "crossing") {
            ++crossings;
            CHECK(e["region"] == "crossing");
            CHECK(e["saltation_det"].get<double>() > 0.0);
        }
    CHECK(crossings >= 1);
    CHECK(crossings <= 2);
    CHECK(j["samples"].size() > 10);

    // a long run keeps crossing and finishes with an end row
    const Run c = run({"simulate", "--C", "1", "--from-cycle", "--t-end", "100", "--dt", "1"});
    REQUIRE(c.code == 0);
    const auto rows = csv(c.out);
    REQUIRE(rows.size() > 3);
    CHECK(rows[0][0] == "t");
    CHECK(rows.back()[5] == "end");
    int n = 0;
    for (const auto& row : rows) n += row.size() > 5 && row[5] == "crossing";
    CHECK(n > 10);
}

TEST_CASE("simulate is S-equivariant", "[cli]") {
    const std::vector<std::string> common{"--C", "1", "--H", "0.03", "--t-end", "20", "--dt", "0.25"};
    auto args = [&](double x, double y, double z) {
        std::vector<std::string> a{"simulate", "--x0", std::to_string(x), "--y0", std::to_string(y), "--z0",
                                   std::to_string(z)};
        a.insert(a.end(), common.begin(), common.end());
        return a;
    };
    const Run a = run(args(1.5, 4.0, 0.5));
    const Run b = run(args(-4.0, -1.5, -0.5));
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    const auto ra = csv(a.out), rb = csv(b.out);
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 1; i < ra.size(); ++i) {
        CHECK(std::stod(ra[i][0]) == Catch::Approx(std::stod(rb[i][0])).margin(1e-9));
        CHECK(std::stod(ra[i][1]) == Catch::Approx(-std::stod(rb[i][2])).margin(1e-8));
        CHECK(std::stod(ra[i][2]) == Catch::Approx(-std::stod(rb[i][1])).margin(1e-8));
        CHECK(std::stod(ra[i][3]) == Catch::Approx(-std::stod(rb[i][3])).margin(1e-8));
        CHECK(ra[i][4] != rb[i][4]);
        CHECK(ra[i][5] == rb[i][5]);
    }

    // a start on the sliding part of the plane stops at once
    const Run s = run(args(1.0, -1.0, 0.0));
    REQUIRE(s.code == 0);
    const auto rs = csv(s.out);
    REQUIRE(rs.size() == 2);
    CHECK(rs[1][5] == "stop");
    CHECK(rs[1][6] == "sliding");

    CHECK(run({"simulate", "--C", "1"}).code == 2);
}

TEST_CASE("verify-series residuals", "[cli]") {
    for (const char* C : {"0.5", "1", "1.5"}) {
        const Run r = run({"verify-series", "--C", C, "--H", "0.2", "--Lambda", "1"});
        REQUIRE(r.code == 0);
        const auto rows = csv(r.out);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0] == std::vector<std::string>{"v0", "tau_x_numeric", "tau_x_series", "tau_y_numeric",
                                                  "tau_y_series", "tau", "residual"});
        for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][6]) <= 1e-3);
    }
    const Run j = run({"verify-series", "--H", "0.2", "--v0", "0.01,0.001", "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(json::parse(j.out)["rows"].size() == 2);
}

TEST_CASE("classify-conic", "[cli]") {
    const Run r = run({"classify-conic", "--H", "0.5"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["kind"] == "hyperbola");
    CHECK(j["discriminant"].get<double>() == Catch::Approx(1.25));
    CHECK(j["axis_intercepts"].size() == 4);
    CHECK(run({"classify-conic", "--H", "1", "--format", "csv"}).out.find("line_pair") != std::string::npos);
    CHECK(run({"classify-conic", "--A", "1", "--H", "0.5"}).code == 1);
}

TEST_CASE("scan over 20 H values finds stable cycles", "[cli]") {
    const Run r = run({"scan", "--C", "1", "--count", "20", "--threads", "2"});
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 21);
    CHECK(rows[0] == std::vector<std::string>{"H", "y0", "T", "mu2_re", "mu2_im", "mu3_re", "mu3_im", "stable",
                                              "found"});
    int stable = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) stable += rows[i][7] == "1";
    CHECK(stable >= 1);

    // bit-for-bit identical regardless of the thread count
    CHECK(run({"scan", "--C", "1", "--count", "20", "--threads", "1"}).out == r.out);
}

TEST_CASE("stability-band default grid", "[cli][slow]") {
    const fs::path pts = scratch("band.csv"), bnd = scratch("band_boundaries.csv");
    const auto t0 = std::chrono::steady_clock::now();
    const Run r = run({"stability-band", "--threads", "4", "--output", pts.string(), "--boundaries", bnd.string()});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    REQUIRE(r.code == 0);
    CHECK(secs < 60.0);

    const auto points = csv(read_file(pts));
    CHECK(points.size() == 400u * 400u + 1u);
    const auto curves = csv(read_file(bnd));
    REQUIRE(curves.size() > 1);
    CHECK(curves[0] == std::vector<std::string>{"curve", "C", "H"});
    int upper = 0, hcrit = 0;
    for (std::size_t i = 1; i < curves.size(); ++i) {
        upper += curves[i][0] == "upper";
        hcrit += curves[i][0] == "hcrit";
    }
    CHECK(hcrit == 400);
    CHECK(upper == 400);

    // same bytes on a second run
    const fs::path again = scratch("band2.csv");
    REQUIRE(run({"stability-band", "--threads", "2", "--output", again.string(), "--boundaries",
                 scratch("b2.csv").string()})
                .code == 0);
    CHECK(read_file(again) == read_file(pts));
    CHECK(read_file(scratch("b2.csv")) == read_file(bnd));
}
