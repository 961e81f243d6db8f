#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwire/cli.hpp"
#include "qwire/errors.hpp"
#include "qwire/sweep.hpp"

using namespace qwire;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
    return n;
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::istringstream in(csv);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qwire_test_" + name);
}

} // namespace

TEST_CASE("config text parsing") {
    const RunConfig cfg = parse_config_text("# comment\n\nu11 = 0.5\nu12_im=0.25\ndk_steps=17\nout=result.csv\n");
    CHECK(cfg.u11 == 0.5);
    CHECK(cfg.u12_im == 0.25);
    CHECK(cfg.dk_steps == 17);
    CHECK(cfg.output_path == "result.csv");
    CHECK(cfg.u22 == RunConfig{}.u22);
    CHECK(cfg.mixing());

    CHECK_THROWS_AS(parse_config_text("bogus=1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_text("u11=abc\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_text("u11\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_text("dk_steps=2.5\n"), InvalidInput);
}

TEST_CASE("config survives a round trip through the CSV header") {
    RunConfig cfg;
    cfg.u11 = 0.1 + 0.2;
    cfg.u22 = 1.0 / 3.0;
    cfg.k1 = 0.7071067811865476;
    cfg.dk_steps = 11;
    const std::string csv = fig2_csv(cfg, fig2_rows(cfg));
    CHECK(config_from_csv_header(csv) == cfg);
}

TEST_CASE("validation") {
    RunConfig cfg;
    CHECK_NOTHROW(validate(cfg, Command::fig3));
    RunConfig bad = cfg;
    bad.d = 2.0;
    CHECK_THROWS_AS(validate(bad, Command::point), InvalidInput);
    bad = cfg;
    bad.u11 = std::nan("");
    CHECK_THROWS_AS(validate(bad, Command::point), InvalidInput);
    bad = cfg;
    bad.dk_steps = 1;
    CHECK_THROWS_AS(validate(bad, Command::fig2), InvalidInput);
    bad = cfg;
    bad.u12_re = 0.1;
    CHECK_THROWS_AS(validate(bad, Command::resonances), InvalidInput);
    CHECK_NOTHROW(validate(bad, Command::fig2));
}

TEST_CASE("CSV output is deterministic") {
    RunConfig cfg;
    cfg.k1_steps = 20;
    cfg.dk_steps = 30;
    CHECK(fig3_csv(cfg, fig3_rows(cfg, 1)) == fig3_csv(cfg, fig3_rows(cfg, 4)));
    CHECK(fig2_csv(cfg, fig2_rows(cfg)) == fig2_csv(cfg, fig2_rows(cfg)));
}

TEST_CASE("a fig3 row at fixed k1 reproduces fig2 exactly") {
    RunConfig cfg;
    cfg.k1_min = 0.6;
    cfg.k1_max = 1.4;
    cfg.k1_steps = 5;  // includes k1 = 1.0
    cfg.dk_steps = 101;
    const auto grid = fig3_rows(cfg, 2);
    const auto row = fig2_rows(cfg);
    REQUIRE(grid.size() == 5 * row.size());
    const std::size_t offset = 2 * row.size();
    for (std::size_t i = 0; i < row.size(); ++i) {
        CHECK(grid[offset + i].k1 == cfg.k1);
        CHECK(grid[offset + i].dk == row[i].dk);
        CHECK(std::memcmp(&grid[offset + i].eta, &row[i].eta, sizeof(double)) == 0);
    }
}

TEST_CASE("undefined concurrence is written as nan") {
    RunConfig cfg;
    cfg.u11 = 0.0;
    cfg.u22 = 0.0;
    cfg.dk_steps = 3;
    for (const auto& row : fig2_rows(cfg)) CHECK(std::isnan(row.eta));
    const auto lines = data_lines(fig2_csv(cfg, fig2_rows(cfg)));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "dk,eta,t11_sq,t22_sq");
    CHECK(lines[1] == "0,nan,1,1");
}

TEST_CASE("cli: point at the symmetric point is maximally entangled") {
    const CliRun r = run({"point"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("eta=1.000000000000\n") != std::string::npos);
    CHECK(r.out.find("purity=0.250000000000\n") != std::string::npos);
}

TEST_CASE("cli: point without barrier has no post-selected state") {
    const CliRun r = run({"point", "--u11", "0", "--u22", "0"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("eta=undefined\n") != std::string::npos);
    CHECK(r.out.find("p_select=0.000000000000\n") != std::string::npos);
}

TEST_CASE("cli: invalid input exits with code 2") {
    CHECK(run({"point", "--d", "2"}).code == kExitInvalidInput);
    CHECK(run({"point", "--u11", "nope"}).code == kExitInvalidInput);
    CHECK(run({"fig2", "--dk-steps", "1"}).code == kExitInvalidInput);
    CHECK(run({"resonances", "--u12-re", "0.1"}).code == kExitInvalidInput);
    CHECK(run({"point", "--config", "/nonexistent/qwire.cfg"}).code == kExitInvalidInput);
    CHECK(run({"frobnicate"}).code == kExitInvalidInput);
    CHECK(run({}).code == kExitInvalidInput);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("cli: flags override the config file") {
    const auto cfg_path = temp_file("override.cfg");
    const auto csv_path = temp_file("override.csv");
    {
        std::ofstream f(cfg_path);
        f << "u11=0.3\nu22=0.4\ndk_steps=5\n";
    }
    const CliRun r = run({"fig2", "--config", cfg_path.string(), "--u22", "0.2", "--out", csv_path.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(csv_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const RunConfig echoed = config_from_csv_header(buf.str());
    CHECK(echoed.u11 == 0.3);
    CHECK(echoed.u22 == 0.2);
    CHECK(echoed.dk_steps == 5);
    CHECK(data_lines(buf.str()).size() == 6);
    std::filesystem::remove(cfg_path);
    std::filesystem::remove(csv_path);
}

TEST_CASE("cli: resonances") {
    const CliRun r = run({"resonances"});
    REQUIRE(r.code == kExitOk);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "channel,k_res,peak,width");
    CHECK(count_lines(r.out, "1,0.25") == 1);
    CHECK(count_lines(r.out, "1,0.75") == 1);
    CHECK(count_lines(r.out, "1,1.25") == 1);
    CHECK(count_lines(r.out, "2,") == 3);

    const CliRun none = run({"resonances", "--u11", "0", "--u22", "0"});
    REQUIRE(none.code == kExitOk);
    CHECK(data_lines(none.out).size() == 1);
}

TEST_CASE("cli: selfcheck") {
    const CliRun ok = run({"selfcheck"});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out.find("PASS 6/6 suites") != std::string::npos);

    const CliRun broken = run({"selfcheck", "--inject-fault", "unitarity"});
    CHECK(broken.code == kExitSelfcheckFailed);
    CHECK(broken.out.find("FAIL unitarity_defect") != std::string::npos);
    CHECK(broken.out.find("FAIL 5/6 suites") != std::string::npos);
}

TEST_CASE("cli: selfcheck with the oracle") {
    const CliRun r = run({"selfcheck", "--oracle"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("PASS oracle_agreement") != std::string::npos);
    CHECK(r.out.find("PASS 7/7 suites") != std::string::npos);
}

TEST_CASE("cli: point with k2 on a channel-2 resonance") {
    const ResonanceTable ch2 = find_resonances(0.01, 1.0, 1.0, 1.5, kDefaultResonanceTol, 2);
    REQUIRE(ch2.entries.size() == 1);
    char dk[32];
    std::snprintf(dk, sizeof dk, "%.17g", ch2.entries[0].k_res - 1.0);
    const CliRun r = run({"point", "--k1", "1.0", "--dk", dk});
    REQUIRE(r.code == kExitOk);
    const auto pos = r.out.find("eta=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 4)) < 1e-8);
}

TEST_CASE("negative dk is allowed while k2 stays positive") {
    CHECK(run({"point", "--k1", "1.0", "--dk", "-0.3"}).code == kExitOk);
    CHECK(run({"point", "--k1", "1.0", "--dk", "-1.0"}).code == kExitInvalidInput);
    RunConfig cfg;
    cfg.dk_min = -0.5;
    cfg.dk_max = 0.5;
    cfg.dk_steps = 101;
    const auto rows = fig2_rows(cfg);
    // eta depends on k1 and k2 symmetrically at u11 = u22
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].eta == doctest::Approx(eta_at(cfg.chain(), 1.0 + rows[i].dk, -rows[i].dk)).epsilon(1e-12));
    }
}

TEST_CASE("fig3 concurrence stays within [0, 1]") {
    RunConfig cfg;
    cfg.k1_steps = 50;
    cfg.dk_steps = 50;
    cfg.dk_max = 1.5;
    for (const auto& row : fig3_rows(cfg)) {
        CHECK(row.eta >= 0.0);
        CHECK(row.eta <= 1.0 + 1e-12);
    }
}

TEST_CASE("fig2 minima of eta sit on maxima of t22_sq") {
    RunConfig cfg;
    const auto rows = fig2_rows(cfg);
    std::size_t minima = 0;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        if (!(rows[i].eta < rows[i - 1].eta && rows[i].eta <= rows[i + 1].eta)) continue;
        ++minima;
        // the t22_sq peak is within one row of the eta dip
        std::size_t peak = i - 1;
        for (std::size_t j = i; j <= i + 1; ++j) {
            if (rows[j].t22_sq > rows[peak].t22_sq) peak = j;
        }
        CHECK(rows[peak].t22_sq >= rows[peak - 1].t22_sq);
        CHECK(rows[peak].t22_sq >= rows[peak + 1].t22_sq);
        CHECK(rows[i].t22_sq == doctest::Approx(1.0).epsilon(1e-6));
    }
    CHECK(minima == 4);
}
