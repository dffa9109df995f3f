#include <doctest.h>

#include <gaia/error.hpp>
#include <gaia_cli/commands.hpp>
#include <gaia_cli/csv.hpp>
#include <gaia_cli/model_io.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gaia;
using namespace gaia::cli;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(GAIA_TEST_DATA) + "/" + name; }

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("gaia_cli_tests_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        REQUIRE(!line.empty());
        REQUIRE(line.back() == '\r');
        line.pop_back();
        std::vector<std::string> row;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) row.push_back(f);
        rows.push_back(row);
    }
    return rows;
}

struct Result {
    int code;
    std::string log;
};

Result run_cmd(RunSpec spec) {
    std::ostringstream log;
    const int code = run_guarded(spec, log);
    return {code, log.str()};
}

RunSpec spec_for(const std::string& command, const std::string& model, const std::string& out) {
    RunSpec s;
    s.command = command;
    s.model_path = model;
    s.out_path = (scratch() / out).string();
    return s;
}

double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(-0.0) == "0.0000000000000000e+00");
    CHECK(format_number(0.0) == "0.0000000000000000e+00");
    CHECK(format_number(1.0) == "1.0000000000000000e+00");
    for (double x : {1.0 / 3.0, -2.718281828459045, 6.02214076e23, 1e-300, 0.1}) {
        const double back = std::strtod(format_number(x).c_str(), nullptr);
        CHECK(std::memcmp(&back, &x, sizeof x) == 0);
    }
    CHECK(format_number(NAN) == "nan");
}

TEST_CASE("csv rows") {
    std::ostringstream out;
    CsvWriter w(out);
    w.row({"a", "b,c", "d\"e"});
    w.row({"1"});
    CHECK(out.str() == "a,\"b,c\",\"d\"\"e\"\r\n1\r\n");
}

TEST_CASE("sweep and window flags") {
    const SweepSpec s = parse_sweep("x=14.1:40:27");
    CHECK(s.name == "x");
    CHECK(s.start == 14.1);
    CHECK(s.stop == 40.0);
    CHECK(s.count == 27);
    CHECK_THROWS_AS(parse_sweep("x=1:2"), UsageError);
    CHECK_THROWS_AS(parse_sweep("=1:2:3"), UsageError);
    CHECK_THROWS_AS(parse_sweep("x=1:2:0"), UsageError);
    CHECK_THROWS_AS(parse_sweep("x=a:2:3"), UsageError);
    const Window w = parse_window("-3:4.5");
    CHECK(w.t_initial == -3.0);
    CHECK(w.t_final == 4.5);
    CHECK_THROWS_AS(parse_window("4:3"), UsageError);
}

TEST_CASE("model files round-trip bit for bit") {
    for (const char* name : {"two_channel_grid.json", "spin_boson_w02_g002.json", "two_level_lzsm.json"}) {
        const ModelSpec a = load_model(data(name));
        const fs::path p = scratch() / (std::string("rt_") + name);
        save_model(a, p.string());
        const ModelSpec b = load_model(p.string());
        CHECK(a.type == b.type);
        CHECK(a.n == b.n);
        CHECK(std::memcmp(&a.v, &b.v, sizeof(double)) == 0);
        CHECK(std::memcmp(&a.eta, &b.eta, sizeof(double)) == 0);
        CHECK(a.a == b.a);
        CHECK(a.b == b.b);
        CHECK(a.crossings == b.crossings);
        CHECK(to_json(a) == to_json(b));
        save_model(b, (p.string() + ".2"));
        CHECK(slurp(p) == slurp(p.string() + ".2"));
    }
}

TEST_CASE("model parsing rejects unknown keys and bad types") {
    nlohmann::json j = nlohmann::json::parse(slurp(data("two_channel_grid.json")));
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_model(j), Error);
    j.erase("extra");
    j["type"] = "sphere";
    CHECK_THROWS_AS(parse_model(j), Error);

    const fs::path p = scratch() / "unknown_key.json";
    j["type"] = "grid";
    j["colour"] = "blue";
    std::ofstream(p) << j.dump();
    const Result r = run_cmd(spec_for("grid", p.string(), "unknown.csv"));
    CHECK(r.code == kExitValidation);
}

TEST_CASE("grid command") {
    RunSpec s = spec_for("grid", data("two_channel_grid.json"), "two_channel.csv");
    for (const char* method : {"gaia", "closed", "legacy", "aia"}) {
        s.method = method;
        REQUIRE(run_cmd(s).code == kExitOk);
        const auto rows = read_csv(s.out_path);
        REQUIRE(rows.size() == 17);
        CHECK(rows[0] == std::vector<std::string>{"row", "col", "re", "im", "abs2"});
        double total = 0.0;
        for (std::size_t k = 1; k < rows.size(); ++k) {
            total += num(rows[k][4]);
            const bool structural_zero = (rows[k][0] == "1" && rows[k][1] == "2") ||
                                         (rows[k][0] == "4" && rows[k][1] == "3");
            if (structural_zero && std::string(method) != "aia") {
                CHECK(rows[k][2] == "0.0000000000000000e+00");
                CHECK(rows[k][3] == "0.0000000000000000e+00");
            }
        }
        CHECK(total == doctest::Approx(4.0).epsilon(1e-10));
    }
    s.method = "bogus";
    CHECK(run_cmd(s).code == kExitUsage);
}

TEST_CASE("grid command: decoupled model gives the identity") {
    RunSpec s = spec_for("grid", data("uncoupled_grid.json"), "uncoupled.csv");
    REQUIRE(run_cmd(s).code == kExitOk);
    for (const auto& row : read_csv(s.out_path)) {
        if (row[0] == "row") continue;
        CHECK(num(row[4]) == (row[0] == row[1] ? 1.0 : 0.0));
    }
}

TEST_CASE("validation errors") {
    const Result r = run_cmd(spec_for("grid", data("duplicate_offsets.json"), "dup.csv"));
    CHECK(r.code == kExitValidation);
    CHECK(r.log.rfind("error: DuplicateOffset:", 0) == 0);
    const Result missing = run_cmd(spec_for("grid", data("no_such_file.json"), "none.csv"));
    CHECK(missing.code != kExitOk);
    CHECK(missing.log.rfind("error:", 0) == 0);
}

TEST_CASE("output is deterministic") {
    RunSpec s = spec_for("grid", data("two_channel_grid.json"), "det1.csv");
    REQUIRE(run_cmd(s).code == kExitOk);
    const std::string first = slurp(s.out_path);
    REQUIRE(run_cmd(s).code == kExitOk);
    CHECK(slurp(s.out_path) == first);

    RunSpec l = spec_for("lzsm", data("spin_boson_destructive.json"), "det_l.csv");
    REQUIRE(run_cmd(l).code == kExitOk);
    const std::string lf = slurp(l.out_path);
    REQUIRE(run_cmd(l).code == kExitOk);
    CHECK(slurp(l.out_path) == lf);
}

TEST_CASE("lzsm command") {
    RunSpec s = spec_for("lzsm", data("spin_boson_destructive.json"), "destructive_trace.csv");
    const Result r = run_cmd(s);
    REQUIRE(r.code == kExitOk);
    const auto rows = read_csv(s.out_path);
    REQUIRE(rows.size() == 4);  // header, t_I, two slot ends
    CHECK(rows[0][0] == "time");
    CHECK(rows[0].size() == 11);
    CHECK(num(rows[3][1]) >= 0.99);
    CHECK(r.log.find("info: final P_1 = ") != std::string::npos);
    CHECK(fs::exists(s.out_path + ".smatrix.csv"));
    CHECK(read_csv(s.out_path + ".smatrix.csv").size() == 101);

    s.crossings = 0;
    REQUIRE(run_cmd(s).code == kExitOk);
    const auto single = read_csv(s.out_path);
    REQUIRE(single.size() == 2);
    CHECK(num(single[1][1]) == 1.0);

    s.crossings = -1;
    CHECK(run_cmd(s).code == kExitValidation);
}

TEST_CASE("compare command") {
    RunSpec s = spec_for("compare", data("two_channel_grid.json"), "cmp.csv");
    s.sweep = SweepSpec{"x", 20.0, 20.0, 1};
    s.initial = 4;
    s.tol = 1e-8;
    REQUIRE(run_cmd(s).code == kExitOk);
    const auto rows = read_csv(s.out_path);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].front() == "x");
    CHECK(rows[0].back() == "status");
    CHECK(rows[1].back() == "OK");
    CHECK(rows[1][2] == "0");
    CHECK(num(rows[1][rows[1].size() - 2]) < 0.05);

    s.sweep = SweepSpec{"x", 5.0, 5.0, 1};
    REQUIRE(run_cmd(s).code == kExitOk);
    CHECK(read_csv(s.out_path)[1][2] == "1");  // below the validity threshold

    s.max_steps = 5;
    const Result r = run_cmd(s);
    CHECK(r.code == kExitRuntime);
    CHECK(read_csv(s.out_path)[1].back() == "ERROR");
    CHECK(r.log.find("StepLimitExceeded") != std::string::npos);

    s.max_steps.reset();
    s.sweep = SweepSpec{"colour", 1.0, 2.0, 2};
    CHECK(run_cmd(s).code == kExitUsage);
    s.sweep.reset();
    s.initial = 9;
    CHECK(run_cmd(s).code == kExitUsage);
}

TEST_CASE("interference command") {
    RunSpec g = spec_for("interference", data("two_channel_grid.json"), "zeros.csv");
    g.sweep = SweepSpec{"x", 20.0, 25.0, 501};
    REQUIRE(run_cmd(g).code == kExitOk);
    const auto zeros = read_csv(g.out_path);
    CHECK(zeros.size() == 18);
    for (std::size_t k = 1; k < zeros.size(); ++k) CHECK(num(zeros[k].back()) < 1e-10);

    RunSpec l = spec_for("interference", data("spin_boson_destructive.json"), "destructive.csv");
    l.sweep = SweepSpec{"eta", 9.0, 12.0, 1200};
    REQUIRE(run_cmd(l).code == kExitOk);
    const auto sol = read_csv(l.out_path);
    REQUIRE(sol.size() == 2);
    CHECK(std::abs(num(sol[1][0]) - 10.57) <= 0.05);

    l.sweep = SweepSpec{"eta", 9.5, 10.0, 200};
    REQUIRE(run_cmd(l).code == kExitOk);
    CHECK(read_csv(l.out_path).size() == 1);

    l.sweep = SweepSpec{"gamma", 0.1, 0.2, 10};
    CHECK(run_cmd(l).code == kExitUsage);
}

TEST_CASE("random command") {
    RunSpec s = spec_for("random", "", "rand_a.json");
    s.seed = 7;
    s.random_n = 3;
    REQUIRE(run_cmd(s).code == kExitOk);
    const std::string a = slurp(s.out_path);
    REQUIRE(run_cmd(s).code == kExitOk);
    CHECK(slurp(s.out_path) == a);
    s.seed = 8;
    REQUIRE(run_cmd(s).code == kExitOk);
    CHECK(slurp(s.out_path) != a);
    const ModelSpec m = load_model(s.out_path);
    CHECK(m.n == 3);
    CHECK(make_grid(m).dim() == 6);
}
