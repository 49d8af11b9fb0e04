#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "horacirc/rational.hpp"

namespace {

struct Run {
    int code;
    std::string out;
};

// stderr is folded into the captured text
Run run(const std::string& args) {
    const std::string cmd = std::string(HORACIRC_CLI) + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string golden(const std::string& name) { return slurp(std::string(GOLDEN_DIR) + "/" + name); }

std::string tmp_path(const std::string& name) {
    const char* dir = std::getenv("TMPDIR");
    return std::string(dir ? dir : "/tmp") + "/horacirc_cli_" + name;
}

}  // namespace

TEST_CASE("seq") {
    CHECK(run("seq --preset fibonacci --count 6").out == "0 1 1 2 3 5 8\n");
    CHECK(run("seq --a 2 --b 1 --p 1 --q 1 --count 5").out == "2 1 3 4 7 11\n");
    CHECK(run("seq --preset pell --count 5").out == "0 1 2 5 12 29\n");
    CHECK(run("seq --preset pell-lucas --count 4 --method binet").out == "2 2 6 14 34\n");
    CHECK(run("seq --preset lucas --count 6 --json").out == golden("seq_lucas.json"));
}

TEST_CASE("det") {
    Run r = run("det --preset fibonacci --n 4 --method closed");
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "-35");
    CHECK(r.out.find("# method: closed") != std::string::npos);
    CHECK(first_line(run("det --preset fibonacci --n 4 --method bareiss").out) == "-35");
    CHECK(first_line(run("det --preset fibonacci --n 4").out) == "-35");
    CHECK(first_line(run("det --preset fibonacci --n 4 --method gn").out) == "-35");
    const double dft = std::stod(first_line(run("det --preset lucas --n 3 --method dft").out));
    CHECK(std::abs(dft - 56.0) / 56.0 < 1e-9);
    CHECK(run("det --preset fibonacci --n 4 --json").out == golden("det_fib4.json"));
    CHECK(run("det --preset lucas --n 3 --method bareiss --json").out == golden("det_lucas3_bareiss.json"));
}

TEST_CASE("inv") {
    CHECK(run("inv --preset fibonacci --n 3").out == "-1/4 3/4 -1/4\n");
    CHECK(run("inv --preset fibonacci --n 4").out == "-11/35 17/35 -4/35 3/35\n");
    std::istringstream dft(run("inv --preset fibonacci --n 3 --method dft").out);
    for (double expected : {-0.25, 0.75, -0.25}) {
        double x = 0;
        dft >> x;
        CHECK(std::abs(x - expected) < 1e-12);
    }
    const Run s = run("inv --preset fibonacci --n 3 --method structured");
    CHECK(s.code == 0);
    CHECK(s.out.find("valid: false (P*W first differs from I at") != std::string::npos);
    CHECK(run("inv --preset fibonacci --n 4 --json").out == golden("inv_fib4.json"));
    CHECK(run("inv --preset fibonacci --n 3 --method structured --json").out == golden("inv_fib3_structured.json"));
    CHECK(run("inv --preset fibonacci --n 5 --method printed --json").out == golden("inv_fib5_printed.json"));
    const Run p = run("inv --preset fibonacci --n 4 --method printed");
    CHECK(p.out.find("w3 (position 3): 4/35") != std::string::npos);
    CHECK(run("inv --preset fibonacci --n 8 --method printed").out.find("positions 6..7: no printed closed form") !=
          std::string::npos);
}

TEST_CASE("printed values re-parse to themselves") {
    std::istringstream in(run("inv --preset lucas --n 7").out);
    std::string tok;
    int count = 0;
    while (in >> tok) {
        CHECK(horacirc::Rational::parse(tok).to_string() == tok);
        ++count;
    }
    CHECK(count == 7);
}

TEST_CASE("exit codes") {
    CHECK(run("").code == 2);
    CHECK(run("det --n 3").code == 2);
    CHECK(run("det --preset nosuch --n 3").code == 2);
    CHECK(run("det --preset fibonacci").code == 2);
    CHECK(run("det --preset fibonacci --n 2 --method closed").code == 2);
    CHECK(run("det --preset fibonacci --n 4 --method cramer").code == 2);
    CHECK(run("seq --preset fibonacci --count x").code == 2);

    const Run repeated = run("seq --a 0 --b 1 --p 2 --q -1 --count 4 --method binet");
    CHECK(repeated.code == 2);
    CHECK(repeated.out.find("repeated root") != std::string::npos);
    CHECK(run("seq --a 0 --b 1 --p 2 --q -1 --count 4").out == "0 1 2 3 4\n");

    const Run w1 = run("det --a 1 --b 0 --p 1 --q 1 --n 4 --method gn");
    CHECK(w1.code == 3);
    CHECK(w1.out.find("W1 = 0") != std::string::npos);
    const Run w1n = run("inv --a 1 --b 1 --p 0 --q 1 --n 4 --method structured");
    CHECK(w1n.code == 3);
    CHECK(w1n.out.find("W1 - W_{n+1} = 0") != std::string::npos);

    const Run singular = run("inv --a -2 --b 1 --p 1 --q 1 --n 3");
    CHECK(singular.code == 4);
    CHECK(singular.out.find("singular") != std::string::npos);
    CHECK(run("inv --a -2 --b 1 --p 1 --q 1 --n 3 --method dft").code == 4);
    CHECK(run("inv --a -2 --b 1 --p 1 --q 1 --n 3 --method structured").code == 4);
    CHECK(run("det --a -2 --b 1 --p 1 --q 1 --n 3 --method bareiss").out.starts_with("0\n"));
    CHECK(run("--help").code == 0);
}

TEST_CASE("audit") {
    const std::string out = tmp_path("w3.json");
    const Run r = run("audit --preset fibonacci --n-max 4 --formula THM2_W3 --out " + out);
    CHECK(r.code == 0);
    CHECK(r.out.find("integrity: ok") != std::string::npos);
    CHECK(slurp(out) == golden("audit_fib_w3.json"));
    CHECK(run("audit --preset fibonacci --n-max 4 --formula THM2_W3 --json").out == golden("audit_fib_w3_summary.json"));

    const auto doc = nlohmann::json::parse(slurp(out));
    const auto& n4 = doc["runs"][0]["reports"][1];
    CHECK(n4["case"]["n"] == 4);
    CHECK(n4["printed"] == "4/35");
    CHECK(n4["oracle"] == "-4/35");

    const Run kl = run("audit --formula KL_SIGN --n-max 6 --jobs 2 --json");
    CHECK(kl.code == 0);
    const auto kj = nlohmann::json::parse(kl.out);
    const auto& t = kj["runs"][0]["summary"]["formulas"]["KL_SIGN"];
    CHECK(t["mismatch"] == 0);
    CHECK(t["match"].get<int>() > 0);

    const Run both = run("audit --preset lucas --n-max 5 --convention both --json");
    CHECK(both.code == 0);
    const auto bj = nlohmann::json::parse(both.out);
    REQUIRE(bj["runs"].size() == 2);
    CHECK(bj["runs"][0]["convention"] == "plus-q");
    CHECK(bj["runs"][1]["convention"] == "minus-q");

    CHECK(run("audit --formula NOPE").code == 2);
    CHECK(run("audit --n-min 2").code == 2);
}

TEST_CASE("bench") {
    const std::string csv = tmp_path("bench.csv");
    const std::string js = tmp_path("bench.json");
    const Run r = run("bench det --sizes 8,16,32 --repeat 3 --out " + csv + " --json-out " + js);
    CHECK(r.code == 0);
    std::istringstream in(slurp(csv));
    std::string line;
    std::getline(in, line);
    CHECK(line == "method,n,entry_bits_max,median_ns,min_ns,value_digest,validated");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.ends_with(",true"));
    }
    CHECK(rows == 9);
    CHECK(nlohmann::json::parse(slurp(js))["rows"].size() == 9);
    CHECK(r.out.find("bareiss/closed") != std::string::npos);

    const std::string small = run("bench det --sizes 3 --repeat 1").out;
    CHECK(small.find(",false") == std::string::npos);

    const auto inv = nlohmann::json::parse(run("bench inverse --sizes 6 --repeat 1 --json").out);
    std::set<std::string> methods;
    for (const auto& row : inv["rows"]) methods.insert(row["method"].get<std::string>());
    CHECK(methods == std::set<std::string>{"gauss", "structured", "dft"});

    CHECK(run("bench det --sizes 2").code == 2);
    CHECK(run("bench det --repeat 0").code == 2);
    CHECK(run("bench lu").code == 2);
}
