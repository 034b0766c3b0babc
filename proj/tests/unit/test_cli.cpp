#include "meadow/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = meadow::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct GoldenCase {
    const char* name;
    std::vector<std::string> args;
};

const std::vector<GoldenCase>& golden_cases() {
    static const std::vector<GoldenCase> cases{
        {"eval-q0", {"eval", "--model", "q0", "1 + 1/2"}},
        {"eval-m2", {"eval", "--model", "mk:2", "1 + 1/2"}},
        {"eval-gf4-json", {"eval", "--format", "json", "--model", "gf:2^2", "--assign", "x=a", "x*x"}},
        {"parse", {"parse", "x^2 - x"}},
        {"parse-json", {"parse", "--format", "json", "1/(1/x)"}},
        {"check-m6", {"check", "--model", "mk:6", "(x/y)*(z/w) = (x*z)/(y*w)", "--strategy", "exhaustive"}},
        {"check-gf4", {"check", "--model", "gf:2^2", "x^2 = x"}},
        {"check-gf4-json", {"check", "--format", "json", "--model", "gf:2^2", "x^2 = x"}},
        {"check-q0-sampled", {"check", "--model", "q0", "x/x = 1", "--seed", "3"}},
        {"normalize-basic", {"normalize", "(1+1)/((1+1)+1)"}},
        {"normalize-canonical", {"normalize", "--canonical", "x", "--model", "mk:2", "2*x^3 + x"}},
        {"simplify-m6", {"simplify", "--model", "mk:6", "1/x"}},
        {"simplify-sum", {"simplify", "--target", "sum-of-fractions", "1/(1/x)"}},
        {"falsify", {"falsify", "1", "1"}},
        {"char-m30", {"char", "--model", "mk:30"}},
        {"demo-omega", {"demo", "omega"}},
        {"demo-separation", {"demo", "separation"}},
        {"demo-finite-simple", {"demo", "finite-simple"}},
        {"demo-sum-of-fractions", {"demo", "sum-of-fractions"}},
        {"demo-falsify-q0", {"demo", "falsify-q0"}},
    };
    return cases;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("cli") {

// Set MEADOW_UPDATE_GOLDEN=1 to rewrite the expected outputs.
TEST_CASE("golden outputs") {
    const std::filesystem::path dir = MEADOW_GOLDEN_DIR;
    const bool update = std::getenv("MEADOW_UPDATE_GOLDEN") != nullptr;
    for (const auto& c : golden_cases()) {
        const Run r = run(c.args);
        const std::string actual = "exit: " + std::to_string(r.code) + "\n" + r.out;
        const auto path = dir / (std::string(c.name) + ".txt");
        if (update) {
            std::ofstream(path, std::ios::binary) << actual;
            continue;
        }
        REQUIRE_MESSAGE(std::filesystem::exists(path), path.string());
        CHECK_MESSAGE(actual == read_file(path), c.name);
        CHECK(r.err.empty());
    }
}

TEST_CASE("reports are byte-identical across runs") {
    for (const auto& c : golden_cases()) {
        std::vector<std::string> args = c.args;
        args.insert(args.begin() + 1, {"--format", "json"});
        const Run a = run(args);
        const Run b = run(args);
        CHECK(a.out == b.out);
    }
    const std::vector<std::string> sampled{"check", "--format", "json", "--model", "q0", "--seed", "11",
                                           "--samples", "3000", "x*(y/y) = x"};
    CHECK(run(sampled).out == run(sampled).out);
    const std::vector<std::string> parallel{"check", "--format", "json", "--model", "mk:30", "--workers", "4",
                                            "x*y*z = x*y*z + (x - 7)*(y - 29)*(z - 13)"};
    std::vector<std::string> serial = parallel;
    serial[6] = "1";
    CHECK(run(parallel).out == run(serial).out);
}

TEST_CASE("exit codes and errors") {
    CHECK(run({"check", "--model", "mk:2", "x^2 = x"}).code == 0);
    CHECK(run({"check", "--model", "mk:3", "x^2 = x"}).code == 1);
    CHECK(run({"check", "--model", "q0", "x = x + 0"}).code == 0);

    const Run bad_model = run({"eval", "--model", "mk:4", "1"});
    CHECK(bad_model.code == 2);
    CHECK(bad_model.err == "error: no minimal meadow on Z/4Z: 4 is not square-free\n");

    const Run bad_term = run({"eval", "1 +"});
    CHECK(bad_term.code == 2);
    CHECK(bad_term.err == "error: 1:4: expected term, found end of input\n");

    CHECK(run({"check", "--model", "q0", "--strategy", "exhaustive", "x = x"}).code == 2);
    CHECK(run({"eval", "x + 1"}).code == 2);  // unbound variable
    CHECK(run({"eval", "--inversive", "1/x"}).code == 2);
    CHECK(run({"eval", "--inversive", "--assign", "x=2", "inv(x)"}).out == "1/2\n");
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"check", "x + 1"}).code == 2);  // no '='
    CHECK(run({"demo", "nothing"}).code == 2);
    CHECK(run({"eval", "--format", "yaml", "1"}).code == 2);
    CHECK(run({"eval", "--model", "gf:2^2", "--assign", "x=b", "x"}).code == 2);
}

}  // TEST_SUITE
