#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(CMTOOL_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(f);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

}  // namespace

TEST_CASE("text commands") {
    const Run c = run("classgroup -23");
    CHECK(c.status == 0);
    CHECK(c.out == "h=3\n1 1 6\n2 -1 3\n2 1 3\n");

    const Run m = run("modpoly 2");
    CHECK(m.status == 0);
    CHECK(m.out == "ell 2\n3 0 1\n2 2 -1\n2 1 1488\n2 0 -162000\n1 1 40773375\n1 0 8748000000\n0 0 -157464000000000\n");

    CHECK(run("hilbert -15").out == "X^2 + 191025*X - 121287375\n");
    const Run r = run("reduce-cm -23 13");
    CHECK(r.out.rfind("kind ordinary\nresidue_degree 3\n", 0) == 0);
}

TEST_CASE("json output") {
    const Run t = run("thm2 -23 -4 13 1 1");
    REQUIRE(t.status == 0);
    const auto j = nlohmann::json::parse(t.out);
    CHECK(j["schema"] == "1");
    for (const char* k : {"N", "ell", "margin_count", "margin_log", "admissible"}) CHECK(j.contains(k));
    CHECK(j["N"] == 3);

    const auto c = nlohmann::json::parse(run("--json classgroup -20").out);
    CHECK(c["h"] == 2);
    CHECK(c["schema"] == "1");

    // Identical configuration, identical bytes.
    const Run a = run("--json --seed 3 experiment special-pipeline");
    const Run b = run("--json --seed 3 experiment special-pipeline");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const auto e = nlohmann::json::parse(a.out);
    for (const auto& f : e["fixtures"]) {
        const std::string verdict = f["certificate"]["components"][0]["verdict"];
        const std::string expected = f["expected"];
        if (expected == "fiber")
            CHECK(verdict.rfind("fiber(", 0) == 0);
        else
            CHECK(verdict == expected);
    }
}

TEST_CASE("check-special reads a polynomial file") {
    const auto path = std::filesystem::temp_directory_path() / ("cm_cli_" + std::to_string(::getpid()) + ".txt");
    {
        std::ofstream f(path);
        f << "# X - Y\n1 0 1\n0 1 -1\n";
    }
    const Run r = run("check-special --poly " + path.string() + " --p 11 --ell-list 2,3");
    std::filesystem::remove(path);
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["certificate"]["components"][0]["verdict"] == "modular(1,0,0)");
}

TEST_CASE("exit codes") {
    CHECK(run("").status == 2);
    CHECK(run("no-such-command").status == 2);
    CHECK(run("classgroup").status == 2);
    CHECK(run("verify-groups --ell 7").status == 2);
    CHECK(run("classgroup -5").status == 1);   // not a discriminant
    CHECK(run("reduce-cm -23 4").status == 1); // 4 is not prime
    CHECK(run("check-special --poly /nonexistent --p 5").status == 2);
    CHECK(run("verify-groups --ell 3").status == 0);
}
