#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SFPFCC_CLI
#error "SFPFCC_CLI must name the command-line binary"
#endif

using Catch::Matchers::ContainsSubstring;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(SFPFCC_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int st = pclose(pipe);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

int lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

std::string config(const char* name) { return std::string(SFPFCC_CONFIGS) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = std::string(SFPFCC_TMP) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_CASE("price from the VG1 config", "[cli]") {
    const auto r = run("price --config " + config("vg1.json"));
    CHECK(r.status == 0);
    CHECK(lines(r.out) == 402);
    CHECK(r.out.rfind("S,price\n80,", 0) == 0);
}

TEST_CASE("FCC weight dump", "[cli]") {
    const auto r = run("fcc-weights --k 50 --n 64");
    CHECK(r.status == 0);
    CHECK(lines(r.out) == 66);
    CHECK(r.out.rfind("n,re,im\n", 0) == 0);
}

TEST_CASE("identical runs give identical bytes", "[cli]") {
    const auto a = run("price --config " + config("cgmy2.json"));
    const auto b = run("price --config " + config("cgmy2.json"));
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out) == 42);
}

TEST_CASE("flags override the config file", "[cli]") {
    const auto g = run("price --config " + config("vg1.json") + " --grid 11");
    CHECK(lines(g.out) == 12);
    const auto u = run("price --config " + config("vg1.json") + " --grid 11 --U 16");
    CHECK(u.status == 0);
    CHECK(u.out != g.out);
    const auto s = run("price --set CGMY2 --grid 5");
    CHECK(s.status == 0);
    CHECK(lines(s.out) == 6);
}

TEST_CASE("output file", "[cli]") {
    const std::string path = std::string(SFPFCC_TMP) + "/cli_out.csv";
    std::remove(path.c_str());
    const auto r = run("price --set CGMY2 --out " + path);
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(lines(ss.str()) == 42);
}

TEST_CASE("config errors name the key and exit with 1", "[cli]") {
    const auto bad = write_temp("bad_key.json", R"({"model": {"kind": "BS", "sigma": 0.2, "r": 0.05},
        "contract": {"style": "european", "kind": "call", "K": 100, "S": {"from": 80, "to": 120}, "T": 1},
        "numerics": {"Uu": 64}})");
    const auto r = run("price --config " + bad, true);
    CHECK(r.status == 1);
    CHECK_THAT(r.out, ContainsSubstring("numerics.Uu"));

    const auto range = write_temp("bad_range.json", R"({"model": {"kind": "BS", "sigma": 0.2, "r": 0.05},
        "contract": {"style": "european", "kind": "call", "K": 100, "S": 100, "T": 1}})");
    const auto r2 = run("price --config " + range, true);
    CHECK(r2.status == 1);
    CHECK_THAT(r2.out, ContainsSubstring("contract.S"));

    const auto model = write_temp("bad_model.json", R"({"model": {"kind": "VG", "sigma": 0.1, "theta": 5, "nu": 1, "r": 0.05},
        "contract": {"style": "european", "kind": "call", "K": 100, "S": {"from": 80, "to": 120}, "T": 1}})");
    const auto r3 = run("price --config " + model, true);
    CHECK(r3.status == 1);
    CHECK_THAT(r3.out, ContainsSubstring("model"));

    const auto r4 = run("price --set FOO", true);
    CHECK(r4.status == 1);
    CHECK_THAT(r4.out, ContainsSubstring("set"));
    CHECK(run("price --config /nonexistent.json").status == 1);
    CHECK(run("frobnicate").status == 1);
}

TEST_CASE("other subcommands", "[cli]") {
    const auto g = run("greeks --config " + config("cgmy1_bermudan_greeks.json") + " --grid 5");
    CHECK(g.status == 0);
    CHECK(g.out.rfind("S,price,delta,gamma\n", 0) == 0);
    CHECK(lines(g.out) == 6);
    const auto j = run("locate-jumps --set VG1");
    CHECK(j.status == 0);
    CHECK(j.out.rfind("index,x\n", 0) == 0);
    CHECK(lines(j.out) >= 2);
    const auto b = run("bench --set CGMY2");
    CHECK(b.status == 0);
    CHECK(b.out.rfind("set,style,param,value,ref,abs_err,Rinf,R2,seconds\n", 0) == 0);
    CHECK(lines(b.out) == 411);
    const auto k = run("price --config " + config("nig1.json") + " --grid 4 --U 64");
    CHECK(k.status == 0);
    CHECK(k.out.rfind("K,price\n80,", 0) == 0);
}
