#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(AUTOSTAB_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string tmp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("autostab_cli_" + name)).string();
}

}  // namespace

TEST_CASE("cli classify and verify") {
    auto cert = tmp("cert.json");
    auto r = cli("classify --d 3 \"re(0*10*2)\" -o " + cert);
    CHECK(r.code == 0);
    CHECK(r.out.find("UnstableCertified") != std::string::npos);
    std::ifstream f(cert);
    auto j = nlohmann::json::parse(f);
    CHECK(j["verdict"] == "UnstableCertified");
    CHECK(j["certificate"]["ladder"]["N"] == 5);

    CHECK(cli("verify " + cert + " --d 3 --against \"re(0*10*2)\"").code == 0);
    // the same ladder against a different set
    auto bad = cli("verify " + cert + " --d 3 --against \"re(0*20*1)\"");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("rejected") != std::string::npos);

    auto s = cli("classify --d 10 \"powers()\"");
    CHECK(s.code == 0);
    CHECK(s.out.find("StableCertified") != std::string::npos);
    auto scert = tmp("stable.json");
    CHECK(cli("classify --d 10 \"powers()\" --format json -o " + scert).code == 0);
    CHECK(cli("verify " + scert + " --d 10 --against \"re(0*1)\"").code == 0);
    CHECK(cli("verify " + scert + " --d 10 --against \"re(0*1) | {0}\"").code == 1);
}

TEST_CASE("cli output is reproducible apart from timings") {
    auto strip = [](const std::string& s) {
        auto j = nlohmann::json::parse(s);
        j.erase("timings");
        return j.dump();
    };
    for (std::string e : {"\"re(0*10*2)\" --d 3", "\"trans(7, C(5;2) + C(1;1))\" --d 2", "\"naturals()\" --d 2"}) {
        auto a = cli("classify --format json " + e), b = cli("classify --format json " + e);
        REQUIRE(a.code == 0);
        CHECK(strip(a.out) == strip(b.out));
    }
}

TEST_CASE("cli exit codes") {
    CHECK(cli("classify \"powers()\"").code == 1);                     // --d is required
    CHECK(cli("classify --d 1 \"powers()\"").code == 1);
    auto syn = cli("classify --d 3 \"re(0*1\"");
    CHECK(syn.code == 1);
    CHECK(syn.out.find("column") != std::string::npos);
    CHECK(cli("frobnicate").code == 1);
    // a period above the detector's range and a box too small for any ladder
    CHECK(cli("classify --d 2 --bound 64 \"coset(0,128)\"").code == 2);
}

TEST_CASE("cli export, sparse, generic, decompose, ladder") {
    auto dot = cli("export --dot \"coset(2,5)\" --d 10");
    CHECK(dot.code == 0);
    CHECK(dot.out.rfind("digraph", 0) == 0);
    CHECK(std::count(dot.out.begin(), dot.out.end(), '{') == std::count(dot.out.begin(), dot.out.end(), '}'));
    CHECK(dot.out.find("->") != std::string::npos);

    auto js = cli("export --format json \"coset(2,5)\" --d 10");
    CHECK(js.code == 0);
    CHECK_NOTHROW((void)nlohmann::json::parse(js.out));

    CHECK(cli("sparse --d 3 \"re(0*10*2)\"").out.find("sparse: yes") != std::string::npos);
    CHECK(cli("sparse --d 3 \"naturals()\"").out.find("sparse: no") != std::string::npos);
    auto g = cli("generic --format json --d 10 \"coset(2,5)\"");
    CHECK(nlohmann::json::parse(g.out)["generic_in_Z"] == true);
    auto dec = cli("decompose --format json --d 10 \"powers()\"");
    CHECK(dec.code == 0);
    CHECK(!nlohmann::json::parse(dec.out)["components"].empty());
    CHECK(cli("decompose --d 2 \"naturals()\"").code == 1);   // not sparse
    auto lad = cli("ladder --d 2 --N 3 \"naturals()\"");
    CHECK(lad.code == 0);
    CHECK(lad.out.find("verified") != std::string::npos);
}

TEST_CASE("cli corpus") {
    auto l = cli("corpus list");
    CHECK(l.code == 0);
    CHECK(l.out.find("baum-sweet") != std::string::npos);
    auto r = cli("corpus run");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    auto one = cli("corpus run even-length --d 3 --format json");
    CHECK(one.code == 0);
    auto j = nlohmann::json::parse(one.out);
    REQUIRE(j["entries"].size() == 1);
    CHECK(j["entries"][0]["got"] == "UnstableCertified");
    CHECK(cli("corpus run no-such-set").code == 1);
}
