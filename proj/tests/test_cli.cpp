#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "funnelkern/commands.hpp"

using namespace funnelkern;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() {
        static int seq = 0;
        dir = fs::temp_directory_path() /
              ("funnelkern_cli_" + std::to_string(::getpid()) + "_" +
               std::to_string(seq++));
        fs::create_directories(dir);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string file(const std::string& name) const {
        return (dir / name).string();
    }
};

void put(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    REQUIRE(f.good());
    f << text;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct CerrCapture {
    std::ostringstream buf;
    std::streambuf* old;
    CerrCapture() : old(std::cerr.rdbuf(buf.rdbuf())) {}
    ~CerrCapture() { std::cerr.rdbuf(old); }
    std::string text() const { return buf.str(); }
};

const char* needs_two_fads =
    "p fads 9 8 2\na 1 2\na 4 2\na 2 3\na 2 5\na 5 6\na 6 8\na 6 7\na 9 6\n";

}  // namespace

TEST_CASE("gen forbidden then recognize") {
    TempDir t;
    CmdOptions gen;
    gen.family = "forbidden";
    gen.k = 1;
    gen.output = t.file("d1.fads");
    REQUIRE(cmd_gen(gen) == 0);

    CmdOptions rec;
    rec.input = gen.output;
    rec.output = t.file("rec.txt");
    CHECK(cmd_recognize(rec) == 1);
    CHECK(slurp(rec.output) ==
          "funnel no\nwitness merge 3 fork 4\npath 3 4\nin 1 2\nout 5 6\n");
}

TEST_CASE("recognize a funnel and a cycle") {
    TempDir t;
    put(t.file("yes.fads"), "p fads 2 1 0\na 1 2\n");
    CmdOptions rec;
    rec.input = t.file("yes.fads");
    rec.output = t.file("out.txt");
    CHECK(cmd_recognize(rec) == 0);
    CHECK(slurp(rec.output) == "funnel yes\n");

    put(t.file("cyc.fads"), "p fads 2 2 0\na 1 2\na 2 1\n");
    rec.input = t.file("cyc.fads");
    CHECK(cmd_recognize(rec) == 1);
    CHECK(slurp(rec.output) == "funnel no\ncycle 1 2\n");
}

TEST_CASE("recognize emits dot when asked") {
    TempDir t;
    put(t.file("in.fads"), "p fads 2 1 0\na 1 2\n");
    CmdOptions rec;
    rec.input = t.file("in.fads");
    rec.output = t.file("g.dot");
    rec.dot = true;
    CHECK(cmd_recognize(rec) == 0);
    std::string dot = slurp(rec.output);
    CHECK(dot.find("digraph funnel {") != std::string::npos);
    CHECK(dot.find("v1 -> v2;") != std::string::npos);
}

TEST_CASE("kernelize collapses the small obstruction") {
    TempDir t;
    CmdOptions gen;
    gen.family = "forbidden";
    gen.k = 1;
    gen.output = t.file("d1.fads");
    REQUIRE(cmd_gen(gen) == 0);

    CmdOptions ker;
    ker.input = gen.output;
    ker.output = t.file("kernel.fads");
    ker.audit = true;
    CerrCapture cerr_text;
    CHECK(cmd_kernelize(ker) == 0);
    CHECK(slurp(ker.output) == "p fads 4 0 0\n");
    CHECK(cerr_text.text().find("audit both_degree_big observed 0") !=
          std::string::npos);
    CHECK(cerr_text.text().find(" ok\n") != std::string::npos);
    CHECK(cerr_text.text().find("FAIL") == std::string::npos);
}

TEST_CASE("kernelize reports json") {
    TempDir t;
    put(t.file("in.fads"), needs_two_fads);
    CmdOptions ker;
    ker.input = t.file("in.fads");
    ker.output = t.file("out.json");
    ker.json = true;
    ker.audit = true;
    CerrCapture quiet;  // audit lines still go to stderr in json mode
    CHECK(cmd_kernelize(ker) == 0);
    auto j = nlohmann::json::parse(slurp(ker.output));
    CHECK(j["input"] == ker.input);
    CHECK(j["format"] == "fads");
    CHECK(j["trivial_no"] == false);
    CHECK(j["rules"].size() == 8);
    CHECK(j["rescan_finds"] == 0);
    CHECK(j.contains("kernel"));
    CHECK(j.contains("audit"));
    for (auto& c : j["audit"]) CHECK(c["pass"] == true);
}

TEST_CASE("kernelize routes refutations to the fixed no-instance") {
    TempDir t;
    const std::string canon = "p fads 5 4 0\na 1 4\na 1 5\na 2 1\na 3 1\n";
    put(t.file("no.fads"), canon);
    CmdOptions ker;
    ker.input = t.file("no.fads");
    ker.output = t.file("kernel.fads");
    CHECK(cmd_kernelize(ker) == 1);
    CHECK(slurp(ker.output) == canon);
}

TEST_CASE("solve, then verify its own certificate") {
    TempDir t;
    put(t.file("in.fads"), needs_two_fads);
    CmdOptions sol;
    sol.input = t.file("in.fads");
    sol.output = t.file("out.sol");
    sol.engine = "brute";
    sol.optimize = true;
    CHECK(cmd_solve(sol) == 0);
    std::string text = slurp(sol.output);
    CHECK(text.find("c optimum 2\n") == 0);
    CHECK(text.find("s YES\n") != std::string::npos);

    CmdOptions ver;
    ver.input = t.file("in.fads");
    ver.solution = t.file("out.sol");
    ver.output = t.file("ver.txt");
    CHECK(cmd_verify(ver) == 0);
    CHECK(slurp(ver.output) == "valid\n");
}

TEST_CASE("solve exit codes for no and unknown") {
    TempDir t;
    put(t.file("tight.fads"),
        "p fads 9 8 1\na 1 2\na 4 2\na 2 3\na 2 5\na 5 6\na 6 8\na 6 7\na 9 "
        "6\n");
    CmdOptions sol;
    sol.input = t.file("tight.fads");
    sol.output = t.file("out.sol");
    sol.engine = "bnb";
    CHECK(cmd_solve(sol) == 1);
    CHECK(slurp(sol.output) == "s NO\n");

    sol.node_budget = 1;
    CHECK(cmd_solve(sol) == 3);
    CHECK(slurp(sol.output) == "s UNKNOWN\n");
}

TEST_CASE("solver engines agree through the front end") {
    TempDir t;
    put(t.file("in.fads"), needs_two_fads);
    for (const char* engine : {"brute", "labelings", "bnb"}) {
        CmdOptions sol;
        sol.input = t.file("in.fads");
        sol.output = t.file(std::string("out_") + engine + ".sol");
        sol.engine = engine;
        sol.optimize = true;
        CHECK(cmd_solve(sol) == 0);
        CHECK(slurp(sol.output).find("c optimum 2\n") == 0);
    }
}

TEST_CASE("verify leaves non-yes claims alone") {
    TempDir t;
    put(t.file("in.fads"), "p fads 2 1 0\na 1 2\n");
    put(t.file("no.sol"), "s NO\n");
    CmdOptions ver;
    ver.input = t.file("in.fads");
    ver.solution = t.file("no.sol");
    ver.output = t.file("out.txt");
    CHECK(cmd_verify(ver) == 0);
    CHECK(slurp(ver.output) == "no certificate to check (claim no)\n");
}

TEST_CASE("verify rejects a wrong certificate") {
    TempDir t;
    put(t.file("in.fads"), needs_two_fads);
    put(t.file("bad.sol"), "s YES\nd 1 2\n");
    CmdOptions ver;
    ver.input = t.file("in.fads");
    ver.solution = t.file("bad.sol");
    ver.output = t.file("out.txt");
    CHECK(cmd_verify(ver) == 1);
    CHECK(slurp(ver.output).find("invalid: ") == 0);
}

TEST_CASE("planted generation ships a working certificate") {
    TempDir t;
    CmdOptions gen;
    gen.family = "planted";
    gen.n = 40;
    gen.m = 90;
    gen.k = 3;
    gen.seed = 11;
    gen.output = t.file("p.fads");
    REQUIRE(cmd_gen(gen) == 0);
    CHECK(fs::exists(t.file("p.fads.cert")));

    CmdOptions ver;
    ver.input = t.file("p.fads");
    ver.solution = t.file("p.fads.cert");
    ver.output = t.file("v.txt");
    CHECK(cmd_verify(ver) == 0);
    CHECK(slurp(ver.output) == "valid\n");
}

TEST_CASE("planted generation without an output file is refused") {
    CerrCapture cerr_text;
    CmdOptions gen;
    gen.family = "planted";
    gen.n = 10;
    gen.m = 15;
    gen.k = 2;
    CHECK(cmd_gen(gen) == 2);
    CHECK(cerr_text.text().find("error: ") == 0);
}

TEST_CASE("generation is deterministic in the seed") {
    TempDir t;
    CmdOptions gen;
    gen.family = "random";
    gen.n = 30;
    gen.m = 80;
    gen.k = 4;
    gen.seed = 99;
    gen.output = t.file("a.fads");
    REQUIRE(cmd_gen(gen) == 0);
    gen.output = t.file("b.fads");
    REQUIRE(cmd_gen(gen) == 0);
    CHECK(slurp(t.file("a.fads")) == slurp(t.file("b.fads")));
}

TEST_CASE("missing input surfaces as an input error") {
    CerrCapture cerr_text;
    CmdOptions rec;
    rec.input = "/nonexistent/nowhere.fads";
    CHECK(cmd_recognize(rec) == 2);
    CHECK(cerr_text.text().find("error: cannot open") != std::string::npos);
}

TEST_CASE("directory input batches in name order") {
    TempDir t;
    fs::create_directories(t.file("batch"));
    put(t.file("batch/a.fads"), "p fads 2 1 0\na 1 2\n");
    put(t.file("batch/b.fads"), "p fads 2 2 0\na 1 2\na 2 1\n");
    put(t.file("batch/c.fads"), "p fads broken\n");

    CmdOptions rec;
    rec.input = t.file("batch");
    rec.output = t.file("merged.txt");
    CerrCapture cerr_text;
    CHECK(cmd_recognize(rec) == 2);  // the parse error dominates
    std::string merged = slurp(rec.output);
    std::size_t pa = merged.find("== a.fads\nfunnel yes\n");
    std::size_t pb = merged.find("== b.fads\nfunnel no\ncycle 1 2\n");
    CHECK(pa != std::string::npos);
    CHECK(pb != std::string::npos);
    CHECK(pa < pb);
    CHECK(cerr_text.text().find("== c.fads\nerror: line 1:") !=
          std::string::npos);

    rec.json = true;
    rec.output = t.file("merged.json");
    CHECK(cmd_recognize(rec) == 2);
    auto arr = nlohmann::json::parse(slurp(rec.output));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 3);
    CHECK(arr[0]["funnel"] == true);
    CHECK(arr[1]["funnel"] == false);
    CHECK(arr[2].contains("error"));
}

TEST_CASE("batch severity keeps the strongest code") {
    TempDir t;
    fs::create_directories(t.file("mix"));
    put(t.file("mix/a.fads"), "p fads 2 1 0\na 1 2\n");
    put(t.file("mix/b.fads"), "p fads 3 3 0\na 1 2\na 2 3\na 3 1\n");
    CmdOptions rec;
    rec.input = t.file("mix");
    rec.output = t.file("out.txt");
    CHECK(cmd_recognize(rec) == 1);  // yes + no merges to reject
}

TEST_CASE("solve reports json with the certificate inline") {
    TempDir t;
    put(t.file("in.fads"), needs_two_fads);
    CmdOptions sol;
    sol.input = t.file("in.fads");
    sol.output = t.file("out.json");
    sol.engine = "labelings";
    sol.optimize = true;
    sol.json = true;
    CHECK(cmd_solve(sol) == 0);
    auto j = nlohmann::json::parse(slurp(sol.output));
    CHECK(j["status"] == "yes");
    CHECK(j["optimum"] == 2);
    CHECK(j["deleted"].size() == 2);
    CHECK(j["labels"].size() == 9);
}
