// End-to-end checks of the command-line tool: spawns the built binary,
// captures stdout, and inspects the JSON reports and exit codes.

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() / "subcount_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

RunResult run_cli(const std::string& args) {
    fs::path out = work_dir() / "stdout.txt";
    std::string cmd = std::string(SUBCOUNT_CLI_PATH) + " " + args + " > " + out.string() +
                      " 2> " + (work_dir() / "stderr.txt").string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
}

fs::path write_c5() {
    fs::path p = work_dir() / "c5.txt";
    spit(p, "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    return p;
}

fs::path write_star() {
    fs::path g = work_dir() / "star.txt";
    spit(g, "4 3\n0 1\n0 2\n0 3\n");
    fs::path c = work_dir() / "star.colors";
    spit(c, "0 1\n1 2\n2 2\n3 2\n");
    return g;
}

} // namespace

TEST_CASE("exact command") {
    fs::path c5 = write_c5();
    SECTION("connected triples of C5") {
        RunResult r = run_cli("exact --graph " + c5.string() + " --property connected -k 3");
        REQUIRE(r.code == 0);
        json report = json::parse(r.out);
        REQUIRE(report["command"] == "exact");
        REQUIRE(report["result"]["labelled"] == "30");
        REQUIRE(report["result"]["unlabelled"] == "5");
        REQUIRE(report["config"]["graph"] == c5.string());
    }
    SECTION("edgeless graph counts zero") {
        fs::path p = work_dir() / "edgeless.txt";
        spit(p, "6 0\n");
        RunResult r = run_cli("exact --graph " + p.string() + " --property connected -k 3");
        REQUIRE(r.code == 0);
        REQUIRE(json::parse(r.out)["result"]["unlabelled"] == "0");
    }
    SECTION("K4 has 4 connected triples") {
        fs::path p = work_dir() / "k4.txt";
        spit(p, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
        RunResult r = run_cli("exact --graph " + p.string() + " --property connected -k 3");
        REQUIRE(json::parse(r.out)["result"]["unlabelled"] == "4");
    }
}

TEST_CASE("approx command") {
    fs::path c5 = write_c5();
    std::string base = "approx --graph " + c5.string() +
                       " --property connected -k 3 --eps 0.1 --delta 0.05 --seed 7";
    SECTION("estimate lands near the truth and reports provenance") {
        RunResult r = run_cli(base);
        REQUIRE(r.code == 0);
        json report = json::parse(r.out);
        double unlabelled = report["result"]["unlabelled"]["value"];
        REQUIRE(unlabelled >= 4.5);
        REQUIRE(unlabelled <= 5.5);
        REQUIRE(report["result"]["labelled"]["family_mode"] == "exact-greedy");
        REQUIRE(report["config"]["seed"] == 7);
    }
    SECTION("same command, same seed: byte-identical report") {
        fs::path f1 = work_dir() / "rep1.json";
        fs::path f2 = work_dir() / "rep2.json";
        REQUIRE(run_cli(base + " --output " + f1.string()).code == 0);
        REQUIRE(run_cli(base + " --output " + f2.string()).code == 0);
        std::string a = slurp(f1), b = slurp(f2);
        REQUIRE_FALSE(a.empty());
        REQUIRE(a == b);
    }
    SECTION("worker count does not change the report") {
        fs::path f1 = work_dir() / "w1.json";
        fs::path f2 = work_dir() / "w2.json";
        REQUIRE(run_cli(base + " --workers 1 --output " + f1.string()).code == 0);
        REQUIRE(run_cli(base + " --workers 2 --output " + f2.string()).code == 0);
        json a = json::parse(slurp(f1)), b = json::parse(slurp(f2));
        REQUIRE(a["result"]["labelled"]["value_exact"] == b["result"]["labelled"]["value_exact"]);
    }
    SECTION("non-bipartite on a bipartite graph estimates zero") {
        fs::path p = work_dir() / "even_cycle.txt";
        spit(p, "6 6\n0 1\n0 5\n1 2\n2 3\n3 4\n4 5\n");
        RunResult r = run_cli("approx --graph " + p.string() +
                              " --property non-bipartite -k 4 --seed 3");
        REQUIRE(r.code == 0);
        REQUIRE(json::parse(r.out)["result"]["labelled"]["value"] == 0.0);
    }
    SECTION("custom pattern file matches the built-in property") {
        fs::path pat = work_dir() / "conn3.pat";
        spit(pat, "3 3\n1-2,2-3\n1-2,1-3\n1-3,2-3\n");
        RunResult r = run_cli("approx --graph " + c5.string() + " --patterns " + pat.string() +
                              " -k 3 --seed 7");
        REQUIRE(r.code == 0);
        json report = json::parse(r.out);
        double labelled = report["result"]["labelled"]["value"];
        REQUIRE(labelled >= 27.0);
        REQUIRE(labelled <= 33.0);
        REQUIRE_FALSE(report["result"].contains("unlabelled")); // not declared symmetric
    }
}

TEST_CASE("motif command") {
    fs::path star = write_star();
    std::string colors = (work_dir() / "star.colors").string();
    SECTION("exact count of the star motif") {
        RunResult r = run_cli("motif --graph " + star.string() + " --coloring " + colors +
                              " --motif 1:1,2:2 --method exact");
        REQUIRE(r.code == 0);
        REQUIRE(json::parse(r.out)["result"]["count"] == "3");
    }
    SECTION("approximate count and determinism") {
        std::string base = "motif --graph " + star.string() + " --coloring " + colors +
                           " --motif 1:1,2:2 --seed 11";
        RunResult r = run_cli(base);
        REQUIRE(r.code == 0);
        double v = json::parse(r.out)["result"]["estimate"]["value"];
        REQUIRE(v >= 2.7);
        REQUIRE(v <= 3.3);
        RunResult again = run_cli(base);
        REQUIRE(again.out == r.out);
    }
    SECTION("all-blue motif is zero") {
        RunResult r = run_cli("motif --graph " + star.string() + " --coloring " + colors +
                              " --motif 2:3 --method exact");
        REQUIRE(json::parse(r.out)["result"]["count"] == "0");
    }
    SECTION("motif larger than the host is a usage error") {
        RunResult r = run_cli("motif --graph " + star.string() + " --coloring " + colors +
                              " --motif 2:9");
        REQUIRE(r.code == 2);
    }
}

TEST_CASE("verify command") {
    SECTION("default sizes pass") {
        RunResult r = run_cli("verify --k-max 4 --instances 3 --seed 5");
        REQUIRE(r.code == 0);
        REQUIRE(json::parse(r.out)["result"]["all_pass"] == true);
    }
    SECTION("fault injection is detected and exits 1") {
        RunResult r = run_cli("verify --k-max 3 --instances 2 --inject-fault");
        REQUIRE(r.code == 1);
        REQUIRE(json::parse(r.out)["result"]["all_pass"] == false);
    }
}

TEST_CASE("gen command") {
    fs::path out = work_dir() / "gen.txt";
    SECTION("produces a loadable deterministic instance") {
        RunResult r = run_cli("gen --n 8 --p 0.4 --seed 13 --output " + out.string());
        REQUIRE(r.code == 0);
        std::string first = slurp(out);
        REQUIRE(run_cli("gen --n 8 --p 0.4 --seed 13 --output " + out.string()).code == 0);
        REQUIRE(slurp(out) == first);
        RunResult exact = run_cli("exact --graph " + out.string() + " --property connected -k 3");
        REQUIRE(exact.code == 0);
    }
    SECTION("palette writes a coloring usable by motif") {
        fs::path cg = work_dir() / "gen_col.txt";
        fs::path cc = work_dir() / "gen_col.colors";
        RunResult r = run_cli("gen --n 7 --p 0.6 --seed 21 --output " + cg.string() +
                              " --palette 2 --coloring-out " + cc.string());
        REQUIRE(r.code == 0);
        RunResult m = run_cli("motif --graph " + cg.string() + " --coloring " + cc.string() +
                              " --motif 1:1,2:1 --method exact");
        REQUIRE(m.code == 0);
    }
}

TEST_CASE("exit codes") {
    fs::path c5 = write_c5();
    SECTION("missing file is a parse/usage error") {
        REQUIRE(run_cli("exact --graph /nonexistent.txt --property connected -k 3").code == 2);
    }
    SECTION("malformed graph file is a parse error") {
        fs::path bad = work_dir() / "bad.txt";
        spit(bad, "3 1\n0 9\n");
        REQUIRE(run_cli("exact --graph " + bad.string() + " --property connected -k 3").code == 2);
    }
    SECTION("unknown property is a usage error") {
        REQUIRE(run_cli("exact --graph " + c5.string() + " --property planar -k 3").code == 2);
    }
    SECTION("brute-force cap exceeded is its own code") {
        REQUIRE(run_cli("exact --graph " + c5.string() + " --property connected -k 7").code == 3);
    }
    SECTION("bad flags are usage errors") {
        REQUIRE(run_cli("approx --graph " + c5.string() + " -k 3 --seed notanumber").code == 2);
        REQUIRE(run_cli("frobnicate").code == 2);
    }
}
