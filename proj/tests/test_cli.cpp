#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "napoly/io.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

fs::path work_dir() {
    auto dir = fs::temp_directory_path() / "napoly-cli-tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_temp(const std::string& name, const std::string& content) {
    auto path = work_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

CliResult cli(const std::string& args) {
    const std::string cmd = std::string(NAPOLYP_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

const char* kChainJson = R"({
  "states": 4,
  "start": 0,
  "accepts": [3],
  "transitions": [
    {"from": 0, "to": 1, "symbols": "A", "weight": 2},
    {"from": 1, "to": 2, "symbols": "G", "weight": 2},
    {"from": 2, "to": 3, "symbols": "C", "weight": 2}
  ]
})";

}  // namespace

TEST_CASE("align reproduces the paper scores and survives the oracle") {
    auto seqs = write_temp("align-seqs.txt", "AGC\nAGATG\n");
    auto res = cli("align AGC " + seqs.string() + " --mode global --oracle");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "0\t6\t3\tinexact\n1\t-1\t5\tinexact\n");
}

TEST_CASE("align output is independent of thread count and kernel") {
    std::string body;
    for (int i = 0; i < 24; ++i) body += "AGATGCCGT\nTTT\nAGC\n";
    auto seqs = write_temp("align-threads.txt", body);
    auto base = cli("align AGC " + seqs.string() + " --mode local --oracle");
    REQUIRE(base.exit_code == 0);
    auto threaded = cli("align AGC " + seqs.string() + " --mode local --threads 4");
    CHECK(threaded.output == base.output);
    auto scalar = cli("align AGC " + seqs.string() + " --mode local --kernel scalar");
    CHECK(scalar.output == base.output);
}

TEST_CASE("compile is deterministic and the design runs") {
    auto wfa = write_temp("chain.json", kChainJson);
    auto d1 = (work_dir() / "chain-d1.json").string();
    auto d2 = (work_dir() / "chain-d2.json").string();
    auto r1 = cli("compile " + wfa.string() +
                  " --array-size 16 --fanout 4 --seed 5 --out " + d1);
    auto r2 = cli("compile " + wfa.string() +
                  " --array-size 16 --fanout 4 --seed 5 --out " + d2);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(napoly::read_file(d1) == napoly::read_file(d2));

    auto seqs = write_temp("chain-seqs.txt", "AGC\nTT\n");
    auto run_res = cli("run " + d1 + " " + seqs.string());
    CHECK(run_res.exit_code == 0);

    // First sequence: one record at offset 3, then a summary line.
    auto lines = run_res.output;
    CHECK(lines.find("# sequence 0\n") != std::string::npos);
    auto rec_pos = lines.find("3\t");
    REQUIRE(rec_pos != std::string::npos);

    auto sum_pos = lines.find("# summary ");
    REQUIRE(sum_pos != std::string::npos);
    auto sum_end = lines.find('\n', sum_pos);
    auto summary = nlohmann::json::parse(
        lines.substr(sum_pos + 10, sum_end - sum_pos - 10));
    CHECK(summary["best_score"] == 6);
    CHECK(summary["best_offset"] == 3);
    CHECK(summary["exact"] == true);
    CHECK(summary["cycles"] == 3);
    CHECK(summary["records"] == 1);

    // Second sequence matches nothing: null best, zero records.
    auto sum2_pos = lines.find("# summary ", sum_end);
    REQUIRE(sum2_pos != std::string::npos);
    auto sum2_end = lines.find('\n', sum2_pos);
    auto summary2 = nlohmann::json::parse(
        lines.substr(sum2_pos + 10, sum2_end - sum2_pos - 10));
    CHECK(summary2["best_score"].is_null());
    CHECK(summary2["records"] == 0);
}

TEST_CASE("oracle methods agree on the chain") {
    auto wfa = write_temp("oracle-chain.json", kChainJson);
    auto seqs = write_temp("oracle-seqs.txt", "AGC\nAG\n");
    auto vit = cli("oracle " + wfa.string() + " " + seqs.string() + " --method viterbi");
    CHECK(vit.exit_code == 0);
    CHECK(vit.output == "0\t6\t3\n1\t-\t-\n");
    auto enu = cli("oracle " + wfa.string() + " " + seqs.string() +
                   " --method enumerate");
    CHECK(enu.exit_code == 0);
    CHECK(enu.output == "0\t6\t-\n1\t-\t-\n");
}

TEST_CASE("exit code 2: malformed input files") {
    auto bad = write_temp("bad.json", "{ not json");
    auto seqs = write_temp("e2-seqs.txt", "A\n");
    CHECK(cli("compile " + bad.string() + " --array-size 8 --fanout 4").exit_code == 2);

    auto unknown = write_temp("unknown-field.json",
                              R"({"states": 1, "start": 0, "accepts": [],
                                  "transitions": [], "extra": 1})");
    CHECK(cli("oracle " + unknown.string() + " " + seqs.string()).exit_code == 2);
}

TEST_CASE("exit code 3: infeasible fanout demand") {
    // The transition into state 1 becomes a node with five successors;
    // fanout 4 leaves room for only three non-self connections.
    auto wfa = write_temp("hub.json", R"({
      "states": 7,
      "start": 0,
      "accepts": [6],
      "transitions": [
        {"from": 0, "to": 1, "symbols": "A", "weight": 0},
        {"from": 1, "to": 2, "symbols": "A", "weight": 0},
        {"from": 1, "to": 3, "symbols": "C", "weight": 0},
        {"from": 1, "to": 4, "symbols": "G", "weight": 0},
        {"from": 1, "to": 5, "symbols": "T", "weight": 0},
        {"from": 1, "to": 6, "symbols": "A", "weight": 1}
      ]
    })");
    auto res = cli("compile " + wfa.string() + " --array-size 32 --fanout 4");
    CHECK(res.exit_code == 3);
    CHECK(res.output.find("fanout") != std::string::npos);
}

TEST_CASE("exit code 5: score overflow during simulation") {
    auto wfa = write_temp("overflow.json", R"({
      "states": 3,
      "start": 0,
      "accepts": [2],
      "transitions": [
        {"from": 0, "to": 1, "symbols": "A", "weight": 1500000000},
        {"from": 1, "to": 2, "symbols": "G", "weight": 1500000000}
      ]
    })");
    auto design = (work_dir() / "overflow-design.json").string();
    REQUIRE(cli("compile " + wfa.string() +
                " --array-size 8 --fanout 4 --out " + design)
                .exit_code == 0);
    auto seqs = write_temp("overflow-seqs.txt", "AG\n");
    auto res = cli("run " + design + " " + seqs.string());
    CHECK(res.exit_code == 5);
    CHECK(res.output.find("32-bit") != std::string::npos);
}

TEST_CASE("exit code 1: missing files and bad arguments") {
    CHECK(cli("run /no/such/design.json /no/such/seqs.txt").exit_code == 1);
    CHECK(cli("frobnicate").exit_code == 1);
    auto seqs = write_temp("e1-seqs.txt", "A\n");
    CHECK(cli("align AGC " + seqs.string() + " --mode sideways").exit_code == 1);
    CHECK(cli("align \"\" " + seqs.string()).exit_code == 1);  // empty pattern
}

TEST_CASE("bench reports a deterministic sweep") {
    auto r1 = cli("bench --sizes 64 --symbols 2000 --reps 2 --seed 3");
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.output.rfind("# cells\t", 0) == 0);
    REQUIRE(r1.output.find("\n64\t2000\t2\t") != std::string::npos);

    auto r2 = cli("bench --sizes 64 --symbols 2000 --reps 2 --seed 3");
    // Timing differs run to run; the record count (field 6) must not.
    auto records_field = [](const std::string& out) {
        auto line_start = out.find("\n64\t") + 1;
        auto line_end = out.find('\n', line_start);
        std::string line = out.substr(line_start, line_end - line_start);
        size_t pos = 0;
        for (int i = 0; i < 5; ++i) pos = line.find('\t', pos) + 1;
        return line.substr(pos);
    };
    CHECK(records_field(r1.output) == records_field(r2.output));
}
