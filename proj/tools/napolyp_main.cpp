#include <atomic>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "napoly/align.hpp"
#include "napoly/bench.hpp"
#include "napoly/enumerate.hpp"
#include "napoly/epsilon.hpp"
#include "napoly/io.hpp"
#include "napoly/sim.hpp"
#include "napoly/viterbi.hpp"

namespace {

using namespace napoly;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_file(out_path, text);
}

ScoreMode parse_mode(const std::string& s) {
    const auto mode = score_mode_from_string(s);
    if (!mode) throw InvalidArgumentError("mode must be \"local\" or \"global\"");
    return *mode;
}

KernelKind parse_kernel(const std::string& s) {
    const auto kind = kernel_kind_from_string(s);
    if (!kind) throw InvalidArgumentError("kernel must be auto, scalar, or avx2");
    return *kind;
}

std::string opt_str(const std::optional<BestScore>& b, bool offset_part) {
    if (!b) return "-";
    return std::to_string(offset_part ? b->offset : b->score);
}

struct CompileOpts {
    std::string wfa_path;
    int32_t array_size = 0;
    int32_t fanout = 0;
    std::string mode = "global";
    uint64_t seed = 0;
    int64_t budget = 20000;
    std::string out;
};

int cmd_compile(const CompileOpts& o) {
    const WeightedAutomaton wfa = load_wfa(o.wfa_path);
    const OverlayParams params{o.array_size, o.fanout};
    const PlacedDesign design =
        compile_design(wfa, params, parse_mode(o.mode), o.seed, o.budget);
    emit(design_to_json(design), o.out);
    return 0;
}

struct AlignOpts {
    std::string pattern;
    std::string seq_path;
    int32_t array_size = 0;  // 0 = size to the automaton
    int32_t fanout = 16;
    std::string mode = "global";
    Weight match = 2;
    Weight mismatch = -1;
    Weight gap = -2;
    bool oracle = false;
    uint64_t seed = 0;
    int64_t budget = 20000;
    std::string kernel = "auto";
    int threads = 1;
    std::string out;
};

int cmd_align(const AlignOpts& o) {
    const ScoringScheme scheme{o.match, o.mismatch, o.gap};
    const ScoreMode mode = parse_mode(o.mode);
    const KernelKind kind = parse_kernel(o.kernel);

    const WeightedAutomaton wfa = build_alignment_wfa(o.pattern, scheme);
    const WeightedAutomaton flat = eliminate_epsilon(wfa);
    const AnmlAutomaton anml = wfa_to_anml(flat);
    const int32_t n = o.array_size > 0
                          ? o.array_size
                          : static_cast<int32_t>(anml.nodes.size()) + 1;
    const OverlayParams params{n, o.fanout};
    const Placement placement = place(anml, params, o.seed, o.budget);
    const PlacedDesign design = configure(anml, placement, params, mode);

    const std::vector<std::string> seqs = read_sequences(o.seq_path);
    std::vector<std::string> lines(seqs.size());
    std::vector<std::string> mismatches;
    std::mutex mismatch_mu;

    const auto work = [&](size_t i) {
        const RunResult res = run(design, seqs[i], kind);
        lines[i] = std::to_string(i) + "\t" + opt_str(res.best, false) + "\t" +
                   opt_str(res.best, true) + "\t" + (res.exact ? "exact" : "inexact") +
                   "\n";
        if (!o.oracle) return;
        const std::optional<BestScore> vit = viterbi_best_score(flat, seqs[i], mode);
        std::string why;
        if (design.exact) {
            if (res.best.has_value() != vit.has_value() ||
                (res.best && (res.best->score != vit->score ||
                              res.best->offset != vit->offset)))
                why = "exact design disagrees with viterbi";
        } else if (res.best && (!vit || res.best->score > vit->score)) {
            why = "inexact design overshoots viterbi";
        }
        if (!why.empty()) {
            std::lock_guard<std::mutex> lock(mismatch_mu);
            mismatches.push_back("sequence " + std::to_string(i) + ": " + why +
                                 " (simulated " + opt_str(res.best, false) + "@" +
                                 opt_str(res.best, true) + ", viterbi " +
                                 opt_str(vit, false) + "@" + opt_str(vit, true) + ")");
        }
    };

    const int threads = std::max(1, std::min<int>(o.threads,
                                                  static_cast<int>(seqs.size())));
    if (threads <= 1) {
        for (size_t i = 0; i < seqs.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < seqs.size();
                     i = next.fetch_add(1))
                    work(i);
            });
        for (auto& t : pool) t.join();
    }

    std::string text;
    for (const auto& line : lines) text += line;
    emit(text, o.out);
    if (!mismatches.empty()) {
        std::string msg = "oracle mismatch on " + std::to_string(mismatches.size()) +
                          " sequence(s)";
        for (const auto& m : mismatches) msg += "\n  " + m;
        throw OracleMismatchError(msg);
    }
    return 0;
}

struct RunOpts {
    std::string design_path;
    std::string seq_path;
    std::string kernel = "auto";
    std::string out;
};

int cmd_run(const RunOpts& o) {
    const PlacedDesign design = load_design(o.design_path);
    const KernelKind kind = parse_kernel(o.kernel);
    const std::vector<std::string> seqs = read_sequences(o.seq_path);
    std::ostringstream text;
    for (size_t i = 0; i < seqs.size(); ++i) {
        const RunResult res = run(design, seqs[i], kind);
        text << "# sequence " << i << "\n";
        for (const MatchRecord& r : res.records)
            text << r.offset << '\t' << r.cell << '\t' << r.score << '\n';
        nlohmann::ordered_json summary;
        summary["best_score"] =
            res.best ? nlohmann::ordered_json(res.best->score) : nullptr;
        summary["best_offset"] =
            res.best ? nlohmann::ordered_json(res.best->offset) : nullptr;
        summary["exact"] = res.exact;
        summary["cycles"] = res.cycles;
        summary["records"] = res.records.size();
        text << "# summary " << summary.dump() << "\n";
    }
    emit(text.str(), o.out);
    return 0;
}

struct BenchOpts {
    std::string design_path;
    uint64_t symbols = 1000000;
    int reps = 3;
    uint64_t seed = 0;
    std::vector<int32_t> sizes = {1024, 4096, 16384};
    std::string kernel = "auto";
    std::string out;
};

int cmd_bench(const BenchOpts& o) {
    const KernelKind kind = parse_kernel(o.kernel);
    std::vector<BenchRow> rows;
    if (!o.design_path.empty()) {
        const PlacedDesign design = load_design(o.design_path);
        rows.push_back(bench_design(design, o.symbols, o.reps, o.seed, kind));
    } else {
        rows = bench_sweep(o.sizes, o.symbols, o.reps, o.seed, kind);
    }
    std::ostringstream text;
    text << "# cells\tsymbols\treps\tmedian_seconds\tsymbols_per_second\trecords\texact\n";
    char buf[64];
    for (const BenchRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6f", r.median_seconds);
        text << r.cells << '\t' << r.symbols << '\t' << r.reps << '\t' << buf << '\t';
        std::snprintf(buf, sizeof buf, "%.0f", r.symbols_per_second);
        text << buf << '\t' << r.records << '\t' << (r.exact ? "true" : "false")
             << '\n';
    }
    emit(text.str(), o.out);
    return 0;
}

struct OracleOpts {
    std::string wfa_path;
    std::string seq_path;
    std::string mode = "global";
    std::string method = "viterbi";
    std::string out;
};

int cmd_oracle(const OracleOpts& o) {
    const ScoreMode mode = parse_mode(o.mode);
    const WeightedAutomaton wfa = load_wfa(o.wfa_path);
    const std::vector<std::string> seqs = read_sequences(o.seq_path);
    std::ostringstream text;
    if (o.method == "viterbi") {
        const WeightedAutomaton flat = eliminate_epsilon(wfa);
        for (size_t i = 0; i < seqs.size(); ++i) {
            const auto b = viterbi_best_score(flat, seqs[i], mode);
            text << i << '\t' << opt_str(b, false) << '\t' << opt_str(b, true) << '\n';
        }
    } else if (o.method == "enumerate") {
        for (size_t i = 0; i < seqs.size(); ++i) {
            const auto s = enumerate_best_score(wfa, seqs[i], mode);
            text << i << '\t' << (s ? std::to_string(*s) : "-") << "\t-\n";
        }
    } else {
        throw InvalidArgumentError("method must be viterbi or enumerate");
    }
    emit(text.str(), o.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted-automaton overlay compiler and simulator"};
    app.require_subcommand(1);

    CompileOpts co;
    CLI::App* compile = app.add_subcommand(
        "compile", "Compile an automaton JSON file onto the overlay");
    compile->add_option("wfa", co.wfa_path, "Automaton JSON file")->required();
    compile->add_option("--array-size", co.array_size, "Cell count")->required();
    compile->add_option("--fanout", co.fanout, "Fanout window size")->required();
    compile->add_option("--mode", co.mode, "Restart mode")
        ->check(CLI::IsMember({"local", "global"}));
    compile->add_option("--seed", co.seed, "Placement seed");
    compile->add_option("--budget", co.budget, "Placement repair budget");
    compile->add_option("--out", co.out, "Output file (default stdout)");

    AlignOpts ao;
    CLI::App* align = app.add_subcommand(
        "align", "Score sequences against a pattern on the compiled overlay");
    align->add_option("pattern", ao.pattern, "Pattern string")->required();
    align->add_option("sequences", ao.seq_path, "Sequence file, one per line")
        ->required();
    align->add_option("--array-size", ao.array_size,
                      "Cell count (default: sized to the automaton)");
    align->add_option("--fanout", ao.fanout, "Fanout window size");
    align->add_option("--mode", ao.mode, "Restart mode")
        ->check(CLI::IsMember({"local", "global"}));
    align->add_option("--match", ao.match, "Match reward");
    align->add_option("--mismatch", ao.mismatch, "Mismatch penalty");
    align->add_option("--gap", ao.gap, "Gap penalty");
    align->add_flag("--oracle", ao.oracle, "Cross-check against viterbi");
    align->add_option("--seed", ao.seed, "Placement seed");
    align->add_option("--budget", ao.budget, "Placement repair budget");
    align->add_option("--kernel", ao.kernel, "Simulation kernel")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    align->add_option("--threads", ao.threads, "Worker threads");
    align->add_option("--out", ao.out, "Output file (default stdout)");

    RunOpts ro;
    CLI::App* runc = app.add_subcommand("run", "Simulate a design over sequences");
    runc->add_option("design", ro.design_path, "Design JSON file")->required();
    runc->add_option("sequences", ro.seq_path, "Sequence file, one per line")
        ->required();
    runc->add_option("--kernel", ro.kernel, "Simulation kernel")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    runc->add_option("--out", ro.out, "Output file (default stdout)");

    BenchOpts bo;
    CLI::App* bench = app.add_subcommand("bench", "Throughput report");
    bench->add_option("design", bo.design_path,
                      "Design JSON file (default: built-in chain sweep)");
    bench->add_option("--symbols", bo.symbols, "Input symbols per rep");
    bench->add_option("--reps", bo.reps, "Repetitions (median reported)");
    bench->add_option("--seed", bo.seed, "Input generator seed");
    bench->add_option("--sizes", bo.sizes, "Sweep array sizes")->delimiter(',');
    bench->add_option("--kernel", bo.kernel, "Simulation kernel")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    bench->add_option("--out", bo.out, "Output file (default stdout)");

    OracleOpts oo;
    CLI::App* oracle = app.add_subcommand(
        "oracle", "Reference scores straight from the automaton (no overlay)");
    oracle->add_option("wfa", oo.wfa_path, "Automaton JSON file")->required();
    oracle->add_option("sequences", oo.seq_path, "Sequence file, one per line")
        ->required();
    oracle->add_option("--mode", oo.mode, "Restart mode")
        ->check(CLI::IsMember({"local", "global"}));
    oracle->add_option("--method", oo.method, "viterbi or enumerate")
        ->check(CLI::IsMember({"viterbi", "enumerate"}));
    oracle->add_option("--out", oo.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (compile->parsed()) return cmd_compile(co);
        if (align->parsed()) return cmd_align(ao);
        if (runc->parsed()) return cmd_run(ro);
        if (bench->parsed()) return cmd_bench(bo);
        if (oracle->parsed()) return cmd_oracle(oo);
    } catch (const napoly::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& line : e.violations()) std::cerr << "  " << line << "\n";
        return e.exit_code();
    } catch (const napoly::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
