// Command-line front end: load an instance file, run the exact analyses,
// drive the fuzz harness or the sampling estimator.
//
// Exit codes: 0 success, 1 property violation, 2 input/validation error.

#include "mapties/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace mapties;

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("instance file is not valid JSON: " + std::string(e.what()));
    }
    return instance_from_json(j);
}

struct FormatFlags {
    bool md = false, csv = false, json = false;

    ReportFormat pick() const {
        if (csv) return ReportFormat::csv;
        if (json) return ReportFormat::json;
        return ReportFormat::markdown;
    }
};

void add_format_flags(CLI::App* cmd, FormatFlags& flags) {
    auto* md = cmd->add_flag("--md", flags.md, "markdown output (default)");
    auto* csv = cmd->add_flag("--csv", flags.csv, "CSV output");
    auto* json = cmd->add_flag("--json", flags.json, "JSON output");
    md->excludes(csv, json);
    csv->excludes(json);
}

int run_verify(const Instance& inst, int limit) {
    const SuiteReport rep = run_suite(inst, limit);
    for (const auto& r : rep.results) {
        std::cout << (r.pass ? (r.vacuous ? "PASS (vacuous) " : "PASS ") : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << " -- " << r.detail;
        std::cout << "\n";
    }
    return rep.pass() ? 0 : 1;
}

int run_fuzz(const FuzzConfig& cfg, int limit) {
    std::uint64_t failures = 0;
    for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
        const Instance inst = random_instance(cfg, trial);
        const SuiteReport rep = run_suite(inst, limit);
        if (!rep.pass()) {
            ++failures;
            const std::string path = "reproducer_trial" + std::to_string(trial) + ".json";
            std::ofstream out(path);
            out << instance_to_json(inst).dump(2) << "\n";
            for (const auto* f : rep.failures())
                std::cout << "FAIL trial " << trial << " property " << f->name << " -- " << f->detail
                          << " (instance dumped to " << path << ")\n";
        }
    }
    std::cout << "fuzz: " << cfg.trials << " trials, " << failures << " failing\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact MAP-decoding tie/error analyzer for binary codes over the BSC"};
    app.require_subcommand(1);

    std::string file;
    int limit = kDefaultEnumLimit;
    FormatFlags analyze_fmt, classify_fmt, partitions_fmt, mc_fmt;
    int classify_focus = 0;
    int part_i = 0, part_j = 0;

    auto* analyze = app.add_subcommand("analyze", "exact metrics a_n, b_n, delta_n and the bound checks");
    analyze->add_option("file", file, "instance JSON file")->required();
    analyze->add_option("--limit", limit, "enumeration limit on n");
    add_format_flags(analyze, analyze_fmt);

    auto* classify_cmd = app.add_subcommand("classify", "per-output membership matrix and tie partners");
    classify_cmd->add_option("file", file, "instance JSON file")->required();
    classify_cmd->add_option("--i", classify_focus, "restrict columns to one codeword index");
    classify_cmd->add_option("--limit", limit, "enumeration limit on n");
    add_format_flags(classify_cmd, classify_fmt);

    auto* partitions_cmd = app.add_subcommand("partitions", "tie families, levels, atoms and the bound chain");
    partitions_cmd->add_option("file", file, "instance JSON file")->required();
    partitions_cmd->add_option("--i", part_i, "sent codeword index (default: all)");
    partitions_cmd->add_option("--j", part_j, "tying codeword index (default: all)");
    partitions_cmd->add_option("--limit", limit, "enumeration limit on n");
    add_format_flags(partitions_cmd, partitions_fmt);

    auto* verify_cmd = app.add_subcommand("verify", "run the full property suite on one instance");
    verify_cmd->add_option("file", file, "instance JSON file")->required();
    verify_cmd->add_option("--limit", limit, "enumeration limit on n");

    FuzzConfig cfg;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "property suite over random instances");
    fuzz_cmd->add_option("--seed", cfg.seed, "corpus seed")->required();
    fuzz_cmd->add_option("--trials", cfg.trials, "number of instances")->required();
    fuzz_cmd->add_option("--max-n", cfg.max_n, "largest blocklength (<= 12)");
    fuzz_cmd->add_option("--max-m", cfg.max_m, "largest code size (<= 8)");

    std::uint64_t samples = 0, mc_seed = 0;
    auto* mc_cmd = app.add_subcommand("montecarlo", "sampling estimates of a_n, b_n, delta_n");
    mc_cmd->add_option("file", file, "instance JSON file")->required();
    mc_cmd->add_option("--samples", samples, "number of samples")->required();
    mc_cmd->add_option("--seed", mc_seed, "sampling seed")->required();
    add_format_flags(mc_cmd, mc_fmt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            const Instance inst = load_instance_file(file);
            const TheoremReport rep = verify_theorem(inst, limit);
            std::cout << analyze_report(inst, rep, analyze_fmt.pick());
            return rep.all_ok() ? 0 : 1;
        }
        if (classify_cmd->parsed()) {
            const Instance inst = load_instance_file(file);
            if (classify_focus != 0 && (classify_focus < 1 || classify_focus > inst.M()))
                throw std::invalid_argument("--i out of range");
            const ScoreTable table(inst);
            const Classification cls = classify(inst, {.limit = limit});
            const auto rows = make_classify_rows(inst, table, cls);
            std::optional<int> focus;
            if (classify_focus != 0) focus = classify_focus;
            std::cout << classify_report(inst, rows, focus, classify_fmt.pick());
            return 0;
        }
        if (partitions_cmd->parsed()) {
            const Instance inst = load_instance_file(file);
            if (part_i != 0 && (part_i < 1 || part_i > inst.M()))
                throw std::invalid_argument("--i out of range");
            if (part_j != 0 && (part_j < 1 || part_j > inst.M()))
                throw std::invalid_argument("--j out of range");
            const ScoreTable table(inst);
            std::optional<int> oi, oj;
            if (part_i != 0) oi = part_i;
            if (part_j != 0) oj = part_j;
            const PartitionReport rep = build_partition_report(inst, table, oi, oj, limit);
            std::cout << partitions_report(inst, rep, partitions_fmt.pick());
            return rep.checks.ok() && rep.chain.ok() ? 0 : 1;
        }
        if (verify_cmd->parsed()) return run_verify(load_instance_file(file), limit);
        if (fuzz_cmd->parsed()) {
            if (cfg.max_n > 12) throw std::invalid_argument("--max-n must be at most 12");
            if (cfg.max_m > 8) throw std::invalid_argument("--max-m must be at most 8");
            if (cfg.max_n < 2 || cfg.max_m < 2) throw std::invalid_argument("--max-n and --max-m must be >= 2");
            return run_fuzz(cfg, kDefaultEnumLimit);
        }
        if (mc_cmd->parsed()) {
            const Instance inst = load_instance_file(file);
            if (samples == 0) throw std::invalid_argument("--samples must be positive");
            std::cout << estimates_report(estimate_metrics(inst, samples, mc_seed), mc_fmt.pick());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
