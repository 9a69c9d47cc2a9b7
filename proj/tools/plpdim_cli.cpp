#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plpdim/scenario.hpp"

namespace {

struct CommonOpts {
    std::string scenario_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int realizations = 0;
    int threads = 1;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--scenario", opts.scenario_path, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_path, "Output CSV path (default: stdout)");
    cmd->add_option("--seed", opts.seed, "Override the scenario seed")
        ->each([&](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--realizations", opts.realizations,
                    "Override estimator.n_realizations")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", opts.threads, "Worker threads (deterministic output)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--quiet", opts.quiet, "Suppress progress messages");
}

int run(const std::string& name, const CommonOpts& opts) {
    plpdim::LoadedScenario ls = plpdim::scenario::load_file(opts.scenario_path);

    const char* expected = nullptr;
    switch (ls.study.type) {
        case plpdim::StudyType::kCongestion: expected = "congestion"; break;
        case plpdim::StudyType::kDimension: expected = "dimension"; break;
        case plpdim::StudyType::kCompare: expected = "compare"; break;
        case plpdim::StudyType::kRegions: expected = "regions"; break;
    }
    if (name != expected)
        throw std::invalid_argument("scenario study.type is '" + std::string(expected) +
                                    "' but subcommand is '" + name + "'");

    if (opts.seed_set) ls.scenario.est.seed = opts.seed;
    if (opts.realizations > 0) ls.scenario.est.n_realizations = opts.realizations;
    ls.scenario.est.threads = opts.threads;
    plpdim::scenario::rehash(ls);

    if (!opts.quiet)
        std::cerr << "plpdim " << name << ": " << ls.scenario.est.n_realizations
                  << " realizations, seed " << ls.scenario.est.seed << ", " << opts.threads
                  << " thread(s)\n";

    const std::string csv = plpdim::scenario::run_study(name, ls);
    if (opts.out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file '" + opts.out_path + "'");
        out << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PRB dimensioning for cells with road-bound users (Cox process on a PLP)"};
    app.require_subcommand(1);

    CommonOpts opts[4];
    const char* names[4] = {"congestion", "dimension", "compare", "regions"};
    const char* descs[4] = {
        "Congestion probability vs M: analytic average and Monte Carlo",
        "Minimal PRB count M solving Pi(M) = Pi* over a traffic grid",
        "Cox-vs-spatial-PPP congestion comparison over an M grid",
        "Per-region dimensioning plus interference on/off comparison"};
    CLI::App* cmds[4];
    for (int i = 0; i < 4; ++i) {
        cmds[i] = app.add_subcommand(names[i], descs[i]);
        add_common(cmds[i], opts[i]);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (int i = 0; i < 4; ++i)
            if (cmds[i]->parsed()) return run(names[i], opts[i]);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 1;
}
