#include "mdl/experiments/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "mdl/complexity/table_io.hpp"
#include "mdl/environments/environment.hpp"
#include "mdl/environments/sampling.hpp"
#include "mdl/experiments/experiments.hpp"
#include "mdl/experiments/report.hpp"
#include "mdl/machines/machine.hpp"
#include "mdl/predict/predictor.hpp"

namespace mdl {

namespace {

struct CliOptions {
    std::string machine = "R";
    std::size_t budget_l = 14;
    StepBudget budget_s = 4096;
    std::optional<std::size_t> horizon;
    std::size_t s = 6;
    std::string eps = "1/24";
    std::uint64_t seed = 1;
    std::size_t seeds = 8;
    std::string out = "mdl-out";
    std::optional<std::string> cache;
    unsigned threads = 1;
    std::string env = "bern:3/8";
    std::string source = "m";
    std::string experiment;
};

ExperimentConfig to_config(const CliOptions& o, std::string id) {
    ExperimentConfig c;
    c.id = std::move(id);
    c.machine = o.machine;
    c.budget = {o.budget_l, o.budget_s};
    c.horizon = o.horizon;
    c.s = o.s;
    c.eps = ExactRational::parse(o.eps);
    c.seed = o.seed;
    c.seeds = o.seeds;
    c.out = o.out;
    if (o.cache) c.cache = *o.cache;
    c.threads = o.threads;
    return c;
}

TablePtr table_for(const ExperimentConfig& c, std::size_t depth) {
    TableSource tables(c.cache, c.threads);
    return tables.get(c.machine, c.budget, depth);
}

int cmd_enumerate(const ExperimentConfig& c) {
    validate(c.budget);
    std::filesystem::create_directories(c.out);
    write_manifest(c, c.out / "manifest.txt");
    const auto machine = make_machine(c.machine);
    const auto records = enumerate(*machine, c.budget, c.threads);
    CsvWriter csv(c.out / "programs.csv", {"program", "output", "consumed", "halted", "steps", "exhausted"});
    std::size_t halting = 0;
    for (const auto& r : records) {
        if (r.halted && !r.redundant()) ++halting;
        csv.row({csv_string(r.program), csv_string(r.output), std::to_string(r.consumed), r.halted ? "1" : "0",
                 std::to_string(r.steps), r.exhausted ? "1" : "0"});
    }
    std::cout << machine->descriptor() << ": " << records.size() << " programs, " << halting
              << " consumed-halting, written to " << (c.out / "programs.csv").string() << '\n';
    return 0;
}

int cmd_table(const ExperimentConfig& c) {
    validate(c.budget);
    std::filesystem::create_directories(c.out);
    write_manifest(c, c.out / "manifest.txt");
    const auto table = table_for(c, c.horizon_or(8));
    table_export_csv(*table, c.out / "table.csv");
    std::cout << table->entries().size() << " entries written to " << (c.out / "table.csv").string() << '\n';
    return 0;
}

int cmd_predict(const ExperimentConfig& c, const CliOptions& o) {
    validate(c.budget);
    std::filesystem::create_directories(c.out);
    write_manifest(c, c.out / "manifest.txt");
    const auto table = table_for(c, 8);
    PredictiveFunction source = o.source == "bigM" ? bigM_from_table(table)
                                : o.source == "k"  ? k_from_table(table)
                                                   : m_from_table(table);
    const auto env = make_environment(o.env);
    const auto n = std::min(c.horizon_or(16), env.max_length());
    const auto x = sample(env, n, c.seed);
    const auto trace = loss_trace(normalize(source), as_predictive(env), LossMatrix::error_loss(), x);
    CsvWriter csv(c.out / "predictions.csv",
                  {"t", "context", "x_t", "b_posterior_1", "mu_posterior_1", "action_b", "action_mu", "loss_b",
                   "loss_mu"});
    ExactRational total_b, total_mu;
    for (const auto& r : trace) {
        total_b += r.loss_b;
        total_mu += r.loss_mu;
        csv.row({std::to_string(r.t), csv_string(r.context), std::to_string(x[r.t - 1]), r.b_posterior[1].str(),
                 r.mu_posterior[1].str(), std::to_string(r.action_b), std::to_string(r.action_mu), r.loss_b.str(),
                 r.loss_mu.str()});
    }
    std::cout << "sequence " << x << "\ncumulative expected error: " << source.descriptor() << "_norm "
              << total_b << ", mu " << total_mu << '\n';
    return 0;
}

int cmd_experiments(const ExperimentConfig& c) {
    const auto start = std::chrono::steady_clock::now();
    const auto verdicts = run_suite(c);
    bool all = true;
    for (const auto& v : verdicts) {
        all = all && v.pass;
        std::cout << (v.pass ? "PASS " : "FAIL ") << v.experiment << '\n';
        for (const auto& w : v.witnesses) std::cout << "    " << w.name << " = " << w.value << '\n';
        for (const auto& note : v.notes) std::cout << "    note: " << note << '\n';
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cout << (all ? "all verdicts pass" : "some verdicts fail") << " (" << elapsed.count() << " s), see "
              << (c.out / "verdicts.csv").string() << '\n';
    return all ? 0 : 1;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"Resource-bounded algorithmic probability lab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.failure_message(CLI::FailureMessage::help);
    CliOptions o;
    app.add_option("--machine", o.machine, "Machine descriptor: R or U:s=<n>")->capture_default_str();
    app.add_option("--budget-l", o.budget_l, "Maximum program length L")->capture_default_str();
    app.add_option("--budget-s", o.budget_s, "Step budget S per program")->capture_default_str();
    app.add_option("--horizon", o.horizon, "Horizon n (default: per command)");
    app.add_option("--s", o.s, "Block size s")->capture_default_str();
    app.add_option("--eps", o.eps, "Loss perturbation as num/den")->capture_default_str();
    app.add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
    app.add_option("--seeds", o.seeds, "Number of sampled paths")->capture_default_str();
    app.add_option("--out", o.out, "Output directory")->capture_default_str();
    app.add_option("--cache", o.cache, "Complexity table cache directory");
    app.add_option("--threads", o.threads, "Enumeration worker threads")->capture_default_str();

    auto* enumerate_cmd = app.add_subcommand("enumerate", "Run every program up to the budget");
    auto* table_cmd = app.add_subcommand("table", "Export Km, K and M up to the horizon as CSV");
    auto* predict_cmd = app.add_subcommand("predict", "Error-loss predictions along a sampled sequence");
    predict_cmd->add_option("--env", o.env, "Environment descriptor")->capture_default_str();
    predict_cmd->add_option("--source", o.source, "Predictive function: m, k or bigM")
        ->check(CLI::IsMember({"m", "k", "bigM"}))
        ->capture_default_str();
    auto* experiment_cmd = app.add_subcommand("experiment", "Run one experiment, or all");
    std::vector<std::string> ids = experiment_ids();
    ids.push_back("all");
    experiment_cmd->add_option("id", o.experiment, "Experiment id")->required()->check(CLI::IsMember(ids));
    auto* all_cmd = app.add_subcommand("all", "Run the full experiment suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*enumerate_cmd) return cmd_enumerate(to_config(o, "enumerate"));
        if (*table_cmd) return cmd_table(to_config(o, "table"));
        if (*predict_cmd) return cmd_predict(to_config(o, "predict"), o);
        if (*experiment_cmd) return cmd_experiments(to_config(o, o.experiment));
        if (*all_cmd) return cmd_experiments(to_config(o, "all"));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace mdl
