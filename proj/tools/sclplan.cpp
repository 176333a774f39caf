// Command-line front end: run benchmark suites, diff two runs, and poke at
// PDDL inputs directly. Exit codes: 0 success, 1 general failure (including
// an unsolvable `solve`), 2 configuration problems, 3 backend problems.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sclplan/bench/report.hpp"
#include "sclplan/bench/runner.hpp"
#include "sclplan/pddl/errors.hpp"
#include "sclplan/pddl/ground.hpp"
#include "sclplan/pddl/parser.hpp"
#include "sclplan/search/solve.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw sclplan::bench::ConfigError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int do_run(sclplan::bench::RunConfig config, const std::string& mode) {
    auto parsed = sclplan::control::mode_from_name(mode);
    if (!parsed)
        throw sclplan::bench::ConfigError(
            "unknown mode '" + mode +
            "' (expected react, react-pv, sclplan, or symbolic)");
    config.mode = *parsed;
    sclplan::bench::SuiteRun run = sclplan::bench::run_suite(config);
    sclplan::bench::RunInfo info{config.suite, mode, config.backend,
                                 config.seed};
    std::cout << sclplan::bench::metrics_text(info, run.metrics());
    if (!config.out_dir.empty())
        std::cout << "\nwrote episodes.csv, metrics.csv, metrics.txt, and "
                  << run.rows.size() << " transcripts under " << config.out_dir
                  << "\n";
    return 0;
}

int do_report(const std::string& baseline, const std::string& candidate) {
    std::cout << sclplan::bench::delta_report(
        sclplan::bench::read_csv(baseline), sclplan::bench::read_csv(candidate));
    return 0;
}

int do_validate_domain(const std::string& path) {
    try {
        sclplan::pddl::Domain d = sclplan::pddl::parse_domain(read_file(path));
        std::cout << "domain '" << d.name << "' ok: " << d.types.size()
                  << " types, " << d.predicates.size() << " predicates, "
                  << d.actions.size() << " actions\n";
        return 0;
    } catch (const sclplan::pddl::ParseError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return 1;
    } catch (const sclplan::pddl::SemanticError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return 1;
    }
}

int do_solve(const std::string& domain_path, const std::string& problem_path) {
    sclplan::pddl::Domain domain =
        sclplan::pddl::parse_domain(read_file(domain_path));
    sclplan::pddl::Problem problem =
        sclplan::pddl::parse_problem(read_file(problem_path), domain);
    sclplan::pddl::StripsTask task = sclplan::pddl::ground(domain, problem);
    sclplan::search::SolveOutcome out = sclplan::search::solve(task);
    if (out.solved()) {
        for (int idx : out.plan.actions)
            std::cout << task.actions[idx].display() << "\n";
        std::cerr << "plan of " << out.plan.actions.size() << " steps, "
                  << out.nodes << " states generated\n";
        return 0;
    }
    std::cerr << (out.kind == sclplan::search::OutcomeKind::Unsolvable
                      ? "unsolvable"
                      : "search budget exhausted")
              << " after " << out.nodes << " states\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid symbolic/LLM planner benchmark"};
    app.require_subcommand(1);

    sclplan::bench::RunConfig config;
    std::string mode = "sclplan";
    CLI::App* run = app.add_subcommand("run", "run one suite in one mode");
    run->add_option("--suite", config.suite, "simple | complex | robot")
        ->required();
    run->add_option("--mode", mode, "react | react-pv | sclplan | symbolic")
        ->required();
    run->add_option("--backend", config.backend,
                    "scripted:PATH | synthetic:GRADE[:SEED] | live | "
                    "record:PATH[:INNER]")
        ->capture_default_str();
    run->add_option("--repeats", config.repeats, "episodes per task")
        ->capture_default_str();
    run->add_option("--sample", config.sample,
                    "run only this many seed-chosen tasks (0 = all)")
        ->capture_default_str();
    run->add_option("--seed", config.seed, "run seed")->capture_default_str();
    run->add_option("--jobs", config.jobs, "parallel episodes")
        ->capture_default_str();
    run->add_option("--out", config.out_dir, "directory for result files");
    run->add_option("--fixtures", config.fixtures_root,
                    "fixture tree with suites/, layouts/, domains/")
        ->capture_default_str();
    run->add_option("--max-llm-calls", config.budgets.max_llm_calls,
                    "completion call budget per episode")
        ->capture_default_str();
    run->add_option("--max-steps", config.budgets.max_steps,
                    "step budget per episode (0 = task default)")
        ->capture_default_str();

    std::string baseline, candidate;
    CLI::App* report =
        app.add_subcommand("report", "signed metric deltas between two runs");
    report->add_option("--baseline", baseline, "metrics.csv of the baseline")
        ->required();
    report->add_option("--candidate", candidate, "metrics.csv to compare")
        ->required();

    std::string domain_file;
    CLI::App* vd = app.add_subcommand("validate-domain",
                                      "parse a PDDL domain and report issues");
    vd->add_option("file", domain_file, "domain file")->required();

    std::string solve_domain, solve_problem;
    CLI::App* solve =
        app.add_subcommand("solve", "plan for one domain/problem pair");
    solve->add_option("--domain", solve_domain)->required();
    solve->add_option("--problem", solve_problem)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return do_run(config, mode);
        if (report->parsed()) return do_report(baseline, candidate);
        if (vd->parsed()) return do_validate_domain(domain_file);
        if (solve->parsed()) return do_solve(solve_domain, solve_problem);
    } catch (const sclplan::bench::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const sclplan::bench::BackendError& e) {
        std::cerr << "backend error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
