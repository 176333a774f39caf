#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sclplan/bench/metrics.hpp"
#include "sclplan/control/controller.hpp"
#include "sclplan/llm/synthetic.hpp"

namespace sclplan::bench {

// Parsed form of the --backend descriptor. Grammar:
//   scripted:PATH              replay a recorded JSONL script
//   synthetic:GRADE[:SEED]     offline stand-in model (weak|medium|strong|
//                              stochastic), seeded from SEED or the run seed
//   live                       HTTP backend configured via LLM_API_* env
//   record:PATH[:INNER]        run INNER (default live) and record a script
struct BackendSpec {
    enum class Kind { Scripted, Synthetic, Live };

    Kind kind = Kind::Synthetic;
    std::string script_path;                // Scripted
    llm::Grade grade = llm::Grade::Strong;  // Synthetic
    std::optional<uint64_t> grade_seed;     // Synthetic, explicit SEED part
    std::string record_path;  // non-empty: record every completion here
    std::string descriptor;   // the text this was parsed from

    static BackendSpec parse(const std::string& text);  // throws ConfigError
};

struct RunConfig {
    std::string fixtures_root = "fixtures";
    std::string suite;  // simple | complex | robot
    control::Mode mode = control::Mode::SCLPlan;
    std::string backend = "synthetic:strong";
    int repeats = 1;
    // 0 runs every task; a smaller positive value runs a seed-chosen subset,
    // the repeatability protocol's "sample 10 tasks".
    int sample = 0;
    uint64_t seed = 0;
    int jobs = 1;
    std::string out_dir;  // empty: compute only, write nothing
    control::Budgets budgets;
};

struct EpisodeRow {
    std::string task_id;
    int repeat = 0;
    uint64_t env_seed = 0;
    // Seed handed to a synthetic backend for this episode; zero for backends
    // that have no seed of their own.
    uint64_t llm_seed = 0;
    control::EpisodeResult result;
};

struct SuiteRun {
    RunConfig config;
    // Ordered by task position in the suite, then repeat index, regardless
    // of how many jobs executed them.
    std::vector<EpisodeRow> rows;

    std::vector<control::EpisodeResult> results() const;
    Metrics metrics() const { return aggregate(results()); }
};

// Runs repeats x tasks episodes, in parallel when config.jobs > 1, and
// writes outputs under config.out_dir when set. Seeds derive from the run
// seed and the task id, so results do not depend on job count or ordering.
// Throws ConfigError for impossible setups and BackendError when the live
// backend cannot be reached.
SuiteRun run_suite(const RunConfig& config);

// Persists episodes.csv, metrics.csv, metrics.txt, and one JSONL transcript
// per episode under transcripts/. Byte-identical for identical runs.
void write_outputs(const SuiteRun& run);

}  // namespace sclplan::bench
