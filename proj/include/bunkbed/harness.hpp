#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bunkbed/graph.hpp"
#include "bunkbed/numbers.hpp"

namespace bunkbed::harness {

using json = nlohmann::json;

// --- exhaustive small-graph family -----------------------------------------

// Canonical form of the adjacency relation: 1-WL color refinement followed
// by minimization of the adjacency bitmask over color-respecting vertex
// orders. Equal for isomorphic graphs, distinct otherwise. n <= 10.
std::uint64_t canonical_adjacency_mask(const BaseGraph& graph);

// All connected graphs on exactly n vertices up to isomorphism, one
// representative each (the first encountered in edge-mask order).
std::vector<BaseGraph> all_connected_graphs(int n);

// --- experiment configuration ----------------------------------------------

enum class FamilyKind { fixed_file, random_graphs, exhaustive, complete_range, path_range, cycle_range };

struct FamilySpec {
    FamilyKind kind = FamilyKind::random_graphs;
    std::string path;              // fixed_file
    int n_min = 3;
    int n_max = 6;
    double edge_probability = 0.5; // random_graphs
};

// Parses the CLI `--family` string: "file:PATH", "random:n_min..n_max,p",
// "exhaustive:n_max", "complete:n_min..n_max", "path:n_min..n_max",
// "cycle:n_min..n_max".
FamilySpec parse_family_spec(const std::string& text);

struct ExperimentConfig {
    std::string suite; // theorem1 | theorem2 | ladder | complete | question1-search | question2-search
    FamilySpec family;
    std::uint64_t seed = 0;
    int trials = 100;
    std::vector<double> p_values = {1.5, 2.0, 3.0};
    double time_budget_seconds = 0.0;      // 0 = unlimited
    double per_trial_timeout_seconds = 0.0; // 0 = none; expired trials -> inconclusive
    bool record_runtime = false;            // runtime_ms breaks byte-determinism; opt-in
    int threads = 1;
    int weight_numerator_max = 16;
    int weight_denominator_max = 8;
};

ExperimentConfig parse_config(const json& j);        // throws ConfigError
ExperimentConfig read_config_file(const std::string& path);
json config_to_json(const ExperimentConfig& config);

// --- records -----------------------------------------------------------------

struct ResultRecord {
    std::string suite;
    long trial = 0;
    std::string digest;  // hash of the canonical instance serialization
    json quantities;
    std::string verdict; // holds | violated | inconclusive
    double runtime_ms = 0.0;
    json instance;       // replay payload; always set for violated records
    bool has_instance = false;
};

json record_to_json(const ResultRecord& record, bool include_runtime);

struct SuiteSummary {
    long holds = 0;
    long violated = 0;
    long inconclusive = 0;
    bool budget_exceeded = false;
};

struct SuiteRun {
    ExperimentConfig config;
    std::vector<ResultRecord> records;
    SuiteSummary summary;
};

inline constexpr const char* kToolVersion = "0.1.0";

// Theorem suites (theorem1, theorem2, ladder, complete) must hold; any
// "violated" there maps to exit code 1. Question suites collect data and
// never affect the exit code. 3 = time budget exceeded (partial results
// are still returned/persisted).
bool is_theorem_suite(const std::string& suite);
int exit_code(const SuiteRun& run);

// Runs every trial of the configured suite; deterministic given the config
// (records merged in trial order under threads > 1). Throws ConfigError.
SuiteRun run_suite(const ExperimentConfig& config);

// Convenience wrapper for the search subcommand: builds a question1-/
// question2-search config.
SuiteRun question_search(const std::string& which, const FamilySpec& family,
                         double time_budget_seconds = 0.0, std::uint64_t seed = 0);

// JSON-lines persistence: manifest line (config echo + version), one line
// per record, one trailing summary line.
void write_jsonl(const SuiteRun& run, std::ostream& out);
std::string to_jsonl(const SuiteRun& run);

// Re-runs the identified trial from the stored manifest config and compares
// quantities bit-for-bit (exact suites) or within 1e-8 per floating field
// (theorem2). Throws RecordNotFound / Mismatch / ParseError.
struct ReplayOutcome {
    ResultRecord stored;
    ResultRecord recomputed;
};
ReplayOutcome replay_file(const std::string& records_path, long trial_id);

} // namespace bunkbed::harness
