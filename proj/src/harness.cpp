#include "bunkbed/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>

#include "bunkbed/closedform.hpp"
#include "bunkbed/graph_io.hpp"
#include "bunkbed/maxflow.hpp"
#include "bunkbed/network.hpp"
#include "bunkbed/presistance.hpp"
#include "bunkbed/saw.hpp"

namespace bunkbed::harness {

namespace {

using Clock = std::chrono::steady_clock;

std::string family_kind_name(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::fixed_file: return "file";
    case FamilyKind::random_graphs: return "random";
    case FamilyKind::exhaustive: return "exhaustive";
    case FamilyKind::complete_range: return "complete";
    case FamilyKind::path_range: return "path";
    case FamilyKind::cycle_range: return "cycle";
    }
    return "?";
}

FamilyKind family_kind_from_name(const std::string& name) {
    if (name == "file") return FamilyKind::fixed_file;
    if (name == "random") return FamilyKind::random_graphs;
    if (name == "exhaustive") return FamilyKind::exhaustive;
    if (name == "complete") return FamilyKind::complete_range;
    if (name == "path") return FamilyKind::path_range;
    if (name == "cycle") return FamilyKind::cycle_range;
    throw ConfigError("unknown family kind: " + name);
}

} // namespace

FamilySpec parse_family_spec(const std::string& text) {
    FamilySpec spec;
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    spec.kind = family_kind_from_name(kind);
    if (spec.kind == FamilyKind::fixed_file) {
        if (rest.empty()) throw ConfigError("file family needs a path");
        spec.path = rest;
        return spec;
    }
    if (rest.empty()) return spec;
    // "n_min..n_max[,p]" or "n_max"
    std::string range = rest;
    if (spec.kind == FamilyKind::random_graphs) {
        const auto comma = rest.find(',');
        if (comma != std::string::npos) {
            range = rest.substr(0, comma);
            try {
                spec.edge_probability = std::stod(rest.substr(comma + 1));
            } catch (const std::exception&) {
                throw ConfigError("bad edge probability in family spec");
            }
        }
    }
    try {
        const auto dots = range.find("..");
        if (dots == std::string::npos) {
            spec.n_max = std::stoi(range);
            spec.n_min = spec.kind == FamilyKind::exhaustive ? 2 : spec.n_max;
        } else {
            spec.n_min = std::stoi(range.substr(0, dots));
            spec.n_max = std::stoi(range.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw ConfigError("bad range in family spec: " + text);
    }
    return spec;
}

namespace {

FamilySpec default_family(const std::string& suite) {
    FamilySpec family;
    if (suite == "theorem1") {
        family.kind = FamilyKind::random_graphs;
        family.n_min = 3;
        family.n_max = 8;
    } else if (suite == "theorem2") {
        family.kind = FamilyKind::random_graphs;
        family.n_min = 3;
        family.n_max = 7;
    } else if (suite == "ladder") {
        family.kind = FamilyKind::path_range;
        family.n_min = 2;
        family.n_max = 8;
    } else if (suite == "complete") {
        family.kind = FamilyKind::complete_range;
        family.n_min = 3;
        family.n_max = 6;
    } else {
        family.kind = FamilyKind::exhaustive;
        family.n_min = 2;
        family.n_max = 6;
    }
    return family;
}

const std::vector<std::string> kSuites = {"theorem1", "theorem2",         "ladder",
                                          "complete", "question1-search", "question2-search"};

} // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig config;
    if (!j.contains("suite") || !j["suite"].is_string()) throw ConfigError("missing suite");
    config.suite = j["suite"].get<std::string>();
    if (std::find(kSuites.begin(), kSuites.end(), config.suite) == kSuites.end())
        throw ConfigError("unknown suite: " + config.suite);
    config.family = default_family(config.suite);
    try {
        if (j.contains("family")) {
            const auto& f = j["family"];
            if (f.is_string()) {
                config.family = parse_family_spec(f.get<std::string>());
            } else if (f.is_object()) {
                if (f.contains("kind"))
                    config.family.kind = family_kind_from_name(f["kind"].get<std::string>());
                if (f.contains("path")) config.family.path = f["path"].get<std::string>();
                if (f.contains("n_min")) config.family.n_min = f["n_min"].get<int>();
                if (f.contains("n_max")) config.family.n_max = f["n_max"].get<int>();
                if (f.contains("edge_probability"))
                    config.family.edge_probability = f["edge_probability"].get<double>();
            } else {
                throw ConfigError("family must be a string or object");
            }
        }
        if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("trials")) config.trials = j["trials"].get<int>();
        if (j.contains("p_values")) config.p_values = j["p_values"].get<std::vector<double>>();
        if (j.contains("time_budget_seconds"))
            config.time_budget_seconds = j["time_budget_seconds"].get<double>();
        if (j.contains("per_trial_timeout_seconds"))
            config.per_trial_timeout_seconds = j["per_trial_timeout_seconds"].get<double>();
        if (j.contains("record_runtime")) config.record_runtime = j["record_runtime"].get<bool>();
        if (j.contains("threads")) config.threads = j["threads"].get<int>();
        if (j.contains("weight_numerator_max"))
            config.weight_numerator_max = j["weight_numerator_max"].get<int>();
        if (j.contains("weight_denominator_max"))
            config.weight_denominator_max = j["weight_denominator_max"].get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    }
    if (config.trials < 0) throw ConfigError("trials must be >= 0");
    if (config.threads < 1) throw ConfigError("threads must be >= 1");
    if (config.family.n_min < 1 || config.family.n_max < config.family.n_min)
        throw ConfigError("bad family range");
    for (double p : config.p_values)
        if (!(p > 1.0)) throw ConfigError("p values must be > 1");
    if (config.weight_numerator_max < 1 || config.weight_denominator_max < 1)
        throw ConfigError("weight bounds must be >= 1");
    return config;
}

ExperimentConfig read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    return parse_config(j);
}

json config_to_json(const ExperimentConfig& config) {
    json family = {{"kind", family_kind_name(config.family.kind)},
                   {"n_min", config.family.n_min},
                   {"n_max", config.family.n_max}};
    if (config.family.kind == FamilyKind::random_graphs)
        family["edge_probability"] = config.family.edge_probability;
    if (config.family.kind == FamilyKind::fixed_file) family["path"] = config.family.path;
    return json{{"suite", config.suite},
                {"family", family},
                {"seed", config.seed},
                {"trials", config.trials},
                {"p_values", config.p_values},
                {"time_budget_seconds", config.time_budget_seconds},
                {"per_trial_timeout_seconds", config.per_trial_timeout_seconds},
                {"record_runtime", config.record_runtime},
                {"threads", config.threads},
                {"weight_numerator_max", config.weight_numerator_max},
                {"weight_denominator_max", config.weight_denominator_max}};
}

json record_to_json(const ResultRecord& record, bool include_runtime) {
    json j{{"suite", record.suite},
           {"trial", record.trial},
           {"digest", record.digest},
           {"quantities", record.quantities},
           {"verdict", record.verdict}};
    if (record.has_instance) j["instance"] = record.instance;
    if (include_runtime) j["runtime_ms"] = record.runtime_ms;
    return j;
}

bool is_theorem_suite(const std::string& suite) {
    return suite == "theorem1" || suite == "theorem2" || suite == "ladder" || suite == "complete";
}

int exit_code(const SuiteRun& run) {
    if (is_theorem_suite(run.config.suite) && run.summary.violated > 0) return 1;
    if (run.summary.budget_exceeded) return 3;
    return 0;
}

// ---------------------------------------------------------------------------
// work items and per-suite executors

namespace {

struct WorkItem {
    long trial = 0;
    std::optional<BaseGraph> graph; // question suites / pooled families
    int u = -1, v = -1;             // pair suites
    int n = 0;                      // ladder / complete
};

std::vector<BaseGraph> family_pool(const FamilySpec& family) {
    std::vector<BaseGraph> pool;
    switch (family.kind) {
    case FamilyKind::fixed_file:
        pool.push_back(read_graph_file(family.path).graph);
        break;
    case FamilyKind::exhaustive:
        for (int n = family.n_min; n <= family.n_max; ++n)
            for (auto& g : all_connected_graphs(n)) pool.push_back(std::move(g));
        break;
    case FamilyKind::complete_range:
        for (int n = std::max(2, family.n_min); n <= family.n_max; ++n)
            pool.push_back(complete_graph(n));
        break;
    case FamilyKind::path_range:
        for (int n = std::max(1, family.n_min); n <= family.n_max; ++n)
            pool.push_back(path_graph(n));
        break;
    case FamilyKind::cycle_range:
        for (int n = std::max(3, family.n_min); n <= family.n_max; ++n)
            pool.push_back(cycle_graph(n));
        break;
    case FamilyKind::random_graphs:
        break; // generated per trial from the seed stream
    }
    return pool;
}

BaseGraph trial_graph(const ExperimentConfig& config, const std::vector<BaseGraph>& pool,
                      long trial, SplitMix64& rng) {
    if (!pool.empty()) return pool[trial % pool.size()];
    const int n = rng.next_int(std::max(2, config.family.n_min), config.family.n_max);
    return random_connected_graph(n, config.family.edge_probability, rng);
}

BunkbedWeights random_weights(const BaseGraph& base, SplitMix64& rng, const ExperimentConfig& config,
                              bool positive) {
    BunkbedWeights weights;
    for (int e = 0; e < base.edge_count(); ++e)
        weights.horizontal.push_back(
            positive ? random_positive_rational(rng, config.weight_numerator_max,
                                                config.weight_denominator_max)
                     : random_rational(rng, config.weight_numerator_max,
                                       config.weight_denominator_max));
    for (int v = 0; v < base.vertex_count(); ++v)
        weights.vertical.push_back(
            positive ? random_positive_rational(rng, config.weight_numerator_max,
                                                config.weight_denominator_max)
                     : random_rational(rng, config.weight_numerator_max,
                                       config.weight_denominator_max));
    return weights;
}

std::pair<int, int> random_pair(SplitMix64& rng, int n) {
    const int x = static_cast<int>(rng.next_below(n));
    int y = static_cast<int>(rng.next_below(n - 1));
    if (y >= x) ++y;
    return {x, y};
}

std::string instance_text(const BaseGraph& base, const BunkbedWeights& weights, int x, int y,
                          const char* tag) {
    std::string text = serialize_graph(base, &weights.horizontal, &weights.vertical);
    text += std::string(tag) + " " + std::to_string(x) + " " + std::to_string(y) + "\n";
    return text;
}

ResultRecord run_theorem1_trial(const ExperimentConfig& config, const std::vector<BaseGraph>& pool,
                                long trial) {
    SplitMix64 rng = SplitMix64::for_stream(config.seed, static_cast<std::uint64_t>(trial));
    const BaseGraph base = trial_graph(config, pool, trial, rng);
    const BunkbedWeights weights = random_weights(base, rng, config, /*positive=*/false);
    const auto [x, y] = random_pair(rng, base.vertex_count());

    const BunkbedGraph bunkbed(base);
    const CapacitatedNetwork network =
        make_bunkbed_network(bunkbed, weights, WeightRole::capacity);
    const auto report = maxflow::verify_flow_inequality(network, x, y);

    bool cut_check = true;
    if (2 * base.vertex_count() <= 12) {
        cut_check =
            maxflow::exhaustive_min_cut(network, bunkbed.vertex_id(x, 0), bunkbed.vertex_id(y, 0)) ==
                report.mf00 &&
            maxflow::exhaustive_min_cut(network, bunkbed.vertex_id(x, 0), bunkbed.vertex_id(y, 1)) ==
                report.mf01;
    }

    ResultRecord record;
    record.suite = config.suite;
    record.trial = trial;
    const std::string text = instance_text(base, weights, x, y, "pair");
    record.digest = digest_hex(text);
    record.quantities = {{"n", base.vertex_count()},      {"m", base.edge_count()},
                         {"x", x},                        {"y", y},
                         {"mf00", rational_to_string(report.mf00)},
                         {"mf01", rational_to_string(report.mf01)},
                         {"cut_check", cut_check}};
    record.verdict = (report.holds && cut_check) ? "holds" : "violated";
    if (record.verdict == "violated") {
        record.instance = {{"network", text}, {"x", x}, {"y", y}};
        record.has_instance = true;
    }
    return record;
}

ResultRecord run_theorem2_trial(const ExperimentConfig& config, const std::vector<BaseGraph>& pool,
                                long trial) {
    SplitMix64 rng = SplitMix64::for_stream(config.seed, static_cast<std::uint64_t>(trial));
    const BaseGraph base = trial_graph(config, pool, trial, rng);
    const BunkbedWeights weights = random_weights(base, rng, config, /*positive=*/true);
    const auto [x, y] = random_pair(rng, base.vertex_count());

    const BunkbedGraph bunkbed(base);
    const CapacitatedNetwork network =
        make_bunkbed_network(bunkbed, weights, WeightRole::resistance);

    bool all_hold = true;
    bool all_converged = true;
    json checks = json::array();
    for (double p : config.p_values) {
        const auto report =
            presistance::verify_p_resistance_inequality(network, x, y, presistance::PParameter(p));
        all_hold &= report.holds;
        all_converged &= report.both_converged;
        checks.push_back({{"p", p},
                          {"rp00", report.straight.r_p},
                          {"rp01", report.crossed.r_p},
                          {"gap00", report.straight.gap},
                          {"gap01", report.crossed.gap},
                          {"holds", report.holds},
                          {"converged", report.both_converged}});
    }

    ResultRecord record;
    record.suite = config.suite;
    record.trial = trial;
    const std::string text = instance_text(base, weights, x, y, "pair");
    record.digest = digest_hex(text);
    record.quantities = {{"n", base.vertex_count()}, {"m", base.edge_count()}, {"x", x}, {"y", y},
                         {"checks", checks}};
    record.verdict = !all_hold ? "violated" : (all_converged ? "holds" : "inconclusive");
    if (record.verdict == "violated") {
        record.instance = {{"network", text}, {"x", x}, {"y", y}};
        record.has_instance = true;
    }
    return record;
}

const char* ladder_case_name(saw::LadderCase c) {
    switch (c) {
    case saw::LadderCase::small_n_equal: return "small_n_equal";
    case saw::LadderCase::adjacent_interior: return "adjacent_interior";
    case saw::LadderCase::other_equal: return "other_equal";
    }
    return "?";
}

ResultRecord run_ladder_item(const ExperimentConfig& config, const WorkItem& item) {
    const saw::LadderPairReport r = saw::verify_ladder_pair(item.n, item.u, item.v);

    ResultRecord record;
    record.suite = config.suite;
    record.trial = item.trial;
    const std::string text = serialize_graph(path_graph(item.n)) + "pair " +
                             std::to_string(item.u) + " " + std::to_string(item.v) + "\n";
    record.digest = digest_hex(text);
    record.quantities = {{"n", item.n},
                         {"u", r.u},
                         {"v", r.v},
                         {"case", ladder_case_name(r.paper_case)},
                         {"expect_strict", r.expect_strict},
                         {"strict", r.strict},
                         {"total0", r.total0.str()},
                         {"total1", r.total1.str()},
                         {"s5_0", r.s5_0.str()},
                         {"s5_1", r.s5_1.str()},
                         {"formula_ok", r.formula_ok}};
    record.verdict = (r.matches_paper && r.formula_ok) ? "holds" : "violated";
    if (record.verdict == "violated") {
        record.instance = {{"graph", serialize_graph(path_graph(item.n))},
                           {"u", r.u},
                           {"v", r.v},
                           {"n", item.n}};
        record.has_instance = true;
    }
    return record;
}

ResultRecord run_complete_item(const ExperimentConfig& config, const WorkItem& item) {
    const int n = item.n;
    ResultRecord record;
    record.suite = config.suite;
    record.trial = item.trial;
    const std::string text = serialize_graph(complete_graph(n)) + "pair 0 1\n";
    record.digest = digest_hex(text);

    const saw::SawCensus counts = saw::census(complete_graph(n), 0, 1);
    bool classes_equal = true;
    for (int c = 0; c < 4; ++c) classes_equal &= counts.counts[0][c] == counts.counts[1][c];
    const BigInt total0 = counts.total(0), total1 = counts.total(1);

    bool formulas_ok = true;
    json quantities = {{"n", n},
                       {"total0", total0.str()},
                       {"total1", total1.str()},
                       {"s5_0", counts.counts[0][4].str()},
                       {"s5_1", counts.counts[1][4].str()},
                       {"classes_1_4_equal", classes_equal}};
    if (n >= 3) {
        const BigInt a = closedform::closed_form_A(n);
        const BigInt b = closedform::closed_form_B(n);
        formulas_ok = counts.counts[0][4] == a && counts.counts[1][4] == b;
        quantities["A_n"] = a.str();
        quantities["B_n"] = b.str();
    }
    const bool relation_ok = n == 2 ? total0 == total1 : total0 < total1;
    quantities["relation_ok"] = relation_ok;

    record.quantities = quantities;
    record.verdict = (classes_equal && formulas_ok && relation_ok) ? "holds" : "violated";
    if (record.verdict == "violated") {
        record.instance = {{"n", n}};
        record.has_instance = true;
    }
    return record;
}

ResultRecord run_question_item(const ExperimentConfig& config, const WorkItem& item) {
    const BaseGraph& base = *item.graph;
    ResultRecord record;
    record.suite = config.suite;
    record.trial = item.trial;
    const std::string graph_text = serialize_graph(base);
    const std::string text =
        graph_text + "pair " + std::to_string(item.u) + " " + std::to_string(item.v) + "\n";
    record.digest = digest_hex(text);

    saw::CensusOptions options;
    if (config.per_trial_timeout_seconds > 0)
        options.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                              std::chrono::duration<double>(
                                                  config.per_trial_timeout_seconds));
    const saw::SawCensus counts = saw::census(base, item.u, item.v, options);
    const bool adjacent = base.has_edge(item.u, item.v);
    const bool cut_edge = adjacent && is_cut_edge(base, item.u, item.v);
    const BigInt total0 = counts.total(0), total1 = counts.total(1);
    const bool flagged = total0 > total1;

    record.quantities = {{"n", base.vertex_count()},
                         {"m", base.edge_count()},
                         {"u", item.u},
                         {"v", item.v},
                         {"adjacent", adjacent},
                         {"cut_edge", cut_edge},
                         {"count00", total0.str()},
                         {"count01", total1.str()},
                         {"flagged", flagged}};
    record.verdict = counts.timed_out ? "inconclusive" : (flagged ? "violated" : "holds");
    record.instance = {{"graph", graph_text}, {"u", item.u}, {"v", item.v}};
    record.has_instance = true;
    return record;
}

std::vector<WorkItem> build_work_items(const ExperimentConfig& config,
                                       const std::vector<BaseGraph>& pool) {
    std::vector<WorkItem> items;
    long trial = 0;
    if (config.suite == "theorem1" || config.suite == "theorem2") {
        for (int t = 0; t < config.trials; ++t) {
            WorkItem item;
            item.trial = trial++;
            items.push_back(std::move(item));
        }
    } else if (config.suite == "ladder") {
        for (int n = std::max(1, config.family.n_min); n <= config.family.n_max; ++n)
            for (int u = 0; u <= n; ++u)
                for (int v = u + 1; v <= n; ++v) {
                    WorkItem item;
                    item.trial = trial++;
                    item.n = n;
                    item.u = u;
                    item.v = v;
                    items.push_back(std::move(item));
                }
    } else if (config.suite == "complete") {
        for (int n = std::max(2, config.family.n_min); n <= config.family.n_max; ++n) {
            WorkItem item;
            item.trial = trial++;
            item.n = n;
            items.push_back(std::move(item));
        }
    } else { // question searches
        std::vector<BaseGraph> graphs = pool;
        if (config.family.kind == FamilyKind::random_graphs) {
            for (int t = 0; t < config.trials; ++t) {
                SplitMix64 rng = SplitMix64::for_stream(config.seed, static_cast<std::uint64_t>(t));
                const int n = rng.next_int(std::max(2, config.family.n_min), config.family.n_max);
                graphs.push_back(random_connected_graph(n, config.family.edge_probability, rng));
            }
        }
        const bool q2 = config.suite == "question2-search";
        for (const BaseGraph& g : graphs) {
            for (int u = 0; u < g.vertex_count(); ++u)
                for (int v = u + 1; v < g.vertex_count(); ++v) {
                    if (q2 && g.has_edge(u, v) && is_cut_edge(g, u, v)) continue;
                    WorkItem item;
                    item.trial = trial++;
                    item.graph = g;
                    item.u = u;
                    item.v = v;
                    items.push_back(std::move(item));
                }
        }
    }
    return items;
}

ResultRecord execute_item(const ExperimentConfig& config, const std::vector<BaseGraph>& pool,
                          const WorkItem& item) {
    const auto start = Clock::now();
    ResultRecord record;
    if (config.suite == "theorem1")
        record = run_theorem1_trial(config, pool, item.trial);
    else if (config.suite == "theorem2")
        record = run_theorem2_trial(config, pool, item.trial);
    else if (config.suite == "ladder")
        record = run_ladder_item(config, item);
    else if (config.suite == "complete")
        record = run_complete_item(config, item);
    else
        record = run_question_item(config, item);
    record.runtime_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (config.per_trial_timeout_seconds > 0 &&
        record.runtime_ms > config.per_trial_timeout_seconds * 1000.0 &&
        record.verdict == "holds")
        record.verdict = "inconclusive";
    return record;
}

} // namespace

SuiteRun run_suite(const ExperimentConfig& config) {
    SuiteRun run;
    run.config = config;
    const std::vector<BaseGraph> pool =
        (config.suite == "ladder" || config.suite == "complete") ? std::vector<BaseGraph>{}
                                                                 : family_pool(config.family);
    const std::vector<WorkItem> items = build_work_items(config, pool);

    const auto started = Clock::now();
    const auto out_of_budget = [&] {
        if (config.time_budget_seconds <= 0) return false;
        return std::chrono::duration<double>(Clock::now() - started).count() >
               config.time_budget_seconds;
    };

    std::size_t next = 0;
    while (next < items.size()) {
        if (out_of_budget()) {
            run.summary.budget_exceeded = true;
            break;
        }
        if (config.threads <= 1) {
            run.records.push_back(execute_item(config, pool, items[next++]));
        } else {
            const std::size_t batch =
                std::min<std::size_t>(config.threads, items.size() - next);
            std::vector<std::future<ResultRecord>> futures;
            futures.reserve(batch);
            for (std::size_t i = 0; i < batch; ++i)
                futures.push_back(std::async(std::launch::async, execute_item, std::cref(config),
                                             std::cref(pool), std::cref(items[next + i])));
            for (auto& future : futures) run.records.push_back(future.get());
            next += batch;
        }
    }

    for (const auto& record : run.records) {
        if (record.verdict == "holds")
            ++run.summary.holds;
        else if (record.verdict == "violated")
            ++run.summary.violated;
        else
            ++run.summary.inconclusive;
    }
    return run;
}

SuiteRun question_search(const std::string& which, const FamilySpec& family,
                         double time_budget_seconds, std::uint64_t seed) {
    ExperimentConfig config;
    if (which == "q1" || which == "question1" || which == "question1-search")
        config.suite = "question1-search";
    else if (which == "q2" || which == "question2" || which == "question2-search")
        config.suite = "question2-search";
    else
        throw ConfigError("unknown question: " + which);
    config.family = family;
    config.time_budget_seconds = time_budget_seconds;
    config.seed = seed;
    return run_suite(config);
}

void write_jsonl(const SuiteRun& run, std::ostream& out) {
    json manifest{{"kind", "manifest"},
                  {"tool", "bunkbed-lab"},
                  {"version", kToolVersion},
                  {"config", config_to_json(run.config)}};
    out << manifest.dump() << '\n';
    for (const auto& record : run.records)
        out << record_to_json(record, run.config.record_runtime).dump() << '\n';
    json summary{{"kind", "summary"},
                 {"holds", run.summary.holds},
                 {"violated", run.summary.violated},
                 {"inconclusive", run.summary.inconclusive},
                 {"budget_exceeded", run.summary.budget_exceeded}};
    out << summary.dump() << '\n';
}

std::string to_jsonl(const SuiteRun& run) {
    std::ostringstream out;
    write_jsonl(run, out);
    return out.str();
}

namespace {

bool json_close(const json& a, const json& b, double tol) {
    if (a.is_number_float() || b.is_number_float()) {
        if (!a.is_number() || !b.is_number()) return false;
        const double x = a.get<double>();
        const double y = b.get<double>();
        return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
    }
    if (a.is_object()) {
        if (!b.is_object() || a.size() != b.size()) return false;
        for (auto it = a.begin(); it != a.end(); ++it)
            if (!b.contains(it.key()) || !json_close(it.value(), b[it.key()], tol)) return false;
        return true;
    }
    if (a.is_array()) {
        if (!b.is_array() || a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!json_close(a[i], b[i], tol)) return false;
        return true;
    }
    return a == b;
}

} // namespace

ReplayOutcome replay_file(const std::string& records_path, long trial_id) {
    std::ifstream in(records_path);
    if (!in) throw ParseError("cannot open " + records_path);
    std::string line;
    std::optional<ExperimentConfig> config;
    std::optional<json> stored;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad record line: ") + e.what());
        }
        if (j.contains("kind") && j["kind"] == "manifest") {
            config = parse_config(j.at("config"));
        } else if (j.contains("trial") && j["trial"].get<long>() == trial_id) {
            stored = j;
        }
    }
    if (!config) throw ParseError("no manifest line in " + records_path);
    if (!stored) throw RecordNotFound("no record with trial " + std::to_string(trial_id));

    ReplayOutcome outcome;
    outcome.stored.suite = (*stored)["suite"].get<std::string>();
    outcome.stored.trial = trial_id;
    outcome.stored.digest = (*stored)["digest"].get<std::string>();
    outcome.stored.quantities = (*stored)["quantities"];
    outcome.stored.verdict = (*stored)["verdict"].get<std::string>();

    const std::vector<BaseGraph> pool =
        (config->suite == "ladder" || config->suite == "complete") ? std::vector<BaseGraph>{}
                                                                   : family_pool(config->family);
    const std::vector<WorkItem> items = build_work_items(*config, pool);
    if (trial_id < 0 || trial_id >= static_cast<long>(items.size()))
        throw RecordNotFound("trial " + std::to_string(trial_id) + " outside the config's range");
    outcome.recomputed = execute_item(*config, pool, items[trial_id]);

    if (outcome.recomputed.digest != outcome.stored.digest)
        throw Mismatch("instance digest mismatch (stored " + outcome.stored.digest +
                       ", recomputed " + outcome.recomputed.digest + ")");
    const bool exact = config->suite != "theorem2";
    const bool same =
        exact ? outcome.recomputed.quantities == outcome.stored.quantities
              : json_close(outcome.recomputed.quantities, outcome.stored.quantities, 1e-8);
    if (!same) throw Mismatch("quantities differ on replay");
    if (outcome.recomputed.verdict != outcome.stored.verdict)
        throw Mismatch("verdict differs on replay");
    return outcome;
}

} // namespace bunkbed::harness
