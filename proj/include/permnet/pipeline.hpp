#ifndef PERMNET_PIPELINE_HPP
#define PERMNET_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permnet/community.hpp"
#include "permnet/graph.hpp"
#include "permnet/greedy.hpp"
#include "permnet/io.hpp"
#include "permnet/metrics.hpp"

namespace permnet {

// How the experiment picks its target community out of the detected
// partition: the largest community, an explicit index, or the community
// best matching a set of node labels.
struct TargetSelector {
    enum class Kind { Largest, Index, Nodes };
    Kind kind = Kind::Largest;
    int index = 0;
    std::vector<std::string> labels;

    // "largest" | "index:K" | "nodes:a,b,c"
    static TargetSelector parse(const std::string& text);
    std::string describe() const;
};

// Oracle mode hands the recovery step the partition detected on the
// original graph; redetect mode re-runs the detector on the hidden graph
// and maps the target over by best member overlap.
enum class RecoveryMode { Oracle, Redetect };

struct ExperimentConfig {
    std::string graph_path;
    std::optional<GraphFormat> format;  // inferred from the extension when unset
    std::string detector = "louvain";
    std::uint64_t seed = 1;
    TargetSelector target;
    double budget_frac = 0.3;
    RecoveryMode mode = RecoveryMode::Oracle;
    double energy = 0.9;
    Execution exec = Execution::Parallel;
    std::string dataset_name;  // defaults to the file stem
};

// Metrics for one graph state, always evaluated against a partition
// re-detected on that state with the configured detector and seed.
struct StateReport {
    std::string tag;
    int edges = 0;
    int communities = 0;
    MetricsRow metrics;
    double graph_permanence = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<std::string> target_members;
    int budget = 0;
    StateReport original, hidden, recovered;
    SpectralDistance dist_hidden;     // original vs hidden
    SpectralDistance dist_recovered;  // original vs recovered
    std::vector<EditLogEntry> deception_log;
    std::vector<EditLogEntry> recovery_log;
    // the three graph states, kept so callers can write them out or replay logs
    Graph graph_original, graph_hidden, graph_recovered;
    double wall_seconds = 0.0;  // informational; kept out of canonical JSON
};

// max(1, round-half-up(fraction * target_size)).
int compute_budget(std::size_t target_size, double fraction);

// Selector -> community index of cs. Throws when the index is out of range
// or a named node is unknown.
int resolve_target(const Graph& g, const CommunityStructure& cs, const TargetSelector& sel);

// Full experiment: load, detect, hide, recover, re-detect per state,
// evaluate, measure spectral distances. Deterministic given the config.
ExperimentReport run_pipeline(const ExperimentConfig& config);

struct SweepOutcome {
    std::vector<ExperimentReport> reports;
    std::vector<std::string> errors;  // "<dataset>/<detector>/seed=<s>: message"
    std::string aggregate_csv;
};

// Independent pipeline runs; per-config failures are recorded and the batch
// continues. The CSV holds one row per successful run plus mean/stddev rows
// per (dataset, detector) group.
SweepOutcome sweep(const std::vector<ExperimentConfig>& configs);

// Canonical machine-readable report: fixed key order, no timings —
// byte-identical across runs with identical configs.
std::string report_to_json(const ExperimentReport& r);

// Human-readable table in the style metrics tables are usually printed:
// rows M/C/PQ, one column per graph state.
std::string report_to_text(const ExperimentReport& r);

// Edit log as a JSON array of {iter, action, u, v, <delta_key>} with node
// labels; delta_key is "p_loss" for hiding runs and "p_gain" for recovery.
std::string edit_log_to_json(const std::vector<EditLogEntry>& log, const Graph& g,
                             const std::string& delta_key);

// Apply a serialized edit log to g in order; the exact inverse of the runs
// that produced it (replaying a hiding log on G yields G′, and so on).
Graph replay_edit_log(const Graph& g, const std::string& json_text);

}  // namespace permnet

#endif
