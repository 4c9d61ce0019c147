// Command-line front end: detect communities, score permanence, hide and
// recover a target community, evaluate metrics, and drive whole experiment
// batches. Errors leave as machine-readable JSON on stderr with exit code 1.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permnet/community.hpp"
#include "permnet/deception.hpp"
#include "permnet/graph.hpp"
#include "permnet/io.hpp"
#include "permnet/metrics.hpp"
#include "permnet/permanence.hpp"
#include "permnet/pipeline.hpp"
#include "permnet/recovery.hpp"

namespace {

using permnet::Graph;
using ordered_json = nlohmann::ordered_json;

// Relative paths also resolve against $PERMNET_DATA_DIR, so dataset names
// work from any directory.
std::string resolve_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* dir = std::getenv("PERMNET_DATA_DIR"); dir && fs::path(path).is_relative()) {
        fs::path alt = fs::path(dir) / path;
        if (fs::exists(alt)) return alt.string();
    }
    return path;  // let the loader report the miss
}

std::optional<permnet::GraphFormat> parse_format(const std::string& name) {
    if (name.empty() || name == "auto") return std::nullopt;
    if (name == "edgelist") return permnet::GraphFormat::EdgeList;
    if (name == "gml") return permnet::GraphFormat::Gml;
    throw CLI::ValidationError("--format", "expected auto|edgelist|gml, got '" + name + "'");
}

Graph load(const std::string& path, const std::string& format) {
    return permnet::load_graph(resolve_path(path), parse_format(format));
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

// Flags shared by every subcommand that needs a detected partition.
struct DetectorArgs {
    std::string detector = "louvain";
    std::uint64_t seed = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--detector", detector, "community detector: louvain|labelprop")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "detector shuffle seed")->capture_default_str();
    }
};

struct TargetArgs {
    std::string target = "largest";
    double budget_frac = 0.3;

    void attach(CLI::App* cmd) {
        cmd->add_option("--target", target,
                        "target community: largest | index:K | nodes:a,b,c")
            ->capture_default_str();
        cmd->add_option("--budget-frac", budget_frac,
                        "edge-update budget as a fraction of the target size")
            ->capture_default_str();
    }
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

int run_detect(const std::string& graph, const std::string& format, const DetectorArgs& det) {
    Graph g = load(graph, format);
    permnet::CommunityStructure cs = permnet::find_detector(det.detector)(g, det.seed);
    std::cout << permnet::serialize_communities(cs, g);
    return 0;
}

int run_perm(const std::string& graph, const std::string& format, const DetectorArgs& det) {
    Graph g = load(graph, format);
    permnet::CommunityStructure cs = permnet::find_detector(det.detector)(g, det.seed);
    permnet::PermanenceCache cache = permnet::PermanenceCache::build(g, cs);
    std::cout << "label,I,Emax,deg,Cin,perm\n";
    char buf[256];
    for (permnet::NodeId v = 0; v < g.node_count(); ++v) {
        const permnet::VertexPermanenceParts& p = cache.parts(v);
        std::snprintf(buf, sizeof buf, ",%d,%d,%d,%.17g,%.17g\n", p.internal_degree,
                      p.max_external, p.degree, p.internal_clustering, p.permanence);
        std::cout << csv_escape(g.label(v)) << buf;
    }
    std::snprintf(buf, sizeof buf, "# graph permanence: %.17g\n", cache.graph_permanence());
    std::cout << buf;
    return 0;
}

int run_deceive(const std::string& graph, const std::string& format, const DetectorArgs& det,
                const TargetArgs& tgt, const std::string& out_graph,
                const std::string& out_log) {
    Graph g = load(graph, format);
    permnet::CommunityStructure cs = permnet::find_detector(det.detector)(g, det.seed);
    int comm = permnet::resolve_target(g, cs, permnet::TargetSelector::parse(tgt.target));
    int budget = permnet::compute_budget(cs.members(comm).size(), tgt.budget_frac);
    permnet::DeceptionRun run = permnet::neural(g, cs, comm, budget);
    if (!out_graph.empty()) permnet::write_graph(out_graph, run.output);
    std::string log = permnet::edit_log_to_json(run.log, g, "p_loss");
    if (!out_log.empty()) {
        write_file(out_log, log);
    } else {
        std::cout << log;
    }
    std::cerr << "applied " << run.log.size() << "/" << budget << " updates\n";
    return 0;
}

int run_recover(const std::string& graph, const std::string& orig_graph,
                const std::string& format, const DetectorArgs& det, const TargetArgs& tgt,
                const std::string& mode, const std::string& out_graph,
                const std::string& out_log) {
    Graph g_hidden = load(graph, format);
    Graph g_orig = load(orig_graph, format);
    permnet::DetectorFn detect = permnet::find_detector(det.detector);

    // Resolve the target on the original graph's partition, then express
    // everything in the hidden graph's id space.
    permnet::CommunityStructure cs_orig = detect(g_orig, det.seed);
    int comm_orig =
        permnet::resolve_target(g_orig, cs_orig, permnet::TargetSelector::parse(tgt.target));
    std::vector<permnet::NodeId> target_ids;
    for (permnet::NodeId v : cs_orig.members(comm_orig)) {
        target_ids.push_back(g_hidden.id_of(g_orig.label(v)));
    }

    permnet::CommunityStructure cs_used =
        mode == "redetect" ? detect(g_hidden, det.seed)
                           : permnet::transfer_partition(cs_orig, g_orig, g_hidden);
    int comm = permnet::match_community(cs_used, target_ids);
    int budget = permnet::compute_budget(cs_orig.members(comm_orig).size(), tgt.budget_frac);

    permnet::RecoveryRun run = permnet::r_neural(g_hidden, cs_used, comm, budget);
    if (!out_graph.empty()) permnet::write_graph(out_graph, run.output);
    std::string log = permnet::edit_log_to_json(run.log, g_hidden, "p_gain");
    if (!out_log.empty()) {
        write_file(out_log, log);
    } else {
        std::cout << log;
    }
    std::cerr << "applied " << run.log.size() << "/" << budget << " updates\n";
    return 0;
}

int run_eval(const std::string& graph, const std::string& hidden, const std::string& recovered,
             const std::string& format, const DetectorArgs& det) {
    permnet::DetectorFn detect = permnet::find_detector(det.detector);
    std::vector<std::pair<std::string, Graph>> states;
    states.emplace_back("G", load(graph, format));
    if (!hidden.empty()) states.emplace_back("G'", load(hidden, format));
    if (!recovered.empty()) states.emplace_back("G''", load(recovered, format));

    std::vector<permnet::MetricsRow> rows;
    for (auto& [tag, g] : states) rows.push_back(permnet::compute_metrics(g, detect(g, det.seed)));

    std::cout << "metric";
    for (auto& [tag, g] : states) std::cout << ',' << tag;
    std::cout << '\n';
    char buf[64];
    auto line = [&](const char* name, auto pick) {
        std::cout << name;
        for (const permnet::MetricsRow& r : rows) {
            std::snprintf(buf, sizeof buf, ",%.4f", pick(r));
            std::cout << buf;
        }
        std::cout << '\n';
    };
    line("M", [](const permnet::MetricsRow& r) { return r.modularity; });
    line("C", [](const permnet::MetricsRow& r) { return r.coverage; });
    line("PQ", [](const permnet::MetricsRow& r) { return r.partition_quality; });
    return 0;
}

int run_simdist(const std::string& graph, const std::string& other, const std::string& format,
                double energy) {
    Graph a = load(graph, format);
    Graph b = load(other, format);
    permnet::SpectralDistance d = permnet::spectral_distance(a, b, energy);
    ordered_json j;
    j["pair"] = std::filesystem::path(graph).stem().string() + " vs " +
                std::filesystem::path(other).stem().string();
    j["k"] = d.k;
    j["distance"] = d.value;
    std::cout << j.dump(2) << '\n';
    return 0;
}

permnet::ExperimentConfig make_config(const std::string& graph, const std::string& format,
                                      const DetectorArgs& det, const TargetArgs& tgt,
                                      const std::string& mode, double energy) {
    permnet::ExperimentConfig cfg;
    cfg.graph_path = resolve_path(graph);
    cfg.format = parse_format(format);
    cfg.detector = det.detector;
    cfg.seed = det.seed;
    cfg.target = permnet::TargetSelector::parse(tgt.target);
    cfg.budget_frac = tgt.budget_frac;
    if (mode == "redetect") {
        cfg.mode = permnet::RecoveryMode::Redetect;
    } else if (mode == "oracle") {
        cfg.mode = permnet::RecoveryMode::Oracle;
    } else {
        throw CLI::ValidationError("--mode", "expected oracle|redetect, got '" + mode + "'");
    }
    cfg.energy = energy;
    return cfg;
}

int run_one_pipeline(const permnet::ExperimentConfig& cfg, const std::string& out_report,
                     const std::string& out_hidden, const std::string& out_recovered,
                     bool text) {
    permnet::ExperimentReport report = permnet::run_pipeline(cfg);
    std::string json = permnet::report_to_json(report);
    if (!out_report.empty()) {
        write_file(out_report, json);
    } else if (!text) {
        std::cout << json;
    }
    if (text) std::cout << permnet::report_to_text(report);
    if (!out_hidden.empty()) permnet::write_graph(out_hidden, report.graph_hidden);
    if (!out_recovered.empty()) permnet::write_graph(out_recovered, report.graph_recovered);
    return 0;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        std::size_t dots = item.find("..");
        if (dots != std::string::npos) {
            std::uint64_t lo = std::stoull(item.substr(0, dots));
            std::uint64_t hi = std::stoull(item.substr(dots + 2));
            if (hi < lo) throw std::invalid_argument("--seeds range '" + item + "' is reversed");
            for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        } else if (!item.empty()) {
            seeds.push_back(std::stoull(item));
        }
    }
    if (seeds.empty()) throw std::invalid_argument("--seeds produced no seeds");
    return seeds;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int run_sweep(const std::string& graphs, const std::string& detectors_csv,
              const std::string& seeds_text, const std::string& format, const TargetArgs& tgt,
              const std::string& mode, double energy, const std::string& out_dir) {
    std::vector<permnet::ExperimentConfig> configs;
    DetectorArgs det;
    for (const std::string& graph : split_commas(graphs)) {
        for (const std::string& detector : split_commas(detectors_csv)) {
            for (std::uint64_t seed : parse_seeds(seeds_text)) {
                det.detector = detector;
                det.seed = seed;
                configs.push_back(make_config(graph, format, det, tgt, mode, energy));
            }
        }
    }
    permnet::SweepOutcome outcome = permnet::sweep(configs);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const permnet::ExperimentReport& r : outcome.reports) {
            std::string name = r.config.dataset_name + "_" + r.config.detector + "_s" +
                               std::to_string(r.config.seed) + ".json";
            write_file((std::filesystem::path(out_dir) / name).string(),
                       permnet::report_to_json(r));
        }
        write_file((std::filesystem::path(out_dir) / "aggregate.csv").string(),
                   outcome.aggregate_csv);
    }
    std::cout << outcome.aggregate_csv;
    for (const std::string& err : outcome.errors) std::cerr << "error: " << err << '\n';
    return outcome.errors.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permanence-based community hiding and recovery toolkit"};
    app.require_subcommand(1);

    std::string graph, other, orig, hidden, recovered, format = "auto";
    std::string out_graph, out_log, out_report, out_hidden, out_recovered, out_dir;
    std::string mode = "oracle";
    std::string graphs_csv, detectors_csv = "louvain", seeds_text = "1";
    double energy = 0.9;
    bool text = false;
    DetectorArgs det;
    TargetArgs tgt;

    auto add_graph = [&](CLI::App* cmd) {
        cmd->add_option("--graph", graph, "input graph file")->required();
        cmd->add_option("--format", format, "graph file format: auto|edgelist|gml")
            ->capture_default_str();
    };

    CLI::App* detect_cmd = app.add_subcommand("detect", "detect communities, one line each");
    add_graph(detect_cmd);
    det.attach(detect_cmd);

    CLI::App* perm_cmd =
        app.add_subcommand("perm", "per-vertex permanence parts as CSV plus the graph mean");
    add_graph(perm_cmd);
    det.attach(perm_cmd);

    CLI::App* deceive_cmd =
        app.add_subcommand("deceive", "hide the target community by greedy edge updates");
    add_graph(deceive_cmd);
    det.attach(deceive_cmd);
    tgt.attach(deceive_cmd);
    deceive_cmd->add_option("--out-graph", out_graph, "write the rewired graph here");
    deceive_cmd->add_option("--out-log", out_log, "write the edit log JSON here (default stdout)");

    CLI::App* recover_cmd =
        app.add_subcommand("recover", "recover a hidden community by the mirror greedy loop");
    recover_cmd->add_option("--graph", graph, "hidden graph file")->required();
    recover_cmd->add_option("--orig-graph", orig, "original graph file (partition + target)")
        ->required();
    recover_cmd->add_option("--format", format, "graph file format: auto|edgelist|gml")
        ->capture_default_str();
    det.attach(recover_cmd);
    tgt.attach(recover_cmd);
    recover_cmd
        ->add_option("--mode", mode,
                     "partition used while recovering: oracle (from the original graph) or "
                     "redetect (on the hidden graph)")
        ->capture_default_str();
    recover_cmd->add_option("--out-graph", out_graph, "write the recovered graph here");
    recover_cmd->add_option("--out-log", out_log, "write the edit log JSON here (default stdout)");

    CLI::App* eval_cmd =
        app.add_subcommand("eval", "metrics table: rows M/C/PQ, one column per graph state");
    add_graph(eval_cmd);
    det.attach(eval_cmd);
    eval_cmd->add_option("--hidden", hidden, "graph after hiding");
    eval_cmd->add_option("--recovered", recovered, "graph after recovery");

    CLI::App* simdist_cmd =
        app.add_subcommand("simdist", "spectral distance between two graphs as JSON");
    add_graph(simdist_cmd);
    simdist_cmd->add_option("--other", other, "graph to compare against")->required();
    simdist_cmd->add_option("--energy", energy, "spectral-energy cutoff in (0,1]")
        ->capture_default_str();

    CLI::App* pipeline_cmd = app.add_subcommand(
        "pipeline", "full experiment: detect, hide, recover, evaluate all three states");
    add_graph(pipeline_cmd);
    det.attach(pipeline_cmd);
    tgt.attach(pipeline_cmd);
    pipeline_cmd->add_option("--mode", mode, "recovery partition: oracle|redetect")
        ->capture_default_str();
    pipeline_cmd->add_option("--energy", energy, "spectral-energy cutoff in (0,1]")
        ->capture_default_str();
    pipeline_cmd->add_option("--out-report", out_report, "write the JSON report here");
    pipeline_cmd->add_option("--out-hidden", out_hidden, "write the hidden graph here");
    pipeline_cmd->add_option("--out-recovered", out_recovered, "write the recovered graph here");
    pipeline_cmd->add_flag("--text", text, "print the human-readable table instead of JSON");

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "batch of pipelines over graphs × detectors × seeds, aggregated as CSV");
    sweep_cmd->add_option("--graphs", graphs_csv, "comma-separated graph files")->required();
    sweep_cmd->add_option("--detectors", detectors_csv, "comma-separated detector names")
        ->capture_default_str();
    sweep_cmd->add_option("--seeds", seeds_text, "seed list: 1,2,3 and/or ranges 1..10")
        ->capture_default_str();
    sweep_cmd->add_option("--format", format, "graph file format: auto|edgelist|gml")
        ->capture_default_str();
    tgt.attach(sweep_cmd);
    sweep_cmd->add_option("--mode", mode, "recovery partition: oracle|redetect")
        ->capture_default_str();
    sweep_cmd->add_option("--energy", energy, "spectral-energy cutoff in (0,1]")
        ->capture_default_str();
    sweep_cmd->add_option("--out-dir", out_dir, "also write per-run reports + aggregate here");

    CLI11_PARSE(app, argc, argv);

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (detect_cmd->parsed()) return run_detect(graph, format, det);
        if (perm_cmd->parsed()) return run_perm(graph, format, det);
        if (deceive_cmd->parsed())
            return run_deceive(graph, format, det, tgt, out_graph, out_log);
        if (recover_cmd->parsed())
            return run_recover(graph, orig, format, det, tgt, mode, out_graph, out_log);
        if (eval_cmd->parsed()) return run_eval(graph, hidden, recovered, format, det);
        if (simdist_cmd->parsed()) return run_simdist(graph, other, format, energy);
        if (pipeline_cmd->parsed()) {
            return run_one_pipeline(make_config(graph, format, det, tgt, mode, energy),
                                    out_report, out_hidden, out_recovered, text);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep(graphs_csv, detectors_csv, seeds_text, format, tgt, mode, energy,
                             out_dir);
        }
    } catch (const std::exception& ex) {
        ordered_json err;
        err["error"] = ex.what();
        err["command"] = command;
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return 0;
}
