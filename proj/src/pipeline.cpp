#include "permnet/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "permnet/deception.hpp"
#include "permnet/recovery.hpp"

namespace permnet {

using ordered_json = nlohmann::ordered_json;

TargetSelector TargetSelector::parse(const std::string& text) {
    TargetSelector sel;
    if (text == "largest" || text.empty()) {
        sel.kind = Kind::Largest;
        return sel;
    }
    if (text.rfind("index:", 0) == 0) {
        sel.kind = Kind::Index;
        try {
            sel.index = std::stoi(text.substr(6));
        } catch (const std::exception&) {
            throw std::invalid_argument("target selector: bad index in '" + text + "'");
        }
        return sel;
    }
    if (text.rfind("nodes:", 0) == 0) {
        sel.kind = Kind::Nodes;
        std::string rest = text.substr(6);
        std::string item;
        std::istringstream in(rest);
        while (std::getline(in, item, ',')) {
            if (!item.empty()) sel.labels.push_back(item);
        }
        if (sel.labels.empty()) {
            throw std::invalid_argument("target selector: no node labels in '" + text + "'");
        }
        return sel;
    }
    throw std::invalid_argument("target selector: expected largest | index:K | nodes:a,b,c, got '" +
                                text + "'");
}

std::string TargetSelector::describe() const {
    switch (kind) {
        case Kind::Largest:
            return "largest";
        case Kind::Index:
            return "index:" + std::to_string(index);
        case Kind::Nodes: {
            std::string out = "nodes:";
            for (std::size_t i = 0; i < labels.size(); ++i) {
                if (i) out += ',';
                out += labels[i];
            }
            return out;
        }
    }
    return "largest";
}

int compute_budget(std::size_t target_size, double fraction) {
    if (target_size == 0) throw std::invalid_argument("budget of an empty target");
    if (fraction <= 0.0 || fraction > 1.0) {
        throw std::invalid_argument("budget fraction must lie in (0, 1]");
    }
    int rounded = static_cast<int>(std::floor(fraction * static_cast<double>(target_size) + 0.5));
    return std::max(1, rounded);
}

int resolve_target(const Graph& g, const CommunityStructure& cs, const TargetSelector& sel) {
    switch (sel.kind) {
        case TargetSelector::Kind::Largest: {
            int best = 0;
            for (int c = 1; c < cs.k(); ++c) {
                if (cs.members(c).size() > cs.members(best).size()) best = c;
            }
            return best;
        }
        case TargetSelector::Kind::Index:
            if (sel.index < 0 || sel.index >= cs.k()) {
                throw std::invalid_argument("target community index " + std::to_string(sel.index) +
                                            " out of range (k=" + std::to_string(cs.k()) + ")");
            }
            return sel.index;
        case TargetSelector::Kind::Nodes: {
            std::vector<NodeId> ids;
            ids.reserve(sel.labels.size());
            for (const std::string& label : sel.labels) ids.push_back(g.id_of(label));
            return match_community(cs, ids);
        }
    }
    throw std::logic_error("unreachable target selector kind");
}

namespace {

std::string format_name(const std::optional<GraphFormat>& f) {
    if (!f) return "auto";
    return *f == GraphFormat::Gml ? "gml" : "edgelist";
}

StateReport evaluate_state(const std::string& tag, const Graph& g, const DetectorFn& detect,
                           std::uint64_t seed, Execution exec) {
    StateReport s;
    s.tag = tag;
    s.edges = g.edge_count();
    CommunityStructure cs = detect(g, seed);
    s.communities = cs.k();
    s.metrics = compute_metrics(g, cs);
    s.graph_permanence = PermanenceCache::build(g, cs, exec).graph_permanence();
    return s;
}

ordered_json log_entry_json(const EditLogEntry& e, const Graph& g, const std::string& delta_key) {
    ordered_json j;
    j["iter"] = e.iter;
    j["action"] = e.update.action == EdgeAction::Add ? "add" : "delete";
    j["u"] = g.label(e.update.u);
    j["v"] = g.label(e.update.v);
    j[delta_key] = e.graph_delta;
    return j;
}

ordered_json log_json(const std::vector<EditLogEntry>& log, const Graph& g,
                      const std::string& delta_key) {
    ordered_json arr = ordered_json::array();
    for (const EditLogEntry& e : log) arr.push_back(log_entry_json(e, g, delta_key));
    return arr;
}

ordered_json state_json(const StateReport& s) {
    ordered_json j;
    j["tag"] = s.tag;
    j["edges"] = s.edges;
    j["communities"] = s.communities;
    j["modularity"] = s.metrics.modularity;
    j["coverage"] = s.metrics.coverage;
    j["partition_quality"] = s.metrics.partition_quality;
    j["graph_permanence"] = s.graph_permanence;
    return j;
}

}  // namespace

ExperimentReport run_pipeline(const ExperimentConfig& config) {
    auto started = std::chrono::steady_clock::now();

    ExperimentReport r;
    r.config = config;
    if (r.config.dataset_name.empty()) {
        r.config.dataset_name = std::filesystem::path(config.graph_path).stem().string();
    }

    DetectorFn detect = find_detector(config.detector);
    Graph g = load_graph(config.graph_path, config.format);

    CommunityStructure cs0 = detect(g, config.seed);
    int target_comm = resolve_target(g, cs0, config.target);
    const std::vector<NodeId>& members = cs0.members(target_comm);
    for (NodeId v : members) r.target_members.push_back(g.label(v));
    r.budget = compute_budget(members.size(), config.budget_frac);

    GreedyOptions opt;
    opt.exec = config.exec;

    DeceptionRun dec = neural(g, cs0, target_comm, r.budget, opt);

    const Graph& g_hidden = dec.output;
    int recover_comm = target_comm;
    CommunityStructure cs_rec = cs0;
    if (config.mode == RecoveryMode::Redetect) {
        cs_rec = detect(g_hidden, config.seed);
        std::vector<NodeId> member_ids(members.begin(), members.end());
        recover_comm = match_community(cs_rec, member_ids);
    }
    RecoveryRun rec = r_neural(g_hidden, cs_rec, recover_comm, r.budget, opt);

    r.original = evaluate_state("G", g, detect, config.seed, config.exec);
    r.hidden = evaluate_state("G_hidden", g_hidden, detect, config.seed, config.exec);
    r.recovered = evaluate_state("G_recovered", rec.output, detect, config.seed, config.exec);

    r.dist_hidden = spectral_distance(g, g_hidden, config.energy);
    r.dist_recovered = spectral_distance(g, rec.output, config.energy);

    r.deception_log = std::move(dec.log);
    r.recovery_log = std::move(rec.log);
    r.graph_original = std::move(g);
    r.graph_hidden = dec.output;
    r.graph_recovered = std::move(rec.output);

    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return r;
}

std::string report_to_json(const ExperimentReport& r) {
    ordered_json j;
    j["config"] = {{"dataset", r.config.dataset_name},
                   {"graph", r.config.graph_path},
                   {"format", format_name(r.config.format)},
                   {"detector", r.config.detector},
                   {"seed", r.config.seed},
                   {"target", r.config.target.describe()},
                   {"budget_frac", r.config.budget_frac},
                   {"mode", r.config.mode == RecoveryMode::Oracle ? "oracle" : "redetect"},
                   {"energy", r.config.energy}};
    j["target"] = {{"size", static_cast<int>(r.target_members.size())},
                   {"members", r.target_members},
                   {"budget", r.budget}};
    j["states"] =
        ordered_json::array({state_json(r.original), state_json(r.hidden), state_json(r.recovered)});
    j["spectral"] = {
        {"energy", r.config.energy},
        {"hidden", {{"k", r.dist_hidden.k}, {"distance", r.dist_hidden.value}}},
        {"recovered", {{"k", r.dist_recovered.k}, {"distance", r.dist_recovered.value}}}};
    j["edits"] = {{"deception", log_json(r.deception_log, r.graph_original, "p_loss")},
                  {"recovery", log_json(r.recovery_log, r.graph_original, "p_gain")}};
    j["provenance"] = {
        {"eval_partitions", "redetected-per-state"},
        {"recovery_partition",
         r.config.mode == RecoveryMode::Oracle ? "detected-on-original" : "redetected-on-hidden"}};
    return j.dump(2) + "\n";
}

std::string report_to_text(const ExperimentReport& r) {
    char buf[256];
    std::string out;
    out += r.config.dataset_name + " / " + r.config.detector +
           " / seed=" + std::to_string(r.config.seed) + "\n";
    out += "target size " + std::to_string(r.target_members.size()) + ", budget " +
           std::to_string(r.budget) + ", edits " +
           std::to_string(r.deception_log.size() + r.recovery_log.size()) + "\n";
    std::snprintf(buf, sizeof buf, "%-4s %10s %10s %10s\n", "", "G", "G'", "G''");
    out += buf;
    auto row = [&](const char* name, double a, double b, double c) {
        std::snprintf(buf, sizeof buf, "%-4s %10.4f %10.4f %10.4f\n", name, a, b, c);
        out += buf;
    };
    row("M", r.original.metrics.modularity, r.hidden.metrics.modularity,
        r.recovered.metrics.modularity);
    row("C", r.original.metrics.coverage, r.hidden.metrics.coverage,
        r.recovered.metrics.coverage);
    row("PQ", r.original.metrics.partition_quality, r.hidden.metrics.partition_quality,
        r.recovered.metrics.partition_quality);
    std::snprintf(buf, sizeof buf, "spectral distance to G': %.6f (k=%d), to G'': %.6f (k=%d)\n",
                  r.dist_hidden.value, r.dist_hidden.k, r.dist_recovered.value,
                  r.dist_recovered.k);
    out += buf;
    std::snprintf(buf, sizeof buf, "wall time %.3f s\n", r.wall_seconds);
    out += buf;
    return out;
}

std::string edit_log_to_json(const std::vector<EditLogEntry>& log, const Graph& g,
                             const std::string& delta_key) {
    return log_json(log, g, delta_key).dump(2) + "\n";
}

Graph replay_edit_log(const Graph& g, const std::string& json_text) {
    ordered_json arr = ordered_json::parse(json_text);
    if (!arr.is_array()) throw std::invalid_argument("edit log: expected a JSON array");
    Graph out = g;
    for (const auto& item : arr) {
        std::string action = item.at("action").get<std::string>();
        EdgeUpdate e;
        if (action == "add") {
            e.action = EdgeAction::Add;
        } else if (action == "delete") {
            e.action = EdgeAction::Delete;
        } else {
            throw std::invalid_argument("edit log: unknown action '" + action + "'");
        }
        e.u = out.id_of(item.at("u").get<std::string>());
        e.v = out.id_of(item.at("v").get<std::string>());
        out = apply_update(out, e);
    }
    return out;
}

SweepOutcome sweep(const std::vector<ExperimentConfig>& configs) {
    if (configs.empty()) throw std::invalid_argument("sweep needs at least one config");
    SweepOutcome out;

    struct Group {
        std::vector<const ExperimentReport*> runs;
    };
    std::map<std::pair<std::string, std::string>, Group> groups;

    out.reports.reserve(configs.size());
    for (const ExperimentConfig& c : configs) {
        std::string name = (c.dataset_name.empty()
                                ? std::filesystem::path(c.graph_path).stem().string()
                                : c.dataset_name) +
                           "/" + c.detector + "/seed=" + std::to_string(c.seed);
        try {
            out.reports.push_back(run_pipeline(c));
        } catch (const std::exception& ex) {
            out.errors.push_back(name + ": " + ex.what());
        }
    }
    for (const ExperimentReport& r : out.reports) {
        groups[{r.config.dataset_name, r.config.detector}].runs.push_back(&r);
    }

    // one row per run, then mean/stddev rows per (dataset, detector)
    std::string csv =
        "kind,dataset,detector,seed,M_G,M_Gh,M_Gr,C_G,C_Gh,C_Gr,PQ_G,PQ_Gh,PQ_Gr,"
        "dist_hidden,dist_recovered\n";
    char buf[512];
    auto values_of = [](const ExperimentReport& r) {
        return std::array<double, 11>{r.original.metrics.modularity,
                                      r.hidden.metrics.modularity,
                                      r.recovered.metrics.modularity,
                                      r.original.metrics.coverage,
                                      r.hidden.metrics.coverage,
                                      r.recovered.metrics.coverage,
                                      r.original.metrics.partition_quality,
                                      r.hidden.metrics.partition_quality,
                                      r.recovered.metrics.partition_quality,
                                      r.dist_hidden.value,
                                      r.dist_recovered.value};
    };
    auto append_row = [&](const std::string& kind, const std::string& dataset,
                          const std::string& detector, const std::string& seed,
                          const std::array<double, 11>& v) {
        std::snprintf(buf, sizeof buf,
                      "%s,%s,%s,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                      kind.c_str(), dataset.c_str(), detector.c_str(), seed.c_str(), v[0], v[1],
                      v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10]);
        csv += buf;
    };
    for (const ExperimentReport& r : out.reports) {
        append_row("run", r.config.dataset_name, r.config.detector,
                   std::to_string(r.config.seed), values_of(r));
    }
    for (const auto& [key, group] : groups) {
        std::array<double, 11> mean{};
        for (const ExperimentReport* r : group.runs) {
            std::array<double, 11> v = values_of(*r);
            for (std::size_t i = 0; i < v.size(); ++i) mean[i] += v[i];
        }
        double n = static_cast<double>(group.runs.size());
        for (double& x : mean) x /= n;
        std::array<double, 11> sd{};
        for (const ExperimentReport* r : group.runs) {
            std::array<double, 11> v = values_of(*r);
            for (std::size_t i = 0; i < v.size(); ++i) {
                double d = v[i] - mean[i];
                sd[i] += d * d;
            }
        }
        for (double& x : sd) x = std::sqrt(x / n);
        append_row("mean", key.first, key.second, "", mean);
        append_row("stddev", key.first, key.second, "", sd);
    }
    out.aggregate_csv = std::move(csv);
    return out;
}

}  // namespace permnet
