#include "permnet/greedy.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

namespace permnet {

namespace {

// Tie order for candidate pairs: lexicographic on (label(u), label(v)).
bool label_lex_less(const Graph& g, const EdgeUpdate& a, const EdgeUpdate& b) {
    return std::tie(g.label(a.u), g.label(a.v)) < std::tie(g.label(b.u), g.label(b.v));
}

double graph_objective(const Graph& g, const CommunityStructure& cs,
                       const PermanenceCache& cache, const EdgeUpdate& e, double sign,
                       const GreedyOptions& opt) {
    if (opt.full_recompute) {
        Graph g2 = apply_update(g, e);
        PermanenceCache c2 = PermanenceCache::build(g2, cs, opt.exec);
        return sign * (c2.graph_permanence() - cache.graph_permanence());
    }
    double n = static_cast<double>(g.node_count());
    return sign * (permanence_sum_after(g, cs, cache, e) / n - cache.graph_permanence());
}

}  // namespace

std::vector<EdgeUpdate> inter_candidates(const Graph& g, const CommunityStructure& cs,
                                         int target_comm, bool existing) {
    EdgeAction action = existing ? EdgeAction::Delete : EdgeAction::Add;
    std::vector<EdgeUpdate> out;
    for (NodeId u : cs.members(target_comm)) {
        std::optional<int> pull = external_pull_community(g, cs, u);
        if (!pull) continue;  // no external edges: strongest pull is undefined
        for (NodeId v : cs.members(*pull)) {
            if (g.has_edge(u, v) == existing) out.push_back({action, u, v});
        }
    }
    return out;
}

std::vector<EdgeUpdate> intra_candidates(const Graph& g, const CommunityStructure& cs,
                                         int target_comm, bool existing) {
    EdgeAction action = existing ? EdgeAction::Delete : EdgeAction::Add;
    const std::vector<NodeId>& members = cs.members(target_comm);
    std::vector<EdgeUpdate> out;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            NodeId x = members[i];
            NodeId y = members[j];
            if (g.has_edge(x, y) != existing) continue;
            if (!(g.label(x) < g.label(y))) std::swap(x, y);
            out.push_back({action, x, y});
        }
    }
    return out;
}

std::optional<ScoredPick> best_candidate(const Graph& g, const CommunityStructure& cs,
                                         const PermanenceCache& cache,
                                         const std::vector<EdgeUpdate>& candidates,
                                         double objective_sign, Execution exec) {
    if (candidates.empty()) return std::nullopt;
    int m = static_cast<int>(candidates.size());
    std::vector<double> score(m);
    double* s = score.data();
    const EdgeUpdate* cand = candidates.data();
    auto score_one = [&](int i) {
        double now = cache.vertex(cand[i].u);
        double then = vertex_permanence_toggled(g, cs, cand[i].u, cand[i]).permanence;
        return objective_sign * (then - now);
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int i = 0; i < m; ++i) s[i] = score_one(i);
    } else {
        for (int i = 0; i < m; ++i) s[i] = score_one(i);
    }
    int best = 0;
    for (int i = 1; i < m; ++i) {
        if (score[i] > score[best] ||
            (score[i] == score[best] && label_lex_less(g, cand[i], cand[best]))) {
            best = i;
        }
    }
    return ScoredPick{candidates[best], score[best]};
}

GreedyOutcome run_greedy(const Graph& g0, const CommunityStructure& cs, int target_comm,
                         int budget, double objective_sign, bool inter_existing,
                         const GreedyOptions& opt) {
    if (target_comm < 0 || target_comm >= cs.k()) {
        throw std::invalid_argument("run_greedy: community index " + std::to_string(target_comm) +
                                    " out of range");
    }
    if (budget < 1) throw std::invalid_argument("run_greedy: budget must be >= 1");

    Graph g = g0;
    PermanenceCache cache = PermanenceCache::build(g, cs, opt.exec);
    std::vector<EditLogEntry> log;
    constexpr double kNone = -std::numeric_limits<double>::infinity();

    for (int iter = 1; iter <= budget; ++iter) {
        std::optional<ScoredPick> inter = best_candidate(
            g, cs, cache, inter_candidates(g, cs, target_comm, inter_existing), objective_sign,
            opt.exec);
        std::optional<ScoredPick> intra = best_candidate(
            g, cs, cache, intra_candidates(g, cs, target_comm, !inter_existing), objective_sign,
            opt.exec);

        double inter_obj = inter ? graph_objective(g, cs, cache, inter->update, objective_sign, opt)
                                 : kNone;
        double intra_obj = intra ? graph_objective(g, cs, cache, intra->update, objective_sign, opt)
                                 : kNone;

        const ScoredPick* pick = nullptr;
        double obj = 0.0;
        if (inter && inter_obj >= intra_obj && inter_obj > 0.0) {
            pick = &*inter;
            obj = inter_obj;
        } else if (intra && intra_obj > 0.0) {
            pick = &*intra;
            obj = intra_obj;
        } else {
            break;  // no positive move left; further iterations would idle
        }

        cache = rescore_after_update(cache, g, cs, pick->update);
        g = apply_update(g, pick->update);
        log.push_back({iter, pick->update, pick->vertex_score, obj, cache.graph_permanence()});
    }
    return {std::move(g), std::move(log)};
}

}  // namespace permnet
