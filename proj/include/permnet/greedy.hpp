#ifndef PERMNET_GREEDY_HPP
#define PERMNET_GREEDY_HPP

#include <optional>
#include <vector>

#include "permnet/community.hpp"
#include "permnet/graph.hpp"
#include "permnet/permanence.hpp"

namespace permnet {

// One applied update in a greedy run. vertex_score is the argmax objective
// of the scored endpoint (update.u); graph_delta is the graph-level
// objective that justified applying it — permanence loss when hiding,
// permanence gain when recovering — and is positive for every applied entry.
// graph_permanence_after feeds the monotonicity checks.
struct EditLogEntry {
    int iter = 0;  // 1-based
    EdgeUpdate update;
    double vertex_score = 0.0;
    double graph_delta = 0.0;
    double graph_permanence_after = 0.0;
};

struct ScoredPick {
    EdgeUpdate update;
    double vertex_score = 0.0;
};

struct GreedyOptions {
    Execution exec = Execution::Parallel;
    // Debug path: graph-level objectives via fresh cache builds instead of
    // the virtual rescore. Both paths produce bit-identical decisions.
    bool full_recompute = false;
};

// Pair universe between target-community members and each member's
// strongest external community; existing picks the edges (for deletes) or
// the non-edges (for adds). Pairs run (target endpoint, outside endpoint)
// and the first endpoint is the scored one.
std::vector<EdgeUpdate> inter_candidates(const Graph& g, const CommunityStructure& cs,
                                         int target_comm, bool existing);

// Pair universe inside the target community; existing as above. Pairs are
// oriented so the first label sorts lexicographically before the second.
std::vector<EdgeUpdate> intra_candidates(const Graph& g, const CommunityStructure& cs,
                                         int target_comm, bool existing);

// Argmax of objective_sign * (Perm(u, toggled) − Perm(u, current)) over the
// candidates, u being each update's first endpoint. Exact float comparison;
// ties fall to the lexicographically smallest (label(u), label(v)). The
// parallel mode fills a score vector and scans serially, so both execution
// modes return the same pick.
std::optional<ScoredPick> best_candidate(const Graph& g, const CommunityStructure& cs,
                                         const PermanenceCache& cache,
                                         const std::vector<EdgeUpdate>& candidates,
                                         double objective_sign, Execution exec);

struct GreedyOutcome {
    Graph graph;
    std::vector<EditLogEntry> log;
};

// Engine behind both greedy loops. objective_sign −1 drives graph
// permanence down (community hiding), +1 drives it up (recovery).
// inter_existing=false adds inter pairs and deletes intra pairs;
// inter_existing=true mirrors both. Per iteration the best inter and best
// intra candidates are compared on graph-level objectives; the inter one
// wins ties. Stops early once neither side is positive. The partition is
// held fixed throughout.
GreedyOutcome run_greedy(const Graph& g, const CommunityStructure& cs, int target_comm,
                         int budget, double objective_sign, bool inter_existing,
                         const GreedyOptions& opt = {});

}  // namespace permnet

#endif
