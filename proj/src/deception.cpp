#include "permnet/deception.hpp"

namespace permnet {

namespace {
constexpr double kHideSign = -1.0;  // push graph permanence down
}

std::optional<ScoredPick> best_add_candidate(const Graph& g, const CommunityStructure& cs,
                                             int target_comm, const GreedyOptions& opt) {
    PermanenceCache cache = PermanenceCache::build(g, cs, opt.exec);
    return best_candidate(g, cs, cache, inter_candidates(g, cs, target_comm, false), kHideSign,
                          opt.exec);
}

std::optional<ScoredPick> best_delete_candidate(const Graph& g, const CommunityStructure& cs,
                                                int target_comm, const GreedyOptions& opt) {
    PermanenceCache cache = PermanenceCache::build(g, cs, opt.exec);
    return best_candidate(g, cs, cache, intra_candidates(g, cs, target_comm, true), kHideSign,
                          opt.exec);
}

DeceptionRun neural(const Graph& g, const CommunityStructure& cs, int target_comm, int budget,
                    const GreedyOptions& opt) {
    GreedyOutcome out = run_greedy(g, cs, target_comm, budget, kHideSign,
                                   /*inter_existing=*/false, opt);
    return {std::move(out.graph), std::move(out.log), target_comm, budget};
}

}  // namespace permnet
