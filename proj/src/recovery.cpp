#include "permnet/recovery.hpp"

namespace permnet {

namespace {
constexpr double kRecoverSign = 1.0;  // push graph permanence up
}

std::optional<ScoredPick> best_recover_delete_candidate(const Graph& g,
                                                        const CommunityStructure& cs,
                                                        int target_comm,
                                                        const GreedyOptions& opt) {
    PermanenceCache cache = PermanenceCache::build(g, cs, opt.exec);
    return best_candidate(g, cs, cache, inter_candidates(g, cs, target_comm, true), kRecoverSign,
                          opt.exec);
}

std::optional<ScoredPick> best_recover_add_candidate(const Graph& g, const CommunityStructure& cs,
                                                     int target_comm, const GreedyOptions& opt) {
    PermanenceCache cache = PermanenceCache::build(g, cs, opt.exec);
    return best_candidate(g, cs, cache, intra_candidates(g, cs, target_comm, false), kRecoverSign,
                          opt.exec);
}

RecoveryRun r_neural(const Graph& g, const CommunityStructure& cs, int target_comm, int budget,
                     const GreedyOptions& opt) {
    GreedyOutcome out = run_greedy(g, cs, target_comm, budget, kRecoverSign,
                                   /*inter_existing=*/true, opt);
    return {std::move(out.graph), std::move(out.log), target_comm, budget};
}

}  // namespace permnet
