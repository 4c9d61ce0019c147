#ifndef PERMNET_RECOVERY_HPP
#define PERMNET_RECOVERY_HPP

#include <optional>
#include <vector>

#include "permnet/greedy.hpp"

namespace permnet {

// Result of a recovery run: the repaired graph plus one log entry per
// applied update. Deletes are always inter-community, adds always
// intra-target; the logged graph permanence is non-decreasing across
// entries. The run has no knowledge of which edges the hiding step touched,
// so it may remove edges that were part of the original graph.
struct RecoveryRun {
    Graph output;
    std::vector<EditLogEntry> log;
    int target_community = -1;
    int budget = 0;
};

// Best inter-community deletion: over u in the target and v in u's
// strongest external community with (u,v) present, maximizes
// Perm(u, without edge) − Perm(u, current).
std::optional<ScoredPick> best_recover_delete_candidate(const Graph& g,
                                                        const CommunityStructure& cs,
                                                        int target_comm,
                                                        const GreedyOptions& opt = {});

// Best intra-community addition: over non-adjacent pairs inside the target,
// scored on the lexicographically smaller endpoint.
std::optional<ScoredPick> best_recover_add_candidate(const Graph& g,
                                                     const CommunityStructure& cs,
                                                     int target_comm,
                                                     const GreedyOptions& opt = {});

// Greedy recovery loop, the mirror image of the hiding loop: each iteration
// applies the inter delete or the intra add whose graph-level permanence
// gain is larger (delete wins ties) while positive, spending at most budget
// updates. The partition stays fixed; pass either the partition detected on
// the original graph (oracle mode) or one re-detected on g.
RecoveryRun r_neural(const Graph& g, const CommunityStructure& cs, int target_comm, int budget,
                     const GreedyOptions& opt = {});

}  // namespace permnet

#endif
