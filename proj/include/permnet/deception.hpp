#ifndef PERMNET_DECEPTION_HPP
#define PERMNET_DECEPTION_HPP

#include <optional>
#include <vector>

#include "permnet/greedy.hpp"

namespace permnet {

// Result of a community-hiding run: the rewired graph plus one log entry
// per applied update. Adds are always inter-community, deletes always
// intra-target, judged against the fixed input partition; the logged graph
// permanence is non-increasing across entries.
struct DeceptionRun {
    Graph output;
    std::vector<EditLogEntry> log;
    int target_community = -1;
    int budget = 0;
};

// Best inter-community addition for the target community: over u in the
// target and v in u's strongest external community with (u,v) absent,
// maximizes Perm(u, current) − Perm(u, with edge). Nullopt when no such
// pair exists.
std::optional<ScoredPick> best_add_candidate(const Graph& g, const CommunityStructure& cs,
                                             int target_comm, const GreedyOptions& opt = {});

// Best intra-community deletion: over edges inside the target, scored on
// the lexicographically smaller endpoint. Nullopt when the target has no
// internal edges.
std::optional<ScoredPick> best_delete_candidate(const Graph& g, const CommunityStructure& cs,
                                                int target_comm, const GreedyOptions& opt = {});

// Greedy hiding loop: each iteration applies the add or the delete whose
// graph-level permanence loss is larger (add wins ties) while positive,
// spending at most budget updates. The partition stays fixed.
DeceptionRun neural(const Graph& g, const CommunityStructure& cs, int target_comm, int budget,
                    const GreedyOptions& opt = {});

}  // namespace permnet

#endif
