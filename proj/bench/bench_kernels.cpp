// Timing comparison of the serial reference kernels against the
// OpenMP-parallel ones: full cache builds and one-iteration candidate
// scoring sweeps on seeded random graphs. Also asserts the two modes agree
// bit-for-bit, which is the contract the tests rely on.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "permnet/community.hpp"
#include "permnet/graph.hpp"
#include "permnet/greedy.hpp"
#include "permnet/permanence.hpp"

using namespace permnet;

namespace {

Graph random_graph(int n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Graph g = Graph::with_nodes(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (coin(rng) < p) g.add_edge(u, v);
        }
    }
    return g;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
double best_of(int reps, Fn&& fn) {
    double best = 1e100;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

}  // namespace

int main() {
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial", "parallel", "speedup");

    for (int n : {400, 1000, 2000}) {
        Graph g = random_graph(n, 8.0 / n, 12345);
        CommunityStructure cs = detect_louvain(g, 7);

        double ts = best_of(3, [&] { PermanenceCache::build(g, cs, Execution::Serial); });
        double tp = best_of(3, [&] { PermanenceCache::build(g, cs, Execution::Parallel); });
        PermanenceCache a = PermanenceCache::build(g, cs, Execution::Serial);
        PermanenceCache b = PermanenceCache::build(g, cs, Execution::Parallel);
        if (a.sum() != b.sum()) {
            std::printf("MISMATCH: cache build differs between modes at n=%d\n", n);
            return 1;
        }
        char name[64];
        std::snprintf(name, sizeof name, "cache build            n=%d", n);
        std::printf("%-34s %9.4fs %9.4fs %7.2fx\n", name, ts, tp, ts / tp);

        int target = 0;
        for (int c = 1; c < cs.k(); ++c) {
            if (cs.members(c).size() > cs.members(target).size()) target = c;
        }
        std::vector<EdgeUpdate> adds = inter_candidates(g, cs, target, false);
        std::vector<EdgeUpdate> dels = intra_candidates(g, cs, target, true);
        std::vector<EdgeUpdate> cands = adds;
        cands.insert(cands.end(), dels.begin(), dels.end());
        if (cands.empty()) continue;

        auto score = [&](Execution exec) {
            return best_candidate(g, cs, a, cands, -1.0, exec);
        };
        ts = best_of(5, [&] { score(Execution::Serial); });
        tp = best_of(5, [&] { score(Execution::Parallel); });
        auto ps = score(Execution::Serial);
        auto pp = score(Execution::Parallel);
        if (!ps || !pp || !(ps->update == pp->update) || ps->vertex_score != pp->vertex_score) {
            std::printf("MISMATCH: candidate pick differs between modes at n=%d\n", n);
            return 1;
        }
        std::snprintf(name, sizeof name, "score %5zu candidates  n=%d", cands.size(), n);
        std::printf("%-34s %9.4fs %9.4fs %7.2fx\n", name, ts, tp, ts / tp);
    }
    return 0;
}
