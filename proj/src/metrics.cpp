#include "permnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "permnet/eigensolver.hpp"

namespace permnet {

namespace {

struct CommunityCounts {
    std::vector<std::int64_t> intra_edges;  // e_c
    std::vector<std::int64_t> degree_sum;   // d_c
    std::int64_t m = 0;
};

CommunityCounts count_by_community(const Graph& g, const CommunityStructure& cs) {
    cs.validate(g);
    CommunityCounts cc;
    cc.intra_edges.assign(cs.k(), 0);
    cc.degree_sum.assign(cs.k(), 0);
    cc.m = g.edge_count();
    for (NodeId v = 0; v < g.node_count(); ++v) {
        cc.degree_sum[cs.community_of(v)] += g.degree(v);
    }
    for (auto [u, v] : g.edges()) {
        if (cs.same_community(u, v)) ++cc.intra_edges[cs.community_of(u)];
    }
    return cc;
}

double modularity_from(const CommunityCounts& cc) {
    double m = static_cast<double>(cc.m);
    double q = 0.0;
    for (int c = 0; c < static_cast<int>(cc.intra_edges.size()); ++c) {
        double frac = static_cast<double>(cc.degree_sum[c]) / (2.0 * m);
        q += static_cast<double>(cc.intra_edges[c]) / m - frac * frac;
    }
    return q;
}

double coverage_from(const CommunityCounts& cc) {
    std::int64_t intra = 0;
    for (std::int64_t e : cc.intra_edges) intra += e;
    return static_cast<double>(intra) / static_cast<double>(cc.m);
}

double partition_quality_from(const Graph& g, const CommunityStructure& cs,
                              const CommunityCounts& cc) {
    std::int64_t n = g.node_count();
    std::int64_t total_pairs = n * (n - 1) / 2;
    std::int64_t intra_pairs = 0;
    for (int c = 0; c < cs.k(); ++c) {
        std::int64_t sz = static_cast<std::int64_t>(cs.members(c).size());
        intra_pairs += sz * (sz - 1) / 2;
    }
    std::int64_t intra_with_edge = 0;
    for (std::int64_t e : cc.intra_edges) intra_with_edge += e;
    std::int64_t inter_without_edge = (total_pairs - intra_pairs) - (cc.m - intra_with_edge);
    return static_cast<double>(intra_with_edge + inter_without_edge) /
           static_cast<double>(total_pairs);
}

}  // namespace

double modularity(const Graph& g, const CommunityStructure& cs) {
    if (g.edge_count() == 0) throw std::invalid_argument("modularity of an edgeless graph");
    return modularity_from(count_by_community(g, cs));
}

double coverage(const Graph& g, const CommunityStructure& cs) {
    if (g.edge_count() == 0) throw std::invalid_argument("coverage of an edgeless graph");
    return coverage_from(count_by_community(g, cs));
}

double partition_quality(const Graph& g, const CommunityStructure& cs) {
    if (g.node_count() < 2) {
        throw std::invalid_argument("partition quality needs at least two nodes");
    }
    return partition_quality_from(g, cs, count_by_community(g, cs));
}

MetricsRow compute_metrics(const Graph& g, const CommunityStructure& cs) {
    if (g.edge_count() == 0) throw std::invalid_argument("metrics of an edgeless graph");
    if (g.node_count() < 2) throw std::invalid_argument("metrics need at least two nodes");
    CommunityCounts cc = count_by_community(g, cs);
    return {modularity_from(cc), coverage_from(cc), partition_quality_from(g, cs, cc)};
}

std::vector<double> laplacian_spectrum(const Graph& g) {
    int n = g.node_count();
    if (n == 0) throw std::invalid_argument("spectrum of an empty graph");
    std::vector<double> lap(static_cast<std::size_t>(n) * n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        lap[static_cast<std::size_t>(v) * n + v] = static_cast<double>(g.degree(v));
        for (NodeId w : g.neighbors(v)) lap[static_cast<std::size_t>(v) * n + w] = -1.0;
    }
    std::vector<double> eig = symmetric_eigenvalues(std::move(lap), n);
    for (double& x : eig) {
        if (x < -1e-9) {
            throw EigensolverError("Laplacian eigenvalue " + std::to_string(x) +
                                   " below the negativity tolerance");
        }
        if (std::fabs(x) <= 1e-9) x = 0.0;
    }
    // ascending from the solver; callers get descending
    std::reverse(eig.begin(), eig.end());
    return eig;
}

namespace {

// Length of the shortest descending prefix carrying at least `energy` of
// the total spectral mass; 1 at minimum (an all-zero spectrum included).
int energy_prefix(const std::vector<double>& spectrum, double energy) {
    double total = 0.0;
    for (double x : spectrum) total += x;
    double need = energy * total;
    double got = 0.0;
    for (int k = 1; k <= static_cast<int>(spectrum.size()); ++k) {
        got += spectrum[k - 1];
        if (got >= need) return k;
    }
    return static_cast<int>(spectrum.size());
}

}  // namespace

SpectralDistance spectral_distance(const Graph& g1, const Graph& g2, double energy) {
    if (energy <= 0.0 || energy > 1.0) {
        throw std::invalid_argument("energy cutoff must lie in (0, 1]");
    }
    std::vector<double> s1 = laplacian_spectrum(g1);
    std::vector<double> s2 = laplacian_spectrum(g2);
    int k = std::min(energy_prefix(s1, energy), energy_prefix(s2, energy));
    double value = 0.0;
    for (int i = 0; i < k; ++i) {
        double d = s1[i] - s2[i];
        value += d * d;
    }
    return {value, k, energy};
}

}  // namespace permnet
