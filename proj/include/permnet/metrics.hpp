#ifndef PERMNET_METRICS_HPP
#define PERMNET_METRICS_HPP

#include <vector>

#include "permnet/community.hpp"
#include "permnet/graph.hpp"

namespace permnet {

// The three partition-quality measures reported per graph state.
struct MetricsRow {
    double modularity = 0.0;
    double coverage = 0.0;          // in [0,1]
    double partition_quality = 0.0;  // in [0,1]
};

// Σ_c [ e_c/m − (d_c/2m)² ]. Requires at least one edge.
double modularity(const Graph& g, const CommunityStructure& cs);

// Fraction of edges that are intra-community. Requires at least one edge.
double coverage(const Graph& g, const CommunityStructure& cs);

// Fraction of node pairs classified correctly: intra pairs joined by an
// edge plus inter pairs with none, over all C(n,2) pairs. Requires n ≥ 2.
double partition_quality(const Graph& g, const CommunityStructure& cs);

// All three from one pass over shared counters, so e.g. Σ_c e_c/m here and
// in coverage() agree exactly.
MetricsRow compute_metrics(const Graph& g, const CommunityStructure& cs);

// Eigenvalues of L = D − A, descending. Values within 1e-9 of zero are
// snapped to exactly 0; anything below −1e-9 reports an eigensolver error.
std::vector<double> laplacian_spectrum(const Graph& g);

struct SpectralDistance {
    double value = 0.0;   // Σ over the compared prefix of squared differences
    int k = 0;            // number of eigenvalues compared
    double energy = 0.9;  // cumulative-energy cutoff that chose k
};

// Distance between two graphs' Laplacian spectra: each side keeps its
// smallest descending prefix holding ≥ energy of the spectral mass, k is
// the shorter prefix, and the value sums squared differences over it.
// Lower means more similar; 0 for identical spectra. Symmetric in its
// graph arguments.
SpectralDistance spectral_distance(const Graph& g1, const Graph& g2, double energy = 0.9);

}  // namespace permnet

#endif
