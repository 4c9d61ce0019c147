#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "permnet/community.hpp"
#include "permnet/eigensolver.hpp"
#include "permnet/graph.hpp"
#include "permnet/metrics.hpp"
#include "testutil.hpp"

using namespace permnet;

TEST_CASE("fixture values on the bridged triangles") {
    Graph g = testutil::two_triangles_bridge();
    CommunityStructure cs = testutil::two_triangles_partition();
    CHECK(modularity(g, cs) == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
    CHECK(coverage(g, cs) == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
    CHECK(partition_quality(g, cs) == doctest::Approx(14.0 / 15.0).epsilon(1e-12));

    MetricsRow row = compute_metrics(g, cs);
    CHECK(row.modularity == modularity(g, cs));
    CHECK(row.coverage == coverage(g, cs));
    CHECK(row.partition_quality == partition_quality(g, cs));
}

TEST_CASE("degenerate partitions") {
    Graph g = testutil::two_triangles_bridge();
    CommunityStructure whole = CommunityStructure::from_assignment({0, 0, 0, 0, 0, 0});
    CHECK(modularity(g, whole) == 0.0);
    CHECK(coverage(g, whole) == 1.0);

    CommunityStructure singles = CommunityStructure::singletons(6);
    CHECK(coverage(g, singles) == 0.0);

    Graph k4 = testutil::complete_graph(4);
    CHECK(partition_quality(k4, CommunityStructure::from_assignment({0, 0, 0, 0})) == 1.0);

    // no edges, all singletons: every pair is correctly separated
    Graph bare = Graph::with_nodes(4);
    CHECK(partition_quality(bare, CommunityStructure::singletons(4)) == 1.0);
}

TEST_CASE("error guards") {
    Graph bare = Graph::with_nodes(3);
    CommunityStructure cs = CommunityStructure::singletons(3);
    CHECK_THROWS(modularity(bare, cs));
    CHECK_THROWS(coverage(bare, cs));
    CHECK_THROWS(compute_metrics(bare, cs));

    Graph one = Graph::with_nodes(1);
    CHECK_THROWS(partition_quality(one, CommunityStructure::singletons(1)));
    CHECK_THROWS(modularity(one, CommunityStructure::singletons(1)));
}

TEST_CASE("metrics agree with the pair-counting oracle") {
    std::uint64_t seed = 11;
    for (int trial = 0; trial < 60; ++trial, ++seed) {
        int n = 5 + static_cast<int>(seed % 36);
        Graph g = testutil::random_graph(n, 0.15 + 0.01 * (trial % 20), seed);
        if (g.edge_count() == 0) continue;
        CommunityStructure cs = testutil::random_partition(n, 1 + static_cast<int>(seed % 5), seed + 77);
        testutil::OracleMetrics want = testutil::oracle_metrics(g, cs);
        CHECK(std::abs(modularity(g, cs) - want.modularity) <= 1e-12);
        CHECK(coverage(g, cs) == want.coverage);
        CHECK(partition_quality(g, cs) == want.partition_quality);
    }
}

TEST_CASE("symmetric eigensolver on known matrices") {
    // diagonal
    std::vector<double> d = {3, 0, 0, 0, -1, 0, 0, 0, 2};
    std::vector<double> ev = symmetric_eigenvalues(d, 3);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(ev[2] == doctest::Approx(3.0).epsilon(1e-10));

    // [[2,1],[1,2]] has eigenvalues 1 and 3
    std::vector<double> m = {2, 1, 1, 2};
    ev = symmetric_eigenvalues(m, 2);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-10));

    std::vector<double> single = {4.5};
    CHECK(symmetric_eigenvalues(single, 1)[0] == 4.5);

    CHECK_THROWS(symmetric_eigenvalues({1.0, 2.0}, 3));  // size mismatch
}

TEST_CASE("laplacian spectra of known graphs") {
    Graph tri = testutil::complete_graph(3);
    std::vector<double> s = laplacian_spectrum(tri);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(s[1] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(s[2] == doctest::Approx(0.0).epsilon(1e-8));

    Graph star = testutil::star_graph(3);  // K_{1,3}
    s = laplacian_spectrum(star);
    CHECK(s[0] == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(s[1] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(s[2] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(s[3] == doctest::Approx(0.0).epsilon(1e-8));

    Graph bare = Graph::with_nodes(5);
    for (double x : laplacian_spectrum(bare)) CHECK(x == 0.0);
}

TEST_CASE("laplacian spectrum invariants on random graphs") {
    std::uint64_t seed = 5;
    for (int trial = 0; trial < 10; ++trial, ++seed) {
        Graph g = testutil::random_graph(30 + static_cast<int>(seed % 20), 0.15, seed);
        std::vector<double> s = laplacian_spectrum(g);
        double trace = std::accumulate(s.begin(), s.end(), 0.0);
        double degsum = 0;
        for (NodeId v = 0; v < g.node_count(); ++v) degsum += g.degree(v);
        double scale = std::max(1.0, degsum);
        CHECK(std::abs(trace - degsum) / scale <= 1e-6);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s[i] >= 0.0);
            if (i + 1 < s.size()) CHECK(s[i] >= s[i + 1]);
        }
    }
}

TEST_CASE("spectral distance fixtures") {
    Graph tri = testutil::complete_graph(3);
    Graph path = testutil::path_graph(3);

    CHECK(spectral_distance(tri, tri).value == 0.0);
    CHECK(spectral_distance(path, path).value == 0.0);

    // spectra {3,3,0} vs {3,1,0}: both prefixes reach 90% energy at k=2,
    // squared gap is (3-3)^2 + (3-1)^2
    SpectralDistance d = spectral_distance(tri, path);
    CHECK(d.k == 2);
    CHECK(d.value == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(spectral_distance(path, tri).value == d.value);
    CHECK(spectral_distance(path, tri).k == d.k);
    CHECK(d.value > 0.0);

    CHECK_THROWS(spectral_distance(tri, path, 0.0));
    CHECK_THROWS(spectral_distance(tri, path, 1.5));
}

TEST_CASE("spectral distance is symmetric on random pairs") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Graph a = testutil::random_graph(25, 0.2, seed);
        Graph b = testutil::random_graph(25, 0.2, seed + 100);
        CHECK(spectral_distance(a, b).value == spectral_distance(b, a).value);
        CHECK(spectral_distance(a, b).value >= 0.0);
    }
}

TEST_CASE("energy prefix length shrinks with the threshold") {
    Graph g = testutil::random_graph(30, 0.2, 9);
    Graph h = testutil::random_graph(30, 0.2, 10);
    // lower energy keeps fewer leading eigenvalues; the distance stays
    // finite and well-defined at both ends of the admissible range
    SpectralDistance lo = spectral_distance(g, h, 0.5);
    SpectralDistance hi = spectral_distance(g, h, 1.0);
    CHECK(lo.value >= 0.0);
    CHECK(hi.value >= 0.0);
    CHECK(lo.k <= hi.k);
}
