#include "oracles.hpp"
#include "zarank/geometry.hpp"
#include "zarank/hypergraph.hpp"
#include "zarank/suites.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

using namespace zarank;

namespace {

KPartiteHypergraph random_hypergraph(std::mt19937_64& rng, std::vector<std::size_t> sizes, double p) {
    std::bernoulli_distribution keep(p);
    std::vector<Tuple> edges;
    for (const auto& c : oracle::all_cells(sizes)) {
        if (keep(rng)) edges.push_back(c);
    }
    return KPartiteHypergraph(std::move(sizes), std::move(edges));
}

bool witness_is_complete(const KPartiteHypergraph& h, const ForbiddenPattern& pat, const DetectionResult& r) {
    if (r.witness.size() != h.k()) return false;
    for (std::size_t i = 0; i < h.k(); ++i) {
        if (r.witness[i].size() != pat.u[i]) return false;
    }
    std::vector<std::size_t> sizes(h.k());
    for (std::size_t i = 0; i < h.k(); ++i) sizes[i] = pat.u[i];
    for (const auto& pick : oracle::all_cells(sizes)) {
        Tuple t(h.k());
        for (std::size_t i = 0; i < h.k(); ++i) t[i] = r.witness[i][pick[i]];
        if (!h.contains(t)) return false;
    }
    return true;
}

SetSystem sets(std::size_t g, std::vector<std::vector<Vertex>> m) {
    SetSystem f;
    f.ground_size = g;
    f.members = std::move(m);
    return f;
}

} // namespace

TEST(Hypergraph, EdgesAreSortedAndDeduplicated) {
    const KPartiteHypergraph h({2, 2}, {{1, 1}, {0, 1}, {1, 1}});
    EXPECT_EQ(h.num_edges(), 2U);
    EXPECT_EQ(h.edges()[0], (Tuple{0, 1}));
    EXPECT_TRUE(h.contains({1, 1}));
    EXPECT_FALSE(h.contains({1, 0}));
    EXPECT_FALSE(h.contains({5, 0}));
    EXPECT_EQ(h.degree(1, 1), 2U);
}

TEST(Hypergraph, RejectsBadEdges) {
    EXPECT_THROW(KPartiteHypergraph({2, 2}, {{0, 2}}), std::invalid_argument);
    EXPECT_THROW(KPartiteHypergraph({2, 2}, {{0, 1, 0}}), std::invalid_argument);
    EXPECT_THROW(KPartiteHypergraph({}, {}), std::invalid_argument);
}

TEST(Detection, FourCycleIsK22) {
    const KPartiteHypergraph h({2, 2}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const ForbiddenPattern pat{{2, 2}};
    const auto r = contains_complete(h, pat);
    EXPECT_TRUE(r.found);
    EXPECT_TRUE(witness_is_complete(h, pat, r));
}

TEST(Detection, EmptyHypergraphIsFree) {
    const KPartiteHypergraph h({5, 5, 5}, {});
    EXPECT_FALSE(contains_complete(h, ForbiddenPattern{{1, 1, 1}}).found);
}

TEST(Detection, PatternLargerThanPart) {
    const KPartiteHypergraph h({1, 3}, {{0, 0}, {0, 1}, {0, 2}});
    EXPECT_FALSE(contains_complete(h, ForbiddenPattern{{2, 1}}).found);
    EXPECT_TRUE(contains_complete(h, ForbiddenPattern{{1, 3}}).found);
}

TEST(Detection, BadPatternThrows) {
    const KPartiteHypergraph h({2, 2}, {});
    EXPECT_THROW(contains_complete(h, ForbiddenPattern{{2}}), std::invalid_argument);
    EXPECT_THROW(contains_complete(h, ForbiddenPattern{{0, 1}}), std::invalid_argument);
}

TEST(Detection, TinyBudgetThrowsInsteadOfGuessing) {
    std::mt19937_64 rng(3);
    const auto h = random_hypergraph(rng, {12, 12, 12}, 0.3);
    EXPECT_THROW(contains_complete(h, ForbiddenPattern{{3, 3, 3}}, 5), BudgetExceeded);
}

TEST(Detection, AgreesWithNaiveOnSmallRandomInstances) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> part(1, 4);
    std::uniform_int_distribution<std::size_t> uu(1, 2);
    std::uniform_real_distribution<double> dens(0.2, 0.9);
    for (int t = 0; t < 400; ++t) {
        const std::size_t k = 2 + static_cast<std::size_t>(t % 2);
        std::vector<std::size_t> sizes(k), u(k);
        for (auto& s : sizes) s = part(rng);
        for (auto& x : u) x = uu(rng);
        const auto h = random_hypergraph(rng, sizes, dens(rng));
        const ForbiddenPattern pat{u};
        const auto r = contains_complete(h, pat);
        ASSERT_EQ(r.found, oracle::contains_complete_naive(h, u)) << "draw " << t;
        if (r.found) {
            EXPECT_TRUE(witness_is_complete(h, pat, r));
        }
    }
}

TEST(Detection, MonotoneUnderEdgeAddition) {
    std::mt19937_64 rng(5);
    const std::vector<std::size_t> sizes{4, 4, 3};
    const auto cells = oracle::all_cells(sizes);
    const ForbiddenPattern pat{{2, 2, 1}};
    for (int t = 0; t < 50; ++t) {
        std::vector<Tuple> edges;
        bool seen = false;
        std::vector<std::size_t> order(cells.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t idx : order) {
            edges.push_back(cells[idx]);
            const bool found = contains_complete(KPartiteHypergraph(sizes, edges), pat).found;
            ASSERT_TRUE(found || !seen) << "pattern disappeared after adding an edge";
            seen = found;
        }
        EXPECT_TRUE(seen);
    }
}

TEST(Detection, MonotoneUnderRandomToggles) {
    std::mt19937_64 rng(6);
    const std::vector<std::size_t> sizes{5, 5};
    const auto cells = oracle::all_cells(sizes);
    const ForbiddenPattern pat{{2, 2}};
    std::vector<bool> on(cells.size(), false);
    auto build = [&] {
        std::vector<Tuple> e;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (on[i]) e.push_back(cells[i]);
        }
        return KPartiteHypergraph(sizes, e);
    };
    bool before = false;
    for (int t = 0; t < 2000; ++t) {
        const std::size_t i = rng() % cells.size();
        on[i] = !on[i];
        const bool after = contains_complete(build(), pat).found;
        if (on[i]) {
            ASSERT_TRUE(after || !before) << "adding an edge removed the pattern";
        } else {
            ASSERT_TRUE(!after || before) << "removing an edge created the pattern";
        }
        before = after;
    }
}

TEST(Neighborhood, Basic) {
    const KPartiteHypergraph h({3, 2, 2}, {{0, 0, 0}, {0, 0, 1}, {2, 1, 1}});
    EXPECT_EQ(neighborhood(h, 2, {0, 0}), (std::vector<Vertex>{0, 1}));
    EXPECT_EQ(neighborhood(h, 0, {1, 1}), (std::vector<Vertex>{2}));
    EXPECT_TRUE(neighborhood(h, 0, {1, 0}).empty());
    EXPECT_THROW(neighborhood(h, 0, {1}), std::invalid_argument);
}

TEST(Shatter, PowerSet) {
    std::vector<std::vector<Vertex>> all;
    for (unsigned mask = 0; mask < 32; ++mask) {
        std::vector<Vertex> m;
        for (Vertex i = 0; i < 5; ++i) {
            if (mask >> i & 1U) m.push_back(i);
        }
        all.push_back(m);
    }
    const auto f = sets(5, all);
    for (std::size_t z = 1; z <= 5; ++z) EXPECT_EQ(primal_shatter(f, z).value, std::size_t{1} << z);
}

TEST(Shatter, Intervals) {
    std::vector<std::vector<Vertex>> ivs;
    for (Vertex a = 0; a < 6; ++a) {
        for (Vertex b = a; b < 6; ++b) {
            std::vector<Vertex> m;
            for (Vertex x = a; x <= b; ++x) m.push_back(x);
            ivs.push_back(m);
        }
    }
    // on all six points the empty trace is missing
    EXPECT_EQ(primal_shatter(sets(6, ivs), 6).value, 21U);
    ivs.push_back({});
    const auto g = sets(6, ivs);
    for (std::size_t z = 1; z <= 6; ++z) EXPECT_EQ(primal_shatter(g, z).value, 1 + z + z * (z - 1) / 2);
}

TEST(Shatter, Singletons) {
    std::vector<std::vector<Vertex>> m;
    for (Vertex i = 0; i < 7; ++i) m.push_back({i});
    m.push_back({});
    const auto f = sets(7, m);
    for (std::size_t z = 1; z <= 7; ++z) EXPECT_EQ(primal_shatter(f, z).value, z + 1);
}

TEST(Shatter, GrowthIsMonotoneAndAtMostDoubling) {
    std::mt19937_64 rng(23);
    std::bernoulli_distribution coin(0.4);
    for (int t = 0; t < 30; ++t) {
        SetSystem f;
        f.ground_size = 8;
        for (int j = 0; j < 12; ++j) {
            std::vector<Vertex> m;
            for (Vertex x = 0; x < 8; ++x) {
                if (coin(rng)) m.push_back(x);
            }
            f.members.push_back(m);
        }
        std::size_t prev = primal_shatter(f, 1).value;
        for (std::size_t z = 2; z <= 8; ++z) {
            const std::size_t cur = primal_shatter(f, z).value;
            EXPECT_LE(prev, cur);
            EXPECT_LE(cur, 2 * prev);
            prev = cur;
        }
    }
}

TEST(Shatter, SampledIsALowerBound) {
    std::mt19937_64 rng(2);
    const auto g = random_hypergraph(rng, {20, 14}, 0.5);
    const auto f = SetSystem::neighborhoods(g, 0);
    const auto ex = primal_shatter(f, 4);
    const auto sm = primal_shatter(f, 4, ShatterMode::sampled(9, 50));
    EXPECT_FALSE(sm.exact);
    EXPECT_LE(sm.value, ex.value);
    EXPECT_EQ(sm.argmax.size(), 4U);
}

TEST(Shatter, BudgetAndRangeErrors) {
    SetSystem f;
    f.ground_size = 60;
    f.members.assign(1000, {0});
    EXPECT_THROW(primal_shatter(f, 20), BudgetExceeded);
    EXPECT_THROW(primal_shatter(f, 0), std::invalid_argument);
    EXPECT_THROW(primal_shatter(sets(2, {{3}}), 1), std::invalid_argument);
}

TEST(Shatter, HalfplaneTracesMatchArrangementCount) {
    // general position: no three collinear
    PointConfig p;
    p.dim = 2;
    for (long i = 0; i < 8; ++i) p.points.push_back({Rational(i), Rational(i * i)});
    const auto f = all_halfplane_traces(p);
    for (std::size_t z = 1; z <= 8; ++z) EXPECT_EQ(primal_shatter(f, z).value, z * z - z + 2) << "z=" << z;
}

TEST(Shatter, CollinearHalfplaneTraces) {
    PointConfig p;
    p.dim = 2;
    for (long i = 0; i < 5; ++i) p.points.push_back({Rational(i), Rational(0)});
    const auto f = all_halfplane_traces(p);
    // prefixes and suffixes of a line
    for (std::size_t z = 1; z <= 5; ++z) EXPECT_EQ(primal_shatter(f, z).value, 2 * z);
}

TEST(Shatter, RandomHalfplanesStayUnderTheArrangementCount) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> c(-6, 6);
    for (int t = 0; t < 20; ++t) {
        const auto p = random_rational_points(2, 9, 4, 2, rng());
        std::vector<Halfplane> hs;
        for (int j = 0; j < 80; ++j) hs.push_back({Rational(c(rng)), Rational(c(rng)), Rational(c(rng), 2)});
        const auto f = halfplane_set_system(p, hs);
        for (std::size_t z = 1; z <= 9; ++z) EXPECT_LE(primal_shatter(f, z).value, z * z - z + 2);
    }
}

TEST(Crossing, Example) {
    const auto f = sets(3, {{1}, {1, 2}, {}, {0, 1, 2}});
    EXPECT_EQ(crossing_count(f, {1, 2}), 1U);
    EXPECT_EQ(crossing_count(f, {2}), 0U);
    EXPECT_THROW(crossing_count(f, {7}), std::invalid_argument);
}

TEST(LowCrossing, IdenticalNeighborhoodsCrossNothing) {
    std::vector<Tuple> edges;
    for (Vertex p = 0; p < 4; ++p) {
        for (Vertex q = 0; q < 3; ++q) edges.push_back({p, q});
    }
    const KPartiteHypergraph g({4, 5}, edges);
    const auto r = find_low_crossing_tuple(g, 3);
    EXPECT_EQ(r.crossings, 0U);
    EXPECT_TRUE(r.exhaustive);
}

TEST(LowCrossing, PerfectMatching) {
    std::vector<Tuple> edges;
    for (Vertex i = 0; i < 6; ++i) edges.push_back({i, i});
    const KPartiteHypergraph g({6, 6}, edges);
    EXPECT_EQ(find_low_crossing_tuple(g, 2).crossings, 2U);
    EXPECT_EQ(find_low_crossing_tuple(g, 1).crossings, 0U);
}

TEST(DoubleCount, Empty) {
    const KPartiteHypergraph h({3, 3, 3}, {});
    const auto r = erdos_double_count(h, 2);
    EXPECT_EQ(r.by_degrees, 0);
    EXPECT_TRUE(r.counts_agree);
    EXPECT_TRUE(r.chain_holds);
}

TEST(DoubleCount, CompleteBipartite) {
    std::vector<Tuple> edges;
    for (Vertex a = 0; a < 3; ++a) {
        for (Vertex b = 0; b < 3; ++b) edges.push_back({a, b});
    }
    const auto r = erdos_double_count(KPartiteHypergraph({3, 3}, edges), 2);
    EXPECT_EQ(r.by_degrees, 9);
    EXPECT_EQ(r.direct, 9);
    EXPECT_TRUE(r.chain_holds);
}

TEST(DoubleCount, SuiteHolds) {
    const auto r = suite_erdos(99, 60);
    EXPECT_TRUE(r.passed()) << (r.messages.empty() ? "" : r.messages.front());
}

TEST(Extremal, SmallValues) {
    const ForbiddenPattern k22{{2, 2}};
    EXPECT_EQ(max_edges_avoiding(k22, {2, 2}).value, 3U);
    EXPECT_EQ(max_edges_avoiding(k22, {3, 3}).value, 6U);
    EXPECT_EQ(max_edges_avoiding(k22, {4, 4}).value, 9U);
    EXPECT_EQ(max_edges_avoiding(ForbiddenPattern{{1, 1}}, {3, 3}).value, 0U);
}

TEST(Extremal, WitnessIsFreeAndAttainsValue) {
    const ForbiddenPattern pat{{2, 2}};
    const auto r = max_edges_avoiding(pat, {3, 4});
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(r.extremal_edges.size(), r.value);
    EXPECT_FALSE(contains_complete(KPartiteHypergraph({3, 4}, r.extremal_edges), pat).found);
}

TEST(Extremal, AgreesWithExhaustiveOracle) {
    for (const auto& sizes : std::vector<std::vector<std::size_t>>{{2, 3}, {3, 3}, {2, 4}, {2, 2, 2}}) {
        const std::vector<std::size_t> u(sizes.size(), 2);
        EXPECT_EQ(max_edges_avoiding(ForbiddenPattern{u}, sizes).value, oracle::max_edges_naive(sizes, u));
    }
}

TEST(Extremal, TooLarge) { EXPECT_THROW(max_edges_avoiding(ForbiddenPattern{{2, 2}}, {8, 8}), std::invalid_argument); }

TEST(HypergraphIo, RoundTrip) {
    std::mt19937_64 rng(4);
    const auto h = random_hypergraph(rng, {3, 4, 2}, 0.5);
    std::stringstream s;
    write_hypergraph(s, h);
    const auto back = read_hypergraph(s);
    EXPECT_EQ(back.part_sizes(), h.part_sizes());
    EXPECT_EQ(back.edges(), h.edges());
}

TEST(HypergraphIo, CommentsAndErrors) {
    std::istringstream ok("# two parts\n2 2 3\n0 2\n\n1 1\n");
    EXPECT_EQ(read_hypergraph(ok).num_edges(), 2U);
    std::istringstream empty("");
    EXPECT_THROW(read_hypergraph(empty), ParseError);
    std::istringstream range("2 2 2\n0 5\n");
    EXPECT_THROW(read_hypergraph(range), ParseError);
    std::istringstream extra("2 2 2\n0 1 1\n");
    EXPECT_THROW(read_hypergraph(extra), ParseError);
    std::istringstream neg("2 2 2\n-1 0\n");
    EXPECT_THROW(read_hypergraph(neg), ParseError);
}
