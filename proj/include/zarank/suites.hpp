#pragma once

// Seeded property suites shared by `zarank verify` and the acceptance runner.

#include "zarank/bounds.hpp"
#include "zarank/geometry.hpp"
#include "zarank/hypergraph.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace zarank {

struct SuiteResult {
    explicit SuiteResult(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    std::uint64_t checked = 0;          ///< assertions evaluated
    std::uint64_t skipped = 0;          ///< draws whose hypothesis failed (reported, not asserted)
    std::uint64_t failures = 0;
    std::vector<std::string> messages;  ///< first few failures

    bool passed() const { return failures == 0 && checked > 0; }

    void fail(std::string msg) {
        ++failures;
        if (messages.size() < 5) messages.push_back(std::move(msg));
    }
};

namespace detail {

inline std::string describe(const DimProfile& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.k(); ++i) s += (i ? "," : "") + std::to_string(d.dims[i]);
    return s + ")";
}

inline DimProfile random_dims(std::mt19937_64& rng, std::size_t k_lo, std::size_t k_hi, int d_lo, int d_hi) {
    std::uniform_int_distribution<std::size_t> kd(k_lo, k_hi);
    std::uniform_int_distribution<int> dd(d_lo, d_hi);
    DimProfile d;
    d.dims.resize(kd(rng));
    for (auto& x : d.dims) x = dd(rng);
    return d;
}

inline Rational random_epsilon(std::mt19937_64& rng) {
    static const Rational choices[] = {Rational(0), Rational(1, 100), Rational(1, 10), Rational(1, 3)};
    return choices[std::uniform_int_distribution<int>(0, 3)(rng)];
}

} // namespace detail

/// Exponent matrix identity on random profiles with k <= 6 and 2 <= d_i <= 9.
inline SuiteResult suite_matrix_identity(std::uint64_t seed, std::size_t draws = 1000) {
    SuiteResult r{"matrix-identity"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < draws; ++t) {
        const DimProfile d = detail::random_dims(rng, 1, 6, 2, 9);
        const auto rep = check_matrix_identity(d);
        ++r.checked;
        if (!rep.ok) r.fail("nonzero residual for d=" + detail::describe(d));
    }
    return r;
}

/// Scaling identity, exact, for every special index of each draw.
inline SuiteResult suite_scaling(std::uint64_t seed, std::size_t draws = 100) {
    SuiteResult r{"scaling"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> size(1, 1'000'000);
    std::uniform_int_distribution<long> den(1, 12);
    std::uniform_int_distribution<long> rr(2, 60);
    for (std::size_t t = 0; t < draws; ++t) {
        const DimProfile d = detail::random_dims(rng, 1, 5, 1, 6);
        SizeProfile n;
        for (std::size_t i = 0; i < d.k(); ++i) n.sizes.emplace_back(size(rng));
        const Rational radius(rr(rng), den(rng));
        for (std::size_t i = 0; i < d.k(); ++i) {
            const auto rep = check_scaling_identity(d, n, radius, i);
            ++r.checked;
            if (!rep.ok) r.fail("scaling fails for d=" + detail::describe(d) + " i=" + std::to_string(i));
        }
    }
    return r;
}

/// Monotonicity in d_i on draws meeting its hypothesis; collects `draws` hypothesis-met cases.
inline SuiteResult suite_monotonicity(std::uint64_t seed, std::size_t draws = 100) {
    SuiteResult r{"monotonicity"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> size(1, 1'000'000);
    for (std::size_t attempts = 0; r.checked < draws && attempts < 100 * draws; ++attempts) {
        const DimProfile d = detail::random_dims(rng, 2, 4, 2, 6);
        SizeProfile n;
        for (std::size_t i = 0; i < d.k(); ++i) n.sizes.emplace_back(size(rng));
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, d.k() - 1)(rng);
        const auto rep = check_monotonicity(d, n, i, detail::random_epsilon(rng));
        if (!rep.hypothesis_met) {
            ++r.skipped;
            continue;
        }
        ++r.checked;
        if (!rep.holds) r.fail("monotonicity fails for d=" + detail::describe(d) + " i=" + std::to_string(i));
    }
    return r;
}

/// Dominance with c = 1/2^{k+1} on draws meeting its hypothesis.
inline SuiteResult suite_dominance(std::uint64_t seed, std::size_t draws = 100) {
    SuiteResult r{"dominance"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> magnitude(2, 9);
    std::uniform_int_distribution<long> spread(1, 8);
    for (std::size_t attempts = 0; r.checked < draws && attempts < 100 * draws; ++attempts) {
        const DimProfile d = detail::random_dims(rng, 2, 4, 2, 6);
        long base = 1;
        for (int e = magnitude(rng); e > 0; --e) base *= 10;
        SizeProfile n;
        for (std::size_t i = 0; i < d.k(); ++i) n.sizes.emplace_back(base * spread(rng));
        const auto rep = check_dominance(d, n, detail::random_epsilon(rng));
        if (!rep.hypothesis_met) {
            ++r.skipped;
            continue;
        }
        ++r.checked;
        if (!rep.holds) r.fail("dominance fails for d=" + detail::describe(d) + " ratio=" + std::to_string(rep.ratio));
    }
    return r;
}

/// Two-way count of Q on random tripartite hypergraphs with parts of size <= 6.
inline SuiteResult suite_erdos(std::uint64_t seed, std::size_t draws = 200) {
    SuiteResult r{"erdos-double-count"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> part(1, 6);
    std::uniform_real_distribution<double> density(0.05, 0.95);
    std::uniform_int_distribution<std::size_t> uu(1, 3);
    for (std::size_t t = 0; t < draws; ++t) {
        std::vector<std::size_t> sizes{part(rng), part(rng), part(rng)};
        const double p = density(rng);
        std::bernoulli_distribution keep(p);
        std::vector<Tuple> edges;
        for (Vertex a = 0; a < sizes[0]; ++a) {
            for (Vertex b = 0; b < sizes[1]; ++b) {
                for (Vertex c = 0; c < sizes[2]; ++c) {
                    if (keep(rng)) edges.push_back({a, b, c});
                }
            }
        }
        const KPartiteHypergraph h(sizes, std::move(edges));
        const std::size_t u1 = uu(rng);
        const auto rep = erdos_double_count(h, u1);
        ++r.checked;
        if (!rep.counts_agree) r.fail("counts differ: " + rep.by_degrees.str() + " vs " + rep.direct.str());
        if (!rep.chain_holds) r.fail("inequality chain broken at draw " + std::to_string(t));
    }
    return r;
}

/// No K_{2,...,2} in the unit-minor hypergraph of random rational matrices with distinct
/// columns, d in {2,3,4}, n <= 10.
inline SuiteResult suite_minor_free(std::uint64_t seed, std::size_t draws = 200) {
    SuiteResult r{"minor-free"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dd(2, 4);
    std::uniform_int_distribution<long> num(-2, 2);
    std::uniform_int_distribution<long> den(1, 2);
    std::uint64_t with_edges = 0;
    for (std::size_t t = 0; t < draws; ++t) {
        const std::size_t d = dd(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(d, 10)(rng);
        PointConfig m;
        m.dim = d;
        std::unordered_set<Point, RationalVectorHash> seen;
        while (m.points.size() < n) {
            Point p(d);
            for (auto& x : p) x = Rational(num(rng), den(rng));
            if (seen.insert(p).second) m.points.push_back(std::move(p));
        }
        const auto h = unit_minor_hypergraph(m, DetTarget::exactly_one);
        if (h.num_edges() > 0) ++with_edges;
        const auto res = contains_complete(h, ForbiddenPattern{std::vector<std::size_t>(d, 2)});
        ++r.checked;
        if (res.found) r.fail("K_{2,...,2} found at draw " + std::to_string(t) + " (d=" + std::to_string(d) + ")");
    }
    if (with_edges == 0) r.fail("no draw produced a unit minor; the suite tested nothing");
    return r;
}

} // namespace zarank
