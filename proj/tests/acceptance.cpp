// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [criterion numbers...]   (default: all)

#include "oracles.hpp"
#include "zarank/suites.hpp"
#include "zarank/zarank.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace zarank;

namespace {

// pinned tolerances
constexpr double kExponentTolerance = 0.15;
constexpr double kDegreeBand = 4.0;
constexpr long kSlack = 1;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> run;
};

std::string fmt(double x, int prec = 3) {
    std::ostringstream s;
    s.precision(prec);
    s << std::fixed << x;
    return s.str();
}

std::string suite_detail(const SuiteResult& r) {
    std::string s = std::to_string(r.checked) + " checked, " + std::to_string(r.failures) + " failed";
    if (r.skipped) s += ", " + std::to_string(r.skipped) + " draws missed the hypothesis";
    if (!r.messages.empty()) s += "; first: " + r.messages.front();
    return s;
}

Outcome c1() {
    const auto r = suite_matrix_identity(kSeed, 1000);
    return {r.passed() && r.checked == 1000, suite_detail(r)};
}

Outcome c2() {
    const auto r = suite_scaling(kSeed, 100);
    return {r.passed(), "100 draws, " + suite_detail(r)};
}

Outcome c3() {
    const auto m = suite_monotonicity(kSeed, 100);
    const auto d = suite_dominance(kSeed + 1, 100);
    const bool ok = m.passed() && d.passed() && m.checked == 100 && d.checked == 100;
    return {ok, "monotonicity: " + suite_detail(m) + " | dominance: " + suite_detail(d)};
}

Outcome c4() {
    const auto r = suite_minor_free(kSeed, 200);
    return {r.passed() && r.checked == 200, suite_detail(r)};
}

Outcome c5() {
    const auto r = suite_erdos(kSeed, 200);
    return {r.passed() && r.checked == 200, suite_detail(r)};
}

// Reiman's counting bound for K_{2,2}-free m x n bipartite graphs:
// z <= (m + sqrt(m^2 + 4 m n (n - 1))) / 2, checked exactly as (2z - m)^2 <= m^2 + 4mn(n-1).
bool within_kst(std::uint64_t z, std::uint64_t m, std::uint64_t n) {
    const long long lhs = 2 * static_cast<long long>(z) - static_cast<long long>(m);
    if (lhs <= 0) return true;
    return lhs * lhs <= static_cast<long long>(m * m + 4 * m * n * (n - 1));
}

std::vector<std::vector<std::size_t>> patterns_for(const std::vector<std::size_t>& sizes) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> twos(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) twos[i] = std::min<std::size_t>(2, sizes[i]);
    out.push_back(twos);
    if (sizes.size() == 2) {
        for (std::size_t i = 0; i < 2; ++i) {
            auto u = twos;
            if (sizes[i] >= 3) {
                u[i] = 3;
                out.push_back(u);
            }
        }
    } else {
        auto u = twos;
        u[0] = 1;
        out.push_back(u);
    }
    return out;
}

Outcome c6() {
    std::ostringstream detail;
    bool ok = true;

    // exhaustive extremal values for (a, b), 2 <= a <= b <= 4
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> z;
    double c_measured = 0;
    for (std::size_t a = 2; a <= 4; ++a) {
        for (std::size_t b = a; b <= 4; ++b) {
            const auto r = max_edges_avoiding(ForbiddenPattern{{2, 2}}, {a, b});
            if (!r.exact) ok = false;
            z[{a, b}] = r.value;
            if (!within_kst(r.value, a, b) || !within_kst(r.value, b, a)) ok = false;
            c_measured = std::max(c_measured, static_cast<double>(r.value) / (static_cast<double>(b) * std::sqrt(double(a)) + a));
        }
    }
    for (const auto& [ab, v] : z) {
        const auto [a, b] = ab;
        if (z.count({a, b + 1}) && z[{a, b + 1}] < v) ok = false;
        if (z.count({a + 1, b}) && z[{a + 1, b}] < v) ok = false;
    }
    detail << "z(2,2)=" << z[{2, 2}] << " z(3,3)=" << z[{3, 3}] << " z(4,4)=" << z[{4, 4}]
           << ", measured c = z/(b sqrt(a) + a) <= " << fmt(c_measured);

    // detector vs naive: every hypergraph whose part sizes sum to <= 9 and whose edge space
    // has <= 20 cells; seeded samples for the larger shapes
    std::uint64_t exhaustive = 0, sampled = 0, mismatches = 0;
    std::mt19937_64 rng(kSeed);
    std::vector<std::vector<std::size_t>> shapes;
    std::function<void(std::vector<std::size_t>&, std::size_t, std::size_t)> gen = [&](auto& cur, std::size_t lo,
                                                                                       std::size_t left) {
        if (cur.size() >= 2) shapes.push_back(cur);
        if (cur.size() == 4) return;
        for (std::size_t s = lo; s <= left; ++s) {
            cur.push_back(s);
            gen(cur, s, left - s);
            cur.pop_back();
        }
    };
    std::vector<std::size_t> cur;
    gen(cur, 1, 9);
    for (const auto& sizes : shapes) {
        const auto cells = oracle::all_cells(sizes);
        const auto pats = patterns_for(sizes);
        auto check = [&](std::uint64_t mask) {
            const auto h = oracle::from_mask(sizes, cells, mask);
            for (const auto& u : pats) {
                if (contains_complete(h, ForbiddenPattern{u}).found != oracle::contains_complete_naive(h, u)) ++mismatches;
            }
        };
        if (cells.size() <= 20) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size()); ++mask) check(mask);
            exhaustive += std::uint64_t{1} << cells.size();
        } else {
            std::uniform_real_distribution<double> dens(0.3, 1.0);
            for (int t = 0; t < 20000; ++t) {
                std::bernoulli_distribution keep(dens(rng));
                std::uint64_t mask = 0;
                for (std::size_t i = 0; i < cells.size(); ++i) mask |= std::uint64_t{keep(rng)} << i;
                check(mask);
            }
            sampled += 20000;
        }
    }
    if (mismatches) ok = false;
    detail << "; detector vs naive: " << exhaustive << " hypergraphs exhaustively, " << sampled
           << " sampled from shapes with > 20 cells, " << mismatches << " mismatches";
    return {ok, detail.str()};
}

Outcome c7() {
    ExperimentSpec s;
    s.kind = ExperimentKind::st_config;
    s.d = 2;
    s.sizes = {4, 8, 16, 32};
    s.tolerance = kExponentTolerance;
    s.seed = kSeed;
    const auto rep = run_experiment(s, worker_count());
    const double need = 4.0 / 3.0 - kExponentTolerance;
    std::ostringstream d;
    for (const auto& row : rep.rows) d << "s=" << row.size << ":" << row.count << " ";
    const bool oracle_ok = std::all_of(rep.rows.begin(), rep.rows.end(),
                                       [](const SizeRow& r) { return !r.oracle_agrees || *r.oracle_agrees; });
    const bool ok = rep.slope && *rep.slope >= need && oracle_ok && !rep.budget_tripped();
    d << "slope " << (rep.slope ? fmt(*rep.slope) : "none") << " (need >= " << fmt(need) << ")";
    return {ok, d.str()};
}

Outcome c8() {
    ExperimentSpec s;
    s.kind = ExperimentKind::minors;
    s.d = 2;
    s.sizes = {20, 40, 80, 160};
    s.tolerance = kExponentTolerance;
    s.seed = kSeed;
    s.oracle_sizes = 4;
    const auto rep = run_experiment(s, worker_count());
    const double cap = 4.0 / 3.0 + kExponentTolerance;
    std::ostringstream d;
    for (const auto& row : rep.rows) d << "n=" << row.n << ":" << row.count << "(" << to_string(row.check) << ") ";
    const bool oracle_ok = std::all_of(rep.rows.begin(), rep.rows.end(),
                                       [](const SizeRow& r) { return r.oracle_agrees.value_or(false); });
    const bool ok = rep.slope && *rep.slope <= cap && oracle_ok && rep.verdict == Verdict::pass;
    d << "slope " << (rep.slope ? fmt(*rep.slope) : "none") << " (need <= " << fmt(cap) << "), verdict "
      << to_string(rep.verdict);
    return {ok, d.str()};
}

Outcome c9() {
    bool ok = true;
    std::uint64_t runs = 0, failures = 0;
    double lo = 1e300, hi = 0;
    std::string first_error;
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<std::size_t> nn(64, 512);
    PartitionOptions opt;
    opt.slack = kSlack;
    for (std::size_t d : {1U, 2U}) {
        for (long r : {4L, 16L}) {
            for (int t = 0; t < 50; ++t) {
                const std::size_t n = nn(rng);
                const std::uint64_t seed = rng();
                const auto p = d == 1 ? random_rational_points(1, n, 64, 16, seed) : random_rational_points(2, n, 16, 4, seed);
                ++runs;
                try {
                    const auto part = stone_tukey_partition(p, r, seed, opt);
                    // independent recount of the census
                    std::map<SignVector, std::uint64_t> census;
                    std::uint64_t boundary = 0;
                    for (const auto& x : p.points) {
                        const auto s = sign_vector(part.factors, x);
                        if (on_boundary(s)) ++boundary;
                        else ++census[s];
                    }
                    std::uint64_t bound = ceil_div(n, static_cast<std::uint64_t>(r));
                    if (d > 1) {
                        for (unsigned j = 0; j < ceil_log2(static_cast<std::uint64_t>(r)); ++j) bound *= 1 + kSlack;
                    }
                    const bool good = census == part.census && boundary == part.boundary && part.max_cell() <= bound;
                    if (!good) {
                        ++failures;
                        if (first_error.empty()) first_error = "census or bound check failed";
                    }
                    lo = std::min(lo, part.c_part());
                    hi = std::max(hi, part.c_part());
                } catch (const std::exception& e) {
                    ++failures;
                    if (first_error.empty()) first_error = e.what();
                }
            }
        }
    }
    if (failures || hi > kDegreeBand * lo) ok = false;
    std::string d = std::to_string(runs) + " partitions, " + std::to_string(failures) + " failed; deg/r^(1/d) in [" +
                    fmt(lo) + ", " + fmt(hi) + "], band factor " + fmt(hi / lo, 2) + " (need <= " + fmt(kDegreeBand, 1) + ")";
    if (!first_error.empty()) d += "; first: " + first_error;
    return {ok, d};
}

Outcome c10() {
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<long> coef(-4, 4);
    std::uniform_int_distribution<int> dim(1, 2);
    std::uniform_int_distribution<std::size_t> sz(4, 12);
    std::uint64_t incidences = 0, bad = 0;
    PartitionOptions opt;
    opt.slack = kSlack;
    for (int t = 0; t < 100; ++t) {
        std::vector<PointConfig> grid;
        std::vector<std::pair<PointConfig, long>> parts;
        for (int i = 0; i < 2; ++i) {
            const std::size_t d = static_cast<std::size_t>(dim(rng));
            const std::size_t n = sz(rng);
            auto p = random_rational_points(d, n, 8, 2, rng());
            const long r = std::vector<long>{1, 2, 4}[static_cast<std::size_t>(t + i) % 3];
            parts.emplace_back(p, r);
            grid.push_back(std::move(p));
        }
        const auto pp = product_partition(parts, rng(), opt);
        if (!verify_grid_census(pp, grid)) ++bad;
        const auto signs = grid_point_signs(pp);
        const std::size_t vars = pp.grid.num_vars;
        // semi-algebraic sets: halfspaces and balls in the concatenated coordinates
        std::vector<std::vector<bool>> membership;
        std::uint64_t brute = 0;
        for (int g = 0; g < 12; ++g) {
            Point a(vars), c(vars);
            for (auto& x : a) x = coef(rng);
            for (auto& x : c) x = Rational(coef(rng) + 4, 1);
            const Rational rhs(coef(rng) * 3);
            std::vector<bool> row(signs.size());
            for (std::uint64_t i = 0; i < signs.size(); ++i) {
                const Point x = grid_point(grid, i);
                Rational v = 0;
                if (g % 2 == 0) {
                    for (std::size_t k = 0; k < vars; ++k) v += a[k] * x[k];
                    row[i] = v <= rhs;
                } else {
                    for (std::size_t k = 0; k < vars; ++k) v += (x[k] - c[k]) * (x[k] - c[k]);
                    row[i] = v <= Rational(16);
                }
                brute += row[i];
            }
            membership.push_back(std::move(row));
        }
        try {
            const auto inc = classify_incidences(signs, membership);
            if (inc.i1 + inc.i2 + inc.i3 != brute) ++bad;
        } catch (const std::exception&) {
            ++bad;
        }
        incidences += brute;
    }
    return {bad == 0, "100 grid instances, " + std::to_string(incidences) + " incidences, " + std::to_string(bad) +
                          " mismatches"};
}

Outcome c11() {
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<long> c(-8, 8);
    std::uniform_int_distribution<std::size_t> nn(3, 10);
    std::uint64_t checks = 0, bad = 0, tight = 0;
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = nn(rng);
        // coarse grids give collinear triples; fine ones are generic
        const auto p = random_rational_points(2, n, t % 3 == 0 ? 3 : 40, 1, rng());
        std::vector<Halfplane> hs;
        for (int j = 0; j < 150; ++j) hs.push_back({Rational(c(rng)), Rational(c(rng)), Rational(c(rng) * 5, 2)});
        // halfplane-point incidence graph, F = neighborhoods of the halfplanes
        std::vector<Tuple> edges;
        for (std::size_t h = 0; h < hs.size(); ++h) {
            for (std::size_t i = 0; i < n; ++i) {
                if (hs[h].contains(p.points[i])) edges.push_back({static_cast<Vertex>(h), static_cast<Vertex>(i)});
            }
        }
        const auto f = SetSystem::neighborhoods(KPartiteHypergraph({hs.size(), n}, edges), 0);
        const auto all = all_halfplane_traces(p);
        for (std::size_t z = 1; z <= n; ++z) {
            const std::size_t pf = primal_shatter(f, z).value;
            const std::size_t arrangement = primal_shatter(all, z).value;
            ++checks;
            if (pf > arrangement || arrangement > z * z - z + 2) ++bad;
            tight += arrangement == z * z - z + 2;
        }
    }
    return {bad == 0, std::to_string(checks) + " (system, z) pairs, " + std::to_string(bad) + " over the arrangement count, " +
                          std::to_string(tight) + " arrangement counts equal to z^2 - z + 2"};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "exponent matrix identity", 5, c1},
        {2, "scaling identity", 5, c2},
        {3, "monotonicity and dominance", 10, c3},
        {4, "unit-minor hypergraph has no K_{2,...,2}", 120, c4},
        {5, "double count agreement", 30, c5},
        {6, "Zarankiewicz oracle and detector", 300, c6},
        {7, "unit-minor lower-bound exponent", 180, c7},
        {8, "random unit-minor exponent", 300, c8},
        {9, "partitioning contract", 300, c9},
        {10, "incidence conservation", 30, c10},
        {11, "halfplane shatter growth", 60, c11},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << " -- " << o.detail
                  << " [" << fmt(secs, 2) << " s, limit " << c.limit_seconds << " s" << (in_time ? "" : ", OVER") << "]"
                  << std::endl;
    }
    return failed ? 1 : 0;
}
