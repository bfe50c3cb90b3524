#pragma once

// Size sweeps: build a configuration per size, check the K_{u,...,u}-freeness
// precondition, count hyperedges exactly, fit a log-log slope and compare it with
// the predicted growth exponent. Reports serialize to json, csv and an svg scatter.

#include "zarank/bounds.hpp"
#include "zarank/geometry.hpp"
#include "zarank/hypergraph.hpp"
#include "zarank/partition.hpp"
#include "zarank/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

namespace zarank {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    std::size_t used = 0;
    std::vector<std::string> warnings;
};

/// Ordinary least squares of log(count) on log(n). Pairs with a zero count are dropped
/// with a warning; at least three usable pairs are required.
inline FitResult fit_exponent(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
    FitResult fit;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [n, count] : pairs) {
        if (count == 0) {
            fit.warnings.push_back("dropped n=" + std::to_string(n) + " with zero count");
            continue;
        }
        if (n == 0) throw std::invalid_argument("fit_exponent: n must be positive");
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(static_cast<double>(count)));
    }
    if (xs.size() < 3) throw std::invalid_argument("fit_exponent needs at least 3 pairs with nonzero counts");
    const double m = static_cast<double>(xs.size());
    double sx = 0;
    double sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("fit_exponent needs at least two distinct n");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fit.max_residual = std::max(fit.max_residual, std::abs(ys[i] - (fit.intercept + fit.slope * xs[i])));
    }
    fit.used = xs.size();
    return fit;
}

enum class ExperimentKind { minors, triangles, spheres, st_config, k1uu, partition };

inline std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::minors: return "minors";
        case ExperimentKind::triangles: return "triangles";
        case ExperimentKind::spheres: return "spheres";
        case ExperimentKind::st_config: return "st-config";
        case ExperimentKind::k1uu: return "k1uu";
        case ExperimentKind::partition: return "partition";
    }
    return "?";
}

inline ExperimentKind parse_kind(const std::string& s) {
    if (s == "minors") return ExperimentKind::minors;
    if (s == "triangles") return ExperimentKind::triangles;
    if (s == "spheres") return ExperimentKind::spheres;
    if (s == "st-config") return ExperimentKind::st_config;
    if (s == "k1uu") return ExperimentKind::k1uu;
    if (s == "partition") return ExperimentKind::partition;
    throw std::invalid_argument("unknown experiment kind '" + s + "'");
}

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::minors;
    std::size_t d = 2;
    std::vector<std::uint64_t> sizes;
    Rational epsilon{0};
    DetTarget target = DetTarget::plus_minus_one;
    std::uint64_t seed = 1;
    double tolerance = 0.15;
    std::size_t u = 2;                       ///< K_{u,...,u} used for the freeness check
    std::string generator = "random";        ///< triangles: random | clusters
    long r = 16;                             ///< partition kind
    long slack = 1;                          ///< partition kind
    std::uint64_t detection_budget = kDefaultDetectionBudget;
    std::uint64_t build_limit = 20'000'000;  ///< skip the freeness check above this many d-subsets
    std::size_t oracle_sizes = 2;            ///< smallest sizes recounted by the naive enumerator

    void validate() const {
        if (sizes.size() < 3) throw std::invalid_argument("a sweep needs at least 3 sizes");
        for (std::size_t i = 1; i < sizes.size(); ++i) {
            if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("sizes must be strictly increasing");
        }
        if (sizes.front() == 0) throw std::invalid_argument("sizes must be positive");
        if (epsilon < 0) throw std::invalid_argument("epsilon must be nonnegative");
        if (tolerance < 0) throw std::invalid_argument("tolerance must be nonnegative");
        switch (kind) {
            case ExperimentKind::minors:
            case ExperimentKind::st_config:
            case ExperimentKind::k1uu:
                if (d < 2) throw std::invalid_argument("minor experiments need d >= 2");
                break;
            case ExperimentKind::triangles:
                if (d != 2) throw std::invalid_argument("triangle experiments are planar (d = 2)");
                if (generator != "random" && generator != "clusters") throw std::invalid_argument("unknown generator");
                break;
            case ExperimentKind::spheres:
                if (d != 2 && d != 3) throw std::invalid_argument("sphere experiments need d = 2 or 3");
                break;
            case ExperimentKind::partition:
                if (d < 1) throw std::invalid_argument("partition experiments need d >= 1");
                if (r < 2) throw std::invalid_argument("partition experiments need r >= 2");
                break;
        }
    }
};

enum class Verdict { pass, fail, not_applicable };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::not_applicable: return "not_applicable";
    }
    return "?";
}

inline Verdict parse_verdict(const std::string& s) {
    if (s == "pass") return Verdict::pass;
    if (s == "fail") return Verdict::fail;
    if (s == "not_applicable") return Verdict::not_applicable;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

enum class CheckStatus { free, present, skipped, budget };

inline std::string to_string(CheckStatus c) {
    switch (c) {
        case CheckStatus::free: return "free";
        case CheckStatus::present: return "present";
        case CheckStatus::skipped: return "skipped";
        case CheckStatus::budget: return "budget";
    }
    return "?";
}

inline CheckStatus parse_check(const std::string& s) {
    if (s == "free") return CheckStatus::free;
    if (s == "present") return CheckStatus::present;
    if (s == "skipped") return CheckStatus::skipped;
    if (s == "budget") return CheckStatus::budget;
    throw std::invalid_argument("unknown check status '" + s + "'");
}

struct SizeRow {
    std::uint64_t size = 0;    ///< sweep parameter (n, or the scale / u of a construction)
    std::uint64_t n = 0;       ///< number of points, columns or spheres
    std::uint64_t count = 0;   ///< exact hyperedge count (unordered), or max cell for partitions
    CheckStatus check = CheckStatus::skipped;
    std::optional<bool> oracle_agrees;
    std::string note;
    double seconds = 0.0;
};

struct ExperimentReport {
    std::string kind;
    std::size_t d = 0;
    std::uint64_t seed = 0;
    std::string epsilon = "0";
    double tolerance = 0.15;
    std::vector<SizeRow> rows;
    std::optional<double> slope;
    std::optional<double> residual;
    std::string predicted;     ///< exact exponent, or empty when there is none
    double predicted_value = 0.0;
    std::string comparison;    ///< "<=", ">=" or "none"
    Verdict verdict = Verdict::fail;
    std::vector<std::string> notes;
    double wall_seconds = 0.0;

    bool budget_tripped() const {
        return std::any_of(rows.begin(), rows.end(), [](const SizeRow& r) { return r.check == CheckStatus::budget; });
    }
};

/// Worker count: hardware concurrency, capped by ZARANK_THREADS when set.
inline unsigned worker_count() {
    unsigned n = std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ZARANK_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

namespace detail {

inline long integer_sqrt_ceil(std::uint64_t n) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(r) < n) ++r;
    return std::max(1L, r);
}

/// Seeded point set with three tight clusters near the corners of a unit-area triangle.
inline PointConfig clustered_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> jitter(0, 1000);
    const Point corners[3] = {{Rational(0), Rational(0)}, {Rational(2), Rational(0)}, {Rational(0), Rational(1)}};
    PointConfig cfg;
    cfg.dim = 2;
    std::unordered_set<Point, RationalVectorHash> seen;
    while (cfg.points.size() < n) {
        const auto& c = corners[cfg.points.size() % 3];
        Point p{c[0] + Rational(jitter(rng), 100000), c[1] + Rational(jitter(rng), 100000)};
        if (seen.insert(p).second) cfg.points.push_back(std::move(p));
    }
    return cfg;
}

inline std::uint64_t size_seed(std::uint64_t seed, std::uint64_t size) { return splitmix(seed ^ splitmix(size)); }

/// Naive recount of almost-unit-area triangles through 3x3 homogeneous determinants.
inline std::uint64_t naive_triangles(const PointConfig& p, const Rational& lo, const Rational& hi) {
    std::uint64_t count = 0;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t l = j + 1; l < n; ++l) {
                std::vector<std::vector<Rational>> cols;
                for (std::size_t q : {i, j, l}) cols.push_back({Rational(1), p.points[q][0], p.points[q][1]});
                const Rational area = abs(column_determinant(cols)) / 2;
                if (lo <= area && area <= hi) ++count;
            }
        }
    }
    return count;
}

/// Naive recount of intersecting sphere groups through the general affine predicate.
inline std::uint64_t naive_spheres(const SphereConfig& s) {
    std::uint64_t count = 0;
    const std::size_t n = s.spheres.size();
    std::vector<Vertex> c(s.dim);
    std::iota(c.begin(), c.end(), 0);
    if (n < s.dim) return 0;
    do {
        std::vector<const Sphere*> group;
        for (auto i : c) group.push_back(&s.spheres[i]);
        if (spheres_share_point(group).intersect) ++count;
    } while (next_combination(c, n));
    return count;
}

inline CheckStatus freeness(const KPartiteHypergraph& h, std::size_t u, std::uint64_t budget) {
    try {
        const auto r = contains_complete(h, ForbiddenPattern{std::vector<std::size_t>(h.k(), u)}, budget);
        return r.found ? CheckStatus::present : CheckStatus::free;
    } catch (const BudgetExceeded&) {
        return CheckStatus::budget;
    }
}

inline bool buildable(std::size_t n, std::size_t d, std::uint64_t limit) {
    return binomial_ld(n, d) <= static_cast<long double>(limit);
}

inline SizeRow run_size(const ExperimentSpec& spec, std::size_t index) {
    const std::uint64_t size = spec.sizes[index];
    const bool with_oracle = index < spec.oracle_sizes;
    const std::uint64_t s = size_seed(spec.seed, size);
    const auto start = std::chrono::steady_clock::now();
    SizeRow row;
    row.size = size;
    auto minor_row = [&](const PointConfig& m) {
        row.n = m.size();
        row.count = count_unit_minors(m, spec.target);
        if (buildable(m.size(), m.dim, spec.build_limit)) {
            row.check = freeness(unit_minor_hypergraph(m, DetTarget::exactly_one), spec.u, spec.detection_budget);
        } else {
            row.note = "freeness check skipped: configuration too large to build";
        }
        if (with_oracle) row.oracle_agrees = count_unit_minors_naive(m) == row.count;
    };
    switch (spec.kind) {
        case ExperimentKind::minors: {
            const auto m = random_integer_matrix(spec.d, size, integer_sqrt_ceil(size), s);
            minor_row(m);
            break;
        }
        case ExperimentKind::st_config: {
            minor_row(st_lower_bound_minor_config(spec.d, static_cast<long>(size)));
            break;
        }
        case ExperimentKind::k1uu: {
            const auto m = k1uu_config(spec.d, static_cast<long>(size));
            row.n = m.size();
            row.count = count_unit_minors(m, spec.target);
            const auto h = unit_minor_hypergraph(m, DetTarget::exactly_one);
            std::vector<std::size_t> pattern(spec.d, size);
            pattern[0] = 1;
            try {
                row.check = contains_complete(h, ForbiddenPattern{pattern}, spec.detection_budget).found ? CheckStatus::present
                                                                                                        : CheckStatus::free;
            } catch (const BudgetExceeded&) {
                row.check = CheckStatus::budget;
            }
            row.note = "check is for K_{1,u,...,u}";
            if (with_oracle) row.oracle_agrees = count_unit_minors_naive(m) == row.count;
            break;
        }
        case ExperimentKind::triangles: {
            const auto p = spec.generator == "clusters" ? clustered_points(size, s)
                                                        : random_rational_points(2, size, 4, 4, s);
            const auto h = almost_unit_area_hypergraph(p);
            row.n = p.size();
            row.count = h.num_edges() / 6;
            row.check = freeness(h, spec.u, spec.detection_budget);
            if (with_oracle) row.oracle_agrees = naive_triangles(p, Rational(9, 10), Rational(11, 10)) == row.count;
            break;
        }
        case ExperimentKind::spheres: {
            const auto sc = random_spheres(spec.d, size, 2, 4, s);
            const auto sh = sphere_intersection_hypergraph(sc);
            row.n = sc.spheres.size();
            row.count = sh.hypergraph.num_edges() / (spec.d == 2 ? 2 : 6);
            row.check = freeness(sh.hypergraph, spec.u, spec.detection_budget);
            if (with_oracle) row.oracle_agrees = naive_spheres(sc) == row.count;
            break;
        }
        case ExperimentKind::partition: {
            const auto p = random_rational_points(spec.d, size, 1000, 1, s);
            PartitionOptions opt;
            opt.slack = spec.slack;
            row.n = p.size();
            try {
                const auto part = stone_tukey_partition(p, spec.r, s, opt);
                row.count = part.max_cell();
                row.check = CheckStatus::free;
                std::ostringstream note;
                note << "degree " << part.total_degree() << ", bound " << part.cell_bound << ", c_part "
                     << std::setprecision(6) << part.c_part();
                row.note = note.str();
                row.oracle_agrees = part.max_cell() <= part.cell_bound;
            } catch (const PartitionError& e) {
                row.check = CheckStatus::budget;
                row.note = e.what();
            }
            break;
        }
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

} // namespace detail

/// Runs every size (in a worker pool), then fits and judges. Deterministic given the spec.
inline ExperimentReport run_experiment(const ExperimentSpec& spec, unsigned workers = worker_count()) {
    spec.validate();
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.kind = to_string(spec.kind);
    rep.d = spec.d;
    rep.seed = spec.seed;
    rep.epsilon = to_string(spec.epsilon);
    rep.tolerance = spec.tolerance;
    rep.rows.resize(spec.sizes.size());

    std::vector<std::string> errors(spec.sizes.size());
    auto work = [&](std::size_t i) {
        try {
            rep.rows[i] = detail::run_size(spec, i);
        } catch (const std::exception& e) {
            rep.rows[i].size = spec.sizes[i];
            rep.rows[i].check = CheckStatus::budget;
            errors[i] = e.what();
        }
    };
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(spec.sizes.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < spec.sizes.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < spec.sizes.size(); i = next++) work(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) rep.rows[i].note = "error: " + errors[i];
    }

    // predicted exponent
    Rational predicted = -1;
    switch (spec.kind) {
        case ExperimentKind::minors: {
            const Rational d(static_cast<long>(spec.d));
            predicted = d - d / (d * d - d + 1);
            rep.comparison = "<=";
            break;
        }
        case ExperimentKind::st_config:
            predicted = Rational(static_cast<long>(spec.d)) - Rational(2, 3);
            rep.comparison = ">=";
            break;
        case ExperimentKind::triangles:
            predicted = predicted_exponent(DimProfile({2, 2, 2}), spec.epsilon);
            rep.comparison = "<=";
            break;
        case ExperimentKind::spheres:
            predicted = predicted_exponent(DimProfile(std::vector<int>(spec.d, static_cast<int>(spec.d) + 1)), spec.epsilon);
            rep.comparison = "<=";
            break;
        case ExperimentKind::k1uu:
        case ExperimentKind::partition:
            rep.comparison = "none";
            break;
    }
    if (predicted >= 0) {
        rep.predicted = to_string(predicted);
        rep.predicted_value = to_double(predicted);
    }

    const bool fit_wanted = spec.kind != ExperimentKind::k1uu && spec.kind != ExperimentKind::partition;
    if (fit_wanted) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        for (const auto& r : rep.rows) {
            if (r.n > 0) pairs.emplace_back(r.n, r.count);
        }
        try {
            const FitResult fit = fit_exponent(pairs);
            rep.slope = fit.slope;
            rep.residual = fit.max_residual;
            for (const auto& w : fit.warnings) rep.notes.push_back(w);
        } catch (const std::invalid_argument& e) {
            rep.notes.push_back(std::string("no fit: ") + e.what());
        }
    }

    const bool oracle_ok = std::all_of(rep.rows.begin(), rep.rows.end(),
                                       [](const SizeRow& r) { return !r.oracle_agrees.has_value() || *r.oracle_agrees; });
    if (!oracle_ok) rep.notes.push_back("naive recount disagrees");
    const bool any_present = std::any_of(rep.rows.begin(), rep.rows.end(),
                                         [](const SizeRow& r) { return r.check == CheckStatus::present; });
    switch (spec.kind) {
        case ExperimentKind::k1uu:
            rep.verdict = std::all_of(rep.rows.begin(), rep.rows.end(),
                                      [](const SizeRow& r) { return r.check == CheckStatus::present; }) && oracle_ok
                              ? Verdict::pass
                              : Verdict::fail;
            break;
        case ExperimentKind::partition:
            rep.verdict = oracle_ok && std::none_of(rep.rows.begin(), rep.rows.end(),
                                                    [](const SizeRow& r) { return r.check == CheckStatus::budget; })
                              ? Verdict::pass
                              : Verdict::fail;
            break;
        default:
            if (!oracle_ok || !rep.slope) {
                rep.verdict = Verdict::fail;
            } else if (spec.kind != ExperimentKind::st_config && any_present) {
                rep.verdict = Verdict::not_applicable;
                rep.notes.push_back("K_{u,...,u} present: bound not applicable");
            } else if (rep.comparison == "<=") {
                rep.verdict = *rep.slope <= rep.predicted_value + spec.tolerance ? Verdict::pass : Verdict::fail;
            } else {
                rep.verdict = *rep.slope >= rep.predicted_value - spec.tolerance ? Verdict::pass : Verdict::fail;
            }
            break;
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization

inline ExperimentSpec spec_from_json(const nlohmann::json& j) {
    ExperimentSpec s;
    s.kind = parse_kind(j.at("kind").get<std::string>());
    s.d = j.value("d", std::size_t{2});
    s.sizes = j.at("sizes").get<std::vector<std::uint64_t>>();
    if (j.contains("epsilon")) {
        const auto& e = j.at("epsilon");
        s.epsilon = e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>());
    }
    if (j.contains("target")) {
        const auto t = j.at("target").get<std::string>();
        if (t == "one") s.target = DetTarget::exactly_one;
        else if (t == "pm1") s.target = DetTarget::plus_minus_one;
        else throw std::invalid_argument("target must be 'one' or 'pm1'");
    }
    s.seed = j.value("seed", s.seed);
    s.tolerance = j.value("tolerance", s.tolerance);
    s.u = j.value("u", s.u);
    s.generator = j.value("generator", s.generator);
    s.r = j.value("r", s.r);
    s.slack = j.value("slack", s.slack);
    s.oracle_sizes = j.value("oracle_sizes", s.oracle_sizes);
    if (j.contains("budgets")) {
        const auto& b = j.at("budgets");
        s.detection_budget = b.value("detection", s.detection_budget);
        s.build_limit = b.value("build", s.build_limit);
    }
    s.validate();
    return s;
}

inline nlohmann::ordered_json to_json(const ExperimentReport& r, bool with_timing = false) {
    nlohmann::ordered_json j;
    j["kind"] = r.kind;
    j["d"] = r.d;
    j["seed"] = r.seed;
    j["epsilon"] = r.epsilon;
    j["tolerance"] = r.tolerance;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json o;
        o["size"] = row.size;
        o["n"] = row.n;
        o["count"] = row.count;
        o["check"] = to_string(row.check);
        o["oracle_agrees"] = row.oracle_agrees ? nlohmann::ordered_json(*row.oracle_agrees) : nlohmann::ordered_json();
        o["note"] = row.note;
        if (with_timing) o["seconds"] = row.seconds;
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    j["slope"] = r.slope ? nlohmann::ordered_json(*r.slope) : nlohmann::ordered_json();
    j["residual"] = r.residual ? nlohmann::ordered_json(*r.residual) : nlohmann::ordered_json();
    j["predicted"] = r.predicted;
    j["predicted_value"] = r.predicted_value;
    j["comparison"] = r.comparison;
    j["verdict"] = to_string(r.verdict);
    j["notes"] = r.notes;
    if (with_timing) j["wall_seconds"] = r.wall_seconds;
    return j;
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
    ExperimentReport r;
    r.kind = j.at("kind").get<std::string>();
    r.d = j.at("d").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.epsilon = j.at("epsilon").get<std::string>();
    r.tolerance = j.at("tolerance").get<double>();
    for (const auto& o : j.at("rows")) {
        SizeRow row;
        row.size = o.at("size").get<std::uint64_t>();
        row.n = o.at("n").get<std::uint64_t>();
        row.count = o.at("count").get<std::uint64_t>();
        row.check = parse_check(o.at("check").get<std::string>());
        if (!o.at("oracle_agrees").is_null()) row.oracle_agrees = o.at("oracle_agrees").get<bool>();
        row.note = o.at("note").get<std::string>();
        if (o.contains("seconds")) row.seconds = o.at("seconds").get<double>();
        r.rows.push_back(std::move(row));
    }
    if (!j.at("slope").is_null()) r.slope = j.at("slope").get<double>();
    if (!j.at("residual").is_null()) r.residual = j.at("residual").get<double>();
    r.predicted = j.at("predicted").get<std::string>();
    r.predicted_value = j.at("predicted_value").get<double>();
    r.comparison = j.at("comparison").get<std::string>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("wall_seconds")) r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
}

enum class ReportFormat { json, csv, svg };

inline ReportFormat parse_format(const std::string& s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "svg" || s == "svg-scatter") return ReportFormat::svg;
    throw std::invalid_argument("unknown report format '" + s + "'");
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void write_svg(std::ostream& out, const ExperimentReport& r) {
    constexpr double W = 480;
    constexpr double H = 360;
    constexpr double M = 40;
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : r.rows) {
        if (row.n > 0 && row.count > 0) pts.emplace_back(std::log(double(row.n)), std::log(double(row.count)));
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << M << "\" y=\"20\" font-size=\"12\">" << r.kind << " d=" << r.d
        << " (log n vs log count)</text>\n";
    if (!pts.empty()) {
        double x0 = pts[0].first, x1 = x0, y0 = pts[0].second, y1 = y0;
        for (const auto& [x, y] : pts) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
        if (x1 == x0) x1 = x0 + 1;
        if (y1 == y0) y1 = y0 + 1;
        auto sx = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
        auto sy = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };
        out << std::fixed << std::setprecision(2);
        for (const auto& [x, y] : pts) {
            out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"black\"/>\n";
        }
        if (r.slope) {
            // line through the centroid with the fitted slope
            double mx = 0, my = 0;
            for (const auto& [x, y] : pts) {
                mx += x;
                my += y;
            }
            mx /= double(pts.size());
            my /= double(pts.size());
            out << "<line x1=\"" << sx(x0) << "\" y1=\"" << sy(my + *r.slope * (x0 - mx)) << "\" x2=\"" << sx(x1)
                << "\" y2=\"" << sy(my + *r.slope * (x1 - mx)) << "\" stroke=\"red\"/>\n";
            out << "<text x=\"" << M << "\" y=\"" << H - 10 << "\" font-size=\"12\">slope " << std::setprecision(4)
                << *r.slope << "</text>\n";
        }
    }
    out << "</svg>\n";
}

} // namespace detail

inline void emit_report(std::ostream& out, const ExperimentReport& r, ReportFormat format, bool with_timing = false) {
    switch (format) {
        case ReportFormat::json:
            out << to_json(r, with_timing).dump(2) << '\n';
            break;
        case ReportFormat::csv:
            out << "size,n,count,check,oracle_agrees,note\n";
            for (const auto& row : r.rows) {
                out << row.size << ',' << row.n << ',' << row.count << ',' << to_string(row.check) << ','
                    << (row.oracle_agrees ? (*row.oracle_agrees ? "true" : "false") : "") << ','
                    << detail::csv_field(row.note) << '\n';
            }
            break;
        case ReportFormat::svg:
            detail::write_svg(out, r);
            break;
    }
    if (!out) throw std::runtime_error("failed to write report");
}

} // namespace zarank
