// zarank: command-line front end for the bound calculator, builders, detector,
// partitioner and experiment harness.
//
// Exit codes: 0 success / all verdicts pass, 1 usage or input error,
// 2 a verdict or check failed, 3 a search budget was exhausted.

#include "zarank/zarank.hpp"
#include "zarank/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace zarank;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;
constexpr int kExitBudget = 3;

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

/// Writes to `path`, or stdout when path is empty or "-".
template <typename F>
void with_output(const std::string& path, F&& f) {
    if (path.empty() || path == "-") {
        f(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    f(out);
}

ojson power_product_json(const PowerProduct& p) {
    ojson factors = ojson::array();
    for (const auto& [base, exp] : p.factors) factors.push_back({{"base", to_string(base)}, {"exponent", to_string(exp)}});
    return {{"coeff", to_string(p.coeff)},
            {"factors", factors},
            {"total_exponent", to_string(p.total_exponent())},
            {"approx", static_cast<double>(p.evaluate())}};
}

ojson bound_json(const BoundValue& b) {
    ojson terms = ojson::array();
    for (const auto& t : b.terms) terms.push_back(power_product_json(t));
    return {{"terms", terms}, {"growth_exponent", to_string(b.growth_exponent())}, {"approx", b.approx}};
}

ojson polynomial_json(const MultiPoly& p) {
    ojson terms = ojson::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"exponent", e}, {"coeff", to_string(c)}});
    return {{"num_vars", p.num_vars()}, {"degree", p.degree()}, {"terms", terms}, {"text", p.to_string()}};
}

ojson sign_json(const SignVector& s) {
    std::string out;
    for (auto x : s) out += x > 0 ? '+' : (x < 0 ? '-' : '0');
    return out;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
    std::string dims;
    std::string sizes;
    std::string eps = "0";
    std::string checks;
    std::string r = "2";
};

int run_bounds(const BoundsArgs& a) {
    std::vector<int> dims;
    for (const auto& s : split(a.dims)) dims.push_back(std::stoi(s));
    const DimProfile d(dims);
    SizeProfile n;
    for (const auto& s : split(a.sizes)) n.sizes.push_back(parse_rational(s));
    n.validate();
    const Rational eps = parse_rational(a.eps);
    if (n.k() != d.k()) throw std::invalid_argument("--dims and --sizes must have the same length");

    ojson out;
    ojson alphas = ojson::array();
    for (const auto& x : exponents(d).alphas) alphas.push_back(to_string(x));
    out["alphas"] = alphas;
    out["E"] = bound_json(eval_E(d, n));
    out["F"] = bound_json(eval_F(d, n, eps));
    out["predicted_exponent"] = to_string(predicted_exponent(d, eps));
    bool ok = true;
    ojson checks = ojson::object();
    for (const auto& c : split(a.checks)) {
        if (c == "matrix") {
            const auto rep = check_matrix_identity(d);
            ojson res = ojson::array();
            for (const auto& x : rep.residuals) res.push_back(to_string(x));
            checks["matrix"] = {{"ok", rep.ok}, {"residuals", res}};
            ok = ok && rep.ok;
        } else if (c == "scaling") {
            const Rational r = parse_rational(a.r);
            ojson per = ojson::array();
            for (std::size_t i = 0; i < d.k(); ++i) {
                const auto rep = check_scaling_identity(d, n, r, i);
                per.push_back({{"index", i}, {"ok", rep.ok}, {"r_exponent", to_string(rep.r_exponent)}});
                ok = ok && rep.ok;
            }
            checks["scaling"] = per;
        } else if (c == "monotonicity") {
            ojson per = ojson::array();
            for (std::size_t i = 0; i < d.k(); ++i) {
                if (d.dims[i] < 2) continue;
                const auto rep = check_monotonicity(d, n, i, eps);
                per.push_back({{"index", i},
                               {"hypothesis_met", rep.hypothesis_met},
                               {"holds", rep.holds},
                               {"lower", rep.lower},
                               {"upper", rep.upper}});
                if (rep.hypothesis_met) ok = ok && rep.holds;
            }
            checks["monotonicity"] = per;
        } else if (c == "dominance") {
            const auto rep = check_dominance(d, n, eps);
            checks["dominance"] = {{"applicable", rep.applicable},
                                   {"hypothesis_met", rep.hypothesis_met},
                                   {"holds", rep.holds},
                                   {"ratio", rep.ratio},
                                   {"constant", to_string(rep.constant)}};
            if (rep.applicable && rep.hypothesis_met) ok = ok && rep.holds;
        } else {
            throw std::invalid_argument("unknown check '" + c + "'");
        }
    }
    if (!checks.empty()) out["checks"] = checks;
    std::cout << out.dump(2) << '\n';
    return ok ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------------------

struct BuildArgs {
    std::string kind;
    std::string input;
    std::string output;
    std::string target = "one";
    std::size_t d = 2;
    long scale = 4;
    long u = 2;
    bool emit_config = false;
    bool count_only = false;
};

DetTarget parse_target(const std::string& t) {
    if (t == "one") return DetTarget::exactly_one;
    if (t == "pm1") return DetTarget::plus_minus_one;
    throw std::invalid_argument("--target must be one or pm1");
}

int run_build(const BuildArgs& a) {
    const DetTarget target = parse_target(a.target);
    if (a.kind == "spheres") {
        auto in = open_input(a.input);
        const SphereConfig s = read_spheres(in);
        const auto sh = sphere_intersection_hypergraph(s);
        if (!sh.degenerate.empty()) std::cerr << sh.degenerate.size() << " degenerate tuples (coincident spheres)\n";
        if (a.count_only) {
            std::cout << ojson{{"edges", sh.hypergraph.num_edges()}}.dump() << '\n';
        } else {
            with_output(a.output, [&](std::ostream& out) { write_hypergraph(out, sh.hypergraph); });
        }
        return kExitOk;
    }
    PointConfig p;
    if (a.kind == "st-config") {
        p = st_lower_bound_minor_config(a.d, a.scale);
    } else if (a.kind == "k1uu") {
        p = k1uu_config(a.d, a.u);
    } else if (a.kind == "minors" || a.kind == "triangles") {
        auto in = open_input(a.input);
        p = read_points(in);
    } else {
        throw std::invalid_argument("unknown --kind '" + a.kind + "'");
    }
    if (a.emit_config) {
        with_output(a.output, [&](std::ostream& out) { write_points(out, p); });
        return kExitOk;
    }
    if (a.kind == "triangles") {
        const auto h = almost_unit_area_hypergraph(p);
        if (a.count_only) {
            std::cout << ojson{{"points", p.size()}, {"edges", h.num_edges()}, {"triangles", h.num_edges() / 6}}.dump()
                      << '\n';
        } else {
            with_output(a.output, [&](std::ostream& out) { write_hypergraph(out, h); });
        }
        return kExitOk;
    }
    if (a.count_only) {
        std::cout << ojson{{"columns", p.size()}, {"unit_minors", count_unit_minors(p, target)}}.dump() << '\n';
        return kExitOk;
    }
    const auto h = unit_minor_hypergraph(p, target);
    with_output(a.output, [&](std::ostream& out) { write_hypergraph(out, h); });
    return kExitOk;
}

// ---------------------------------------------------------------------------

int run_detect(const std::string& path, const std::string& pattern, std::uint64_t budget) {
    auto in = open_input(path);
    const auto h = read_hypergraph(in);
    ForbiddenPattern pat;
    for (const auto& s : split(pattern)) pat.u.push_back(std::stoul(s));
    try {
        const auto res = contains_complete(h, pat, budget);
        ojson out{{"found", res.found}, {"work", res.work}};
        if (res.found) out["witness"] = res.witness;
        std::cout << out.dump(2) << '\n';
        return kExitOk;
    } catch (const BudgetExceeded& e) {
        std::cout << ojson{{"found", nullptr}, {"error", e.what()}}.dump(2) << '\n';
        return kExitBudget;
    }
}

/// Set system file: line 1 `g m`, then m lines `c x_1 .. x_c` (member size, then elements).
SetSystem read_set_system(std::istream& in) {
    std::string line;
    auto next = [&]() -> bool {
        while (std::getline(in, line)) {
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos != std::string::npos && line[pos] != '#') return true;
        }
        return false;
    };
    if (!next()) throw ParseError("set system file is empty");
    std::istringstream header(line);
    SetSystem f;
    std::size_t m = 0;
    if (!(header >> f.ground_size >> m)) throw ParseError("set system header must be `g m`");
    for (std::size_t i = 0; i < m; ++i) {
        if (!next()) throw ParseError("fewer member lines than announced");
        std::istringstream row(line);
        std::size_t c = 0;
        if (!(row >> c)) throw ParseError("member line must start with its size");
        std::vector<Vertex> mem(c);
        for (auto& x : mem) {
            if (!(row >> x)) throw ParseError("member line shorter than its size");
        }
        std::sort(mem.begin(), mem.end());
        f.members.push_back(std::move(mem));
    }
    f.validate();
    return f;
}

int run_shatter(const std::string& sets, const std::string& hypergraph, std::size_t z, bool sampled,
                std::uint64_t seed, std::size_t trials) {
    SetSystem f;
    if (!sets.empty()) {
        auto in = open_input(sets);
        f = read_set_system(in);
    } else if (!hypergraph.empty()) {
        auto in = open_input(hypergraph);
        f = SetSystem::neighborhoods(read_hypergraph(in));
    } else {
        throw std::invalid_argument("shatter needs --sets or --hypergraph");
    }
    try {
        const auto res = primal_shatter(f, z, sampled ? ShatterMode::sampled(seed, trials) : ShatterMode::exhaustive());
        std::cout << ojson{{"z", z}, {"value", res.value}, {"exact", res.exact}, {"argmax", res.argmax}}.dump(2) << '\n';
        return kExitOk;
    } catch (const BudgetExceeded& e) {
        std::cout << ojson{{"z", z}, {"value", nullptr}, {"error", e.what()}}.dump(2) << '\n';
        return kExitBudget;
    }
}

// ---------------------------------------------------------------------------

ojson partition_json(const Partition& p) {
    ojson factors = ojson::array();
    for (const auto& f : p.factors) factors.push_back(polynomial_json(f));
    ojson census = ojson::array();
    for (const auto& [s, c] : p.census) census.push_back({{"cell", sign_json(s)}, {"points", c}});
    return {{"num_points", p.num_points},
            {"target_r", p.target_r},
            {"slack", p.slack},
            {"factors", factors},
            {"degree", p.total_degree()},
            {"c_part", p.c_part()},
            {"cells", p.census.size()},
            {"max_cell", p.max_cell()},
            {"cell_bound", p.cell_bound},
            {"boundary", p.boundary},
            {"census", census}};
}

int run_partition(const std::string& points, long r, std::uint64_t seed, long slack, unsigned restarts) {
    auto in = open_input(points);
    const PointConfig p = read_points(in);
    PartitionOptions opt;
    opt.slack = slack;
    opt.restarts = restarts;
    opt.threads = worker_count();
    try {
        std::cout << partition_json(stone_tukey_partition(p, r, seed, opt)).dump(2) << '\n';
        return kExitOk;
    } catch (const PartitionError& e) {
        ojson out{{"error", e.what()}, {"partial", partition_json(e.partial())}};
        std::cout << out.dump(2) << '\n';
        return kExitBudget;
    }
}

// ---------------------------------------------------------------------------

int run_experiment_cmd(const std::string& spec_path, const std::string& out_path, const std::string& format,
                       bool timing) {
    auto in = open_input(spec_path);
    const ExperimentSpec spec = spec_from_json(nlohmann::json::parse(in));
    const ExperimentReport rep = run_experiment(spec);
    with_output(out_path, [&](std::ostream& out) { emit_report(out, rep, parse_format(format), timing); });
    std::cerr << rep.kind << ": verdict " << to_string(rep.verdict);
    if (rep.slope) std::cerr << ", slope " << *rep.slope;
    if (!rep.predicted.empty()) std::cerr << " (" << rep.comparison << ' ' << rep.predicted << ')';
    std::cerr << '\n';
    if (rep.verdict == Verdict::fail) return kExitFail;
    if (rep.budget_tripped()) return kExitBudget;
    return kExitOk;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
    std::vector<SuiteResult> results;
    if (suite == "lemmas") {
        results.push_back(suite_matrix_identity(seed));
        results.push_back(suite_scaling(seed));
        results.push_back(suite_monotonicity(seed));
        results.push_back(suite_dominance(seed));
    } else if (suite == "erdos") {
        results.push_back(suite_erdos(seed));
    } else if (suite == "minor-free") {
        results.push_back(suite_minor_free(seed));
    } else {
        throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.checked << " checked, " << r.skipped
                  << " skipped (hypothesis not met), " << r.failures << " failures\n";
        for (const auto& m : r.messages) std::cout << "  " << m << '\n';
        ok = ok && r.passed();
    }
    return ok ? kExitOk : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zarankiewicz-type bounds, geometric hypergraphs and partitioning experiments"};
    app.require_subcommand(1);

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "evaluate E and F and check the exponent identities");
    bounds->add_option("--dims", ba.dims, "comma-separated d_1..d_k")->required();
    bounds->add_option("--sizes", ba.sizes, "comma-separated n_1..n_k (rationals allowed)")->required();
    bounds->add_option("--eps", ba.eps, "epsilon as p/q");
    bounds->add_option("--check", ba.checks, "comma list of matrix,scaling,monotonicity,dominance");
    bounds->add_option("--r", ba.r, "scaling parameter r for the scaling check");

    BuildArgs bu;
    auto* build = app.add_subcommand("build", "build a geometric hypergraph or configuration");
    build->add_option("--kind", bu.kind, "minors|triangles|spheres|st-config|k1uu")->required();
    build->add_option("--input", bu.input, "points or spheres file");
    build->add_option("--out", bu.output, "output file (default stdout)");
    build->add_option("--target", bu.target, "determinant target: one or pm1");
    build->add_option("--d", bu.d, "dimension for generated configurations");
    build->add_option("--scale", bu.scale, "scale s for st-config");
    build->add_option("--u", bu.u, "u for k1uu");
    build->add_flag("--emit-config", bu.emit_config, "write the generated point configuration instead");
    build->add_flag("--count-only", bu.count_only, "print the edge / unit-minor count only");

    std::string det_path, det_pattern;
    std::uint64_t det_budget = kDefaultDetectionBudget;
    auto* detect = app.add_subcommand("detect", "search for a complete k-partite pattern");
    detect->add_option("--hypergraph", det_path, "hypergraph file")->required();
    detect->add_option("--pattern", det_pattern, "comma-separated u_1..u_k")->required();
    detect->add_option("--budget", det_budget, "node budget");

    std::string sh_sets, sh_hyper;
    std::size_t sh_z = 1;
    bool sh_sampled = false;
    std::uint64_t sh_seed = 1;
    std::size_t sh_trials = 10000;
    auto* shatter = app.add_subcommand("shatter", "primal shatter function of a set system");
    shatter->add_option("--sets", sh_sets, "set system file");
    shatter->add_option("--hypergraph", sh_hyper, "bipartite hypergraph; uses the neighborhoods of part 0");
    shatter->add_option("--z", sh_z, "subset size")->required();
    shatter->add_flag("--sampled", sh_sampled, "random z-subsets instead of all of them");
    shatter->add_option("--seed", sh_seed, "seed for sampled mode");
    shatter->add_option("--trials", sh_trials, "trials for sampled mode");

    std::string pa_points;
    long pa_r = 16;
    std::uint64_t pa_seed = 1;
    long pa_slack = 1;
    unsigned pa_restarts = 200;
    auto* partition = app.add_subcommand("partition", "polynomial partition of a point set");
    partition->add_option("--points", pa_points, "points file")->required();
    partition->add_option("--r", pa_r, "number of cells targeted");
    partition->add_option("--seed", pa_seed, "seed");
    partition->add_option("--slack", pa_slack, "allowed excess per side per cut");
    partition->add_option("--restarts", pa_restarts, "random starts per factor");

    std::string ex_spec, ex_out, ex_format = "json";
    bool ex_timing = false;
    auto* experiment = app.add_subcommand("experiment", "run a size sweep");
    experiment->add_option("--spec", ex_spec, "experiment spec (json)")->required();
    experiment->add_option("--out", ex_out, "report file (default stdout)");
    experiment->add_option("--format", ex_format, "json|csv|svg");
    experiment->add_flag("--timing", ex_timing, "include wall times in json");

    std::string ve_suite;
    std::uint64_t ve_seed = 20240601;
    auto* verify = app.add_subcommand("verify", "run a seeded property suite");
    verify->add_option("--suite", ve_suite, "lemmas|erdos|minor-free")->required();
    verify->add_option("--seed", ve_seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (*bounds) return run_bounds(ba);
        if (*build) return run_build(bu);
        if (*detect) return run_detect(det_path, det_pattern, det_budget);
        if (*shatter) return run_shatter(sh_sets, sh_hyper, sh_z, sh_sampled, sh_seed, sh_trials);
        if (*partition) return run_partition(pa_points, pa_r, pa_seed, pa_slack, pa_restarts);
        if (*experiment) return run_experiment_cmd(ex_spec, ex_out, ex_format, ex_timing);
        if (*verify) return run_verify(ve_suite, ve_seed);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
