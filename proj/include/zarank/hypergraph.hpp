#pragma once

// k-partite k-uniform hypergraphs and the combinatorial machinery around them:
// complete-subhypergraph detection, neighborhoods, set systems with their primal
// shatter function and crossing counts, low-crossing u-tuples, the double count
// behind the Erdos bound, and a brute-force Zarankiewicz oracle.

#include "zarank/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace zarank {

/// Raised when a search exceeds its work budget. Searches never return a
/// possibly-wrong answer instead.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Vertex = std::uint32_t;
using Tuple = std::vector<Vertex>;

class KPartiteHypergraph {
public:
    KPartiteHypergraph() = default;

    /// Edges are validated, sorted and deduplicated.
    KPartiteHypergraph(std::vector<std::size_t> part_sizes, std::vector<Tuple> edges)
        : part_sizes_(std::move(part_sizes)), edges_(std::move(edges)) {
        if (part_sizes_.empty()) throw std::invalid_argument("hypergraph needs k >= 1");
        long double space = 1;
        for (auto s : part_sizes_) space *= static_cast<long double>(std::max<std::size_t>(s, 1));
        if (space > static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2)) {
            throw std::invalid_argument("hypergraph index space exceeds 64-bit encoding");
        }
        for (const auto& e : edges_) {
            if (e.size() != k()) throw std::invalid_argument("edge arity differs from k");
            for (std::size_t i = 0; i < k(); ++i) {
                if (e[i] >= part_sizes_[i]) throw std::invalid_argument("edge index out of range");
            }
        }
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        index_.reserve(edges_.size() * 2);
        adjacency_.resize(k());
        for (std::size_t i = 0; i < k(); ++i) adjacency_[i].resize(part_sizes_[i]);
        for (std::size_t id = 0; id < edges_.size(); ++id) {
            index_.insert(encode(edges_[id]));
            for (std::size_t i = 0; i < k(); ++i) adjacency_[i][edges_[id][i]].push_back(id);
        }
    }

    std::size_t k() const { return part_sizes_.size(); }
    const std::vector<std::size_t>& part_sizes() const { return part_sizes_; }
    const std::vector<Tuple>& edges() const { return edges_; }
    std::size_t num_edges() const { return edges_.size(); }

    std::uint64_t encode(const Tuple& t) const {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < k(); ++i) code = code * part_sizes_[i] + t[i];
        return code;
    }

    bool contains(const Tuple& t) const {
        if (t.size() != k()) return false;
        for (std::size_t i = 0; i < k(); ++i) {
            if (t[i] >= part_sizes_[i]) return false;
        }
        return index_.count(encode(t)) != 0;
    }

    /// Ids (into edges()) of the edges through vertex v of part i.
    const std::vector<std::size_t>& incident(std::size_t part, Vertex v) const { return adjacency_[part][v]; }
    std::size_t degree(std::size_t part, Vertex v) const { return adjacency_[part][v].size(); }

private:
    std::vector<std::size_t> part_sizes_;
    std::vector<Tuple> edges_;
    std::unordered_set<std::uint64_t> index_;
    std::vector<std::vector<std::vector<std::size_t>>> adjacency_;
};

struct ForbiddenPattern {
    std::vector<std::size_t> u;
};

struct DetectionResult {
    bool found = false;
    std::vector<std::vector<Vertex>> witness;  ///< one vertex class per part, when found
    std::uint64_t work = 0;
};

inline constexpr std::uint64_t kDefaultDetectionBudget = 100'000'000;

namespace detail {

class CompleteSearch {
public:
    CompleteSearch(const KPartiteHypergraph& h, const ForbiddenPattern& pat, std::uint64_t budget)
        : h_(h), budget_(budget) {
        const std::size_t k = h.k();
        order_.resize(k);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return pat.u[a] > pat.u[b]; });
        u_.resize(k);
        sizes_.resize(k);
        for (std::size_t j = 0; j < k; ++j) {
            u_[j] = pat.u[order_[j]];
            sizes_[j] = h.part_sizes()[order_[j]];
        }
        stride_.assign(k, 1);
        for (std::size_t j = k; j-- > 1;) stride_[j - 1] = stride_[j] * sizes_[j];
        need_.assign(k + 1, 1);
        for (std::size_t j = k; j-- > 0;) need_[j] = need_[j + 1] * u_[j];
        chosen_.resize(k);
    }

    DetectionResult run() {
        DetectionResult res;
        std::vector<std::uint64_t> all;
        all.reserve(h_.num_edges());
        for (const auto& e : h_.edges()) {
            std::uint64_t code = 0;
            for (std::size_t j = 0; j < e.size(); ++j) code = code * sizes_[j] + e[order_[j]];
            all.push_back(code);
        }
        std::sort(all.begin(), all.end());
        charge(all.size());
        res.found = search(0, all);
        res.work = work_;
        if (res.found) {
            res.witness.resize(h_.k());
            for (std::size_t j = 0; j < h_.k(); ++j) res.witness[order_[j]] = chosen_[j];
        }
        return res;
    }

private:
    struct Group {
        Vertex v;
        std::vector<std::uint64_t> rest;
    };

    void charge(std::uint64_t units) {
        work_ += units;
        if (work_ > budget_) {
            throw BudgetExceeded("complete-subhypergraph search exceeded its budget of " + std::to_string(budget_) +
                                 " operations");
        }
    }

    bool search(std::size_t depth, const std::vector<std::uint64_t>& residual) {
        const std::size_t k = h_.k();
        if (residual.size() < need_[depth]) return false;
        if (depth + 1 == k) {
            chosen_[depth].assign(residual.begin(), residual.begin() + static_cast<std::ptrdiff_t>(u_[depth]));
            return true;
        }
        std::vector<Group> groups;
        const std::uint64_t stride = stride_[depth];
        for (std::size_t i = 0; i < residual.size();) {
            const std::uint64_t v = residual[i] / stride;
            Group g{static_cast<Vertex>(v), {}};
            while (i < residual.size() && residual[i] / stride == v) g.rest.push_back(residual[i++] % stride);
            if (g.rest.size() >= need_[depth + 1]) groups.push_back(std::move(g));
        }
        charge(residual.size());
        if (groups.size() < u_[depth]) return false;
        chosen_[depth].clear();
        return choose(depth, groups, 0, nullptr);
    }

    bool choose(std::size_t depth, const std::vector<Group>& groups, std::size_t start,
                const std::vector<std::uint64_t>* common) {
        if (chosen_[depth].size() == u_[depth]) return search(depth + 1, *common);
        const std::size_t remaining = u_[depth] - chosen_[depth].size();
        for (std::size_t g = start; g + remaining <= groups.size(); ++g) {
            std::vector<std::uint64_t> next;
            if (common == nullptr) {
                next = groups[g].rest;
            } else {
                std::set_intersection(common->begin(), common->end(), groups[g].rest.begin(), groups[g].rest.end(),
                                      std::back_inserter(next));
                charge(common->size() + groups[g].rest.size());
            }
            if (next.size() < need_[depth + 1]) continue;
            chosen_[depth].push_back(groups[g].v);
            if (choose(depth, groups, g + 1, &next)) return true;
            chosen_[depth].pop_back();
        }
        return false;
    }

    const KPartiteHypergraph& h_;
    std::uint64_t budget_;
    std::uint64_t work_ = 0;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> u_;
    std::vector<std::uint64_t> sizes_;
    std::vector<std::uint64_t> stride_;
    std::vector<std::uint64_t> need_;
    std::vector<std::vector<Vertex>> chosen_;
};

} // namespace detail

/// Does H contain K_{u_1,...,u_k}, i.e. classes U_i of u_i distinct vertices in part i with
/// every transversal an edge? Exact and deterministic. Parts are processed in order of
/// decreasing u_i; the candidate tuple set is narrowed by intersecting links, and a vertex
/// whose link is smaller than the product of the remaining u's is pruned.
inline DetectionResult contains_complete(const KPartiteHypergraph& h, const ForbiddenPattern& pat,
                                         std::uint64_t budget = kDefaultDetectionBudget) {
    if (pat.u.size() != h.k()) throw std::invalid_argument("pattern arity differs from k");
    for (std::size_t i = 0; i < h.k(); ++i) {
        if (pat.u[i] < 1) throw std::invalid_argument("pattern entries must be >= 1");
        if (pat.u[i] > h.part_sizes()[i]) return {};
    }
    return detail::CompleteSearch(h, pat, budget).run();
}

/// {v in part i : the tuple `others` with v inserted at slot i is an edge}.
inline std::vector<Vertex> neighborhood(const KPartiteHypergraph& h, std::size_t part, const Tuple& others) {
    if (part >= h.k() || others.size() + 1 != h.k()) throw std::invalid_argument("neighborhood: bad arity");
    Tuple t(h.k());
    for (std::size_t j = 0, o = 0; j < h.k(); ++j) {
        if (j != part) t[j] = others[o++];
    }
    std::vector<Vertex> out;
    for (Vertex v = 0; v < h.part_sizes()[part]; ++v) {
        t[part] = v;
        if (h.contains(t)) out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Set systems

struct SetSystem {
    std::size_t ground_size = 0;
    std::vector<std::vector<Vertex>> members;  ///< sorted, duplicates allowed across members

    void validate() const {
        for (const auto& m : members) {
            for (Vertex x : m) {
                if (x >= ground_size) throw std::invalid_argument("set system member leaves the ground set");
            }
        }
    }

    /// F = {N(p) : p in part `from`} over the ground set `to` of a bipartite hypergraph.
    static SetSystem neighborhoods(const KPartiteHypergraph& g, std::size_t from = 0) {
        if (g.k() != 2) throw std::invalid_argument("neighborhood set systems need k = 2");
        const std::size_t to = 1 - from;
        SetSystem f;
        f.ground_size = g.part_sizes()[to];
        f.members.resize(g.part_sizes()[from]);
        for (const auto& e : g.edges()) f.members[e[from]].push_back(e[to]);
        for (auto& m : f.members) std::sort(m.begin(), m.end());
        return f;
    }
};

namespace detail {

class Bitset {
public:
    explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

private:
    std::vector<std::uint64_t> words_;
};

inline std::vector<Bitset> member_bits(const SetSystem& f) {
    std::vector<Bitset> bits;
    bits.reserve(f.members.size());
    for (const auto& m : f.members) {
        Bitset b(f.ground_size);
        for (Vertex x : m) b.set(x);
        bits.push_back(std::move(b));
    }
    return bits;
}

inline std::size_t trace_count(const std::vector<Bitset>& bits, const std::vector<Vertex>& subset,
                               std::vector<std::uint64_t>& scratch) {
    scratch.clear();
    for (const auto& b : bits) {
        std::uint64_t t = 0;
        for (std::size_t j = 0; j < subset.size(); ++j) {
            if (b.test(subset[j])) t |= std::uint64_t{1} << j;
        }
        scratch.push_back(t);
    }
    std::sort(scratch.begin(), scratch.end());
    return static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

/// Advances a sorted combination of {0..n-1}; false when exhausted.
inline bool next_combination(std::vector<Vertex>& c, std::size_t n) {
    const std::size_t z = c.size();
    for (std::size_t i = z; i-- > 0;) {
        if (c[i] < n - z + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < z; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline long double binomial_ld(std::size_t n, std::size_t r) {
    if (r > n) return 0;
    long double out = 1;
    for (std::size_t i = 0; i < r; ++i) out = out * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    return out;
}

inline Integer binomial(const Integer& n, std::size_t r) {
    if (n < static_cast<long>(r)) return 0;
    Integer out = 1;
    for (std::size_t i = 0; i < r; ++i) out = out * (n - static_cast<long>(i)) / static_cast<long>(i + 1);
    return out;
}

} // namespace detail

struct ShatterMode {
    enum class Kind { exhaustive, sampled } kind = Kind::exhaustive;
    std::uint64_t seed = 0;
    std::size_t trials = 0;

    static ShatterMode exhaustive() { return {}; }
    static ShatterMode sampled(std::uint64_t seed, std::size_t trials) { return {Kind::sampled, seed, trials}; }
};

inline constexpr std::uint64_t kDefaultShatterBudget = 20'000'000;

struct ShatterResult {
    std::size_t value = 0;
    bool exact = true;            ///< false in sampled mode: value is a lower bound
    std::vector<Vertex> argmax;   ///< a z-subset attaining value
};

/// Primal shatter function pi_F(z) = max over z-subsets P' of |{A cap P' : A in F}|.
/// Exhaustive mode requires C(ground, z) * |F| within the budget; sampled mode
/// returns the best of `trials` seeded random subsets.
inline ShatterResult primal_shatter(const SetSystem& f, std::size_t z, ShatterMode mode = ShatterMode::exhaustive(),
                                    std::uint64_t budget = kDefaultShatterBudget) {
    f.validate();
    if (z < 1 || z > f.ground_size) throw std::invalid_argument("primal_shatter needs 1 <= z <= ground size");
    if (z > 64) throw std::invalid_argument("primal_shatter supports z <= 64");
    const auto bits = detail::member_bits(f);
    std::vector<std::uint64_t> scratch;
    ShatterResult res;
    if (mode.kind == ShatterMode::Kind::exhaustive) {
        const long double cost = detail::binomial_ld(f.ground_size, z) * static_cast<long double>(std::max<std::size_t>(f.members.size(), 1));
        if (cost > static_cast<long double>(budget)) {
            throw BudgetExceeded("exhaustive shatter needs ~" + std::to_string(static_cast<double>(cost)) +
                                 " trace evaluations, over the budget; use sampled mode");
        }
        std::vector<Vertex> c(z);
        std::iota(c.begin(), c.end(), 0);
        do {
            const std::size_t t = detail::trace_count(bits, c, scratch);
            if (t > res.value || res.argmax.empty()) {
                res.value = t;
                res.argmax = c;
            }
        } while (detail::next_combination(c, f.ground_size));
        return res;
    }
    res.exact = false;
    std::mt19937_64 rng(mode.seed);
    std::vector<Vertex> ground(f.ground_size);
    std::iota(ground.begin(), ground.end(), 0);
    for (std::size_t trial = 0; trial < mode.trials; ++trial) {
        std::shuffle(ground.begin(), ground.end(), rng);
        std::vector<Vertex> c(ground.begin(), ground.begin() + static_cast<std::ptrdiff_t>(z));
        std::sort(c.begin(), c.end());
        const std::size_t t = detail::trace_count(bits, c, scratch);
        if (t > res.value || res.argmax.empty()) {
            res.value = t;
            res.argmax = c;
        }
    }
    return res;
}

/// Number of members A with A cap B not in {empty, B}.
inline std::size_t crossing_count(const SetSystem& f, const std::vector<Vertex>& b) {
    std::vector<Vertex> sorted_b = b;
    std::sort(sorted_b.begin(), sorted_b.end());
    sorted_b.erase(std::unique(sorted_b.begin(), sorted_b.end()), sorted_b.end());
    for (Vertex x : sorted_b) {
        if (x >= f.ground_size) throw std::invalid_argument("crossing_count: B leaves the ground set");
    }
    std::size_t count = 0;
    for (const auto& a : f.members) {
        std::size_t inter = 0;
        for (Vertex x : sorted_b) inter += std::binary_search(a.begin(), a.end(), x) ? 1 : 0;
        if (inter != 0 && inter != sorted_b.size()) ++count;
    }
    return count;
}

struct LowCrossingResult {
    std::vector<Vertex> tuple;   ///< u vertices of Q (part 1)
    std::size_t crossings = 0;
    bool exhaustive = true;      ///< false: best found by sampling after the budget tripped
};

/// The u-subset of Q = part 1 crossed by the fewest neighborhoods N(p), p in P = part 0.
/// Falls back to seeded sampling (flagged) when C(|Q|, u) |P| exceeds the budget.
inline LowCrossingResult find_low_crossing_tuple(const KPartiteHypergraph& g, std::size_t u,
                                                 std::uint64_t budget = kDefaultShatterBudget,
                                                 std::uint64_t seed = 0, std::size_t trials = 10000) {
    if (g.k() != 2) throw std::invalid_argument("low-crossing tuples need a bipartite hypergraph");
    const std::size_t q = g.part_sizes()[1];
    if (u < 1 || u > q) throw std::invalid_argument("need 1 <= u <= |Q|");
    const SetSystem f = SetSystem::neighborhoods(g, 0);
    LowCrossingResult best;
    best.crossings = std::numeric_limits<std::size_t>::max();
    const long double cost = detail::binomial_ld(q, u) * static_cast<long double>(std::max<std::size_t>(f.members.size(), 1));
    auto consider = [&](const std::vector<Vertex>& c) {
        const std::size_t x = crossing_count(f, c);
        if (x < best.crossings) {
            best.crossings = x;
            best.tuple = c;
        }
    };
    if (cost <= static_cast<long double>(budget)) {
        std::vector<Vertex> c(u);
        std::iota(c.begin(), c.end(), 0);
        do {
            consider(c);
        } while (detail::next_combination(c, q));
        return best;
    }
    best.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::vector<Vertex> ground(q);
    std::iota(ground.begin(), ground.end(), 0);
    for (std::size_t t = 0; t < trials; ++t) {
        std::shuffle(ground.begin(), ground.end(), rng);
        std::vector<Vertex> c(ground.begin(), ground.begin() + static_cast<std::ptrdiff_t>(u));
        std::sort(c.begin(), c.end());
        consider(c);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Erdos double count

struct DoubleCountReport {
    Integer by_degrees;   ///< sum over y of C(N_y, u1)
    Integer direct;       ///< enumeration of (y, {x_1..x_u1})
    bool counts_agree = false;
    /// Q >= sum_{N_y>=u}(N_y/u)^u >= S^u/(u^u |Y'|^{u-1}) >= S^u/(u^u M^{u-1}) >= max(0,|E|-(u-1)M)^u/(u^u M^{u-1})
    std::vector<Rational> chain;
    bool chain_holds = false;
};

/// Counts Q = #{(y, {x_1..x_u1}) : y in P_2 x ... x P_k, x_i in P_1 distinct, (x_i, y) in E} two
/// ways and evaluates the Holder chain that turns Q into an edge bound. The chain uses
/// C(N, u) >= (N/u)^u for N >= u, the power-mean inequality, and S >= |E| - (u-1)M.
inline DoubleCountReport erdos_double_count(const KPartiteHypergraph& h, std::size_t u1,
                                            std::uint64_t budget = kDefaultShatterBudget) {
    if (h.k() < 2) throw std::invalid_argument("double count needs k >= 2");
    if (u1 < 1) throw std::invalid_argument("u1 must be >= 1");
    DoubleCountReport rep;

    std::vector<std::pair<Tuple, std::size_t>> degrees;
    {
        std::vector<Tuple> ys;
        ys.reserve(h.num_edges());
        for (const auto& e : h.edges()) ys.emplace_back(e.begin() + 1, e.end());
        std::sort(ys.begin(), ys.end());
        for (std::size_t i = 0; i < ys.size();) {
            std::size_t j = i;
            while (j < ys.size() && ys[j] == ys[i]) ++j;
            degrees.emplace_back(ys[i], j - i);
            i = j;
        }
    }
    rep.by_degrees = 0;
    for (const auto& [y, n] : degrees) rep.by_degrees += detail::binomial(Integer(n), u1);

    const std::size_t n1 = h.part_sizes()[0];
    Integer m_all = 1;
    for (std::size_t i = 1; i < h.k(); ++i) m_all *= h.part_sizes()[i];
    const long double cost = detail::binomial_ld(n1, u1) * static_cast<long double>(m_all.convert_to<double>()) *
                             static_cast<long double>(u1);
    if (cost > static_cast<long double>(budget)) throw BudgetExceeded("direct double count over budget");
    rep.direct = 0;
    if (u1 <= n1) {
        Tuple t(h.k());
        std::vector<Vertex> xs(u1);
        std::iota(xs.begin(), xs.end(), 0);
        do {
            Tuple y(h.k() - 1, 0);
            bool more = true;
            while (more) {
                bool all = true;
                for (Vertex x : xs) {
                    t[0] = x;
                    std::copy(y.begin(), y.end(), t.begin() + 1);
                    if (!h.contains(t)) {
                        all = false;
                        break;
                    }
                }
                if (all) ++rep.direct;
                more = false;
                for (std::size_t i = y.size(); i-- > 0;) {
                    if (++y[i] < h.part_sizes()[i + 1]) {
                        more = true;
                        break;
                    }
                    y[i] = 0;
                }
            }
        } while (detail::next_combination(xs, n1));
    }
    rep.counts_agree = rep.by_degrees == rep.direct;

    const Rational u(static_cast<long>(u1));
    const Rational m(m_all);
    Rational s = 0;
    Rational power_sum = 0;
    long active = 0;
    for (const auto& [y, n] : degrees) {
        if (n < u1) continue;
        s += Rational(static_cast<long>(n));
        power_sum += rpow(Rational(static_cast<long>(n)) / u, static_cast<long>(u1));
        ++active;
    }
    const Rational uu = rpow(u, static_cast<long>(u1));
    const Rational mean_bound = active == 0 ? Rational(0) : rpow(s, static_cast<long>(u1)) / (uu * rpow(Rational(active), static_cast<long>(u1) - 1));
    const Rational grid_bound = rpow(s, static_cast<long>(u1)) / (uu * rpow(m, static_cast<long>(u1) - 1));
    Rational floor_s = Rational(static_cast<long>(h.num_edges())) - (u - 1) * m;
    if (floor_s < 0) floor_s = 0;
    const Rational edge_bound = rpow(floor_s, static_cast<long>(u1)) / (uu * rpow(m, static_cast<long>(u1) - 1));
    rep.chain = {Rational(rep.by_degrees), power_sum, mean_bound, grid_bound, edge_bound};
    rep.chain_holds = true;
    for (std::size_t i = 0; i + 1 < rep.chain.size(); ++i) {
        if (rep.chain[i] < rep.chain[i + 1]) rep.chain_holds = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Brute-force Zarankiewicz oracle

struct ExtremalResult {
    std::size_t value = 0;
    bool exact = true;                 ///< false: budget tripped, value is a lower bound
    std::vector<Tuple> extremal_edges; ///< a pattern-free hypergraph attaining value
    std::uint64_t nodes = 0;
};

/// Maximum number of edges of a pattern-free k-partite hypergraph with the given part
/// sizes, by branch and bound over the full edge set (tiny instances only).
inline ExtremalResult max_edges_avoiding(const ForbiddenPattern& pat, const std::vector<std::size_t>& part_sizes,
                                         std::uint64_t node_budget = 50'000'000) {
    if (pat.u.size() != part_sizes.size()) throw std::invalid_argument("pattern arity differs from k");
    std::vector<Tuple> cells;
    {
        Tuple t(part_sizes.size(), 0);
        bool more = !part_sizes.empty() &&
                    std::all_of(part_sizes.begin(), part_sizes.end(), [](std::size_t s) { return s > 0; });
        while (more) {
            cells.push_back(t);
            more = false;
            for (std::size_t i = t.size(); i-- > 0;) {
                if (++t[i] < part_sizes[i]) {
                    more = true;
                    break;
                }
                t[i] = 0;
            }
        }
    }
    if (cells.size() > 63) throw std::invalid_argument("max_edges_avoiding is limited to 63 candidate edges");
    ExtremalResult best;
    std::vector<Tuple> current;
    bool tripped = false;

    auto free_of_pattern = [&](const std::vector<Tuple>& edges) {
        const KPartiteHypergraph h(part_sizes, edges);
        return !contains_complete(h, pat).found;
    };

    auto recurse = [&](auto&& self, std::size_t idx) -> void {
        if (tripped) return;
        if (++best.nodes > node_budget) {
            tripped = true;
            return;
        }
        if (current.size() > best.value || (best.extremal_edges.empty() && current.empty())) {
            best.value = current.size();
            best.extremal_edges = current;
        }
        if (idx == cells.size()) return;
        if (current.size() + (cells.size() - idx) <= best.value) return;
        current.push_back(cells[idx]);
        if (free_of_pattern(current)) self(self, idx + 1);
        current.pop_back();
        self(self, idx + 1);
    };
    recurse(recurse, 0);
    best.exact = !tripped;
    return best;
}

// ---------------------------------------------------------------------------
// Text format: line 1 `k p1 .. pk`, then one edge per line as k 0-based indices.

inline KPartiteHypergraph read_hypergraph(std::istream& in) {
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos != std::string::npos && line[pos] != '#') return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError("hypergraph file is empty");
    std::istringstream header(line);
    std::size_t k = 0;
    if (!(header >> k) || k == 0) throw ParseError("hypergraph header must start with k >= 1");
    std::vector<std::size_t> sizes(k);
    for (auto& s : sizes) {
        if (!(header >> s)) throw ParseError("hypergraph header lists fewer than k part sizes");
    }
    std::vector<Tuple> edges;
    while (next_line()) {
        std::istringstream row(line);
        Tuple t(k);
        for (auto& x : t) {
            long long v = -1;
            if (!(row >> v) || v < 0) throw ParseError("bad edge line: '" + line + "'");
            x = static_cast<Vertex>(v);
        }
        std::string extra;
        if (row >> extra) throw ParseError("edge line has more than k entries: '" + line + "'");
        edges.push_back(std::move(t));
    }
    try {
        return KPartiteHypergraph(std::move(sizes), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline void write_hypergraph(std::ostream& out, const KPartiteHypergraph& h) {
    out << h.k();
    for (auto s : h.part_sizes()) out << ' ' << s;
    out << '\n';
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
}

} // namespace zarank
