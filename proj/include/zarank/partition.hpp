#pragma once

// Constructive polynomial partitioning of finite point sets, product partitions
// of grids, sign-pattern counting and the three-way incidence split.
//
// A partition is a list of factor polynomials g_1..g_m. Each point gets the sign
// vector (sign g_1(p), ..., sign g_m(p)); points with a zero entry form the boundary,
// all others are grouped into cells by sign vector. Cells built this way refine the
// connected components of the complement of Z(g_1 ... g_m).
//
// For d >= 2 the factors are found level by level: g_j must cut every current cell
// into two halves, each open side holding at most ceil(s/2) + slack of the s points.
// Candidates live in the space of polynomials of degree D_j (the smallest D with
// C(D+d, d) - 1 >= 2^j), searched by alternating projection in double precision and
// then made exact: the exact polynomial vanishes on the chosen median points and all
// counts are re-verified over the rationals. For d = 1 the factors are the r - 1 linear
// quantile cuts.

#include "zarank/geometry.hpp"
#include "zarank/multipoly.hpp"
#include "zarank/rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace zarank {

using SignVector = std::vector<std::int8_t>;

struct PartitionOptions {
    long slack = 1;
    unsigned restarts = 200;     ///< random starts per factor before giving up
    unsigned iterations = 60;    ///< alternating-projection steps per start
    unsigned threads = 1;
};

struct Partition {
    std::size_t num_vars = 0;
    std::vector<MultiPoly> factors;
    long target_r = 1;
    long slack = 0;
    std::uint64_t num_points = 0;
    std::map<SignVector, std::uint64_t> census;  ///< cells only, boundary excluded
    std::uint64_t boundary = 0;
    std::uint64_t cell_bound = 0;                ///< guaranteed per-cell maximum
    std::vector<SignVector> point_signs;         ///< per input point (empty for grids)

    unsigned total_degree() const {
        unsigned deg = 0;
        for (const auto& f : factors) deg += f.degree();
        return deg;
    }

    /// total degree / r^(1/d)
    double c_part() const {
        if (num_vars == 0 || target_r < 1) return 0.0;
        return total_degree() / std::pow(static_cast<double>(target_r), 1.0 / static_cast<double>(num_vars));
    }

    std::uint64_t max_cell() const {
        std::uint64_t m = 0;
        for (const auto& [s, c] : census) m = std::max(m, c);
        return m;
    }
};

class PartitionError : public std::runtime_error {
public:
    PartitionError(const std::string& what, Partition partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const Partition& partial() const { return partial_; }

private:
    Partition partial_;
};

inline SignVector sign_vector(const std::vector<MultiPoly>& polys, const Point& p) {
    SignVector s(polys.size());
    for (std::size_t i = 0; i < polys.size(); ++i) s[i] = static_cast<std::int8_t>(polys[i].sign_at(p));
    return s;
}

inline bool on_boundary(const SignVector& s) {
    return std::find(s.begin(), s.end(), std::int8_t{0}) != s.end();
}

/// Number of distinct sign vectors realized on P.
inline std::size_t sign_pattern_count(const std::vector<MultiPoly>& polys, const PointConfig& p) {
    for (const auto& f : polys) {
        if (f.num_vars() != p.dim) throw std::invalid_argument("polynomial arity does not match the points");
    }
    std::set<SignVector> seen;
    for (const auto& x : p.points) seen.insert(sign_vector(polys, x));
    return seen.size();
}

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

inline unsigned ceil_log2(std::uint64_t r) {
    unsigned m = 0;
    while ((std::uint64_t{1} << m) < r) ++m;
    return m;
}

/// Smallest D with C(D + d, d) - 1 >= parts.
inline unsigned level_degree(std::size_t d, std::uint64_t parts) {
    for (unsigned D = 1;; ++D) {
        long double c = 1;
        for (std::size_t i = 1; i <= d; ++i) c = c * static_cast<long double>(D + i) / static_cast<long double>(i);
        if (c - 1 >= static_cast<long double>(parts)) return D;
    }
}

namespace detail {

/// Rebuilds census and boundary from point_signs.
inline void tally(Partition& part) {
    part.census.clear();
    part.boundary = 0;
    for (const auto& s : part.point_signs) {
        if (on_boundary(s)) ++part.boundary;
        else ++part.census[s];
    }
}

/// Recomputes every sign vector from the final factor polynomials and compares.
inline void recount_or_throw(const Partition& part, const PointConfig& p) {
    std::map<SignVector, std::uint64_t> census;
    std::uint64_t boundary = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const SignVector s = sign_vector(part.factors, p.points[i]);
        if (s != part.point_signs[i]) throw std::logic_error("partition recount disagrees at point " + std::to_string(i));
        if (on_boundary(s)) ++boundary;
        else ++census[s];
    }
    if (census != part.census || boundary != part.boundary) throw std::logic_error("partition census recount mismatch");
}

inline std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Partition partition_1d(const PointConfig& p, long r, long slack) {
    const std::size_t n = p.size();
    std::vector<Rational> v;
    v.reserve(n);
    for (const auto& x : p.points) v.push_back(x[0]);
    std::sort(v.begin(), v.end());
    const std::uint64_t cap = ceil_div(n, static_cast<std::uint64_t>(r));
    std::vector<Rational> roots;
    for (std::uint64_t t = 1; t < static_cast<std::uint64_t>(r); ++t) {
        const std::uint64_t pos = t * cap;
        if (pos >= n) break;
        Rational root = v[pos - 1] < v[pos] ? Rational((v[pos - 1] + v[pos]) / 2) : v[pos];
        if (roots.empty() || roots.back() != root) roots.push_back(std::move(root));
    }
    Partition part;
    part.num_vars = 1;
    part.target_r = r;
    part.slack = slack;
    part.num_points = n;
    part.cell_bound = cap;
    for (const auto& root : roots) {
        part.factors.push_back(MultiPoly::variable(1, 0) - MultiPoly::constant(1, root));
    }
    for (const auto& x : p.points) part.point_signs.push_back(sign_vector(part.factors, x));
    return part;
}

/// Affine normalization of a point set into [-1, 1]^d.
struct Normalizer {
    std::vector<Rational> center;
    std::vector<Rational> half_width;

    explicit Normalizer(const PointConfig& p) : center(p.dim), half_width(p.dim, Rational(1)) {
        for (std::size_t i = 0; i < p.dim; ++i) {
            Rational lo = p.points[0][i];
            Rational hi = lo;
            for (const auto& x : p.points) {
                lo = std::min(lo, x[i]);
                hi = std::max(hi, x[i]);
            }
            center[i] = (lo + hi) / 2;
            if (hi > lo) half_width[i] = (hi - lo) / 2;
        }
    }

    Point apply(const Point& x) const {
        Point z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - center[i]) / half_width[i];
        return z;
    }

    /// Polynomial in normalized variables rewritten in the original ones.
    MultiPoly to_original(const MultiPoly& g) const {
        std::vector<Rational> a(center.size());
        std::vector<Rational> b(center.size());
        for (std::size_t i = 0; i < center.size(); ++i) {
            a[i] = 1 / half_width[i];
            b[i] = -center[i] / half_width[i];
        }
        return g.compose_affine(a, b);
    }
};

struct Lift {
    std::vector<Exponent> monomials;
    std::vector<std::vector<Rational>> exact;  ///< per point, monomial values
    Eigen::MatrixXd approx;                    ///< n x L
};

inline Lift make_lift(const std::vector<Point>& z, std::size_t d, unsigned degree) {
    Lift lift;
    lift.monomials = monomials_up_to(d, degree);
    const std::size_t L = lift.monomials.size();
    lift.exact.resize(z.size());
    lift.approx.resize(static_cast<Eigen::Index>(z.size()), static_cast<Eigen::Index>(L));
    std::vector<std::vector<Rational>> powers(d, std::vector<Rational>(degree + 1));
    for (std::size_t p = 0; p < z.size(); ++p) {
        for (std::size_t i = 0; i < d; ++i) {
            powers[i][0] = 1;
            for (unsigned k = 1; k <= degree; ++k) powers[i][k] = powers[i][k - 1] * z[p][i];
        }
        auto& row = lift.exact[p];
        row.resize(L);
        for (std::size_t l = 0; l < L; ++l) {
            Rational v = 1;
            for (std::size_t i = 0; i < d; ++i) {
                if (lift.monomials[l][i]) v *= powers[i][lift.monomials[l][i]];
            }
            lift.approx(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(l)) = to_double(v);
            row[l] = std::move(v);
        }
    }
    return lift;
}

struct Cut {
    std::vector<Rational> coeffs;       ///< in the lifted basis
    std::vector<std::int8_t> signs;     ///< per point of the parts (others 0)
};

/// Exact side counts of a candidate; true when every part is cut within slack.
inline bool verify_cut(const Lift& lift, const std::vector<std::vector<std::size_t>>& parts, const std::vector<Rational>& c,
                       long slack, std::vector<std::int8_t>& signs) {
    Rational v;
    Rational t;
    for (const auto& part : parts) {
        const std::uint64_t limit = ceil_div(part.size(), 2) + static_cast<std::uint64_t>(slack);
        std::uint64_t neg = 0;
        std::uint64_t pos = 0;
        for (std::size_t p : part) {
            v = 0;
            const auto& row = lift.exact[p];
            for (std::size_t l = 0; l < c.size(); ++l) {
                if (c[l] == 0) continue;
                t = c[l] * row[l];
                v += t;
            }
            const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
            signs[p] = static_cast<std::int8_t>(s);
            if (s < 0) ++neg;
            if (s > 0) ++pos;
        }
        if (neg > limit || pos > limit) return false;
    }
    return true;
}

/// One randomized start: alternating projection onto polynomials vanishing at the
/// current medians, with exact verification whenever the float counts look acceptable.
inline std::optional<Cut> attempt_cut(const Lift& lift, const std::vector<std::vector<std::size_t>>& parts, long slack,
                                      unsigned iterations, std::uint64_t seed) {
    const Eigen::Index L = lift.approx.cols();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd c(L);
    for (Eigen::Index l = 0; l < L; ++l) c(l) = gauss(rng);

    std::vector<std::size_t> medians;
    std::vector<std::size_t> previous;
    std::vector<std::pair<double, std::size_t>> vals;
    std::vector<std::int8_t> signs(lift.exact.size(), 0);
    for (unsigned it = 0; it < iterations; ++it) {
        const Eigen::VectorXd v = lift.approx * c;
        medians.clear();
        for (const auto& part : parts) {
            if (part.empty()) continue;
            vals.clear();
            for (std::size_t p : part) vals.emplace_back(v(static_cast<Eigen::Index>(p)), p);
            auto mid = vals.begin() + static_cast<std::ptrdiff_t>((vals.size() - 1) / 2);
            std::nth_element(vals.begin(), mid, vals.end());
            medians.push_back(mid->second);
        }
        if (medians == previous) break;
        Eigen::MatrixXd m(static_cast<Eigen::Index>(medians.size()), L);
        for (std::size_t i = 0; i < medians.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = lift.approx.row(static_cast<Eigen::Index>(medians[i]));
        const Eigen::VectorXd correction = m.completeOrthogonalDecomposition().solve(m * c);
        c -= correction;
        const double norm = c.norm();
        if (!(norm > 1e-12)) return std::nullopt;
        c /= norm;
        previous = medians;
    }
    if (previous.empty()) return std::nullopt;

    // Exact polynomial through the chosen medians, close to c.
    std::vector<Point> rows;
    for (std::size_t p : previous) rows.push_back(lift.exact[p]);
    const auto sol = solve_affine(rows, std::vector<Rational>(rows.size(), Rational(0)), static_cast<std::size_t>(L));
    if (!sol || sol->null_basis.empty()) return std::nullopt;
    std::vector<Rational> exact(static_cast<std::size_t>(L), Rational(0));
    constexpr long long kGrid = 1LL << 24;
    for (std::size_t k = 0; k < sol->null_basis.size(); ++k) {
        const auto& basis = sol->null_basis[k];
        const std::size_t free_index = sol->free_vars[k];
        const Rational t(static_cast<long long>(std::llround(c(static_cast<Eigen::Index>(free_index)) * kGrid)), kGrid);
        if (t == 0) continue;
        for (std::size_t l = 0; l < exact.size(); ++l) {
            if (basis[l] != 0) exact[l] += t * basis[l];
        }
    }
    if (std::all_of(exact.begin(), exact.end(), [](const Rational& q) { return q == 0; })) return std::nullopt;
    if (!verify_cut(lift, parts, exact, slack, signs)) return std::nullopt;
    return Cut{std::move(exact), std::move(signs)};
}

} // namespace detail

/// Partition of P by m = ceil(log2 r) factors (d >= 2) or r - 1 linear cuts (d = 1) such
/// that every sign-vector cell holds at most ceil(|P|/r) (1 + slack)^m points; the bound
/// is verified on the result. Throws PartitionError carrying the factors found so far
/// when a level cannot be cut within the search budget.
inline Partition stone_tukey_partition(const PointConfig& p, long r, std::uint64_t seed,
                                       const PartitionOptions& opt = {}) {
    p.validate();
    if (r < 2) throw std::invalid_argument("partition needs r >= 2");
    if (p.size() < static_cast<std::size_t>(r)) throw std::invalid_argument("partition needs |P| >= r");
    if (opt.slack < 0) throw std::invalid_argument("slack must be nonnegative");
    const std::size_t n = p.size();
    const std::size_t d = p.dim;

    Partition part;
    if (d == 1) {
        part = detail::partition_1d(p, r, opt.slack);
    } else {
        part.num_vars = d;
        part.target_r = r;
        part.slack = opt.slack;
        part.num_points = n;
        const unsigned m = ceil_log2(static_cast<std::uint64_t>(r));
        std::uint64_t bound = ceil_div(n, static_cast<std::uint64_t>(r));
        for (unsigned j = 0; j < m; ++j) bound *= static_cast<std::uint64_t>(1 + opt.slack);
        part.cell_bound = bound;
        part.point_signs.assign(n, SignVector{});

        const detail::Normalizer norm(p);
        std::vector<Point> z;
        z.reserve(n);
        for (const auto& x : p.points) z.push_back(norm.apply(x));

        for (unsigned level = 0; level < m; ++level) {
            std::map<SignVector, std::vector<std::size_t>> groups;
            for (std::size_t i = 0; i < n; ++i) {
                if (!on_boundary(part.point_signs[i])) groups[part.point_signs[i]].push_back(i);
            }
            std::vector<std::vector<std::size_t>> parts;
            for (auto& [s, members] : groups) parts.push_back(std::move(members));

            const unsigned degree = level_degree(d, std::uint64_t{1} << level);
            const detail::Lift lift = detail::make_lift(z, d, degree);
            std::optional<detail::Cut> found;
            const unsigned threads = std::max(1U, opt.threads);
            for (unsigned base = 0; base < opt.restarts && !found; base += threads) {
                const unsigned batch = std::min(threads, opt.restarts - base);
                std::vector<std::optional<detail::Cut>> results(batch);
                auto run = [&](unsigned t) {
                    const std::uint64_t s = detail::splitmix(seed ^ detail::splitmix((std::uint64_t{level} << 32) | (base + t)));
                    results[t] = detail::attempt_cut(lift, parts, opt.slack, opt.iterations, s);
                };
                if (batch == 1) {
                    run(0);
                } else {
                    std::vector<std::thread> pool;
                    for (unsigned t = 0; t < batch; ++t) pool.emplace_back(run, t);
                    for (auto& th : pool) th.join();
                }
                for (auto& res : results) {
                    if (res) {
                        found = std::move(res);
                        break;
                    }
                }
            }
            if (!found) {
                detail::tally(part);
                throw PartitionError("no acceptable cut found at level " + std::to_string(level), std::move(part));
            }
            MultiPoly g(d);
            for (std::size_t l = 0; l < lift.monomials.size(); ++l) g.add_term(lift.monomials[l], found->coeffs[l]);
            part.factors.push_back(norm.to_original(g).primitive());
            for (std::size_t i = 0; i < n; ++i) {
                // boundary points keep a 0 for the new factor too; only their existing zero matters
                part.point_signs[i].push_back(on_boundary(part.point_signs[i]) ? std::int8_t(part.factors.back().sign_at(p.points[i]))
                                                                               : found->signs[i]);
            }
        }
    }
    detail::tally(part);
    detail::recount_or_throw(part, p);
    if (part.max_cell() > part.cell_bound) {
        throw PartitionError("cell bound violated", part);
    }
    return part;
}

struct ProductPartition {
    std::vector<Partition> factors;
    std::vector<std::size_t> factor_sizes;
    Partition grid;  ///< over the concatenated variables; census counts grid points
};

/// Partition of the grid P_1 x ... x P_k by h = f_1(x-block 1) ... f_k(x-block k). A factor
/// with r_i = 1 contributes the constant polynomial 1.
inline ProductPartition product_partition(const std::vector<std::pair<PointConfig, long>>& parts, std::uint64_t seed,
                                          const PartitionOptions& opt = {}) {
    if (parts.empty()) throw std::invalid_argument("product partition needs at least one factor");
    ProductPartition out;
    std::size_t total_vars = 0;
    std::uint64_t bound = 1;
    unsigned levels = 0;
    long target = 1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& [pc, r] = parts[i];
        pc.validate();
        Partition f;
        if (r == 1) {
            f.num_vars = pc.dim;
            f.factors = {MultiPoly::constant(pc.dim, 1)};
            f.target_r = 1;
            f.slack = opt.slack;
            f.num_points = pc.size();
            f.cell_bound = pc.size();
            f.point_signs.assign(pc.size(), SignVector{1});
            detail::tally(f);
        } else {
            f = stone_tukey_partition(pc, r, detail::splitmix(seed + i), opt);
            levels += pc.dim == 1 ? 0 : ceil_log2(static_cast<std::uint64_t>(r));
        }
        bound *= ceil_div(pc.size(), static_cast<std::uint64_t>(r));
        total_vars += pc.dim;
        target *= r;
        out.factor_sizes.push_back(pc.size());
        out.factors.push_back(std::move(f));
    }
    for (unsigned j = 0; j < levels; ++j) bound *= static_cast<std::uint64_t>(1 + opt.slack);

    Partition& grid = out.grid;
    grid.num_vars = total_vars;
    grid.target_r = target;
    grid.slack = opt.slack;
    grid.cell_bound = bound;
    grid.num_points = 1;
    std::size_t offset = 0;
    for (const auto& f : out.factors) {
        for (const auto& g : f.factors) grid.factors.push_back(g.embed(total_vars, offset));
        offset += f.num_vars;
        grid.num_points *= f.num_points;
    }
    // grid cells are products of factor cells
    std::map<SignVector, std::uint64_t> census{{SignVector{}, 1}};
    for (const auto& f : out.factors) {
        std::map<SignVector, std::uint64_t> next;
        for (const auto& [s, c] : census) {
            for (const auto& [t, e] : f.census) {
                SignVector u = s;
                u.insert(u.end(), t.begin(), t.end());
                next[u] += c * e;
            }
        }
        census = std::move(next);
    }
    grid.census = std::move(census);
    std::uint64_t in_cells = 0;
    for (const auto& [s, c] : grid.census) in_cells += c;
    grid.boundary = grid.num_points - in_cells;
    if (grid.max_cell() > grid.cell_bound) throw PartitionError("grid cell bound violated", grid);
    return out;
}

/// Sign vector of every grid point, in row-major order over (i_1, ..., i_k).
inline std::vector<SignVector> grid_point_signs(const ProductPartition& pp) {
    std::vector<SignVector> out{SignVector{}};
    for (const auto& f : pp.factors) {
        std::vector<SignVector> next;
        next.reserve(out.size() * f.point_signs.size());
        for (const auto& s : out) {
            for (const auto& t : f.point_signs) {
                SignVector u = s;
                u.insert(u.end(), t.begin(), t.end());
                next.push_back(std::move(u));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Coordinates of grid point `index` (row-major) in the concatenated variables.
inline Point grid_point(const std::vector<PointConfig>& factors, std::uint64_t index) {
    std::vector<std::size_t> idx(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
        idx[i] = static_cast<std::size_t>(index % factors[i].size());
        index /= factors[i].size();
    }
    Point x;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& p = factors[i].points[idx[i]];
        x.insert(x.end(), p.begin(), p.end());
    }
    return x;
}

/// Independent check of a product census by enumerating the grid and evaluating the
/// embedded polynomials; only sensible for small grids.
inline bool verify_grid_census(const ProductPartition& pp, const std::vector<PointConfig>& factors) {
    std::map<SignVector, std::uint64_t> census;
    std::uint64_t boundary = 0;
    for (std::uint64_t i = 0; i < pp.grid.num_points; ++i) {
        const SignVector s = sign_vector(pp.grid.factors, grid_point(factors, i));
        if (on_boundary(s)) ++boundary;
        else ++census[s];
    }
    return census == pp.grid.census && boundary == pp.grid.boundary;
}

struct CellIncidences {
    std::uint64_t points = 0;
    std::uint64_t i2 = 0;
    std::uint64_t i3 = 0;
};

struct IncidenceTriple {
    std::uint64_t i1 = 0;
    std::uint64_t i2 = 0;
    std::uint64_t i3 = 0;
    std::map<SignVector, CellIncidences> per_cell;

    std::uint64_t total() const { return i1 + i2 + i3; }
};

/// Splits the incidences (gamma, p) with membership[gamma][p] into: I1, p on the zero set;
/// I2, gamma contains every point of p's cell; I3, gamma contains some but not all of it.
/// Containment is decided on the finite point set of each cell.
inline IncidenceTriple classify_incidences(const std::vector<SignVector>& point_signs,
                                           const std::vector<std::vector<bool>>& membership) {
    std::map<SignVector, std::vector<std::size_t>> cells;
    for (std::size_t p = 0; p < point_signs.size(); ++p) {
        if (!on_boundary(point_signs[p])) cells[point_signs[p]].push_back(p);
    }
    IncidenceTriple out;
    for (const auto& [s, pts] : cells) out.per_cell[s].points = pts.size();
    std::uint64_t brute = 0;
    for (const auto& row : membership) {
        if (row.size() != point_signs.size()) throw std::invalid_argument("membership row does not cover every point");
        for (std::size_t p = 0; p < row.size(); ++p) {
            if (!row[p]) continue;
            ++brute;
            if (on_boundary(point_signs[p])) ++out.i1;
        }
        for (const auto& [s, pts] : cells) {
            std::uint64_t hit = 0;
            for (std::size_t p : pts) hit += row[p] ? 1 : 0;
            if (hit == 0) continue;
            auto& cell = out.per_cell[s];
            if (hit == pts.size()) {
                out.i2 += hit;
                cell.i2 += hit;
            } else {
                out.i3 += hit;
                cell.i3 += hit;
            }
        }
    }
    if (out.total() != brute) throw std::logic_error("incidence classification lost incidences");
    return out;
}

inline IncidenceTriple classify_incidences(const Partition& part, const std::vector<std::vector<bool>>& membership) {
    return classify_incidences(part.point_signs, membership);
}

} // namespace zarank
