#pragma once

// Geometric hypergraph builders over exact rationals: unit minors of a d x n
// matrix, almost-unit-area triangles, circle and sphere intersection hypergraphs,
// and the column sets of the unit-minor lower-bound and K_{1,u,...,u} constructions.

#include "zarank/determinant.hpp"
#include "zarank/hypergraph.hpp"
#include "zarank/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace zarank {

using Point = std::vector<Rational>;

struct PointConfig {
    std::size_t dim = 0;
    std::vector<Point> points;
    std::vector<std::string> labels;  ///< empty or one per point

    PointConfig() = default;
    PointConfig(std::size_t d, std::vector<Point> pts) : dim(d), points(std::move(pts)) { validate(); }

    std::size_t size() const { return points.size(); }

    void validate() const {
        if (dim == 0) throw std::invalid_argument("point configuration needs dimension >= 1");
        for (const auto& p : points) {
            if (p.size() != dim) throw std::invalid_argument("point has the wrong number of coordinates");
        }
        if (!labels.empty() && labels.size() != points.size()) {
            throw std::invalid_argument("labels must be absent or one per point");
        }
    }

    bool has_distinct_points() const {
        std::unordered_set<Point, RationalVectorHash> seen;
        for (const auto& p : points) {
            if (!seen.insert(p).second) return false;
        }
        return true;
    }

    void require_distinct() const {
        if (!has_distinct_points()) throw std::invalid_argument("configuration has repeated columns");
    }
};

struct Sphere {
    Point center;
    Rational radius_squared;

    bool operator==(const Sphere&) const = default;
};

struct SphereConfig {
    std::size_t dim = 0;
    std::vector<Sphere> spheres;

    void validate(bool require_distinct = true) const {
        if (dim != 2 && dim != 3) throw std::invalid_argument("sphere configurations support d = 2 or 3");
        for (const auto& s : spheres) {
            if (s.center.size() != dim) throw std::invalid_argument("sphere center has the wrong dimension");
            if (s.radius_squared <= 0) throw std::invalid_argument("radius_squared must be positive");
        }
        if (require_distinct) {
            for (std::size_t i = 0; i < spheres.size(); ++i) {
                for (std::size_t j = i + 1; j < spheres.size(); ++j) {
                    if (spheres[i] == spheres[j]) throw std::invalid_argument("coincident spheres");
                }
            }
        }
    }
};

enum class DetTarget { exactly_one, plus_minus_one };

inline bool in_target(const Rational& det, DetTarget target) {
    if (det == 1) return true;
    return target == DetTarget::plus_minus_one && det == -1;
}

namespace detail {

inline int permutation_sign(const std::vector<std::size_t>& perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        for (std::size_t j = i + 1; j < perm.size(); ++j) {
            if (perm[i] > perm[j]) sign = -sign;
        }
    }
    return sign;
}

/// Calls f(subset) for every sorted r-subset of {0..n-1}.
template <typename F>
void for_each_subset(std::size_t n, std::size_t r, F&& f) {
    if (r > n) return;
    std::vector<Vertex> c(r);
    std::iota(c.begin(), c.end(), 0);
    do {
        f(c);
    } while (r > 0 && next_combination(c, n));
}

/// Adds every ordering of `subset` as an edge when pred(sign of the ordering) holds.
template <typename Pred>
void add_orderings(const std::vector<Vertex>& subset, std::vector<Tuple>& edges, Pred&& pred) {
    std::vector<std::size_t> perm(subset.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (pred(permutation_sign(perm))) {
            Tuple t(subset.size());
            for (std::size_t i = 0; i < perm.size(); ++i) t[i] = subset[perm[i]];
            edges.push_back(std::move(t));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

inline Rational dot(const Point& a, const Point& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Point sub(const Point& a, const Point& b) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

} // namespace detail

/// d-partite hypergraph on d copies of the columns: (i_1..i_d) is an edge iff the
/// indices are pairwise distinct and det(columns in tuple order) lies in the target.
inline KPartiteHypergraph unit_minor_hypergraph(const PointConfig& m, DetTarget target = DetTarget::exactly_one) {
    m.validate();
    const std::size_t d = m.dim;
    if (d < 2) throw std::invalid_argument("unit-minor hypergraph needs d >= 2");
    m.require_distinct();
    std::vector<Tuple> edges;
    std::vector<const Point*> cols(d);
    detail::for_each_subset(m.size(), d, [&](const std::vector<Vertex>& s) {
        for (std::size_t i = 0; i < d; ++i) cols[i] = &m.points[s[i]];
        const Rational det = column_determinant(std::span<const Point* const>(cols));
        if (abs(det) != 1) return;
        detail::add_orderings(s, edges, [&](int sign) { return in_target(sign > 0 ? det : Rational(-det), target); });
    });
    return KPartiteHypergraph(std::vector<std::size_t>(d, m.size()), std::move(edges));
}

/// Reference count of unordered d-subsets with |det| = 1 by plain enumeration.
inline std::uint64_t count_unit_minors_naive(const PointConfig& m) {
    m.validate();
    const std::size_t d = m.dim;
    std::uint64_t count = 0;
    std::vector<const Point*> cols(d);
    detail::for_each_subset(m.size(), d, [&](const std::vector<Vertex>& s) {
        for (std::size_t i = 0; i < d; ++i) cols[i] = &m.points[s[i]];
        if (abs(column_determinant(std::span<const Point* const>(cols))) == 1) ++count;
    });
    return count;
}

namespace detail {

/// Unit 2x2 minors without touching every pair. For a column v the partners w with
/// det(v, w) = +-1 lie on two lines; they are found either by solving for w_y inside
/// each group of equal w_x, or, for columns sharing a slope y/x, by hashing the key
/// w_y - slope * w_x once for the whole slope class. The cheaper route is chosen per class.
inline std::uint64_t count_unit_minors_2d(const PointConfig& m) {
    const auto& pts = m.points;
    const std::size_t n = pts.size();
    std::unordered_map<Rational, std::unordered_set<Rational, RationalHash>, RationalHash> by_x;
    for (const auto& p : pts) by_x[p[0]].insert(p[1]);
    std::vector<std::pair<Rational, const std::unordered_set<Rational, RationalHash>*>> groups;
    groups.reserve(by_x.size());
    for (const auto& [x, ys] : by_x) groups.emplace_back(x, &ys);

    std::unordered_map<Rational, std::vector<std::size_t>, RationalHash> slope_classes;
    std::vector<std::size_t> vertical;
    for (std::size_t i = 0; i < n; ++i) {
        if (pts[i][0] == 0) {
            vertical.push_back(i);
        } else {
            slope_classes[pts[i][1] / pts[i][0]].push_back(i);
        }
    }

    std::uint64_t ordered = 0;
    // v = (0, vy): det(v, w) = -vy * wx.
    for (std::size_t i : vertical) {
        const Rational& vy = pts[i][1];
        if (vy == 0) continue;
        for (int s : {-1, 1}) {
            auto it = by_x.find(Rational(-s) / vy);
            if (it != by_x.end()) ordered += it->second.size();
        }
    }
    const std::size_t g = groups.size();
    for (const auto& [slope, members] : slope_classes) {
        if (members.size() * g > n) {
            std::unordered_map<Rational, std::uint64_t, RationalHash> keys;
            keys.reserve(n * 2);
            for (const auto& w : pts) ++keys[w[1] - slope * w[0]];
            for (std::size_t i : members) {
                for (int s : {-1, 1}) {
                    auto it = keys.find(Rational(s) / pts[i][0]);
                    if (it != keys.end()) ordered += it->second;
                }
            }
        } else {
            Rational wy;
            for (std::size_t i : members) {
                const Rational& vx = pts[i][0];
                const Rational& vy = pts[i][1];
                for (const auto& [wx, ys] : groups) {
                    for (int s : {-1, 1}) {
                        wy = (Rational(s) + vy * wx) / vx;
                        ordered += ys->count(wy);
                    }
                }
            }
        }
    }
    return ordered / 2;
}

} // namespace detail

/// Number of unordered d-subsets of columns forming a unit minor. With plus_minus_one a
/// subset counts when det = +-1 in input order; with exactly_one when some ordering has
/// det = 1, which for d >= 2 is the same |det| = 1 test since a transposition flips the sign.
inline std::uint64_t count_unit_minors(const PointConfig& m, DetTarget target = DetTarget::plus_minus_one,
                                       unsigned threads = 1) {
    (void)target;
    m.validate();
    if (m.dim < 2) throw std::invalid_argument("unit minors need d >= 2");
    m.require_distinct();
    if (m.dim == 2) return detail::count_unit_minors_2d(m);

    const std::size_t d = m.dim;
    const std::size_t n = m.size();
    threads = std::max(1U, threads);
    std::vector<std::uint64_t> partial(threads, 0);
    auto worker = [&](unsigned id) {
        std::vector<const Point*> cols(d);
        std::vector<Vertex> c(d);
        for (std::size_t lead = id; lead + d <= n; lead += threads) {
            // subsets whose smallest index is `lead`
            const std::size_t rest = n - lead - 1;
            c.assign(d - 1, 0);
            std::iota(c.begin(), c.end(), 0);
            do {
                cols[0] = &m.points[lead];
                for (std::size_t i = 0; i + 1 < d; ++i) cols[i + 1] = &m.points[lead + 1 + c[i]];
                if (abs(column_determinant(std::span<const Point* const>(cols))) == 1) ++partial[id];
            } while (detail::next_combination(c, rest));
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

/// Twice the signed area of the triangle (a, b, c).
inline Rational cross2(const Point& a, const Point& b, const Point& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

inline bool area_in_range(const Point& a, const Point& b, const Point& c, const Rational& lo, const Rational& hi) {
    const Rational area = abs(cross2(a, b, c)) / 2;
    return lo <= area && area <= hi;
}

/// 3-partite hypergraph on three copies of P: (i, j, l), pairwise distinct, is an edge iff
/// lo <= area(p_i, p_j, p_l) <= hi.
inline KPartiteHypergraph almost_unit_area_hypergraph(const PointConfig& p, const Rational& lo = Rational(9, 10),
                                                      const Rational& hi = Rational(11, 10)) {
    p.validate();
    if (p.dim != 2) throw std::invalid_argument("triangle hypergraph needs planar points");
    if (lo > hi) throw std::invalid_argument("need lo <= hi");
    std::vector<Tuple> edges;
    detail::for_each_subset(p.size(), 3, [&](const std::vector<Vertex>& s) {
        if (area_in_range(p.points[s[0]], p.points[s[1]], p.points[s[2]], lo, hi)) {
            detail::add_orderings(s, edges, [](int) { return true; });
        }
    });
    return KPartiteHypergraph(std::vector<std::size_t>(3, p.size()), std::move(edges));
}

/// max squared distance / min squared distance over distinct pairs (needs >= 2 distinct points).
inline Rational distance_ratio_squared(const PointConfig& p) {
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const Point diff = detail::sub(p.points[i], p.points[j]);
            const Rational d2 = detail::dot(diff, diff);
            if (d2 == 0) continue;
            if (!lo || d2 < *lo) lo = d2;
            if (!hi || d2 > *hi) hi = d2;
        }
    }
    if (!lo) throw std::invalid_argument("distance ratio needs two distinct points");
    return *hi / *lo;
}

// ---------------------------------------------------------------------------
// Sphere predicates

struct IntersectionTest {
    bool intersect = false;
    bool degenerate = false;  ///< some pair of spheres coincides
};

/// Two circles meet iff (D - (r1-r2)^2)((r1+r2)^2 - D) >= 0 with D = |c1-c2|^2; expanded in
/// squared radii this is 4 R1 R2 - (D - R1 - R2)^2 >= 0.
inline IntersectionTest circles_intersect(const Sphere& a, const Sphere& b) {
    const Point diff = detail::sub(a.center, b.center);
    const Rational dist2 = detail::dot(diff, diff);
    const Rational t = dist2 - a.radius_squared - b.radius_squared;
    IntersectionTest r;
    r.intersect = 4 * a.radius_squared * b.radius_squared - t * t >= 0;
    r.degenerate = a == b;
    return r;
}

namespace detail {

struct AffineSolution {
    Point particular;
    std::vector<Point> null_basis;
    std::vector<std::size_t> free_vars;  ///< null_basis[i] has a 1 at free_vars[i], 0 at the other free variables
};

/// Solves rows * x = rhs exactly; nullopt when inconsistent.
inline std::optional<AffineSolution> solve_affine(std::vector<Point> rows, std::vector<Rational> rhs, std::size_t dim) {
    const std::size_t m = rows.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < m; ++c) {
        std::size_t p = r;
        while (p < m && rows[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[r]);
        std::swap(rhs[p], rhs[r]);
        const Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i) {
        if (rhs[i] != 0) return std::nullopt;
    }
    AffineSolution sol;
    sol.particular.assign(dim, Rational(0));
    for (std::size_t i = 0; i < r; ++i) sol.particular[pivot_col[i]] = rhs[i];
    std::vector<bool> is_pivot(dim, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t f = 0; f < dim; ++f) {
        if (is_pivot[f]) continue;
        Point v(dim, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < r; ++i) v[pivot_col[i]] = -rows[i][f];
        sol.null_basis.push_back(std::move(v));
        sol.free_vars.push_back(f);
    }
    return sol;
}

/// Squared distance from q to the affine set particular + span(basis).
inline Rational distance2_to_affine(const Point& q, const AffineSolution& s) {
    const std::size_t k = s.null_basis.size();
    Point offset = sub(q, s.particular);
    if (k == 0) return dot(offset, offset);
    std::vector<Point> gram(k, Point(k));
    std::vector<Rational> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(s.null_basis[i], s.null_basis[j]);
        rhs[i] = dot(s.null_basis[i], offset);
    }
    const auto coeffs = solve_affine(gram, rhs, k);
    Point closest = s.particular;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) closest[j] += coeffs->particular[i] * s.null_basis[i][j];
    }
    const Point diff = sub(q, closest);
    return dot(diff, diff);
}

} // namespace detail

/// Common point of any number of spheres in R^d: subtracting sphere 1 from the others
/// leaves linear (radical) equations; the spheres meet iff the affine solution set is
/// nonempty and within distance sqrt(R_1) of c_1.
inline IntersectionTest spheres_share_point(const std::vector<const Sphere*>& group) {
    IntersectionTest r;
    if (group.empty()) return r;
    const Sphere& s1 = *group.front();
    const std::size_t dim = s1.center.size();
    std::vector<Point> rows;
    std::vector<Rational> rhs;
    for (std::size_t j = 1; j < group.size(); ++j) {
        const Sphere& s = *group[j];
        Point row(dim);
        for (std::size_t i = 0; i < dim; ++i) row[i] = 2 * (s.center[i] - s1.center[i]);
        rows.push_back(std::move(row));
        rhs.push_back(detail::dot(s.center, s.center) - detail::dot(s1.center, s1.center) - s.radius_squared +
                      s1.radius_squared);
    }
    for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) {
            if (*group[i] == *group[j]) r.degenerate = true;
        }
    }
    const auto sol = detail::solve_affine(rows, rhs, dim);
    if (!sol) return r;
    r.intersect = detail::distance2_to_affine(s1.center, *sol) <= s1.radius_squared;
    return r;
}

/// Three spheres in R^3: the two radical planes meet in a line x0 + t u with
/// u = n2 x n3; the spheres share a point iff |x0 + t u - c1|^2 = R1 has a real root.
/// Parallel radical planes (collinear centers) go through the general affine route.
inline IntersectionTest spheres3_share_point(const Sphere& a, const Sphere& b, const Sphere& c) {
    const Point n2 = detail::sub(b.center, a.center);
    const Point n3 = detail::sub(c.center, a.center);
    const Point u{n2[1] * n3[2] - n2[2] * n3[1], n2[2] * n3[0] - n2[0] * n3[2], n2[0] * n3[1] - n2[1] * n3[0]};
    const Rational uu = detail::dot(u, u);
    if (uu == 0) return spheres_share_point({&a, &b, &c});
    // Plane j: n_j . x = h_j with the factor 2 divided out.
    const Rational h2 = (detail::dot(b.center, b.center) - detail::dot(a.center, a.center) - b.radius_squared +
                         a.radius_squared) / 2;
    const Rational h3 = (detail::dot(c.center, c.center) - detail::dot(a.center, a.center) - c.radius_squared +
                         a.radius_squared) / 2;
    // x0 = s n2 + t n3 from the 2x2 Gram system.
    const Rational g22 = detail::dot(n2, n2);
    const Rational g23 = detail::dot(n2, n3);
    const Rational g33 = detail::dot(n3, n3);
    const Rational det = g22 * g33 - g23 * g23;
    const Rational s = (h2 * g33 - h3 * g23) / det;
    const Rational t = (g22 * h3 - g23 * h2) / det;
    Point x0(3);
    for (std::size_t i = 0; i < 3; ++i) x0[i] = s * n2[i] + t * n3[i];
    const Point w = detail::sub(x0, a.center);
    const Rational qb = 2 * detail::dot(u, w);
    const Rational qc = detail::dot(w, w) - a.radius_squared;
    IntersectionTest r;
    r.intersect = qb * qb - 4 * uu * qc >= 0;
    r.degenerate = a == b || a == c || b == c;
    return r;
}

struct SphereHypergraph {
    KPartiteHypergraph hypergraph;
    std::vector<Tuple> degenerate;  ///< sorted index sets of tuples with coincident members
};

/// d-partite intersection hypergraph on d copies of S (d = 2: circle pairs, d = 3:
/// sphere triples); tuples have pairwise distinct indices.
inline SphereHypergraph sphere_intersection_hypergraph(const SphereConfig& s, bool require_distinct = true) {
    s.validate(require_distinct);
    const std::size_t d = s.dim;
    std::vector<Tuple> edges;
    SphereHypergraph out;
    detail::for_each_subset(s.spheres.size(), d, [&](const std::vector<Vertex>& idx) {
        const IntersectionTest r = d == 2 ? circles_intersect(s.spheres[idx[0]], s.spheres[idx[1]])
                                          : spheres3_share_point(s.spheres[idx[0]], s.spheres[idx[1]], s.spheres[idx[2]]);
        if (!r.intersect) return;
        if (r.degenerate) out.degenerate.push_back(idx);
        detail::add_orderings(idx, edges, [](int) { return true; });
    });
    out.hypergraph = KPartiteHypergraph(std::vector<std::size_t>(d, s.spheres.size()), std::move(edges));
    return out;
}

// ---------------------------------------------------------------------------
// Constructions

struct StConfigShape {
    long slopes = 0;     ///< A
    long intercepts = 0; ///< B
    long grid_x = 0;     ///< X
    long grid_y = 0;     ///< Y
    long chain = 0;      ///< size of each chain part P_3..P_d
};

inline StConfigShape st_config_shape(long scale, long chain = -1) {
    StConfigShape s;
    s.slopes = scale;
    s.intercepts = scale * scale;
    s.grid_x = scale;
    s.grid_y = 2 * scale * scale + 1;
    s.chain = chain < 0 ? scale * scale * scale : chain;
    return s;
}

/// Columns with many unit minors. In the x1x2-plane: line columns (1/b, a/b) for
/// a in [1, A], b in [2, B+1] and grid columns (x, y) for x in [1, X], y in [1, Y], with
/// (A, B, X, Y) = (s, s^2, s, 2s^2 + 1). det((1/b, a/b), (x, y)) = (y - a x)/b, which is 1
/// exactly when (x, y) lies on the line y = a x + b, and every such line meets all X grid
/// columns. For d > 2 the planar columns are padded with zeros and chain parts
/// P_i = {x e_{i-1} + e_i : x in [1, chain]}, i = 3..d, are appended.
inline PointConfig st_lower_bound_minor_config(std::size_t d, long scale, long chain = -1) {
    if (d < 2) throw std::invalid_argument("st config needs d >= 2");
    if (scale < 2) throw std::invalid_argument("st config needs scale >= 2");
    const StConfigShape sh = st_config_shape(scale, chain);
    PointConfig cfg;
    cfg.dim = d;
    auto planar = [&](Rational x, Rational y) {
        Point p(d, Rational(0));
        p[0] = std::move(x);
        p[1] = std::move(y);
        cfg.points.push_back(std::move(p));
    };
    for (long a = 1; a <= sh.slopes; ++a) {
        for (long b = 2; b <= sh.intercepts + 1; ++b) planar(Rational(1, b), Rational(a, b));
    }
    for (long x = 1; x <= sh.grid_x; ++x) {
        for (long y = 1; y <= sh.grid_y; ++y) planar(Rational(x), Rational(y));
    }
    for (std::size_t i = 3; i <= d; ++i) {
        for (long x = 1; x <= sh.chain; ++x) {
            Point p(d, Rational(0));
            p[i - 2] = x;
            p[i - 1] = 1;
            cfg.points.push_back(std::move(p));
        }
    }
    return cfg;
}

/// 1 + (d-1)u columns: e_1, then x e_{i-1} + e_i for x in [1, u], i = 2..d. Every
/// transversal (e_1, one column from each chain part) is upper bidiagonal with unit
/// diagonal, so the unit-minor hypergraph contains K_{1,u,...,u}.
inline PointConfig k1uu_config(std::size_t d, long u) {
    if (d < 2 || u < 1) throw std::invalid_argument("k1uu config needs d >= 2, u >= 1");
    PointConfig cfg;
    cfg.dim = d;
    Point e1(d, Rational(0));
    e1[0] = 1;
    cfg.points.push_back(e1);
    for (std::size_t i = 2; i <= d; ++i) {
        for (long x = 1; x <= u; ++x) {
            Point p(d, Rational(0));
            p[i - 2] = x;
            p[i - 1] = 1;
            cfg.points.push_back(std::move(p));
        }
    }
    return cfg;
}

/// Index classes of the K_{1,u,...,u} inside the unit-minor hypergraph of k1uu_config(d, u).
inline std::vector<std::vector<Vertex>> k1uu_classes(std::size_t d, long u) {
    std::vector<std::vector<Vertex>> classes(d);
    classes[0] = {0};
    for (std::size_t i = 1; i < d; ++i) {
        for (long x = 0; x < u; ++x) classes[i].push_back(static_cast<Vertex>(1 + (i - 1) * u + x));
    }
    return classes;
}

// ---------------------------------------------------------------------------
// Halfplane set systems

struct Halfplane {
    Rational a, b, c;  ///< { (x, y) : a x + b y <= c }

    bool contains(const Point& p) const { return a * p[0] + b * p[1] <= c; }
};

/// F = {h cap P : h in H} over the ground set P (planar).
inline SetSystem halfplane_set_system(const PointConfig& p, const std::vector<Halfplane>& hs) {
    if (p.dim != 2) throw std::invalid_argument("halfplane set systems need planar points");
    SetSystem f;
    f.ground_size = p.size();
    for (const auto& h : hs) {
        std::vector<Vertex> m;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (h.contains(p.points[i])) m.push_back(static_cast<Vertex>(i));
        }
        f.members.push_back(std::move(m));
    }
    return f;
}

/// Every distinct trace of a closed or open halfplane on P. A halfplane can be moved
/// until its boundary passes through two points without changing its trace on the
/// others, so the traces are: empty, P, and for each pair (i, j) the points strictly on
/// one side of line(p_i, p_j) together with any subset of the points on that line.
inline SetSystem all_halfplane_traces(const PointConfig& p) {
    if (p.dim != 2) throw std::invalid_argument("halfplane set systems need planar points");
    const std::size_t n = p.size();
    std::set<std::vector<Vertex>> traces;
    traces.insert({});
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    traces.insert(all);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Vertex> left, right, on;
            for (std::size_t l = 0; l < n; ++l) {
                const Rational s = cross2(p.points[i], p.points[j], p.points[l]);
                (s > 0 ? left : (s < 0 ? right : on)).push_back(static_cast<Vertex>(l));
            }
            // points on the line are ordered along it; a halfplane through the line
            // rotated slightly picks up a prefix or suffix of them
            std::sort(on.begin(), on.end(), [&](Vertex x, Vertex y) {
                const Point& a = p.points[x];
                const Point& b = p.points[y];
                return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
            });
            for (const auto* side : {&left, &right}) {
                for (std::size_t cut = 0; cut <= on.size(); ++cut) {
                    for (int dir = 0; dir < 2; ++dir) {
                        std::vector<Vertex> t = *side;
                        if (dir == 0) t.insert(t.end(), on.begin(), on.begin() + static_cast<std::ptrdiff_t>(cut));
                        else t.insert(t.end(), on.end() - static_cast<std::ptrdiff_t>(cut), on.end());
                        std::sort(t.begin(), t.end());
                        traces.insert(std::move(t));
                    }
                }
            }
        }
    }
    SetSystem f;
    f.ground_size = n;
    f.members.assign(traces.begin(), traces.end());
    return f;
}

// ---------------------------------------------------------------------------
// Seeded generators

/// n distinct integer columns with entries in [-box, box].
inline PointConfig random_integer_matrix(std::size_t d, std::size_t n, long box, std::uint64_t seed) {
    const long double space = std::pow(static_cast<long double>(2 * box + 1), static_cast<long double>(d));
    if (space < static_cast<long double>(n)) throw std::invalid_argument("box too small for n distinct columns");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-box, box);
    PointConfig cfg;
    cfg.dim = d;
    std::unordered_set<Point, RationalVectorHash> seen;
    while (cfg.points.size() < n) {
        Point p(d);
        for (auto& x : p) x = coord(rng);
        if (seen.insert(p).second) cfg.points.push_back(std::move(p));
    }
    return cfg;
}

/// n points with coordinates p/den, p uniform in [0, range*den].
inline PointConfig random_rational_points(std::size_t d, std::size_t n, long range, long den, std::uint64_t seed) {
    const long double space = std::pow(static_cast<long double>(range * den + 1), static_cast<long double>(d));
    if (space < static_cast<long double>(n)) throw std::invalid_argument("grid too coarse for n distinct points");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(0, range * den);
    PointConfig cfg;
    cfg.dim = d;
    std::unordered_set<Point, RationalVectorHash> seen;
    while (cfg.points.size() < n) {
        Point p(d);
        for (auto& x : p) x = Rational(num(rng), den);
        if (seen.insert(p).second) cfg.points.push_back(std::move(p));
    }
    return cfg;
}

/// n distinct spheres: centers on the grid (1/den) Z^d inside [0, side]^d, radius_squared
/// drawn from {1/4, 2/4, 3/4, 4/4}.
inline SphereConfig random_spheres(std::size_t d, std::size_t n, long side, long den, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(0, side * den);
    std::uniform_int_distribution<long> rad(1, 4);
    SphereConfig cfg;
    cfg.dim = d;
    while (cfg.spheres.size() < n) {
        Sphere s;
        s.center.resize(d);
        for (auto& x : s.center) x = Rational(num(rng), den);
        s.radius_squared = Rational(rad(rng), 4);
        if (std::find(cfg.spheres.begin(), cfg.spheres.end(), s) == cfg.spheres.end()) cfg.spheres.push_back(std::move(s));
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Text formats. Points: `d n`, then n lines of d rationals. Spheres: `d n`, then
// n lines `c1 .. cd r2`.

namespace detail {

inline bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos != std::string::npos && line[pos] != '#') return true;
    }
    return false;
}

inline std::vector<Rational> read_row(const std::string& line, std::size_t expected) {
    std::istringstream row(line);
    std::vector<Rational> out;
    std::string tok;
    while (row >> tok) out.push_back(parse_rational(tok));
    if (out.size() != expected) {
        throw ParseError("expected " + std::to_string(expected) + " values on line: '" + line + "'");
    }
    return out;
}

inline std::pair<std::size_t, std::size_t> read_header(std::istream& in) {
    std::string line;
    if (!next_data_line(in, line)) throw ParseError("file is empty");
    std::istringstream header(line);
    long long d = 0;
    long long n = -1;
    if (!(header >> d >> n) || d < 1 || n < 0) throw ParseError("header must be `d n`");
    return {static_cast<std::size_t>(d), static_cast<std::size_t>(n)};
}

} // namespace detail

inline PointConfig read_points(std::istream& in) {
    const auto [d, n] = detail::read_header(in);
    PointConfig cfg;
    cfg.dim = d;
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        if (!detail::next_data_line(in, line)) throw ParseError("fewer point lines than announced");
        cfg.points.push_back(detail::read_row(line, d));
    }
    return cfg;
}

inline void write_points(std::ostream& out, const PointConfig& cfg) {
    out << cfg.dim << ' ' << cfg.size() << '\n';
    for (const auto& p : cfg.points) {
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << to_string(p[i]);
        out << '\n';
    }
}

inline SphereConfig read_spheres(std::istream& in) {
    const auto [d, n] = detail::read_header(in);
    SphereConfig cfg;
    cfg.dim = d;
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        if (!detail::next_data_line(in, line)) throw ParseError("fewer sphere lines than announced");
        auto row = detail::read_row(line, d + 1);
        Sphere s;
        s.radius_squared = row.back();
        row.pop_back();
        s.center = std::move(row);
        cfg.spheres.push_back(std::move(s));
    }
    return cfg;
}

inline void write_spheres(std::ostream& out, const SphereConfig& cfg) {
    out << cfg.dim << ' ' << cfg.spheres.size() << '\n';
    for (const auto& s : cfg.spheres) {
        for (const auto& x : s.center) out << to_string(x) << ' ';
        out << to_string(s.radius_squared) << '\n';
    }
}

} // namespace zarank
