#pragma once

// Bound calculus: the exponent vector of E_d, the multi-term function F^eps_d,
// the Erdos bracket, and exact checkers for the identities and inequalities the
// induction relies on (matrix identity, r-scaling, monotonicity in d, dominance).
//
// All exponents are exact rationals. Values such as n^{4/5} are irrational, so a
// bound is kept as a sum of exact power products; the double attached to it is a
// rendering only. Inequalities between such sums are decided in 50-digit floating
// point with a relative tolerance of 1e-30.

#include "zarank/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zarank {

struct DimProfile {
    std::vector<int> dims;

    DimProfile() = default;
    explicit DimProfile(std::vector<int> d) : dims(std::move(d)) { validate(); }

    std::size_t k() const { return dims.size(); }

    void validate() const {
        if (dims.empty()) throw std::invalid_argument("DimProfile needs k >= 1");
        for (int d : dims) {
            if (d < 1) throw std::invalid_argument("DimProfile entries must be >= 1");
        }
    }

    DimProfile select(std::uint64_t mask) const {
        DimProfile out;
        for (std::size_t i = 0; i < k(); ++i) {
            if (mask >> i & 1U) out.dims.push_back(dims[i]);
        }
        return out;
    }

    DimProfile drop(std::size_t i) const {
        DimProfile out = *this;
        out.dims.erase(out.dims.begin() + static_cast<std::ptrdiff_t>(i));
        return out;
    }
};

/// Part sizes n_1..n_k. Sizes are positive rationals so that rescaled profiles
/// (n_j / r^{d_j}) can be represented; counts coming from hypergraphs are integers.
struct SizeProfile {
    std::vector<Rational> sizes;

    SizeProfile() = default;
    explicit SizeProfile(std::vector<Rational> s) : sizes(std::move(s)) { validate(); }

    static SizeProfile of(const std::vector<long long>& values) {
        std::vector<Rational> s;
        s.reserve(values.size());
        for (long long v : values) s.emplace_back(v);
        return SizeProfile(std::move(s));
    }

    std::size_t k() const { return sizes.size(); }

    void validate() const {
        for (const auto& n : sizes) {
            if (n <= 0) throw std::invalid_argument("SizeProfile entries must be positive");
        }
    }

    SizeProfile select(std::uint64_t mask) const {
        SizeProfile out;
        for (std::size_t i = 0; i < k(); ++i) {
            if (mask >> i & 1U) out.sizes.push_back(sizes[i]);
        }
        return out;
    }

    SizeProfile drop(std::size_t i) const {
        SizeProfile out = *this;
        out.sizes.erase(out.sizes.begin() + static_cast<std::ptrdiff_t>(i));
        return out;
    }
};

struct ExponentVector {
    std::vector<Rational> alphas;
};

/// coeff * prod base_i^{exp_i}, all bases positive.
struct PowerProduct {
    Rational coeff{1};
    std::vector<std::pair<Rational, Rational>> factors;

    Rational total_exponent() const {
        Rational s = 0;
        for (const auto& f : factors) s += f.second;
        return s;
    }

    HighFloat evaluate() const {
        HighFloat log_sum = 0;
        for (const auto& [base, exp] : factors) {
            if (exp == 0 || base == 1) continue;
            log_sum += to_high(exp) * boost::multiprecision::log(to_high(base));
        }
        return to_high(coeff) * boost::multiprecision::exp(log_sum);
    }
};

struct BoundValue {
    std::vector<PowerProduct> terms;
    Rational epsilon{0};
    double approx = 0.0;

    HighFloat evaluate() const {
        HighFloat s = 0;
        for (const auto& t : terms) s += t.evaluate();
        return s;
    }

    /// Growth exponent when every base is the same n: the largest total exponent.
    Rational growth_exponent() const {
        if (terms.empty()) throw std::logic_error("empty bound");
        Rational best = terms.front().total_exponent();
        for (const auto& t : terms) best = std::max(best, t.total_exponent());
        return best;
    }

    void finalize() { approx = static_cast<double>(evaluate()); }
};

namespace detail {

inline std::vector<Integer> coprime_basis(std::vector<Integer> atoms) {
    atoms.erase(std::remove_if(atoms.begin(), atoms.end(), [](const Integer& a) { return a <= 1; }),
                atoms.end());
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(atoms.begin(), atoms.end());
        atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
        for (std::size_t i = 0; i < atoms.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < atoms.size() && !changed; ++j) {
                Integer g = boost::multiprecision::gcd(atoms[i], atoms[j]);
                if (g > 1) {
                    Integer a = atoms[i] / g;
                    Integer b = atoms[j] / g;
                    atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(j));
                    atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
                    for (Integer* x : {&a, &b, &g}) {
                        if (*x > 1) atoms.push_back(*x);
                    }
                    changed = true;
                }
            }
        }
    }
    return atoms;
}

inline Integer strip(Integer value, const Integer& b, Integer& count) {
    while (value % b == 0) {
        value /= b;
        ++count;
    }
    return value;
}

} // namespace detail

/// Exact test of prod a == prod b. Bases are refined into a pairwise coprime set of
/// integers, which is multiplicatively independent, so equality holds iff every
/// basis element carries the same rational exponent on both sides.
inline bool exactly_equal(const PowerProduct& a, const PowerProduct& b) {
    std::vector<std::pair<Rational, Rational>> all;
    all.emplace_back(a.coeff, Rational(1));
    for (const auto& f : a.factors) all.push_back(f);
    all.emplace_back(b.coeff, Rational(-1));
    for (const auto& f : b.factors) all.emplace_back(f.first, -f.second);

    std::vector<Integer> atoms;
    for (const auto& [base, exp] : all) {
        if (base <= 0) throw std::invalid_argument("power product bases must be positive");
        atoms.push_back(numerator_of(base));
        atoms.push_back(denominator_of(base));
    }
    const std::vector<Integer> basis = detail::coprime_basis(atoms);
    std::vector<Rational> exponent(basis.size(), Rational(0));
    for (const auto& [base, exp] : all) {
        Integer num = numerator_of(base);
        Integer den = denominator_of(base);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Integer cn = 0;
            Integer cd = 0;
            num = detail::strip(num, basis[i], cn);
            den = detail::strip(den, basis[i], cd);
            exponent[i] += Rational(cn - cd) * exp;
        }
        if (num != 1 || den != 1) throw std::logic_error("coprime basis failed to factor a base");
    }
    return std::all_of(exponent.begin(), exponent.end(), [](const Rational& e) { return e == 0; });
}

/// alpha_i = 1 - prod_{l!=i}(d_l-1) / [(k-1) prod_l(d_l-1) + sum_l prod_{j!=l}(d_j-1)].
///
/// The denominator vanishes only when two or more d_i equal 1. In that case the
/// exponents are the limit taken with all 1/(d_i-1) growing at the same rate:
/// alpha_i = 1 - 1/m on the m coordinates with d_i = 1, alpha_i = 1 elsewhere.
/// That limit still satisfies the matrix identity.
inline ExponentVector exponents(const DimProfile& d) {
    d.validate();
    const std::size_t k = d.k();
    std::vector<Integer> m(k);
    for (std::size_t i = 0; i < k; ++i) m[i] = d.dims[i] - 1;

    auto prod_except = [&](std::size_t skip) {
        Integer p = 1;
        for (std::size_t j = 0; j < k; ++j) {
            if (j != skip) p *= m[j];
        }
        return p;
    };
    Integer all = 1;
    for (const auto& x : m) all *= x;
    Integer denom = Integer(static_cast<long>(k) - 1) * all;
    for (std::size_t l = 0; l < k; ++l) denom += prod_except(l);

    ExponentVector out;
    out.alphas.resize(k);
    if (denom == 0) {
        const auto ones = std::count(d.dims.begin(), d.dims.end(), 1);
        for (std::size_t i = 0; i < k; ++i) {
            out.alphas[i] = d.dims[i] == 1 ? Rational(1) - Rational(1, ones) : Rational(1);
        }
        return out;
    }
    for (std::size_t i = 0; i < k; ++i) out.alphas[i] = Rational(1) - Rational(prod_except(i), denom);
    return out;
}

inline void check_lengths(const DimProfile& d, const SizeProfile& n) {
    d.validate();
    n.validate();
    if (d.k() != n.k()) throw std::invalid_argument("dims and sizes differ in length");
}

namespace detail {

inline PowerProduct e_term(const DimProfile& d, const SizeProfile& n, const Rational& eps) {
    const ExponentVector a = exponents(d);
    PowerProduct t;
    for (std::size_t i = 0; i < d.k(); ++i) t.factors.emplace_back(n.sizes[i], a.alphas[i] + eps);
    return t;
}

} // namespace detail

/// E_d(n) = prod n_i^{alpha_i}.
inline BoundValue eval_E(const DimProfile& d, const SizeProfile& n) {
    check_lengths(d, n);
    BoundValue v;
    v.terms.push_back(detail::e_term(d, n, 0));
    v.finalize();
    return v;
}

/// F^eps_d(n): one term per subset I with |I| >= 2, E_{d_I}(n_I) prod_{i in I} n_i^eps
/// prod_{i not in I} n_i, followed by the k terms of (sum 1/n_i) prod n_j.
/// For k = 1 no subset qualifies and F = (1/n) n = 1.
inline BoundValue eval_F(const DimProfile& d, const SizeProfile& n, const Rational& eps) {
    check_lengths(d, n);
    if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
    const std::size_t k = d.k();
    if (k > 20) throw std::invalid_argument("k too large for subset expansion");
    BoundValue v;
    v.epsilon = eps;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        if (std::popcount(mask) < 2) continue;
        const ExponentVector a = exponents(d.select(mask));
        PowerProduct t;
        std::size_t pos = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1U) {
                t.factors.emplace_back(n.sizes[i], a.alphas[pos++] + eps);
            } else {
                t.factors.emplace_back(n.sizes[i], Rational(1));
            }
        }
        v.terms.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < k; ++i) {
        PowerProduct t;
        for (std::size_t j = 0; j < k; ++j) t.factors.emplace_back(n.sizes[j], Rational(j == i ? 0 : 1));
        v.terms.push_back(std::move(t));
    }
    v.finalize();
    return v;
}

struct MatrixIdentityReport {
    ExponentVector alphas;
    std::vector<Rational> residuals;
    bool ok = false;
};

/// alpha_i - sum_{j != i} d_j (1 - alpha_j) for every row, exactly.
inline MatrixIdentityReport check_matrix_identity(const DimProfile& d) {
    MatrixIdentityReport r;
    r.alphas = exponents(d);
    const std::size_t k = d.k();
    r.residuals.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j != i) s += Rational(d.dims[j]) * (Rational(1) - r.alphas.alphas[j]);
        }
        r.residuals[i] = r.alphas.alphas[i] - s;
    }
    r.ok = std::all_of(r.residuals.begin(), r.residuals.end(), [](const Rational& x) { return x == 0; });
    return r;
}

struct ScalingReport {
    PowerProduct lhs;
    PowerProduct rhs;
    Rational r_exponent;  ///< exponent of r once the lhs is collected; zero when the identity holds
    bool ok = false;
};

/// r^{sum_{j != i} d_j} E(.., n_j / r^{d_j}, .., n_i / r, ..) == E(n), compared exactly.
inline ScalingReport check_scaling_identity(const DimProfile& d, const SizeProfile& n, const Rational& r,
                                            std::size_t special_index) {
    check_lengths(d, n);
    if (r <= 0) throw std::invalid_argument("r must be positive");
    if (special_index >= d.k()) throw std::invalid_argument("special index out of range");
    const ExponentVector a = exponents(d);
    ScalingReport rep;
    long shift = 0;
    SizeProfile scaled = n;
    for (std::size_t j = 0; j < d.k(); ++j) {
        if (j == special_index) {
            scaled.sizes[j] = n.sizes[j] / r;
        } else {
            shift += d.dims[j];
            scaled.sizes[j] = n.sizes[j] / rpow(r, d.dims[j]);
        }
    }
    rep.lhs = detail::e_term(d, scaled, 0);
    rep.lhs.factors.emplace_back(r, Rational(shift));
    rep.rhs = detail::e_term(d, n, 0);
    rep.r_exponent = Rational(shift) - a.alphas[special_index];
    for (std::size_t j = 0; j < d.k(); ++j) {
        if (j != special_index) rep.r_exponent -= Rational(d.dims[j]) * a.alphas[j];
    }
    rep.ok = exactly_equal(rep.lhs, rep.rhs);
    return rep;
}

namespace detail {

inline constexpr double kRelativeTolerance = 1e-30;

/// a <= b up to the relative tolerance.
inline bool leq(const HighFloat& a, const HighFloat& b) {
    const HighFloat aa = boost::multiprecision::abs(a);
    const HighFloat ab = boost::multiprecision::abs(b);
    return a <= b + HighFloat(kRelativeTolerance) * (aa > ab ? aa : ab);
}

} // namespace detail

struct MonotonicityReport {
    bool hypothesis_met = false;
    bool holds = false;  ///< meaningful only when the hypothesis is met
    double lower = 0.0;  ///< F_{d - e_i}(n)
    double upper = 0.0;  ///< F_d(n)
};

/// F^eps_{d - e_i}(n) <= F^eps_d(n) whenever n_i^{d_j} >= n_j for all j != i.
inline MonotonicityReport check_monotonicity(const DimProfile& d, const SizeProfile& n, std::size_t i,
                                             const Rational& eps) {
    check_lengths(d, n);
    if (i >= d.k()) throw std::invalid_argument("index out of range");
    if (d.dims[i] < 2) throw std::invalid_argument("monotonicity check needs d_i >= 2");
    MonotonicityReport rep;
    rep.hypothesis_met = true;
    for (std::size_t j = 0; j < d.k(); ++j) {
        if (j == i) continue;
        if (rpow(n.sizes[i], d.dims[j]) < n.sizes[j]) rep.hypothesis_met = false;
    }
    DimProfile lowered = d;
    lowered.dims[i] -= 1;
    const HighFloat lo = eval_F(lowered, n, eps).evaluate();
    const HighFloat hi = eval_F(d, n, eps).evaluate();
    rep.lower = static_cast<double>(lo);
    rep.upper = static_cast<double>(hi);
    rep.holds = detail::leq(lo, hi);
    return rep;
}

struct DominanceReport {
    bool applicable = false;      ///< false for k = 1, where the statement is vacuous-false
    bool hypothesis_met = false;
    bool holds = false;
    double ratio = 0.0;           ///< E_d(n) prod n_i^eps / F^eps_d(n)
    Rational constant;            ///< the asserted c = 1 / 2^{k+1}
};

/// Checks the dominance hypothesis n_i^{-1/d_i} prod n_j >= n_i F_{pi_i d}(pi_i n) for
/// every i and, when it holds, E_d(n) prod n_i^eps >= F_d(n) / 2^{k+1}.
inline DominanceReport check_dominance(const DimProfile& d, const SizeProfile& n, const Rational& eps) {
    check_lengths(d, n);
    const std::size_t k = d.k();
    DominanceReport rep;
    rep.constant = Rational(1, Integer(1) << static_cast<unsigned>(k + 1));
    rep.applicable = k >= 2;
    const HighFloat top = detail::e_term(d, n, eps).evaluate();
    const HighFloat full = eval_F(d, n, eps).evaluate();
    rep.ratio = static_cast<double>(top / full);
    if (!rep.applicable) return rep;

    PowerProduct all;
    for (const auto& s : n.sizes) all.factors.emplace_back(s, Rational(1));
    rep.hypothesis_met = true;
    for (std::size_t i = 0; i < k; ++i) {
        PowerProduct left = all;
        left.factors.emplace_back(n.sizes[i], Rational(-1, d.dims[i]));
        const HighFloat rhs = to_high(n.sizes[i]) * eval_F(d.drop(i), n.drop(i), eps).evaluate();
        if (!detail::leq(rhs, left.evaluate())) {
            rep.hypothesis_met = false;
            break;
        }
    }
    if (rep.hypothesis_met) rep.holds = detail::leq(to_high(rep.constant) * full, top);
    return rep;
}

/// Shape of the Erdos bound for K_{u_1..u_k}-free k-partite hypergraphs:
/// (n_k^{-1/(u_1...u_{k-1})} + n_1^{-1} + ... + n_{k-1}^{-1}) prod n_i, without the constant.
/// For k = 1 the bracket degenerates; the value is defined as n_1.
inline BoundValue erdos_bound(const std::vector<int>& u, const SizeProfile& n) {
    n.validate();
    if (u.empty() || u.size() != n.k()) throw std::invalid_argument("u and sizes must have the same length k >= 1");
    for (int x : u) {
        if (x < 1) throw std::invalid_argument("u entries must be >= 1");
    }
    const std::size_t k = u.size();
    BoundValue v;
    if (k == 1) {
        PowerProduct t;
        t.factors.emplace_back(n.sizes[0], Rational(1));
        v.terms.push_back(t);
        v.finalize();
        return v;
    }
    Integer prod = 1;
    for (std::size_t i = 0; i + 1 < k; ++i) prod *= u[i];
    {
        PowerProduct t;
        for (std::size_t j = 0; j < k; ++j) {
            t.factors.emplace_back(n.sizes[j], j + 1 == k ? Rational(1) - Rational(Integer(1), prod) : Rational(1));
        }
        v.terms.push_back(std::move(t));
    }
    for (std::size_t i = 0; i + 1 < k; ++i) {
        PowerProduct t;
        for (std::size_t j = 0; j < k; ++j) t.factors.emplace_back(n.sizes[j], Rational(j == i ? 0 : 1));
        v.terms.push_back(std::move(t));
    }
    v.finalize();
    return v;
}

/// Growth exponent of F^eps_d at n_1 = ... = n_k = n.
inline Rational predicted_exponent(const DimProfile& d, const Rational& eps) {
    SizeProfile ones;
    ones.sizes.assign(d.k(), Rational(2));
    return eval_F(d, ones, eps).growth_exponent();
}

} // namespace zarank
