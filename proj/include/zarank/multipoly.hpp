#pragma once

// Sparse multivariate polynomials with rational coefficients.

#include "zarank/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace zarank {

using Exponent = std::vector<unsigned>;

class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(std::size_t num_vars) : num_vars_(num_vars) {}

    static MultiPoly constant(std::size_t num_vars, const Rational& c) {
        MultiPoly p(num_vars);
        p.add_term(Exponent(num_vars, 0), c);
        return p;
    }

    static MultiPoly variable(std::size_t num_vars, std::size_t i) {
        if (i >= num_vars) throw std::invalid_argument("variable index out of range");
        MultiPoly p(num_vars);
        Exponent e(num_vars, 0);
        e[i] = 1;
        p.add_term(e, 1);
        return p;
    }

    std::size_t num_vars() const { return num_vars_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    unsigned degree() const {
        unsigned deg = 0;
        for (const auto& [e, c] : terms_) deg = std::max(deg, total(e));
        return deg;
    }

    void add_term(const Exponent& e, const Rational& c) {
        if (e.size() != num_vars_) throw std::invalid_argument("exponent arity mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    MultiPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly out(a.num_vars_);
        Exponent e(a.num_vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    /// Positive multiple with coprime integer coefficients (same zero set and signs).
    MultiPoly primitive() const {
        if (terms_.empty()) return *this;
        Integer den_lcm = 1;
        Integer num_gcd = 0;
        for (const auto& [e, c] : terms_) {
            const Integer den = denominator_of(c);
            den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, den) * den;
            num_gcd = boost::multiprecision::gcd(num_gcd, Integer(boost::multiprecision::abs(numerator_of(c))));
        }
        return *this * Rational(den_lcm, num_gcd);
    }

    bool operator==(const MultiPoly& o) const { return num_vars_ == o.num_vars_ && terms_ == o.terms_; }

    Rational evaluate(const std::vector<Rational>& x) const {
        if (x.size() != num_vars_) throw std::invalid_argument("evaluation point arity mismatch");
        const unsigned deg = degree();
        std::vector<std::vector<Rational>> powers(num_vars_);
        for (std::size_t i = 0; i < num_vars_; ++i) {
            powers[i].resize(deg + 1);
            powers[i][0] = 1;
            for (unsigned k = 1; k <= deg; ++k) powers[i][k] = powers[i][k - 1] * x[i];
        }
        Rational sum = 0;
        Rational term;
        for (const auto& [e, c] : terms_) {
            term = c;
            for (std::size_t i = 0; i < num_vars_; ++i) {
                if (e[i]) term *= powers[i][e[i]];
            }
            sum += term;
        }
        return sum;
    }

    int sign_at(const std::vector<Rational>& x) const {
        const Rational v = evaluate(x);
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    }

    /// p(a_1 x_1 + b_1, ..., a_n x_n + b_n).
    MultiPoly compose_affine(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
        if (a.size() != num_vars_ || b.size() != num_vars_) throw std::invalid_argument("affine map arity mismatch");
        std::vector<MultiPoly> sub;
        for (std::size_t i = 0; i < num_vars_; ++i) {
            sub.push_back(variable(num_vars_, i) * a[i] + constant(num_vars_, b[i]));
        }
        MultiPoly out(num_vars_);
        for (const auto& [e, c] : terms_) {
            MultiPoly term = constant(num_vars_, c);
            for (std::size_t i = 0; i < num_vars_; ++i) {
                for (unsigned k = 0; k < e[i]; ++k) term = term * sub[i];
            }
            out += term;
        }
        return out;
    }

    /// The same polynomial over total_vars variables, its own variables placed at offset.
    MultiPoly embed(std::size_t total_vars, std::size_t offset) const {
        if (offset + num_vars_ > total_vars) throw std::invalid_argument("embedding does not fit");
        MultiPoly out(total_vars);
        Exponent e(total_vars, 0);
        for (const auto& [ei, c] : terms_) {
            std::fill(e.begin(), e.end(), 0);
            std::copy(ei.begin(), ei.end(), e.begin() + static_cast<std::ptrdiff_t>(offset));
            out.add_term(e, c);
        }
        return out;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!out.empty()) out += c < 0 ? " - " : " + ";
            else if (c < 0) out += "-";
            const Rational mag = abs(c);
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += "x" + std::to_string(i + 1);
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) out += zarank::to_string(mag);
            else if (mag == 1) out += mono;
            else out += zarank::to_string(mag) + "*" + mono;
        }
        return out;
    }

private:
    static unsigned total(const Exponent& e) {
        unsigned s = 0;
        for (auto x : e) s += x;
        return s;
    }

    void check_arity(const MultiPoly& o) const {
        if (o.num_vars_ != num_vars_) throw std::invalid_argument("polynomial arity mismatch");
    }

    std::size_t num_vars_ = 0;
    std::map<Exponent, Rational> terms_;
};

/// All exponent vectors in num_vars variables of total degree <= max_degree, graded by degree.
inline std::vector<Exponent> monomials_up_to(std::size_t num_vars, unsigned max_degree) {
    std::vector<Exponent> out;
    Exponent e(num_vars, 0);
    for (unsigned deg = 0; deg <= max_degree; ++deg) {
        // compositions of deg into num_vars parts
        auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
            if (i + 1 == num_vars) {
                e[i] = left;
                out.push_back(e);
                return;
            }
            for (unsigned k = left + 1; k-- > 0;) {
                e[i] = k;
                self(self, i + 1, left - k);
            }
        };
        if (num_vars == 0) {
            if (deg == 0) out.push_back(e);
            continue;
        }
        rec(rec, 0, deg);
    }
    return out;
}

} // namespace zarank
