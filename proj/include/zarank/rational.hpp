#pragma once

// Exact arithmetic primitives shared by every module: GMP-backed rationals,
// text parsing in the `p/q` notation used by all file formats, and hashing.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zarank {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using HighFloat = boost::multiprecision::cpp_bin_float_50;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

/// Parses `p/q`, `p` or `-p/q`. Whitespace is not accepted inside a token.
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> Integer {
        if (s.empty()) throw ParseError("empty integer in rational '" + std::string(text) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw ParseError("bad rational '" + std::string(text) + "'");
        for (std::size_t j = i; j < s.size(); ++j) {
            if (s[j] < '0' || s[j] > '9') throw ParseError("bad rational '" + std::string(text) + "'");
        }
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return Integer(digits);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

/// Integer-valued rationals print as `p`, everything else as `p/q`.
inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Always `p/q`, also for integers (`2/1`). Used where a fixed shape is part of the format.
inline std::string to_fraction_string(const Rational& q) {
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline HighFloat to_high(const Rational& q) {
    return HighFloat(numerator_of(q).str()) / HighFloat(denominator_of(q).str());
}

inline double to_double(const Rational& q) { return static_cast<double>(to_high(q)); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Integer ipow(const Integer& base, unsigned exp) {
    Integer out = 1;
    for (unsigned i = 0; i < exp; ++i) out *= base;
    return out;
}

inline Rational rpow(const Rational& base, long exp) {
    Rational out = 1;
    const bool neg = exp < 0;
    for (long i = 0; i < (neg ? -exp : exp); ++i) out *= base;
    return neg ? Rational(1 / out) : out;
}

inline std::size_t hash_integer(const Integer& z) {
    const mpz_srcptr p = z.backend().data();
    std::size_t h = static_cast<std::size_t>(p->_mp_size) * 0x9e3779b97f4a7c15ULL;
    const int n = p->_mp_size < 0 ? -p->_mp_size : p->_mp_size;
    for (int i = 0; i < n; ++i) {
        h ^= static_cast<std::size_t>(p->_mp_d[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

struct RationalHash {
    std::size_t operator()(const Rational& q) const {
        const std::size_t a = hash_integer(numerator_of(q));
        const std::size_t b = hash_integer(denominator_of(q));
        return a ^ (b * 0xff51afd7ed558ccdULL + (a << 7));
    }
};

struct RationalVectorHash {
    std::size_t operator()(const std::vector<Rational>& v) const {
        std::size_t h = v.size();
        RationalHash rh;
        for (const auto& q : v) h = h * 1000003ULL ^ rh(q);
        return h;
    }
};

} // namespace zarank
