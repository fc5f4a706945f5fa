// bigint.hpp -- arbitrary precision integer/rational aliases and small helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace langparams {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(const Int& base, unsigned long exp) {
    Int r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// Floor-free modular reduction into [0, m) for m >= 1.
inline Int mod_nonneg(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int pow_mod(Int base, Int exp, const Int& m) {
    base = mod_nonneg(base, m);
    Int r = 1;
    while (exp > 0) {
        if ((exp & 1) != 0) r = mod_nonneg(r * base, m);
        base = mod_nonneg(base * base, m);
        exp >>= 1;
    }
    return r;
}

inline std::string to_string(const Int& v) { return v.str(); }

}  // namespace langparams

namespace langparams::exactalg {
using langparams::Int;
using langparams::int_pow;
using langparams::mod_nonneg;
using langparams::pow_mod;
using langparams::Rat;
}  // namespace langparams::exactalg
