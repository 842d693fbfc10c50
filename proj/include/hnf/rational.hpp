#pragma once

#include <gmpxx.h>
#include <string>

#include "hnf/errors.hpp"

namespace hnf::scalar {

using Rat = mpq_class;

/// Integer power with negative exponents allowed for nonzero base.
inline Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), k);
    r.canonicalize();
    if (neg) {
        if (r == 0) throw RangeError("0 raised to negative power");
        r = Rat(1) / r;
    }
    return r;
}

/// Canonical text form: "p" or "p/q" with q > 0.
inline std::string rat_str(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Parse "p" or "p/q"; throws ParseError on malformed input or q == 0.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    Rat r;
    if (r.set_str(s, 10) != 0) throw ParseError("bad rational: '" + s + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace hnf::scalar
