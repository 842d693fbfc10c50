#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace hnf::arith {

/// Fixed-precision real for the numeric modules: 38 decimal digits (>= 128
/// mantissa bits).  The precision is part of the type, so worker threads
/// cannot silently fall back to a different thread-local default.
using R128 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<38>,
                                           boost::multiprecision::et_off>;

inline R128 r128_pow2(int e) {
    R128 r = 1;
    if (e >= 0)
        for (int i = 0; i < e; ++i) r *= 2;
    else
        for (int i = 0; i < -e; ++i) r /= 2;
    return r;
}

} // namespace hnf::arith
