#include "hnf/majorant.hpp"

#include <algorithm>
#include <cmath>

namespace hnf::arith {

namespace {

double lse(double a, double b) {
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

R128 lse(const R128& a, const R128& b) {
    R128 hi = std::max(a, b), lo = std::min(a, b);
    return hi + log1p(exp(lo - hi));
}

template <class T>
struct Tracks {
    std::vector<T> lx, ly, lz, lzc, beta, gamma;
};

/// All recursions in log space:
///   log x_{n+1} = log(R^2/2) + log x_n + lse(log x_n, -kappa^n)
///   log y_{n+1} = log(R^2/2) + log y_n + lse(kappa^n + log y_n, -kappa^n)
///   log z_{n+1} = log R^2 + kappa^n + 2 log z_n
///   log z_n (closed) = (2^{n+1}-2) log R + beta_n + 2^n log z_0
template <class T>
Tracks<T> iterate(const T& R, const T& kappa, const T& lz0, int N) {
    using std::log;
    Tracks<T> t;
    const T lR = log(R);
    const T lR2h = 2 * lR - log(T(2));
    const T start = -2 * lR - 1 / (2 - kappa);  // log of the critical start

    T kp = 1;    // kappa^n
    T hkp = 1;   // (kappa/2)^n
    T pw = 1;    // 2^n
    T lx = start, ly = start, lz = lz0;
    for (int n = 0; n <= N; ++n) {
        t.lx.push_back(lx);
        t.ly.push_back(ly);
        t.lz.push_back(lz);
        t.beta.push_back(pw / 2 * (1 - hkp) / (1 - kappa / 2));
        t.gamma.push_back((1 - hkp) / (2 - kappa));
        t.lzc.push_back((2 * pw - 2) * lR + t.beta.back() + pw * lz0);

        lx = lR2h + lx + lse(lx, -kp);
        ly = lR2h + ly + lse(kp + ly, -kp);
        lz = 2 * lR + kp + 2 * lz;
        kp *= kappa;
        hkp *= kappa / 2;
        pw *= 2;
    }
    return t;
}

template <class T>
std::vector<R128> widen(const std::vector<T>& v) {
    return std::vector<R128>(v.begin(), v.end());
}

} // namespace

R128 critical_start(const R128& R, const R128& kappa) {
    return exp(-2 * log(R) - 1 / (2 - kappa));
}

MajorantRun majorant_run(const R128& R, const R128& kappa, const R128& z0, int N,
                         bool high_precision) {
    if (!(R >= 1)) throw RangeError("majorant requires R >= 1");
    if (!(kappa > R128(3) / 2 && kappa < 2))
        throw RangeError("majorant exponent must lie in (3/2, 2)");
    if (z0 < 0) throw RangeError("z0 must be non-negative");
    if (N < 0) throw RangeError("N must be non-negative");
    if (!high_precision && N > 60)
        throw RangeError("N > 60 needs the high-precision mode");
    if (N > 4000) throw RangeError("N over the high-precision cap 4000");

    MajorantRun run;
    run.R = R;
    run.kappa = kappa;
    run.z0 = z0;
    run.N = N;
    run.high_precision = high_precision;
    run.z_zero = z0 == 0;
    const R128 lz0 = run.z_zero ? R128(0) : R128(log(z0));  // placeholder if z_zero

    if (high_precision) {
        Tracks<R128> t = iterate<R128>(R, kappa, lz0, N);
        run.log_x = t.lx;
        run.log_y = t.ly;
        run.log_z = t.lz;
        run.log_z_closed = t.lzc;
        run.beta = t.beta;
        run.gamma = t.gamma;
    } else {
        Tracks<double> t = iterate<double>(R.convert_to<double>(), kappa.convert_to<double>(),
                                           lz0.convert_to<double>(), N);
        run.log_x = widen(t.lx);
        run.log_y = widen(t.ly);
        run.log_z = widen(t.lz);
        run.log_z_closed = widen(t.lzc);
        run.beta = widen(t.beta);
        run.gamma = widen(t.gamma);
    }

    if (run.z_zero) {
        // z_n = 0 exactly: the recursion and closed form agree termwise, the
        // decrease bound 0 <= R^{-2} c^{2^n} is vacuous, and a constant-zero
        // sequence is neither strictly decreasing nor divergent.
        run.log_z.clear();
        run.log_z_closed.clear();
        run.closed_form_ok = true;
        run.closed_form_maxrel = 0;
        run.decrease_condition = true;
        run.z_decreasing = false;
        run.z_dominated = true;
    }

    // (i) closed form against the recursion, relative on logs
    run.closed_form_maxrel = 0;
    for (int n = 0; !run.z_zero && n <= N; ++n) {
        R128 d = run.log_z[static_cast<size_t>(n)] - run.log_z_closed[static_cast<size_t>(n)];
        if (d < 0) d = -d;
        R128 scale = run.log_z_closed[static_cast<size_t>(n)];
        if (scale < 0) scale = -scale;
        if (scale < 1) scale = 1;
        run.closed_form_maxrel = std::max(run.closed_form_maxrel, R128(d / scale));
    }
    if (!run.z_zero) run.closed_form_ok = run.closed_form_maxrel <= R128("1e-12");

    // (ii) y_n >= e^{-2 kappa^n}  <=>  log y_n >= -2 kappa^n
    {
        R128 kp = 1;
        int last_bad = -1;
        for (int n = 0; n <= N; ++n, kp *= kappa) {
            if (run.log_y[static_cast<size_t>(n)] < -2 * kp) {
                if (run.y_first_violation < 0) run.y_first_violation = n;
                last_bad = n;
            }
        }
        run.y_lower_bound_ok = run.y_first_violation < 0;
        run.y_recovery_n0 = last_bad < N ? last_bad + 1 : -1;
    }

    if (!run.z_zero) {
        // (iii) decrease condition 2 log R + 1/(2-kappa) + log z0 < 0
        const R128 cval = 2 * log(R) + 1 / (2 - kappa) + lz0;
        run.decrease_condition = cval < 0;
        run.z_decreasing = true;
        run.z_dominated = true;
        R128 pw = 1;
        for (int n = 0; n <= N; ++n, pw *= 2) {
            size_t k = static_cast<size_t>(n);
            if (n > 0 && !(run.log_z[k] < run.log_z[k - 1])) run.z_decreasing = false;
            // log bound: -2 log R + 2^n (2 log R + 1/(2-kappa) + log z0)
            if (!(run.log_z[k] <= -2 * log(R) + pw * cval + R128("1e-30")))
                run.z_dominated = false;
        }

        for (int n = 1; n <= N; ++n) {
            size_t k = static_cast<size_t>(n);
            if (run.log_z[k] > run.log_z[k - 1] && run.log_z[k] > 0) {
                run.diverged = true;
                run.diverged_at = n;
                break;
            }
        }
    }
    return run;
}

} // namespace hnf::arith
