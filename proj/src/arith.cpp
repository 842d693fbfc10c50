#include "hnf/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "hnf/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hnf::arith {

Norm dual_norm(Norm n) {
    switch (n) {
        case Norm::LInf: return Norm::L1;
        case Norm::L1: return Norm::LInf;
        default: return Norm::L2;
    }
}

std::string norm_name(Norm n) {
    switch (n) {
        case Norm::LInf: return "linf";
        case Norm::L1: return "l1";
        default: return "l2";
    }
}

SeqSpec SeqSpec::geometric(const R128& q, const R128& scale) {
    SeqSpec s;
    s.kind = Kind::Geometric;
    s.q = q;
    s.scale = scale;
    return s;
}

SeqSpec SeqSpec::doubleexp(const R128& kappa) {
    SeqSpec s;
    s.kind = Kind::DoubleExp;
    s.kappa = kappa;
    return s;
}

SeqSpec SeqSpec::list(std::vector<R128> v) {
    SeqSpec s;
    s.kind = Kind::List;
    s.values = std::move(v);
    return s;
}

SeqSpec SeqSpec::nu_sigma(std::vector<R128> beta, int exponent, Norm n) {
    SeqSpec s;
    s.kind = Kind::NuSigma;
    s.beta = std::move(beta);
    s.exponent = exponent;
    s.norm = n;
    return s;
}

std::vector<R128> seq_values(const SeqSpec& a, int N) {
    if (N < 0) throw RangeError("sequence horizon must be non-negative");
    std::vector<R128> out;
    out.reserve(static_cast<size_t>(N) + 1);
    switch (a.kind) {
        case SeqSpec::Kind::Geometric: {
            if (a.q <= 0 || a.scale <= 0)
                throw RangeError("geometric ratio and scale must be positive");
            R128 v = a.scale;
            for (int n = 0; n <= N; ++n, v *= a.q) out.push_back(v);
            break;
        }
        case SeqSpec::Kind::DoubleExp: {
            if (a.kappa <= 0) throw RangeError("double-exponential base must be positive");
            R128 kn = 1;
            for (int n = 0; n <= N; ++n, kn *= a.kappa) out.push_back(exp(-kn));
            break;
        }
        case SeqSpec::Kind::List: {
            if (static_cast<int>(a.values.size()) <= N)
                throw BudgetExceeded("list sequence has " + std::to_string(a.values.size()) +
                                     " terms, need " + std::to_string(N + 1));
            for (int n = 0; n <= N; ++n) {
                if (a.values[static_cast<size_t>(n)] < 0)
                    throw RangeError("list sequence entries must be non-negative");
                out.push_back(a.values[static_cast<size_t>(n)]);
            }
            break;
        }
        case SeqSpec::Kind::NuSigma: {
            if (a.exponent < 0) throw RangeError("nu_sigma exponent must be non-negative");
            std::vector<R128> sig = sigma_sequence(a.beta, N, a.norm);
            for (int k = 0; k <= N; ++k)
                out.push_back(r128_pow2(-(k + 1) * a.exponent) * sig[static_cast<size_t>(k)]);
            break;
        }
    }
    return out;
}

namespace {

/// log a_n, in closed form where the spec has one.  Values like e^{-kappa^n}
/// underflow the floating-point exponent range long before their logs become
/// awkward, so everything downstream that only needs log a_n goes through here.
std::vector<R128> seq_logs(const SeqSpec& a, int N) {
    if (N < 0) throw RangeError("sequence horizon must be non-negative");
    std::vector<R128> out;
    out.reserve(static_cast<size_t>(N) + 1);
    switch (a.kind) {
        case SeqSpec::Kind::Geometric: {
            if (a.q <= 0 || a.scale <= 0)
                throw RangeError("geometric ratio and scale must be positive");
            R128 t = log(a.scale);
            const R128 lq = log(a.q);
            for (int n = 0; n <= N; ++n, t += lq) out.push_back(t);
            break;
        }
        case SeqSpec::Kind::DoubleExp: {
            if (a.kappa <= 0) throw RangeError("double-exponential base must be positive");
            R128 kn = 1;
            for (int n = 0; n <= N; ++n, kn *= a.kappa) out.push_back(-kn);
            break;
        }
        default: {
            std::vector<R128> v = seq_values(a, N);
            for (const R128& x : v) {
                if (x <= 0) throw RangeError("sequence must be positive to take logs");
                out.push_back(log(x));
            }
            break;
        }
    }
    return out;
}

/// Smallest k with ||J|| <= 2^k for an integer lattice vector.
int shell_level(const long* j, int d, Norm norm) {
    long n = 0;
    if (norm == Norm::LInf) {
        for (int i = 0; i < d; ++i) n = std::max(n, std::labs(j[i]));
    } else if (norm == Norm::L1) {
        for (int i = 0; i < d; ++i) n += std::labs(j[i]);
    } else {
        for (int i = 0; i < d; ++i) n += j[i] * j[i];
        int k = 0;
        while ((1L << (2 * k)) < n) ++k;
        return k;
    }
    int k = 0;
    while ((1L << k) < n) ++k;
    return k;
}

/// Scan the half box j1 in [lo, hi), remaining coordinates in [-R, R];
/// updates per-shell minima of |(beta,J)| over J whose first nonzero
/// coordinate is positive.
template <class T>
void sigma_scan(const std::vector<T>& beta, int k_max, Norm norm, long R, long lo, long hi,
                std::vector<T>& best, std::vector<char>& has) {
    const int d = static_cast<int>(beta.size());
    long j[3] = {0, 0, 0};
    const long span = 2 * R + 1;
    long inner = 1;
    for (int i = 1; i < d; ++i) inner *= span;

    for (long j1 = lo; j1 < hi; ++j1) {
        j[0] = j1;
        for (long idx = 0; idx < inner; ++idx) {
            long rem = idx;
            for (int i = d - 1; i >= 1; --i) {
                j[i] = rem % span - R;
                rem /= span;
            }
            // half lattice: first nonzero coordinate positive (J and -J tie)
            int fz = 0;
            while (fz < d && j[fz] == 0) ++fz;
            if (fz == d || j[fz] < 0) continue;

            int k = shell_level(j, d, norm);
            if (k > k_max) continue;

            T dot = 0;
            for (int i = 0; i < d; ++i) dot += beta[static_cast<size_t>(i)] * j[i];
            if (dot < 0) dot = -dot;
            size_t kk = static_cast<size_t>(k);
            if (!has[kk] || dot < best[kk]) {
                best[kk] = dot;
                has[kk] = 1;
            }
        }
    }
}

template <class T>
std::vector<T> sigma_impl(const std::vector<T>& beta, int k_max, Norm norm, int budget,
                          bool parallel) {
    const int d = static_cast<int>(beta.size());
    if (d < 1 || d > 3) throw BudgetExceeded("lattice enumeration supports 1 <= d <= 3");
    if (k_max < 0) throw RangeError("k_max must be non-negative");
    if (k_max > budget)
        throw BudgetExceeded("k_max " + std::to_string(k_max) + " over enumeration budget " +
                             std::to_string(budget));
    const long R = 1L << k_max;
    double points = 1;
    for (int i = 0; i < d; ++i) points *= static_cast<double>(2 * R + 1);
    if (points > 3e8) throw BudgetExceeded("lattice shell has too many points");

    std::vector<T> best(static_cast<size_t>(k_max) + 1, T(0));
    std::vector<char> has(static_cast<size_t>(k_max) + 1, 0);

#ifdef _OPENMP
    if (parallel) {
        int nt = omp_get_max_threads();
        std::vector<std::vector<T>> tb(static_cast<size_t>(nt), best);
        std::vector<std::vector<char>> th(static_cast<size_t>(nt), has);
#pragma omp parallel num_threads(nt)
        {
            int t = omp_get_thread_num();
            long chunk = (R + 1 + nt - 1) / nt;
            long lo = t * chunk, hi = std::min(R + 1, lo + chunk);
            if (lo <= R)
                sigma_scan(beta, k_max, norm, R, lo, hi, tb[static_cast<size_t>(t)],
                           th[static_cast<size_t>(t)]);
        }
        for (int t = 0; t < nt; ++t)
            for (size_t k = 0; k <= static_cast<size_t>(k_max); ++k)
                if (th[static_cast<size_t>(t)][k] &&
                    (!has[k] || tb[static_cast<size_t>(t)][k] < best[k])) {
                    best[k] = tb[static_cast<size_t>(t)][k];
                    has[k] = 1;
                }
    } else
#endif
    {
        (void)parallel;
        sigma_scan(beta, k_max, norm, R, 0, R + 1, best, has);
    }

    // sigma_k ranges over all shells <= k
    std::vector<T> out(static_cast<size_t>(k_max) + 1);
    T cur = 0;
    bool seen = false;
    for (size_t k = 0; k <= static_cast<size_t>(k_max); ++k) {
        if (has[k] && (!seen || best[k] < cur)) {
            cur = best[k];
            seen = true;
        }
        out[k] = cur;
    }
    return out;
}

} // namespace

std::vector<R128> sigma_sequence(const std::vector<R128>& beta, int k_max, Norm norm,
                                 int budget) {
    return sigma_impl(beta, k_max, norm, budget, true);
}

std::vector<R128> sigma_sequence_serial(const std::vector<R128>& beta, int k_max, Norm norm,
                                        int budget) {
    return sigma_impl(beta, k_max, norm, budget, false);
}

BrunoReport bruno_report(const SeqSpec& a, int N) {
    BrunoReport rep;
    using V = BrunoReport::Verdict;

    // closed forms give log a_k directly; list-like specs go through the
    // values and can legitimately hit an exact zero
    bool vanished = false;
    if (a.kind == SeqSpec::Kind::Geometric || a.kind == SeqSpec::Kind::DoubleExp) {
        std::vector<R128> lg = seq_logs(a, N);
        R128 acc = 0;
        for (int k = 0; k <= N; ++k) {
            R128 t = lg[static_cast<size_t>(k)];
            if (t < 0) t = -t;
            acc += t / r128_pow2(k);
            rep.partial.push_back(acc);
        }
    } else {
        std::vector<R128> v = seq_values(a, N);
        R128 acc = 0;
        for (int k = 0; k <= N; ++k) {
            const R128& x = v[static_cast<size_t>(k)];
            if (x <= 0) {
                vanished = true;
                break;
            }
            R128 t = log(x);
            if (t < 0) t = -t;
            acc += t / r128_pow2(k);
            rep.partial.push_back(acc);
        }
    }

    if (vanished) {
        rep.verdict = V::NotBruno;
        rep.reason = "sequence vanishes; |log a_k| diverges";
        return rep;
    }
    switch (a.kind) {
        case SeqSpec::Kind::Geometric:
            if (a.q == 1) {
                rep.verdict = V::NotBruno;
                rep.reason = "constant sequence is not strictly monotone";
            } else {
                rep.verdict = V::Bruno;
                rep.reason = "geometric: sum k|log q|/2^k converges to 2|log q|";
            }
            break;
        case SeqSpec::Kind::DoubleExp:
            if (a.kappa <= 1) {
                rep.verdict = V::NotBruno;
                rep.reason = "e^{-kappa^n} is not strictly decreasing for kappa <= 1";
            } else if (a.kappa < 2) {
                rep.verdict = V::Bruno;
                rep.reason = "|log a_k|/2^k = (kappa/2)^k is summable for kappa < 2";
            } else {
                rep.verdict = V::NotBruno;
                rep.reason = "|log a_k|/2^k = (kappa/2)^k does not converge for kappa >= 2";
            }
            break;
        default:
            rep.verdict = V::Inconclusive;
            rep.reason = "no closed form; partial sums up to N = " + std::to_string(N);
            break;
    }
    return rep;
}

std::vector<char> class_membership(const std::vector<R128>& beta, const SeqSpec& a, int m,
                                   Norm norm, int budget) {
    std::vector<R128> sig = sigma_sequence(beta, m, norm, budget);
    std::vector<R128> av = seq_values(a, m);
    std::vector<char> out(static_cast<size_t>(m) + 1);
    for (size_t k = 0; k <= static_cast<size_t>(m); ++k) out[k] = sig[k] >= av[k];
    return out;
}

namespace {

std::vector<R128> rho_logs(const SeqSpec& rho, int N) {
    std::vector<R128> lg = seq_logs(rho, N);
    for (const R128& t : lg)
        if (!(t < 0)) throw RangeError("rho terms must lie in (0,1)");
    return lg;
}

void check_falling(const std::vector<R128>& a) {
    for (size_t n = 0; n + 1 < a.size(); ++n)
        if (a[n + 1] > a[n]) throw RangeError("sequence a must be non-increasing");
    for (const R128& x : a)
        if (x < 0) throw RangeError("sequence a must be non-negative");
}

/// Same monotonicity check on log a_n; positivity is implied by the logs existing.
void check_falling_logs(const std::vector<R128>& lg) {
    for (size_t n = 0; n + 1 < lg.size(); ++n)
        if (lg[n + 1] > lg[n]) throw RangeError("sequence a must be non-increasing");
}

R128 vec_norm(const std::vector<R128>& x, Norm n) {
    R128 r = 0;
    if (n == Norm::LInf) {
        for (const R128& v : x) r = std::max(r, v < 0 ? R128(-v) : v);
    } else if (n == Norm::L1) {
        for (const R128& v : x) r += v < 0 ? R128(-v) : v;
    } else {
        for (const R128& v : x) r += v * v;
        r = sqrt(r);
    }
    return r;
}

/// log s_inf - log s0 = sum_k log(rho_k)/2^k, truncated when the tail is
/// below working precision or the sequence runs out of terms.
R128 log_shrink_sum(const std::vector<R128>& log_rho) {
    R128 acc = 0;
    const R128 tol("1e-45");
    for (size_t k = 0; k < log_rho.size(); ++k) {
        R128 t = log_rho[k] / r128_pow2(static_cast<int>(k));
        acc += t;
        R128 at = t < 0 ? R128(-t) : t;
        if (k > 8 && at < tol * (1 + (acc < 0 ? R128(-acc) : acc))) break;
    }
    return acc;
}

int seq_horizon(const SeqSpec& s, int want) {
    if (s.kind == SeqSpec::Kind::List) return std::min(want, static_cast<int>(s.values.size()) - 1);
    if (s.kind == SeqSpec::Kind::NuSigma) return std::min(want, 10);
    return want;
}

} // namespace

std::vector<R128> s_sequence(const ArithParams& P, int N) {
    if (P.s0 <= 0) throw RangeError("s0 must be positive");
    std::vector<R128> s{P.s0};
    if (N == 0) return s;
    std::vector<R128> lr = rho_logs(P.rho, N - 1);
    for (int n = 0; n < N; ++n)
        s.push_back(exp(lr[static_cast<size_t>(n)] / r128_pow2(n)) * s.back());
    return s;
}

R128 s_limit(const ArithParams& P) {
    if (P.s0 <= 0) throw RangeError("s0 must be positive");
    int H = seq_horizon(P.rho, 1200);
    std::vector<R128> lr = rho_logs(P.rho, H);
    return P.s0 * exp(log_shrink_sum(lr));
}

bool zn_membership(const std::vector<R128>& omega, int n, const ArithParams& P) {
    if (omega.size() != P.alpha.size()) throw RangeError("omega dimension mismatch");
    std::vector<R128> s = s_sequence(P, n);
    if (vec_norm(omega, dual_norm(P.jnorm)) > s[static_cast<size_t>(n)]) return false;

    std::vector<R128> av = seq_values(P.a, n);
    check_falling(av);
    std::vector<R128> shifted(P.alpha);
    for (size_t i = 0; i < shifted.size(); ++i) shifted[i] += omega[i];
    std::vector<R128> sig = sigma_sequence(shifted, n, P.jnorm, P.budget);
    R128 scale = P.s0 - s[static_cast<size_t>(n)];
    for (size_t k = 0; k <= static_cast<size_t>(n); ++k)
        if (sig[k] < av[k] * scale) return false;
    return true;
}

R128 zn_gap(const ArithParams& P, int n) {
    std::vector<R128> s = s_sequence(P, n + 1);
    std::vector<R128> av = seq_values(P.a, n);
    check_falling(av);
    return r128_pow2(-n) * av[static_cast<size_t>(n)] *
           (s[static_cast<size_t>(n)] - s[static_cast<size_t>(n) + 1]);
}

AbsorbResult absorb_rho(const BoundClass& u, const SeqSpec& a, const SeqSpec& b, int N,
                        const R128& s0) {
    if (u.C < 0 || u.k < 0 || u.l < 0 || u.m < 0)
        throw RangeError("bound class constants must be non-negative");
    if (u.k == 0) throw NotStrictClass("absorption requires k > 0");
    if (s0 <= 0) throw RangeError("s0 must be positive");

    int H = std::max(N, 1200);
    H = std::min(seq_horizon(a, H), seq_horizon(b, H));
    if (H < N) throw BudgetExceeded("sequences too short for requested horizon");
    // logs carry the long tail for s_inf (values may underflow out there);
    // plain values are kept over the reported range n <= N
    std::vector<R128> la = seq_logs(a, H), lb = seq_logs(b, H);
    check_falling_logs(la);
    check_falling_logs(lb);
    std::vector<R128> av = seq_values(a, N), bv = seq_values(b, N);

    AbsorbResult res;
    res.M = std::max(u.C, pow(R128(2), u.k) * pow(av[0], u.l) * bv[0]);
    const R128 lM = log(res.M), l2 = log(R128(2));
    std::vector<R128> log_rho(static_cast<size_t>(H) + 1);
    for (int n = 0; n <= H; ++n)
        log_rho[static_cast<size_t>(n)] =
            (R128(-(n + 1)) * u.m * l2 - lM + u.l * la[static_cast<size_t>(n)] +
             lb[static_cast<size_t>(n)]) /
            u.k;

    res.s_inf = s0 * exp(log_shrink_sum(log_rho));
    res.K = pow(res.s_inf, -u.m);

    res.rho.resize(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n)
        res.rho[static_cast<size_t>(n)] = pow(R128(2), R128(-(n + 1)) * u.m / u.k) *
                                          pow(res.M, R128(-1) / u.k) *
                                          pow(av[static_cast<size_t>(n)], u.l / u.k) *
                                          pow(bv[static_cast<size_t>(n)], R128(1) / u.k);

    std::vector<R128> s{s0};
    for (int n = 0; n <= N; ++n)
        s.push_back(pow(res.rho[static_cast<size_t>(n)], R128(1) / r128_pow2(n)) * s.back());

    res.all_within = true;
    res.rho_falling = true;
    for (int n = 0; n <= N; ++n) {
        size_t k = static_cast<size_t>(n);
        R128 gap = s[k] - s[k + 1];
        R128 bound = u.C * pow(res.rho[k], u.k) * pow(av[k], -u.l) * pow(gap, -u.m);
        R128 target = res.K * bv[k];
        res.bound.push_back(bound);
        res.target.push_back(target);
        if (!(bound <= target)) res.all_within = false;
        if (n > 0 && res.rho[k] > res.rho[k - 1]) res.rho_falling = false;
    }
    return res;
}

namespace {

double dvec_norm(const double* x, int d, Norm n) {
    double r = 0;
    if (n == Norm::LInf) {
        for (int i = 0; i < d; ++i) r = std::max(r, std::fabs(x[i]));
    } else if (n == Norm::L1) {
        for (int i = 0; i < d; ++i) r += std::fabs(x[i]);
    } else {
        for (int i = 0; i < d; ++i) r += x[i] * x[i];
        r = std::sqrt(r);
    }
    return r;
}

} // namespace

DensityEstimate density_estimate(const std::vector<double>& beta, const SeqSpec& a, double eps,
                                 int m_trunc, long long samples, std::uint64_t seed, Norm ball,
                                 Norm jnorm, int budget) {
    const int d = static_cast<int>(beta.size());
    if (d < 1 || d > 3) throw BudgetExceeded("density estimation supports 1 <= d <= 3");
    if (samples < 1000) throw BudgetExceeded("need at least 1000 samples");
    if (m_trunc < 0 || m_trunc > budget) throw BudgetExceeded("m_trunc over enumeration budget");
    if (eps <= 0) throw RangeError("ball radius must be positive");

    std::vector<R128> av = seq_values(a, m_trunc);
    std::vector<double> thr(av.size());
    for (size_t k = 0; k < av.size(); ++k) thr[k] = av[k].convert_to<double>();

    long long inside = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : inside) schedule(static)
#endif
    for (long long i = 0; i < samples; ++i) {
        Rng stream(rng_at(seed, static_cast<std::uint64_t>(i)));
        double x[3] = {0, 0, 0};
        // rejection from the cube; per-sample stream keeps the draw
        // deterministic under any thread count or loop split
        do {
            for (int c = 0; c < d; ++c) x[c] = (2 * stream.unit() - 1) * eps;
        } while (dvec_norm(x, d, ball) > eps);

        std::vector<double> pt(beta);
        for (int c = 0; c < d; ++c) pt[static_cast<size_t>(c)] += x[c];
        std::vector<double> sig = sigma_impl(pt, m_trunc, jnorm, budget, false);
        bool ok = true;
        for (size_t k = 0; k < sig.size(); ++k)
            if (sig[k] < thr[k]) {
                ok = false;
                break;
            }
        if (ok) ++inside;
    }

    DensityEstimate est;
    est.inside = inside;
    est.samples = samples;
    est.m_trunc = m_trunc;
    est.ball = ball;
    est.fraction = static_cast<double>(inside) / static_cast<double>(samples);
    est.std_error =
        std::sqrt(est.fraction * (1 - est.fraction) / static_cast<double>(samples));
    return est;
}

} // namespace hnf::arith
