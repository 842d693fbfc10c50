#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hnf/errors.hpp"
#include "hnf/real.hpp"

namespace hnf::arith {

/// Norm used for the lattice shells ||J|| <= 2^k.  All omega-space balls use
/// the dual norm, so the Hoelder bound |(x,J)| <= ||x||_dual ||J|| is exact
/// and the shrink estimate holds sample-wise with zero tolerance.
enum class Norm { LInf, L1, L2 };

Norm dual_norm(Norm n);
std::string norm_name(Norm n);

/// Closed-form or explicit positive sequences; the closed forms admit
/// definite Bruno verdicts, everything else is judged from partial sums only.
struct SeqSpec {
    enum class Kind { Geometric, DoubleExp, List, NuSigma };
    Kind kind = Kind::List;
    R128 q = 0;                // Geometric: a_n = scale * q^n
    R128 scale = 1;            // Geometric leading value
    R128 kappa = 0;            // DoubleExp: a_n = e^{-kappa^n}
    std::vector<R128> values;  // List
    std::vector<R128> beta;    // NuSigma center
    int exponent = 0;          // NuSigma: a_k = 2^{-(k+1) exponent} sigma(beta)_k
    Norm norm = Norm::LInf;    // NuSigma shell norm

    static SeqSpec geometric(const R128& q, const R128& scale = 1);
    static SeqSpec doubleexp(const R128& kappa);
    static SeqSpec list(std::vector<R128> v);
    static SeqSpec nu_sigma(std::vector<R128> beta, int exponent, Norm n = Norm::LInf);
};

/// a_0..a_N; throws RangeError on non-positive parameters and BudgetExceeded
/// when a List is shorter than requested.
std::vector<R128> seq_values(const SeqSpec& a, int N);

/// sigma(beta)_k = min |(beta,J)| over integer J != 0 with ||J|| <= 2^k,
/// k = 0..k_max.  Exact enumeration; d <= 3 and k_max <= budget.
std::vector<R128> sigma_sequence(const std::vector<R128>& beta, int k_max, Norm norm,
                                 int budget = 10);
/// Serial reference kernel with identical output.
std::vector<R128> sigma_sequence_serial(const std::vector<R128>& beta, int k_max, Norm norm,
                                        int budget = 10);

struct BrunoReport {
    enum class Verdict { Bruno, NotBruno, Inconclusive };
    std::vector<R128> partial;  // partial[n] = sum_{k<=n} |log a_k| / 2^k
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
};

/// Partial sums of |log a_k|/2^k for k <= N with a definite verdict for the
/// recognized closed forms: geometric q != 1 always summable, e^{-kappa^n}
/// falling-summable exactly for 1 < kappa < 2.
BrunoReport bruno_report(const SeqSpec& a, int N);

/// Booleans sigma(beta)_k >= a_k for k <= m.
std::vector<char> class_membership(const std::vector<R128>& beta, const SeqSpec& a, int m,
                                   Norm norm, int budget = 10);

/// Frequency-ball data: center alpha, shell sequence a, shrink sequence rho
/// with s_{n+1} = rho_n^{1/2^n} s_n from s0.
struct ArithParams {
    std::vector<R128> alpha;
    SeqSpec a;
    SeqSpec rho;
    R128 s0 = 1;
    Norm jnorm = Norm::LInf;
    int budget = 10;
};

/// s_0..s_N by the recursion; validates a falling positive, rho in (0,1).
std::vector<R128> s_sequence(const ArithParams& P, int N);
/// s_infinity = s0 * prod rho_k^{1/2^k}, evaluated until the tail is below
/// the working precision (or the spec runs out of terms).
R128 s_limit(const ArithParams& P);

/// omega in Z_n: ||omega||_dual <= s_n and sigma(alpha+omega)_k >= a_k (s0 - s_n)
/// for all k <= n.
bool zn_membership(const std::vector<R128>& omega, int n, const ArithParams& P);
/// The guaranteed gap between consecutive sets: 2^{-n} a_n (s_n - s_{n+1}).
R128 zn_gap(const ArithParams& P, int n);

/// Constants of a bound C rho_n^k a_n^{-l} (s_n - s_{n+1})^{-m}; strict class
/// requires k > 0.
struct BoundClass {
    R128 C = 0, k = 0, l = 0, m = 0;
};

struct AbsorbResult {
    std::vector<R128> rho;     // rho_0..rho_N
    R128 M, K, s_inf;
    std::vector<R128> bound;   // the class bound evaluated with this rho
    std::vector<R128> target;  // K b_n
    bool all_within = false;   // bound[n] <= target[n] for every n <= N
    bool rho_falling = false;  // rho non-increasing over the checked range
};

/// The absorption choice rho_n = 2^{(-n-1)m/k} M^{-1/k} a_n^{l/k} b_n^{1/k}
/// with M = max(C, 2^k a_0^l b_0) and K = s_inf^{-m}; throws NotStrictClass
/// when u.k = 0.
AbsorbResult absorb_rho(const BoundClass& u, const SeqSpec& a, const SeqSpec& b, int N,
                        const R128& s0);

struct DensityEstimate {
    double fraction = 0;
    double std_error = 0;
    long long inside = 0;
    long long samples = 0;
    int m_trunc = 0;
    Norm ball = Norm::L2;
};

/// Monte-Carlo estimate of the volume fraction of the level-m_trunc class
/// inside the ball B(beta, eps).  Counter-based per-sample streams: the result
/// depends only on (seed, samples), not on thread count or iteration order.
DensityEstimate density_estimate(const std::vector<double>& beta, const SeqSpec& a, double eps,
                                 int m_trunc, long long samples, std::uint64_t seed,
                                 Norm ball = Norm::L2, Norm jnorm = Norm::LInf, int budget = 10);

} // namespace hnf::arith
