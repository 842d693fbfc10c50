#include "hnf/budget.hpp"

namespace hnf::arith {

namespace {

struct ClassValue {
    R128 value = 0;
    bool finite = true;
};

/// C rho_n^k a_n^{-l} gap_n^{-m}; a zero base under a negative power marks
/// the value infinite instead of trapping.
ClassValue eval_class(const BoundClass& c, const R128& rho_n, const R128& a_n,
                      const R128& gap_n) {
    ClassValue out;
    out.value = c.C * pow(rho_n, c.k);
    if (c.l > 0) {
        if (a_n <= 0) {
            out.finite = false;
            return out;
        }
        out.value *= pow(a_n, -c.l);
    }
    if (c.m > 0) {
        if (gap_n <= 0) {
            out.finite = false;
            return out;
        }
        out.value *= pow(gap_n, -c.m);
    }
    return out;
}

void check_class(const BoundClass& c) {
    if (c.C < 0 || c.k < 0 || c.l < 0 || c.m < 0)
        throw RangeError("bound class constants must be non-negative");
}

IneqRow make_row(int n, const ClassValue& lhs, const R128& rhs) {
    IneqRow r;
    r.n = n;
    r.lhs = lhs.value;
    r.rhs = rhs;
    r.lhs_finite = lhs.finite;
    r.pass = lhs.finite && lhs.value <= rhs;
    return r;
}

ClassValue operator*(const ClassValue& x, const ClassValue& y) {
    ClassValue out;
    out.finite = x.finite && y.finite;
    out.value = out.finite ? R128(x.value * y.value) : R128(0);
    return out;
}

ClassValue scaled(const ClassValue& x, const R128& f) {
    ClassValue out = x;
    out.value *= f;
    return out;
}

} // namespace

BudgetReport budget_check(const EstimateBudget& budget, const SeqSpec& a, const R128& s0) {
    if (!(budget.R >= 1)) throw RangeError("budget requires R >= 1");
    if (!(budget.kappa > R128(3) / 2 && budget.kappa < 2))
        throw RangeError("budget exponent must lie in (3/2, 2)");
    if (!(s0 > 0)) throw RangeError("s0 must be positive");
    if (budget.N < 0) throw RangeError("N must be non-negative");
    check_class(budget.j_ratio);
    check_class(budget.tau);
    check_class(budget.sigma);
    // value-space evaluation needs e^{-kappa^n} representable
    if (budget.N * log(budget.kappa) > log(R128("1e8")))
        throw BudgetExceeded("budget horizon too deep: kappa^N beyond 1e8");

    const int N = budget.N;
    std::vector<R128> rv = seq_values(budget.rho, N);
    for (const R128& r : rv)
        if (r <= 0 || r > 1) throw RangeError("rho terms must lie in (0,1]");
    std::vector<R128> av = seq_values(a, N);

    // s_{n+eps} = rho_n^{eps/2^n} s_n for eps in {1/4, 1/2, 1}
    std::vector<R128> s{s0}, sq4, sq2;
    for (int n = 0; n <= N; ++n) {
        R128 inv = R128(1) / r128_pow2(n);
        const R128& rho_n = rv[static_cast<size_t>(n)];
        sq4.push_back(pow(rho_n, inv / 4) * s.back());
        sq2.push_back(pow(rho_n, inv / 2) * s.back());
        s.push_back(pow(rho_n, inv) * s.back());
    }

    BudgetReport rep;
    rep.t_bound_note = "bare |j_n| = declared ratio * (1 + n R/2); |T_0| = 0 exact";
    const R128 R = budget.R;
    const R128 E = exp(R128(1));

    R128 kp = 1;
    for (int n = 0; n <= N; ++n, kp *= budget.kappa) {
        size_t k = static_cast<size_t>(n);
        R128 gap = s[k] - s[k + 1];
        ClassValue uj = eval_class(budget.j_ratio, rv[k], av[k], gap);
        ClassValue ut = eval_class(budget.tau, rv[k], av[k], gap);
        ClassValue us = eval_class(budget.sigma, rv[k], av[k], gap);
        const R128 ek = exp(-kp);
        const R128 np1 = n + 1;

        if (n == 0)
            rep.rows[0].push_back(make_row(0, uj, R * av[0] * (sq2[0] - s[1]) / 2));
        rep.rows[1].push_back(
            make_row(n, uj * ut, R * av[k] * (sq4[k] - sq2[k]) / (2 * E * np1)));
        rep.rows[2].push_back(make_row(n, ut, R / 2));
        rep.rows[3].push_back(make_row(n, uj, R * av[k] * (sq2[k] - s[k + 1]) / (8 * np1)));
        rep.rows[4].push_back(make_row(n, us, R * R * ek / 8));
        rep.rows[5].push_back(
            make_row(n, us * scaled(uj, 1 + n * R / 2), R * R * ek / (8 * np1)));
    }

    rep.all_rows_pass = true;
    for (int n = 0; n <= N && rep.first_fail_ineq == 0; ++n)
        for (int i = 0; i < 6; ++i) {
            if (i == 0 && n > 0) continue;
            if (!rep.rows[static_cast<size_t>(i)][static_cast<size_t>(n)].pass) {
                rep.first_fail_ineq = i + 1;
                rep.first_fail_n = n;
                break;
            }
        }
    if (rep.first_fail_ineq != 0) rep.all_rows_pass = false;

    rep.cond_a = budget.A0 <= 1;
    rep.cond_b = budget.B0 <= 1 / R;
    rep.c_threshold = exp(-2 * log(R) - 1 / (2 - budget.kappa));
    rep.cond_c = budget.B0 <= rep.c_threshold;
    rep.conditions_pass = rep.cond_a && rep.cond_b && rep.cond_c;
    return rep;
}

} // namespace hnf::arith
