#pragma once

#include <array>
#include <string>
#include <vector>

#include "hnf/arith.hpp"
#include "hnf/errors.hpp"
#include "hnf/real.hpp"

namespace hnf::arith {

/// Declared operator-norm bound classes for the three maps driving the
/// iteration, a candidate shrink sequence, and the starting norms.  The class
/// data is an input, not a measurement: each entry asserts
/// u_n <= C rho_n^k a_n^{-l} (s_n - s_{n+1})^{-m}.
struct EstimateBudget {
    BoundClass j_ratio;  // bound for |j_n| / (1 + |T_n|)
    BoundClass tau;      // bound for |tau_n|
    BoundClass sigma;    // bound for |sigma_n|
    SeqSpec rho;
    R128 R = 1;
    R128 kappa = R128("1.75");
    R128 A0 = 0, B0 = 0;
    int N = 30;
};

struct IneqRow {
    int n = 0;
    R128 lhs, rhs;
    bool lhs_finite = true;  // false when a zero gap meets a negative power
    bool pass = false;
};

/// Evaluation of the six smallness inequalities the convergence proof runs
/// on, plus the three starting conditions:
///   (1) |j_0|                      <= R a_0 (s_{1/2} - s_1) / 2
///   (2) |j_n||tau_n|/(1+|T_n|)     <= R a_n (s_{n+1/4} - s_{n+1/2}) / (2e(n+1))
///   (3) |tau_n|                    <= R / 2
///   (4) |j_n|/(1+|T_n|)            <= R a_n (s_{n+1/2} - s_{n+1}) / (8(n+1))
///   (5) |sigma_n|                  <= R^2 e^{-kappa^n} / 8
///   (6) |sigma_n||j_n|             <= R^2 e^{-kappa^n} / (8(n+1))
///   (a) |A_0| <= 1   (b) |B_0| <= 1/R   (c) |B_0| <= R^{-2} e^{-1/(2-kappa)}
/// Interpolated radii follow s_{n+eps} = rho_n^{eps/2^n} s_n.  Where a bare
/// |j_n| is needed ((1),(6)) it is reconstructed from the declared ratio with
/// |T_0| = 0 and |T_n| <= n R/2; the convention is stated in t_bound_note.
struct BudgetReport {
    std::array<std::vector<IneqRow>, 6> rows;  // rows[i] for inequality i+1
    bool cond_a = false, cond_b = false, cond_c = false;
    R128 c_threshold;          // R^{-2} e^{-1/(2-kappa)}
    int first_fail_ineq = 0;   // 1..6, 0 when every row passes
    int first_fail_n = -1;
    bool all_rows_pass = false;
    bool conditions_pass = false;
    std::string t_bound_note;
};

/// Evaluate every row for n = 0..budget.N.  Failing rows are data, not
/// errors; RangeError only on malformed input (rho outside (0,1], bad kappa
/// or R, non-positive s0, negative class constants).
BudgetReport budget_check(const EstimateBudget& budget, const SeqSpec& a, const R128& s0);

} // namespace hnf::arith
