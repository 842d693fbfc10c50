#pragma once

#include "hnf/derivation.hpp"
#include "hnf/problem.hpp"

namespace hnf::normal {

using series::Derivation;

/// State after n iteration steps.
///
/// Invariants: F = A + B with B = [F] from weight 2^n+2 on; A = A0 + T with
/// T the sum of the recorded increments; every S_k is invariant with zero
/// linear part; v_hist holds v_0..v_n where the last entry is the derivation
/// the next step will apply (computed eagerly from the current window).
struct IterationState {
    int n = 0;
    Series F, A, B, T;
    std::vector<Series> S_hist;       // S_1..S_n
    std::vector<Derivation> v_hist;   // v_0..v_n, last pending
};

/// F_0 = H + sum omega_i p_i q_i, A_0 the unfolding, B_0 = [H] from weight 3,
/// v_0 solved from the weight-3 window and cut to order 1.
IterationState hnf_init(Context& ctx, const NormalFormProblem& pb);

/// True when the source window [2^n+2, 2^{n+1}+2) of the next step fits
/// under the cutoff.
bool hnf_step_fits(const IterationState& st, int cutoff);

/// One step: F <- e^{-v_n} F, S_{n+1} = [F - v_n F] on the source window,
/// A <- A + S_{n+1}; then the next pending derivation is solved. Throws
/// CutoffExceeded when the window does not fit.
IterationState hnf_step(Context& ctx, const IterationState& st);

/// One step in the two-component (A, B) form. Must reproduce hnf_step
/// exactly: same S, same A, and B = F_{n+1} - A_{n+1}.
struct KamStep {
    Series A, B, S;
    Derivation v;
};
KamStep hnf_kam_step(Context& ctx, const Series& A, const Series& B, int n);

} // namespace hnf::normal
