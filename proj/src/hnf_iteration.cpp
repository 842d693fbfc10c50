#include "hnf/hnf_iteration.hpp"

#include "hnf/birkhoff.hpp"
#include "hnf/errors.hpp"

namespace hnf::normal {

using namespace hnf::series;

namespace {

/// v_n solved from the source window of (A, B) at step n, cut to its order
/// window [2^n, 2^{n+1}).
Derivation solve_window(Context& ctx, const Series& A, const Series& B, int n) {
    int lo = (1 << n) + 2, hi = (1 << (n + 1)) + 2;
    Series m = truncate(B, lo, hi);
    Derivation j = op_j(ctx, A, m, "hnf n=" + std::to_string(n));
    return derivation_truncate(j, 1 << n, 1 << (n + 1));
}

/// S must be invariant with vanishing linear part before it may be absorbed
/// into the lower part A.
void check_increment(const Context& ctx, const Series& S) {
    for (const Series& comp : moser_linear_part(ctx, S))
        if (!comp.is_zero())
            throw BadLowerPart("iteration increment has nonzero invariant linear part");
}

} // namespace

IterationState hnf_init(Context& ctx, const NormalFormProblem& pb) {
    validate_problem(pb);
    const int W = pb.cutoff;
    IterationState st;
    st.n = 0;
    st.A = make_unfolding(ctx, W);
    st.B = truncate(pb.H, 3, W + 1);
    st.F = add(ctx, st.A, st.B);
    st.T = Series::zero(pb.d, W);
    st.v_hist.push_back(solve_window(ctx, st.A, st.B, 0));
    return st;
}

bool hnf_step_fits(const IterationState& st, int cutoff) {
    return (1 << (st.n + 1)) + 1 <= cutoff;
}

IterationState hnf_step(Context& ctx, const IterationState& st) {
    const int n = st.n;
    const int W = st.F.cutoff;
    if (!hnf_step_fits(st, W))
        throw CutoffExceeded("step " + std::to_string(n) + " window [" +
                             std::to_string((1 << n) + 2) + ", " +
                             std::to_string((1 << (n + 1)) + 2) + ") exceeds cutoff " +
                             std::to_string(W));
    const Derivation& v = st.v_hist.back();

    Series vF = apply_derivation(ctx, v, st.F);
    Series S = truncate(sub(ctx, st.F, vF), (1 << n) + 2, (1 << (n + 1)) + 2);
    check_increment(ctx, S);

    IterationState next;
    next.n = n + 1;
    next.A = add(ctx, st.A, S);
    next.T = add(ctx, st.T, S);
    next.F = exp_derivation(ctx, derivation_neg(v), st.F);
    next.B = sub(ctx, next.F, next.A);
    next.S_hist = st.S_hist;
    next.S_hist.push_back(S);
    next.v_hist = st.v_hist;
    next.v_hist.push_back(solve_window(ctx, next.A, next.B, next.n));
    return next;
}

KamStep hnf_kam_step(Context& ctx, const Series& A, const Series& B, int n) {
    const int W = A.cutoff;
    int lo = (1 << n) + 2, hi = (1 << (n + 1)) + 2;
    if ((1 << (n + 1)) + 1 > W)
        throw CutoffExceeded("step " + std::to_string(n) + " window [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + ") exceeds cutoff " +
                             std::to_string(W));
    KamStep out;
    out.v = solve_window(ctx, A, B, n);

    Series G = sub(ctx, B, apply_derivation(ctx, out.v, A));
    out.S = truncate(G, lo, hi);
    check_increment(ctx, out.S);
    out.A = add(ctx, A, out.S);

    Derivation mv = derivation_neg(out.v);
    // psi(v) S = e^{-v} S - S
    Series psiS = sub(ctx, exp_derivation(ctx, mv, out.S), out.S);
    // phi(v) A = e^{-v}(A + v(A)) - A
    Series phiA =
        sub(ctx, exp_derivation(ctx, mv, add(ctx, A, apply_derivation(ctx, out.v, A))), A);
    Series tailG = exp_derivation(ctx, mv, truncate(G, hi, W + 1));
    out.B = add(ctx, add(ctx, psiS, phiA), tailG);
    return out;
}

} // namespace hnf::normal
