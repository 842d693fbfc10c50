#include "hnf/omega_elim.hpp"

#include "hnf/errors.hpp"

namespace hnf::normal {

using namespace hnf::series;
using scalar::OmegaPoly;
using scalar::Scalar;

namespace {

TauPoly omega_poly_at_tau(const NumberField& f, const OmegaPoly& p,
                          const std::vector<TauPoly>& w, int d, int max_deg) {
    TauPoly acc = TauPoly::zero(d, max_deg);
    for (const auto& [e, c] : p.terms()) {
        TauPoly t = TauPoly::constant(d, max_deg, c);
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t = tp_mul(f, t, w[i]);
        acc = tp_add(acc, t);
    }
    return acc;
}

} // namespace

TauPoly scalar_at_tau(const Context& ctx, const Scalar& s, const std::vector<TauPoly>& w,
                      int max_deg) {
    const NumberField& f = ctx.field();
    TauPoly num = omega_poly_at_tau(f, s.num, w, ctx.d(), max_deg);
    for (const auto& [id, mult] : s.den) {
        const auto& form = ctx.form(id);
        TauPoly ell = TauPoly::constant(ctx.d(), max_deg, form.alpha_J);
        for (size_t k = 0; k < form.J.size(); ++k)
            if (form.J[k] != 0)
                ell = tp_add(ell, tp_scale(f, w[k], BaseNumber(Rat(form.J[k]))));
        TauPoly li = tp_inv(f, ell);
        for (int r = 0; r < mult; ++r) num = tp_mul(f, num, li);
    }
    return num;
}

TauPoly central_at_tau(const Context& ctx, const Series& f, const std::vector<TauPoly>& w,
                       int max_deg) {
    TauPoly acc = TauPoly::zero(ctx.d(), max_deg);
    for (const auto& [m, s] : f.terms) {
        TauPoly t = scalar_at_tau(ctx, s, w, max_deg);
        for (size_t i = 0; i < m.c.size(); ++i)
            for (int k = 0; k < m.c[i]; ++k)
                t = tp_mul(ctx.field(), t, TauPoly::variable(ctx.d(), max_deg, static_cast<int>(i)));
        acc = tp_add(acc, t);
    }
    return acc;
}

TauPoly moser_restriction(const Context& ctx, const Series& f, const std::vector<TauPoly>& w,
                          int max_deg) {
    TauPoly acc = TauPoly::zero(ctx.d(), max_deg);
    for (const auto& [m, s] : f.terms) {
        if (m.a != m.b) continue;
        TauPoly t = scalar_at_tau(ctx, s, w, max_deg);
        for (size_t i = 0; i < m.a.size(); ++i)
            for (int k = 0; k < m.a[i] + m.c[i]; ++k)
                t = tp_mul(ctx.field(), t, TauPoly::variable(ctx.d(), max_deg, static_cast<int>(i)));
        acc = tp_add(acc, t);
    }
    return acc;
}

OmegaElimination omega_eliminate(const Context& ctx, const IterationState& st, int k) {
    const int d = ctx.d();
    const int W = st.F.cutoff;
    const int D = std::min(k, W) / 2; // tau-degree bound
    OmegaElimination out;

    // push the coordinate functions through the applied exponentials
    for (int i = 0; i < d; ++i) {
        Series r = Series::zero(d, W);
        r.set_term(series::Monomial::unit(d), scalar::scalar_poly(OmegaPoly::variable(d, i)));
        for (int s = 0; s < st.n; ++s)
            r = exp_derivation(ctx, derivation_neg(st.v_hist[static_cast<size_t>(s)]), r);
        if (!is_central_series(r))
            throw BadLowerPart("pushed coordinate left the central subring");
        out.R.push_back(std::move(r));
    }

    // Newton in the tau-adic topology; the linear part is the identity plus
    // higher order, so each sweep at least doubles the correct order
    std::vector<TauPoly> sol(static_cast<size_t>(d), TauPoly::zero(d, D));
    for (int round = 0; round < 64; ++round) {
        std::vector<TauPoly> resid;
        bool zero = true;
        for (int i = 0; i < d; ++i) {
            resid.push_back(central_at_tau(ctx, out.R[static_cast<size_t>(i)], sol, D));
            if (!resid.back().is_zero()) zero = false;
        }
        if (zero) break;
        if (round == 63)
            throw NewtonNonUnit("tau-adic Newton failed to converge");

        // J = I + N with N of positive tau-order
        std::vector<std::vector<TauPoly>> N(static_cast<size_t>(d),
                                            std::vector<TauPoly>(static_cast<size_t>(d),
                                                                 TauPoly::zero(d, D)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Series dr = partial_omega(ctx, out.R[static_cast<size_t>(i)], j);
                TauPoly e = central_at_tau(ctx, dr, sol, D);
                if (i == j) e = tp_sub(e, TauPoly::constant(d, D, BaseNumber::one()));
                if (e.order() == 0)
                    throw NewtonNonUnit("omega-linear part is not unipotent");
                N[static_cast<size_t>(i)][static_cast<size_t>(j)] = e;
            }
        // x = (I + N)^{-1} resid by alternating Neumann sweeps
        std::vector<TauPoly> x = resid;
        for (int sweep = 0; sweep <= D; ++sweep) {
            std::vector<TauPoly> nx;
            for (int i = 0; i < d; ++i) {
                TauPoly acc = resid[static_cast<size_t>(i)];
                for (int j = 0; j < d; ++j)
                    acc = tp_sub(acc, tp_mul(ctx.field(), N[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                             x[static_cast<size_t>(j)]));
                nx.push_back(std::move(acc));
            }
            x = std::move(nx);
        }
        for (int i = 0; i < d; ++i)
            sol[static_cast<size_t>(i)] = tp_sub(sol[static_cast<size_t>(i)], x[static_cast<size_t>(i)]);
    }

    out.omega = sol;
    out.h = moser_restriction(ctx, st.F, sol, D);
    return out;
}

} // namespace hnf::normal
