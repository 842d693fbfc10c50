#pragma once

#include "hnf/derivation.hpp"
#include "hnf/rng.hpp"
#include "hnf/series.hpp"

namespace testutil {

using namespace hnf;
using namespace hnf::scalar;
using namespace hnf::series;

inline Context ctx_d1(long alpha_num = 2) {
    return Context(1, NumberField(2), {BaseNumber(Rat(alpha_num))});
}

inline Context ctx_d2_sqrt2() {
    return Context(2, NumberField(2), {BaseNumber::one(), BaseNumber::theta()});
}

inline Rat rand_rat(Rng& rng, long lim = 6, long den = 4) {
    Rat q(rng.range(-lim, lim), rng.range(1, den));
    q.canonicalize();
    return q;
}

inline BaseNumber rand_base(Rng& rng, bool with_i = true) {
    return BaseNumber(rand_rat(rng), rand_rat(rng), with_i ? rand_rat(rng) : Rat(0),
                      with_i ? rand_rat(rng) : Rat(0));
}

inline Monomial make_mono(std::vector<int> a, std::vector<int> b, std::vector<int> c) {
    return Monomial{std::move(a), std::move(b), std::move(c)};
}

/// Random polynomial series with terms of weight in [min_w, max_deg].
inline Series rand_series(Rng& rng, const Context& ctx, int cutoff, int max_deg, int n_terms,
                          int min_w = 0, bool with_tau = true, bool with_denoms = false,
                          const std::vector<int>* form_ids = nullptr) {
    Series f = Series::zero(ctx.d(), cutoff);
    for (int t = 0; t < n_terms; ++t) {
        Monomial m = Monomial::unit(ctx.d());
        for (int tries = 0; tries < 50; ++tries) {
            for (int i = 0; i < ctx.d(); ++i) {
                size_t k = static_cast<size_t>(i);
                m.a[k] = static_cast<int>(rng.range(0, 2));
                m.b[k] = static_cast<int>(rng.range(0, 2));
                m.c[k] = with_tau ? static_cast<int>(rng.range(0, 1)) : 0;
            }
            if (m.weight() >= min_w && m.weight() <= max_deg) break;
        }
        if (m.weight() < min_w || m.weight() > max_deg) continue;
        Scalar s = scalar_const(ctx, rand_base(rng));
        if (rng.unit() < 0.4) {
            // give some coefficients omega dependence
            OmegaPoly p = s.num;
            std::vector<int> e(static_cast<size_t>(ctx.d()), 0);
            e[static_cast<size_t>(rng.range(0, ctx.d() - 1))] = 1;
            p.set(e, rand_base(rng));
            s = scalar_poly(p);
        }
        if (with_denoms && form_ids && !form_ids->empty() && rng.unit() < 0.3)
            s = scalar_div_form(ctx, s,
                                (*form_ids)[static_cast<size_t>(
                                    rng.range(0, static_cast<long>(form_ids->size()) - 1))]);
        f.add_term(ctx, m, s);
    }
    return f;
}

/// Random element of C[[omega,tau]] (a = b = 0); weights are even.
inline Series rand_central_series(Rng& rng, const Context& ctx, int cutoff, int max_c, int n_terms,
                                  int min_w = 2) {
    Series f = Series::zero(ctx.d(), cutoff);
    for (int t = 0; t < n_terms; ++t) {
        Monomial m = Monomial::unit(ctx.d());
        for (int tries = 0; tries < 50; ++tries) {
            for (int i = 0; i < ctx.d(); ++i)
                m.c[static_cast<size_t>(i)] = static_cast<int>(rng.range(0, max_c));
            if (m.weight() >= min_w && m.weight() <= cutoff) break;
        }
        if (m.weight() < min_w || m.weight() > cutoff) continue;
        Scalar s = scalar_const(ctx, rand_base(rng));
        if (rng.unit() < 0.4) {
            OmegaPoly p = s.num;
            std::vector<int> e(static_cast<size_t>(ctx.d()), 0);
            e[static_cast<size_t>(rng.range(0, ctx.d() - 1))] = 1;
            p.set(e, rand_base(rng));
            s = scalar_poly(p);
        }
        f.add_term(ctx, m, s);
    }
    return f;
}

/// Random perturbation Hamiltonian: alpha-quadratic part plus terms of
/// weight in [3, max_deg] with rational or theta coefficients, no omega/tau.
inline Series rand_hamiltonian(Rng& rng, const Context& ctx, int cutoff, int max_deg, int n_terms,
                               int min_w = 3) {
    Series h = make_unfolding(ctx, cutoff);
    // strip the omega detuning: keep only alpha_i p_i q_i
    Series h0 = Series::zero(ctx.d(), cutoff);
    for (int i = 0; i < ctx.d(); ++i) {
        Monomial m = Monomial::unit(ctx.d());
        m.a[static_cast<size_t>(i)] = 1;
        m.b[static_cast<size_t>(i)] = 1;
        h0.set_term(m, scalar_const(ctx, ctx.alpha()[static_cast<size_t>(i)]));
    }
    for (int t = 0; t < n_terms; ++t) {
        Monomial m = Monomial::unit(ctx.d());
        for (int tries = 0; tries < 80; ++tries) {
            int budget = max_deg;
            for (int i = 0; i < ctx.d(); ++i) {
                size_t k = static_cast<size_t>(i);
                m.a[k] = static_cast<int>(rng.range(0, std::min(3L, static_cast<long>(budget))));
                m.b[k] = static_cast<int>(rng.range(0, std::min(3L, static_cast<long>(budget))));
            }
            if (m.weight() >= min_w && m.weight() <= max_deg) break;
        }
        if (m.weight() < min_w || m.weight() > max_deg) continue;
        BaseNumber c(rand_rat(rng), rand_rat(rng, 3, 3), Rat(0), Rat(0));
        if (c.is_zero()) c = BaseNumber::one();
        h0.add_term(ctx, m, scalar_const(ctx, c));
    }
    return h0;
}

inline bool derivation_eq(const Context& ctx, const Derivation& u, const Derivation& v) {
    if (!series_eq(ctx, u.gen, v.gen)) return false;
    for (size_t i = 0; i < u.domega.size(); ++i) {
        if (!series_eq(ctx, u.domega[i], v.domega[i])) return false;
        if (!series_eq(ctx, u.dtau[i], v.dtau[i])) return false;
    }
    return true;
}

} // namespace testutil
