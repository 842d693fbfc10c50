#include "hnf/normalization.hpp"

#include "hnf/errors.hpp"
#include "hnf/hnf_iteration.hpp"
#include "hnf/omega_elim.hpp"
#include "hnf/torus.hpp"

namespace hnf::tori {

using normal::IterationState;
using normal::OmegaElimination;
using scalar::CC;
using scalar::Rat;
using scalar::Real;
using scalar::Scalar;
using series::Monomial;

namespace {

bool scalar_is_const(const Scalar& s) { return s.den.empty() && s.num.is_constant(); }

BaseNumber i_half_pow(const NumberField& f, int k) {
    return f.pow(BaseNumber(Rat(0), Rat(0), Rat(1, 2), Rat(0)), k);
}

// Substitute the detuning curve omega = w(tau) into every scalar.  The
// result carries field constants only.
Series at_omega_curve(const Context& ctx, const Series& f, const std::vector<TauPoly>& w,
                      int N) {
    Series out = Series::zero(f.d, N);
    for (const auto& [m, s] : f.terms) {
        if (m.weight() > N) continue;
        const int room = (N - m.weight()) / 2;
        TauPoly tp = normal::scalar_at_tau(ctx, s, w, room);
        for (const auto& [e, c] : tp.terms) {
            Monomial m2 = m;
            for (size_t j = 0; j < e.size(); ++j) m2.c[j] += e[j];
            out.add_term(ctx, m2, scalar::scalar_const(ctx, c));
        }
    }
    return out;
}

// Rotate a (tau, q, p) series back to the original coordinates:
// q -> (q + i p)/sqrt 2, p -> (p + i q)/sqrt 2, tau -> (i/2) tau.
Series rotate_back(const Context& ctx, const Series& f) {
    Series out = Series::zero(f.d, f.cutoff);
    for (const auto& [m, s] : f.terms) {
        Monomial mqp = m;
        int ctot = 0;
        for (int& cj : mqp.c) {
            ctot += cj;
            cj = 0;
        }
        Series single = Series::zero(f.d, f.cutoff);
        single.add_term(ctx, mqp, s);
        Series conv = series::scale(ctx, to_elliptic(ctx, single), i_half_pow(ctx.field(), ctot));
        for (const auto& [m2, s2] : conv.terms) {
            Monomial m3 = m2;
            for (size_t j = 0; j < m3.c.size(); ++j) m3.c[j] += m.c[j];
            out.add_term(ctx, m3, s2);
        }
    }
    return out;
}

bool all_real_const(const Series& f) {
    for (const auto& [m, s] : f.terms) {
        if (!scalar_is_const(s)) return false;
        if (!s.num.constant_term(f.d).is_real()) return false;
    }
    return true;
}

Series central_series(const Context& ctx, const TauPoly& t, int cutoff) {
    Series r = Series::zero(t.d, cutoff);
    for (const auto& [e, c] : t.terms) {
        Monomial m = Monomial::unit(t.d);
        m.c = e;
        r.add_term(ctx, m, scalar::scalar_const(ctx, c));
    }
    return r;
}

Series pq_series(const Context& ctx, int d, int i, int cutoff) {
    Series r = Series::zero(d, cutoff);
    Monomial m = Monomial::unit(d);
    m.a[static_cast<size_t>(i)] = 1;
    m.b[static_cast<size_t>(i)] = 1;
    r.add_term(ctx, m, scalar::scalar_const(ctx, BaseNumber::one()));
    return r;
}

Series retarget(const Series& f, int cutoff) {
    Series r = series::truncate(f, 0, cutoff + 1);
    r.cutoff = cutoff;
    return r;
}

} // namespace

Normalization build_normalization(const EllipticProblem& pb, int N, int n_steps) {
    validate_elliptic(pb);
    if (N < 1 || N > pb.cutoff) throw RangeError("normalization order out of range");
    if (n_steps < 1 || n_steps > 40) throw RangeError("step count out of range");
    if ((1LL << n_steps) + 2 <= N)
        throw CutoffExceeded("doubling steps do not cover the requested order");

    Normalization nf;
    nf.d = pb.d;
    nf.N = N;
    nf.n_steps = n_steps;
    nf.input = pb;

    NormalFormProblem hp = complexify(pb);
    Context ctx = normal::make_context(hp);
    IterationState st = normal::hnf_init(ctx, hp);
    for (int k = 0; k < n_steps; ++k) st = normal::hnf_step(ctx, st);
    OmegaElimination oe = normal::omega_eliminate(ctx, st, N);
    nf.omega_curve = oe.omega;

    // Transport the coordinate functions through the same product of flows.
    // Every derivation raises weight, so pushing at the reduced cutoff N is
    // exact through weight N.
    std::vector<Series> Xq, Xp;
    for (int side = 0; side < 2; ++side) {
        for (int i = 0; i < pb.d; ++i) {
            Series x = Series::zero(pb.d, N);
            Monomial m = Monomial::unit(pb.d);
            (side == 0 ? m.b : m.a)[static_cast<size_t>(i)] = 1;
            x.add_term(ctx, m, scalar::scalar_const(ctx, BaseNumber::one()));
            for (int s = 0; s < st.n; ++s)
                x = normal::exp_derivation(ctx, normal::derivation_neg(st.v_hist[static_cast<size_t>(s)]), x);
            (side == 0 ? Xq : Xp).push_back(at_omega_curve(ctx, x, oe.omega, N));
        }
    }

    // Frequency polynomial in the original coordinates:
    // beta_i(tau) = i (alpha_i + omega_i)((i/2) tau).
    const BaseNumber iu = BaseNumber::imag_unit();
    const NumberField& field = ctx.field();
    for (int i = 0; i < pb.d; ++i) {
        const TauPoly& w = oe.omega[static_cast<size_t>(i)];
        TauPoly b = normal::tp_add(
            w, TauPoly::constant(pb.d, w.max_deg, hp.alpha[static_cast<size_t>(i)]));
        TauPoly be = TauPoly::zero(pb.d, w.max_deg);
        for (const auto& [e, c] : b.terms) {
            int deg = 0;
            for (int ej : e) deg += ej;
            be.add_term(e, field.mul(iu, field.mul(c, i_half_pow(field, deg))));
        }
        nf.beta.push_back(be);
    }

    // Certification, exact: composing the problem Hamiltonian with the
    // transported coordinates must reproduce, through weight N, the linear
    // normal form plus an element of I^2 (I generated by p_i q_i - tau_i).
    // The invariant linear part along I of the difference must vanish.
    Series E = substitute_components(ctx, retarget(hp.H, N), Xq, Xp);
    Series NFlin = Series::zero(pb.d, N);
    for (int i = 0; i < pb.d; ++i) {
        TauPoly b = normal::tp_add(
            oe.omega[static_cast<size_t>(i)],
            TauPoly::constant(pb.d, oe.omega[static_cast<size_t>(i)].max_deg,
                              hp.alpha[static_cast<size_t>(i)]));
        NFlin = series::add(
            ctx, NFlin,
            series::mul(ctx, central_series(ctx, b, N), pq_series(ctx, pb.d, i, N)));
    }
    Series R = series::sub(ctx, E, NFlin);
    Series rest = Series::zero(pb.d, N);
    for (const auto& [m, s] : R.terms) {
        int qp = 0;
        for (size_t j = 0; j < m.a.size(); ++j) qp += m.a[j] + m.b[j];
        if (qp > 0) rest.add_term(ctx, m, s);
    }
    bool cert = series::in_moser_algebra(rest);
    if (cert)
        for (const Series& g : series::moser_linear_part(ctx, rest))
            if (!g.is_zero()) cert = false;
    // consistency with the iteration state: the composition must equal F_n
    // on the curve
    if (cert) cert = series::series_eq(ctx, E, at_omega_curve(ctx, retarget(st.F, N), oe.omega, N));
    nf.certified = cert;

    // Back to the original coordinates.
    const BaseNumber mi(Rat(0), Rat(0), Rat(-1), Rat(0));
    const BaseNumber inv_sqrt2(Rat(0), Rat(1, 2), Rat(0), Rat(0)); // theta/2
    bool real_ok = true;
    for (int i = 0; i < pb.d; ++i) {
        Series hq = rotate_back(ctx, Xq[static_cast<size_t>(i)]);
        Series hpp = rotate_back(ctx, Xp[static_cast<size_t>(i)]);
        Series mq = series::scale(ctx, series::add(ctx, hq, series::scale(ctx, hpp, mi)), inv_sqrt2);
        Series mp = series::scale(ctx, series::add(ctx, hpp, series::scale(ctx, hq, mi)), inv_sqrt2);
        real_ok = real_ok && all_real_const(mq) && all_real_const(mp);
        nf.map_q.push_back(std::move(mq));
        nf.map_p.push_back(std::move(mp));
    }
    for (const TauPoly& b : nf.beta)
        for (const auto& [e, c] : b.terms)
            if (!c.is_real()) real_ok = false;
    nf.map_real = real_ok;

    // Residual in the original coordinates, for inspection.
    Series Ee = substitute_components(ctx, retarget(pb.H, N), nf.map_q, nf.map_p);
    Series NFe = Series::zero(pb.d, N);
    for (int i = 0; i < pb.d; ++i) {
        Series sq = Series::zero(pb.d, N);
        Monomial mp2 = Monomial::unit(pb.d), mq2 = Monomial::unit(pb.d);
        mp2.a[static_cast<size_t>(i)] = 2;
        mq2.b[static_cast<size_t>(i)] = 2;
        sq.add_term(ctx, mp2, scalar::scalar_rat(ctx, Rat(1, 2)));
        sq.add_term(ctx, mq2, scalar::scalar_rat(ctx, Rat(1, 2)));
        NFe = series::add(
            ctx, NFe,
            series::mul(ctx, central_series(ctx, nf.beta[static_cast<size_t>(i)], N), sq));
    }
    nf.remainder = series::sub(ctx, Ee, NFe);
    return nf;
}

std::vector<double> beta_at(const NumberField& field, const Normalization& nf,
                            const std::vector<double>& tau) {
    if (static_cast<int>(tau.size()) != nf.d) throw RangeError("tau has wrong length");
    std::vector<CC> tc;
    for (double v : tau) tc.push_back(CC{Real(v), Real(0)});
    std::vector<double> out;
    for (const TauPoly& b : nf.beta)
        out.push_back(normal::tp_eval(field, b, tc).re.convert_to<double>());
    return out;
}

} // namespace hnf::tori
