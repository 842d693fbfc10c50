#include "hnf/torus.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hnf/errors.hpp"
#include "hnf/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hnf::tori {

using scalar::Rat;
using scalar::Scalar;
using series::Monomial;

Series substitute_components(const Context& ctx, const Series& f,
                             const std::vector<Series>& cq, const std::vector<Series>& cp) {
    int cut = f.cutoff;
    for (const Series& c : cq) cut = std::min(cut, c.cutoff);
    for (const Series& c : cp) cut = std::min(cut, c.cutoff);
    Series out = Series::zero(f.d, cut);
    for (const auto& [m, s] : f.terms) {
        Series prod = Series::zero(f.d, cut);
        Monomial mt = Monomial::unit(f.d);
        mt.c = m.c; // tau passes through
        prod.add_term(ctx, mt, scalar::scalar_const(ctx, BaseNumber::one()));
        for (int j = 0; j < f.d; ++j) {
            for (int k = 0; k < m.b[static_cast<size_t>(j)]; ++k)
                prod = series::mul(ctx, prod, cq[static_cast<size_t>(j)]);
            for (int k = 0; k < m.a[static_cast<size_t>(j)]; ++k)
                prod = series::mul(ctx, prod, cp[static_cast<size_t>(j)]);
        }
        out = series::add(ctx, out, series::scale_scalar(ctx, prod, s));
    }
    return out;
}

std::vector<Series> invert_map(const Context& ctx, const std::vector<Series>& map_q,
                               const std::vector<Series>& map_p, int N) {
    const int d = static_cast<int>(map_q.size());
    std::vector<Series> idq, idp, uq, up;
    for (int side = 0; side < 2; ++side) {
        for (int i = 0; i < d; ++i) {
            Series x = Series::zero(d, N);
            Monomial m = Monomial::unit(d);
            (side == 0 ? m.b : m.a)[static_cast<size_t>(i)] = 1;
            x.add_term(ctx, m, scalar::scalar_const(ctx, BaseNumber::one()));
            (side == 0 ? idq : idp).push_back(std::move(x));
        }
    }
    for (int i = 0; i < d; ++i) {
        uq.push_back(series::sub(ctx, map_q[static_cast<size_t>(i)], idq[static_cast<size_t>(i)]));
        up.push_back(series::sub(ctx, map_p[static_cast<size_t>(i)], idp[static_cast<size_t>(i)]));
    }
    // fixed point G = id - U o G; U has (q, p)-degree >= 2, so each sweep
    // settles one more degree
    std::vector<Series> gq = idq, gp = idp;
    for (int sweep = 0; sweep <= N; ++sweep) {
        std::vector<Series> nq, np;
        for (int i = 0; i < d; ++i) {
            nq.push_back(series::sub(ctx, idq[static_cast<size_t>(i)],
                                     substitute_components(ctx, uq[static_cast<size_t>(i)], gq, gp)));
            np.push_back(series::sub(ctx, idp[static_cast<size_t>(i)],
                                     substitute_components(ctx, up[static_cast<size_t>(i)], gq, gp)));
        }
        gq = std::move(nq);
        gp = std::move(np);
    }
    for (int i = 0; i < d; ++i) {
        if (!series::series_eq(ctx, substitute_components(ctx, map_q[static_cast<size_t>(i)], gq, gp),
                               idq[static_cast<size_t>(i)]) ||
            !series::series_eq(ctx, substitute_components(ctx, map_p[static_cast<size_t>(i)], gq, gp),
                               idp[static_cast<size_t>(i)]))
            throw Error("series reversion failed to close");
    }
    std::vector<Series> out = std::move(gq);
    for (Series& s : gp) out.push_back(std::move(s));
    return out;
}

FrequencyEstimate estimate_frequencies(const std::vector<double>& t,
                                       const std::vector<std::vector<double>>& zeta, int d) {
    const size_t n = t.size();
    if (n < 8 || zeta.size() != n) throw RangeError("need at least 8 aligned samples");
    FrequencyEstimate fe;
    const double pi = 3.14159265358979323846;
    std::vector<double> phi(n);
    for (int i = 0; i < d; ++i) {
        for (size_t k = 0; k < n; ++k) {
            const double q = zeta[k][static_cast<size_t>(i)];
            const double p = zeta[k][static_cast<size_t>(d + i)];
            if (q * q + p * p < 1e-300) throw PhaseUnwrapAmbiguous("sample at zero radius");
            const double raw = std::atan2(p, q);
            if (k == 0) {
                phi[k] = raw;
                continue;
            }
            double w = raw - std::atan2(zeta[k - 1][static_cast<size_t>(d + i)],
                                        zeta[k - 1][static_cast<size_t>(i)]);
            while (w > pi) w -= 2 * pi;
            while (w <= -pi) w += 2 * pi;
            if (std::abs(w) > 0.9 * pi)
                throw PhaseUnwrapAmbiguous("phase increment exceeds 0.9 pi between samples");
            phi[k] = phi[k - 1] + w;
        }
        double tbar = 0, fbar = 0;
        for (size_t k = 0; k < n; ++k) {
            tbar += t[k];
            fbar += phi[k];
        }
        tbar /= static_cast<double>(n);
        fbar /= static_cast<double>(n);
        double stt = 0, stf = 0;
        for (size_t k = 0; k < n; ++k) {
            stt += (t[k] - tbar) * (t[k] - tbar);
            stf += (t[k] - tbar) * (phi[k] - fbar);
        }
        if (stt == 0) throw RangeError("degenerate time grid");
        const double slope = stf / stt;
        double ss = 0;
        for (size_t k = 0; k < n; ++k) {
            const double r = phi[k] - fbar - slope * (t[k] - tbar);
            ss += r * r;
        }
        const double var = ss / static_cast<double>(n - 2) / stt;
        fe.value.push_back(-slope);
        fe.sigma.push_back(std::sqrt(std::max(var, 0.0)));
    }
    return fe;
}

namespace {

// Collapse a (tau, q, p) series at a numeric tau into a dense (q, p) poly.
RealPoly compile_at_tau(const Context& ctx, const Series& f, const std::vector<double>& tau) {
    std::map<std::vector<int>, double> acc;
    for (const auto& [m, s] : f.terms) {
        if (!s.den.empty() || !s.num.is_constant())
            throw RangeError("compile: scalar is not a field constant");
        const BaseNumber c = s.num.constant_term(f.d);
        if (!c.is_real()) throw RangeError("compile: coefficient has an imaginary part");
        double v = ctx.field().eval_real_double(c);
        std::vector<int> e(2 * static_cast<size_t>(f.d));
        for (int i = 0; i < f.d; ++i) {
            const size_t k = static_cast<size_t>(i);
            e[k] = m.b[k];
            e[static_cast<size_t>(f.d) + k] = m.a[k];
            for (int r = 0; r < m.c[k]; ++r) v *= tau[k];
        }
        acc[e] += v;
    }
    RealPoly out;
    out.d = f.d;
    for (auto& [e, v] : acc)
        if (v != 0) out.terms.push_back({e, v});
    return out;
}

struct TrajResult {
    std::vector<double> range_defect, anchored;
    FrequencyEstimate freq;
    double energy_drift = 0;
    long long accepted = 0, rejected = 0;
    std::vector<std::vector<double>> trace;
    std::vector<double> angles;
};

} // namespace

TorusReport torus_defect(const Normalization& nf, const TorusParams& par) {
    const int d = nf.d;
    if (static_cast<int>(par.tau.size()) != d) throw RangeError("tau has wrong length");
    for (double v : par.tau)
        if (!(v > 0)) throw RangeError("tau entries must be positive");
    if (par.K < 1) throw RangeError("need at least one trajectory");
    if (!(par.T_span > 0)) throw RangeError("time span must be positive");
    if (!nf.map_real) throw RangeError("normalization map is not real");

    Context ctx(d, nf.input.field, nf.input.alpha);
    const HamiltonianFlow fl = make_flow(ctx, nf.input.H);
    const std::vector<Series> inv = invert_map(ctx, nf.map_q, nf.map_p, nf.N);

    std::vector<RealPoly> fwd, bwd;
    for (int i = 0; i < d; ++i)
        fwd.push_back(compile_at_tau(ctx, nf.map_q[static_cast<size_t>(i)], par.tau));
    for (int i = 0; i < d; ++i)
        fwd.push_back(compile_at_tau(ctx, nf.map_p[static_cast<size_t>(i)], par.tau));
    for (const Series& g : inv) bwd.push_back(compile_at_tau(ctx, g, par.tau));

    const double r2max = par.validity_radius * par.validity_radius;
    std::vector<TrajResult> results(static_cast<size_t>(par.K));
    std::exception_ptr fail;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int k = 0; k < par.K; ++k) {
        try {
            TrajResult res;
            std::vector<double> zeta0(2 * static_cast<size_t>(d));
            for (int i = 0; i < d; ++i) {
                const double th =
                    2 * 3.14159265358979323846 *
                    rng_unit(par.seed, static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(d) +
                                           static_cast<std::uint64_t>(i));
                res.angles.push_back(th);
                zeta0[static_cast<size_t>(i)] = std::sqrt(par.tau[static_cast<size_t>(i)]) * std::cos(th);
                zeta0[static_cast<size_t>(d + i)] = std::sqrt(par.tau[static_cast<size_t>(i)]) * std::sin(th);
            }
            std::vector<double> z0(2 * static_cast<size_t>(d));
            for (size_t i = 0; i < z0.size(); ++i) z0[i] = fwd[i].eval(zeta0);

            const Trajectory traj =
                integrate_flow(fl, z0, par.T_span, par.sample_dt, par.integrator);
            res.energy_drift = traj.energy_drift;
            res.accepted = traj.accepted;
            res.rejected = traj.rejected;

            const size_t n = traj.t.size();
            std::vector<std::vector<double>> zs(n);
            std::vector<double> imin(static_cast<size_t>(d)), imax(static_cast<size_t>(d)),
                i0(static_cast<size_t>(d));
            res.anchored.assign(static_cast<size_t>(d), 0.0);
            for (size_t s = 0; s < n; ++s) {
                std::vector<double> zeta(2 * static_cast<size_t>(d));
                for (size_t i = 0; i < zeta.size(); ++i) zeta[i] = bwd[i].eval(traj.z[s]);
                for (int i = 0; i < d; ++i) {
                    const size_t ii = static_cast<size_t>(i);
                    const double act = zeta[ii] * zeta[ii] +
                                       zeta[static_cast<size_t>(d) + ii] * zeta[static_cast<size_t>(d) + ii];
                    if (act > r2max)
                        throw InverseDiverged("pulled-back sample left the validity ball");
                    if (s == 0) {
                        imin[ii] = imax[ii] = i0[ii] = act;
                    } else {
                        imin[ii] = std::min(imin[ii], act);
                        imax[ii] = std::max(imax[ii], act);
                        res.anchored[ii] = std::max(res.anchored[ii], std::abs(act - i0[ii]));
                    }
                    if (par.keep_traces && i == 0) {
                        std::vector<double> row;
                        row.push_back(traj.t[s]);
                        for (double v : traj.z[s]) row.push_back(v);
                        row.reserve(row.size() + static_cast<size_t>(d) + 1);
                        res.trace.push_back(std::move(row));
                    }
                    if (par.keep_traces) res.trace.back().push_back(act);
                }
                if (par.keep_traces) res.trace.back().push_back(fl.H.eval(traj.z[s]));
                zs[s] = std::move(zeta);
            }
            for (int i = 0; i < d; ++i)
                res.range_defect.push_back(imax[static_cast<size_t>(i)] - imin[static_cast<size_t>(i)]);
            res.freq = estimate_frequencies(traj.t, zs, d);
            results[static_cast<size_t>(k)] = std::move(res);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (!fail) fail = std::current_exception();
            }
        }
    }
    if (fail) std::rethrow_exception(fail);

    TorusReport rep;
    rep.tau = par.tau;
    rep.rho = par.rho;
    rep.seed = par.seed;
    rep.beta_pred = beta_at(nf.input.field, nf, par.tau);
    std::vector<double> mean(static_cast<size_t>(d), 0.0), m2(static_cast<size_t>(d), 0.0),
        fitvar(static_cast<size_t>(d), 0.0);
    for (int k = 0; k < par.K; ++k) {
        const TrajResult& res = results[static_cast<size_t>(k)];
        for (int i = 0; i < d; ++i) {
            const size_t ii = static_cast<size_t>(i);
            rep.defect = std::max(rep.defect, res.range_defect[ii]);
            rep.defect_anchored = std::max(rep.defect_anchored, res.anchored[ii]);
            const double x = res.freq.value[ii];
            const double delta = x - mean[ii];
            mean[ii] += delta / static_cast<double>(k + 1);
            m2[ii] += delta * (x - mean[ii]);
            fitvar[ii] += res.freq.sigma[ii] * res.freq.sigma[ii];
        }
        rep.energy_drift = std::max(rep.energy_drift, res.energy_drift);
        rep.accepted += res.accepted;
        rep.rejected += res.rejected;
        rep.angles.push_back(res.angles);
        if (par.keep_traces) rep.traces.push_back(res.trace);
    }
    for (int i = 0; i < d; ++i) {
        const size_t ii = static_cast<size_t>(i);
        rep.freq_est.push_back(mean[ii]);
        rep.freq_sigma.push_back(std::sqrt(m2[ii] / static_cast<double>(par.K) +
                                           fitvar[ii] / static_cast<double>(par.K)));
    }
    return rep;
}

} // namespace hnf::tori
