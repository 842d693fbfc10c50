#include "hnf/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "hnf/errors.hpp"

namespace hnf::tori {

using series::Monomial;

double RealPoly::eval(const std::vector<double>& z) const {
    double acc = 0;
    for (const Term& t : terms) {
        double v = t.c;
        for (size_t i = 0; i < t.e.size(); ++i)
            for (int k = 0; k < t.e[i]; ++k) v *= z[i];
        acc += v;
    }
    return acc;
}

RealPoly compile_poly(const Context& ctx, const Series& f) {
    RealPoly out;
    out.d = f.d;
    for (const auto& [m, s] : f.terms) {
        for (int c : m.c)
            if (c != 0) throw RangeError("compile: tau exponent present");
        if (!s.den.empty() || !s.num.is_constant())
            throw RangeError("compile: scalar is not a field constant");
        const BaseNumber c = s.num.constant_term(f.d);
        if (!c.is_real()) throw RangeError("compile: coefficient has an imaginary part");
        RealPoly::Term t;
        t.e.resize(2 * static_cast<size_t>(f.d));
        for (int i = 0; i < f.d; ++i) {
            t.e[static_cast<size_t>(i)] = m.b[static_cast<size_t>(i)];
            t.e[static_cast<size_t>(f.d + i)] = m.a[static_cast<size_t>(i)];
        }
        t.c = ctx.field().eval_real_double(c);
        out.terms.push_back(std::move(t));
    }
    return out;
}

HamiltonianFlow make_flow(const Context& ctx, const Series& H) {
    HamiltonianFlow fl;
    fl.d = H.d;
    fl.H = compile_poly(ctx, H);
    for (int i = 0; i < H.d; ++i) {
        fl.dq.push_back(compile_poly(ctx, series::partial_p(ctx, H, i)));
        fl.dp.push_back(compile_poly(ctx, series::neg(series::partial_q(ctx, H, i))));
    }
    fl.separable = true;
    for (const auto& [m, s] : H.terms) {
        int qa = 0, pa = 0;
        for (int i = 0; i < H.d; ++i) {
            qa += m.b[static_cast<size_t>(i)];
            pa += m.a[static_cast<size_t>(i)];
        }
        if (qa > 0 && pa > 0) fl.separable = false;
    }
    return fl;
}

namespace {

// Fehlberg 7(8) embedded pair, 13 stages.  The 8th order weights propagate;
// the error estimate is the classical (41/840)(k1 + k11 - k12 - k13) h.
constexpr int kStages = 13;

const double kA[kStages][kStages - 1] = {
    {},
    {2.0 / 27},
    {1.0 / 36, 1.0 / 12},
    {1.0 / 24, 0, 1.0 / 8},
    {5.0 / 12, 0, -25.0 / 16, 25.0 / 16},
    {1.0 / 20, 0, 0, 1.0 / 4, 1.0 / 5},
    {-25.0 / 108, 0, 0, 125.0 / 108, -65.0 / 27, 125.0 / 54},
    {31.0 / 300, 0, 0, 0, 61.0 / 225, -2.0 / 9, 13.0 / 900},
    {2.0, 0, 0, -53.0 / 6, 704.0 / 45, -107.0 / 9, 67.0 / 90, 3.0},
    {-91.0 / 108, 0, 0, 23.0 / 108, -976.0 / 135, 311.0 / 54, -19.0 / 60, 17.0 / 6,
     -1.0 / 12},
    {2383.0 / 4100, 0, 0, -341.0 / 164, 4496.0 / 1025, -301.0 / 82, 2133.0 / 4100,
     45.0 / 82, 45.0 / 164, 18.0 / 41},
    {3.0 / 205, 0, 0, 0, 0, -6.0 / 41, -3.0 / 205, -3.0 / 41, 3.0 / 41, 6.0 / 41, 0},
    {-1777.0 / 4100, 0, 0, -341.0 / 164, 4496.0 / 1025, -289.0 / 82, 2193.0 / 4100,
     51.0 / 82, 33.0 / 164, 12.0 / 41, 0, 1.0},
};

const double kB8[kStages] = {0,         0,         0, 0, 0, 34.0 / 105, 9.0 / 35,
                             9.0 / 35,  9.0 / 280, 9.0 / 280, 0, 41.0 / 840,
                             41.0 / 840};

void eval_rhs(const HamiltonianFlow& fl, double dir, const std::vector<double>& z,
              std::vector<double>& out) {
    const size_t d = static_cast<size_t>(fl.d);
    for (size_t i = 0; i < d; ++i) out[i] = dir * fl.dq[i].eval(z);
    for (size_t i = 0; i < d; ++i) out[d + i] = dir * fl.dp[i].eval(z);
}

struct Sampler {
    Trajectory* traj;
    const HamiltonianFlow* fl;
    double e0 = 0;
    void push(double t, const std::vector<double>& z) {
        for (double v : z)
            if (!std::isfinite(v)) throw IntegratorFailure("state is not finite");
        const double e = fl->H.eval(z);
        if (traj->t.empty()) e0 = e;
        traj->energy_drift = std::max(traj->energy_drift, std::abs(e - e0));
        traj->t.push_back(t);
        traj->z.push_back(z);
    }
};

Trajectory rk8_drive(const HamiltonianFlow& fl, const std::vector<double>& z0, double T,
                     double ds, const IntegratorOptions& opt) {
    const double S = std::abs(T);
    const double dir = T < 0 ? -1.0 : 1.0;
    const double hmin = 1e-14 * std::max(1.0, S);
    const size_t n = z0.size();

    Trajectory traj;
    Sampler smp{&traj, &fl};
    std::vector<double> y = z0;
    smp.push(0.0, y);
    if (S == 0) return traj;

    std::vector<std::vector<double>> k(kStages, std::vector<double>(n));
    std::vector<double> stage(n), y8(n);
    double s = 0;
    double s_next = std::min(ds, S);
    double h = opt.h0 > 0 ? std::min(opt.h0, S) : 1e-2;
    const double s_eps = 1e-12 * std::max(1.0, S);

    while (s < S - s_eps) {
        const double h_try = std::min(h, s_next - s);
        if (h_try < hmin) throw IntegratorFailure("step size collapsed");
        if (traj.accepted + traj.rejected > opt.max_steps)
            throw IntegratorFailure("step budget exhausted");

        eval_rhs(fl, dir, y, k[0]);
        for (int st = 1; st < kStages; ++st) {
            for (size_t i = 0; i < n; ++i) {
                double acc = 0;
                for (int j = 0; j < st; ++j)
                    if (kA[st][j] != 0) acc += kA[st][j] * k[j][i];
                stage[i] = y[i] + h_try * acc;
            }
            eval_rhs(fl, dir, stage, k[st]);
        }
        double ratio = 0;
        for (size_t i = 0; i < n; ++i) {
            double acc = 0;
            for (int st = 0; st < kStages; ++st)
                if (kB8[st] != 0) acc += kB8[st] * k[st][i];
            y8[i] = y[i] + h_try * acc;
            const double err =
                std::abs(41.0 / 840 * h_try * (k[0][i] + k[10][i] - k[11][i] - k[12][i]));
            ratio = std::max(ratio, err / (opt.tol * (1 + std::abs(y[i]))));
        }
        const double f =
            ratio == 0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -1.0 / 8), 0.2, 5.0);
        if (ratio <= 1) {
            ++traj.accepted;
            s += h_try;
            y = y8;
            // do not shrink the working step just because it was clipped to a
            // sample boundary
            h = (h_try < h && f >= 1) ? h : h_try * f;
            if (s >= s_next - s_eps) {
                smp.push(dir * s, y);
                s_next = std::min(s_next + ds, S);
            }
        } else {
            ++traj.rejected;
            h = h_try * f;
        }
    }
    return traj;
}

Trajectory leapfrog_drive(const HamiltonianFlow& fl, const std::vector<double>& z0,
                          double T, double ds, const IntegratorOptions& opt) {
    if (!fl.separable) throw RangeError("leapfrog needs a separable Hamiltonian");
    const double S = std::abs(T);
    const double dir = T < 0 ? -1.0 : 1.0;
    const size_t d = static_cast<size_t>(fl.d);

    Trajectory traj;
    Sampler smp{&traj, &fl};
    std::vector<double> y = z0;
    smp.push(0.0, y);
    if (S == 0) return traj;

    // fourth-order composition of kick-drift-kick maps
    const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2);
    const double w0 = -cbrt2 / (2.0 - cbrt2);

    std::vector<double> grad(d);
    auto kick = [&](double h) {
        for (size_t i = 0; i < d; ++i) grad[i] = fl.dp[i].eval(y);
        for (size_t i = 0; i < d; ++i) y[d + i] += h * grad[i];
    };
    auto drift = [&](double h) {
        for (size_t i = 0; i < d; ++i) grad[i] = fl.dq[i].eval(y);
        for (size_t i = 0; i < d; ++i) y[i] += h * grad[i];
    };
    auto leapfrog = [&](double h) {
        kick(h / 2);
        drift(h);
        kick(h / 2);
        ++traj.accepted;
    };
    auto advance = [&](double span) {
        const long long nsub = std::max(
            1LL, static_cast<long long>(std::ceil(span / std::max(opt.fixed_step, 1e-12))));
        const double h = dir * span / static_cast<double>(nsub);
        for (long long k = 0; k < nsub; ++k) {
            if (traj.accepted > opt.max_steps) throw IntegratorFailure("step budget exhausted");
            leapfrog(w1 * h);
            leapfrog(w0 * h);
            leapfrog(w1 * h);
        }
    };

    const long long full = static_cast<long long>(std::floor(S / ds + 1e-9));
    double s = 0;
    for (long long m = 0; m < full; ++m) {
        advance(ds);
        s += ds;
        smp.push(dir * s, y);
    }
    const double rem = S - static_cast<double>(full) * ds;
    if (rem > 1e-12 * std::max(1.0, S)) {
        advance(rem);
        smp.push(dir * S, y);
    }
    return traj;
}

} // namespace

Trajectory integrate_flow(const HamiltonianFlow& fl, const std::vector<double>& z0,
                          double T, double sample_dt, const IntegratorOptions& opt) {
    if (z0.size() != 2 * static_cast<size_t>(fl.d)) throw RangeError("state size mismatch");
    if (!(sample_dt > 0)) throw RangeError("sample_dt must be positive");
    if (opt.kind == IntegratorOptions::Kind::Leapfrog)
        return leapfrog_drive(fl, z0, T, sample_dt, opt);
    return rk8_drive(fl, z0, T, sample_dt, opt);
}

} // namespace hnf::tori
