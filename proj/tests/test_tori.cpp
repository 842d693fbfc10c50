#include <doctest.h>

#include <cmath>
#include <vector>

#include "hnf/birkhoff.hpp"
#include "hnf/elliptic.hpp"
#include "hnf/errors.hpp"
#include "hnf/integrate.hpp"
#include "hnf/normalization.hpp"
#include "hnf/torus.hpp"
#include "test_util.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hnf;
using namespace hnf::tori;
using namespace testutil;
using hnf::normal::birkhoff_normal_form;
using hnf::normal::BnfResult;
using hnf::normal::RemovalStrategy;
using hnf::normal::TauPoly;
using hnf::normal::tp_eq;
using hnf::normal::tp_truncate_weight;

namespace {

Context ell_ctx(const EllipticProblem& pb) { return Context(pb.d, pb.field, pb.alpha); }

void add_qp(const Context& ctx, Series& H, std::vector<int> a, std::vector<int> b,
            const BaseNumber& c) {
    Monomial m = Monomial::unit(ctx.d());
    m.a = std::move(a);
    m.b = std::move(b);
    H.add_term(ctx, m, scalar_const(ctx, c));
}

EllipticProblem harmonic_problem(std::vector<BaseNumber> alpha, int W) {
    EllipticProblem pb;
    pb.d = static_cast<int>(alpha.size());
    pb.alpha = std::move(alpha);
    pb.cutoff = W;
    pb.H = Series::zero(pb.d, W);
    Context ctx = ell_ctx(pb);
    for (int i = 0; i < pb.d; ++i) {
        const BaseNumber half = pb.field.mul_rat(pb.alpha[static_cast<size_t>(i)], Rat(1, 2));
        std::vector<int> z(static_cast<size_t>(pb.d), 0);
        std::vector<int> two = z;
        two[static_cast<size_t>(i)] = 2;
        add_qp(ctx, pb.H, two, z, half);
        add_qp(ctx, pb.H, z, two, half);
    }
    return pb;
}

/// d = 1 oscillator with quartic term c (p^2+q^2)^2.
EllipticProblem quartic_problem(const Rat& c, int W) {
    EllipticProblem pb = harmonic_problem({BaseNumber::one()}, W);
    Context ctx = ell_ctx(pb);
    add_qp(ctx, pb.H, {4}, {0}, BaseNumber(c));
    add_qp(ctx, pb.H, {2}, {2}, BaseNumber(2 * c));
    add_qp(ctx, pb.H, {0}, {4}, BaseNumber(c));
    return pb;
}

/// The two-mode benchmark: alpha = (1, sqrt 2), cubic coupling eps q1^2 q2.
EllipticProblem coupled_problem(const Rat& eps, int W) {
    EllipticProblem pb = harmonic_problem({BaseNumber::one(), BaseNumber::theta()}, W);
    Context ctx = ell_ctx(pb);
    add_qp(ctx, pb.H, {0, 0}, {2, 1}, BaseNumber(eps));
    return pb;
}

Series identity_component(const Context& ctx, int i, bool q_side, int cutoff) {
    Series x = Series::zero(ctx.d(), cutoff);
    Monomial m = Monomial::unit(ctx.d());
    (q_side ? m.b : m.a)[static_cast<size_t>(i)] = 1;
    x.add_term(ctx, m, scalar_const(ctx, BaseNumber::one()));
    return x;
}

TauPoly central_to_taupoly(const Context& ctx, const Series& f, int deg) {
    TauPoly tp = TauPoly::zero(ctx.d(), deg);
    for (const auto& [m, s] : f.terms) {
        REQUIRE(m.is_moser());
        for (int ai : m.a) REQUIRE(ai == 0);
        tp.add_term(m.c, s.num.constant_term(ctx.d()));
    }
    return tp;
}

/// beta(tau) = i b((i/2) tau): the frequency curve moved from product to
/// original coordinates.
TauPoly curve_to_original(const NumberField& F, const TauPoly& b) {
    TauPoly out = TauPoly::zero(b.d, b.max_deg);
    const BaseNumber iu = BaseNumber::imag_unit();
    const BaseNumber ih(Rat(0), Rat(0), Rat(1, 2), Rat(0));
    for (const auto& [e, c] : b.terms) {
        int deg = 0;
        for (int ej : e) deg += ej;
        out.add_term(e, F.mul(iu, F.mul(c, F.pow(ih, deg))));
    }
    return out;
}

/// Shared heavy fixture: the d = 2 benchmark normalization at N = 6.
const Normalization& bench_nf() {
    static const Normalization nf = [] {
        return build_normalization(coupled_problem(Rat(1, 20), 10), 6, 3);
    }();
    return nf;
}

double range_defect_of(const std::vector<double>& acts) {
    double lo = acts[0], hi = acts[0];
    for (double a : acts) {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    return hi - lo;
}

} // namespace

TEST_CASE("rotation to product coordinates round-trips exactly") {
    Rng rng(4242);
    for (int d = 1; d <= 2; ++d) {
        Context ctx(d, NumberField(2),
                    std::vector<BaseNumber>(static_cast<size_t>(d), BaseNumber::one()));
        // single variable: q -> (q - i p)/sqrt 2
        Series f = identity_component(ctx, 0, true, 6);
        Series g = to_rotating(ctx, f);
        Monomial mq = Monomial::unit(d), mp = Monomial::unit(d);
        mq.b[0] = 1;
        mp.a[0] = 1;
        REQUIRE(g.find(mq) != nullptr);
        REQUIRE(g.find(mp) != nullptr);
        CHECK(g.find(mq)->num.constant_term(d) == BaseNumber(Rat(0), Rat(1, 2), Rat(0), Rat(0)));
        CHECK(g.find(mp)->num.constant_term(d) ==
              BaseNumber(Rat(0), Rat(0), Rat(0), Rat(-1, 2)));
        CHECK(series_eq(ctx, to_elliptic(ctx, g), f));

        // 20 random real polynomials round-trip exactly and pass the
        // reality scan
        for (int inst = 0; inst < 20; ++inst) {
            Series h = Series::zero(d, 6);
            for (int t = 0; t < 8; ++t) {
                Monomial m = Monomial::unit(d);
                for (int i = 0; i < d; ++i) {
                    m.a[static_cast<size_t>(i)] = static_cast<int>(rng.range(0, 2));
                    m.b[static_cast<size_t>(i)] = static_cast<int>(rng.range(0, 2));
                }
                if (m.weight() > 6) continue;
                h.add_term(ctx, m, scalar_const(ctx, BaseNumber(rand_rat(rng), rand_rat(rng),
                                                                Rat(0), Rat(0))));
            }
            Series rot = to_rotating(ctx, h);
            CHECK(series_eq(ctx, to_elliptic(ctx, rot), h));
            CHECK(series_eq(ctx, to_rotating(ctx, to_elliptic(ctx, h)), h));
            CHECK(is_real_in_original_coordinates(ctx, rot));
        }

        // a complex coefficient breaks the scan
        Series bad = Series::zero(d, 6);
        Monomial m3 = Monomial::unit(d);
        m3.b[0] = 3;
        bad.add_term(ctx, m3, scalar_const(ctx, BaseNumber::imag_unit()));
        CHECK(!is_real_in_original_coordinates(ctx, to_rotating(ctx, bad)));

        // tau is rejected
        Series wt = Series::zero(d, 6);
        Monomial mt = Monomial::unit(d);
        mt.c[0] = 1;
        wt.add_term(ctx, mt, scalar_const(ctx, BaseNumber::one()));
        CHECK_THROWS_AS(to_rotating(ctx, wt), RangeError);
    }
}

TEST_CASE("complexified problems take the product form") {
    // harmonic: 1/2 (p^2 + q^2) -> -i p q, frequency -i alpha
    EllipticProblem pb = harmonic_problem({BaseNumber::one(), BaseNumber::theta()}, 6);
    NormalFormProblem hp = complexify(pb);
    CHECK(hp.alpha[0] == BaseNumber(Rat(0), Rat(0), Rat(-1), Rat(0)));
    CHECK(hp.alpha[1] == BaseNumber(Rat(0), Rat(0), Rat(0), Rat(-1)));
    Context ctx = normal::make_context(hp);
    Series want = Series::zero(2, 6);
    for (int i = 0; i < 2; ++i) {
        Monomial m = Monomial::unit(2);
        m.a[static_cast<size_t>(i)] = 1;
        m.b[static_cast<size_t>(i)] = 1;
        want.add_term(ctx, m, scalar_const(ctx, hp.alpha[static_cast<size_t>(i)]));
    }
    CHECK(series_eq(ctx, hp.H, want));

    // quartic oscillator: c (p^2+q^2)^2 -> -4c (pq)^2
    NormalFormProblem qo = complexify(quartic_problem(Rat(1, 4), 6));
    Context c1 = normal::make_context(qo);
    Series want1 = Series::zero(1, 6);
    want1.add_term(c1, make_mono({1}, {1}, {0}),
                   scalar_const(c1, BaseNumber(Rat(0), Rat(0), Rat(-1), Rat(0))));
    want1.add_term(c1, make_mono({2}, {2}, {0}), scalar_const(c1, BaseNumber(Rat(-1))));
    CHECK(series_eq(c1, qo.H, want1));

    // the complexified series carries the reality symmetry
    Context ce = ell_ctx(pb);
    CHECK(is_real_in_original_coordinates(ce, hp.H));

    // validation errors
    EllipticProblem badq = pb;
    Context cb = ell_ctx(badq);
    add_qp(cb, badq.H, {1, 0}, {1, 0}, BaseNumber::one()); // stray p1 q1 at weight 2
    CHECK_THROWS_AS(validate_elliptic(badq), QuadraticMismatch);
    EllipticProblem bada = pb;
    bada.alpha[0] = BaseNumber(Rat(-1));
    CHECK_THROWS_AS(validate_elliptic(bada), RangeError);
    EllipticProblem badc = pb;
    Series hc = badc.H;
    hc.add_term(cb, make_mono({0, 0}, {3, 0}, {0, 0}),
                scalar_const(cb, BaseNumber::imag_unit()));
    badc.H = hc;
    CHECK_THROWS_AS(validate_elliptic(badc), RangeError);
}

TEST_CASE("normalizing the harmonic oscillator gives the identity") {
    EllipticProblem pb = harmonic_problem({BaseNumber::one(), BaseNumber::theta()}, 6);
    Normalization nf = build_normalization(pb, 4, 2);
    Context ctx = ell_ctx(pb);
    for (int i = 0; i < 2; ++i) {
        CHECK(series_eq(ctx, nf.map_q[static_cast<size_t>(i)],
                        identity_component(ctx, i, true, 4)));
        CHECK(series_eq(ctx, nf.map_p[static_cast<size_t>(i)],
                        identity_component(ctx, i, false, 4)));
        TauPoly want = TauPoly::constant(2, nf.beta[static_cast<size_t>(i)].max_deg,
                                         pb.alpha[static_cast<size_t>(i)]);
        CHECK(tp_eq(nf.beta[static_cast<size_t>(i)], want));
    }
    CHECK(nf.certified);
    CHECK(nf.map_real);
    CHECK(nf.remainder.is_zero());

    // preconditions
    CHECK_THROWS_AS(build_normalization(pb, 6, 2), CutoffExceeded);
    CHECK_THROWS_AS(build_normalization(pb, 0, 2), RangeError);
    CHECK_THROWS_AS(build_normalization(pb, 7, 3), RangeError);
    CHECK_THROWS_AS(build_normalization(pb, 4, 0), RangeError);
}

TEST_CASE("quartic oscillator frequency is the classical curve") {
    // H = 1/2 (p^2+q^2) + 1/4 (p^2+q^2)^2 is a function of the action alone:
    // the map stays the identity and beta(tau) = 1 + tau exactly
    EllipticProblem pb = quartic_problem(Rat(1, 4), 10);
    Normalization nf = build_normalization(pb, 6, 3);
    Context ctx = ell_ctx(pb);
    CHECK(series_eq(ctx, nf.map_q[0], identity_component(ctx, 0, true, 6)));
    CHECK(series_eq(ctx, nf.map_p[0], identity_component(ctx, 0, false, 6)));
    TauPoly want = TauPoly::constant(1, nf.beta[0].max_deg, BaseNumber::one());
    want.add_term({1}, BaseNumber::one());
    CHECK(tp_eq(nf.beta[0], want));
    CHECK(nf.certified);
    CHECK(nf.map_real);

    // independent oracle: gradient of the invariant normal form, moved to
    // the original coordinates
    NormalFormProblem hp = complexify(pb);
    Context cb = normal::make_context(hp);
    BnfResult bnf = birkhoff_normal_form(cb, hp, RemovalStrategy::DegreeByDegree);
    TauPoly oracle = curve_to_original(pb.field, central_to_taupoly(cb, bnf.fd.b[0], 5));
    CHECK(tp_eq(nf.beta[0], tp_truncate_weight(oracle, 0, 7)));
}

TEST_CASE("frequency polynomial matches the invariant normal form gradient") {
    // a genuinely off-diagonal d = 1 perturbation
    EllipticProblem pb = harmonic_problem({BaseNumber::one()}, 10);
    {
        Context ctx = ell_ctx(pb);
        add_qp(ctx, pb.H, {0}, {3}, BaseNumber(Rat(1, 10)));
    }
    Normalization nf = build_normalization(pb, 6, 3);
    CHECK(nf.certified);
    CHECK(nf.map_real);

    NormalFormProblem hp = complexify(pb);
    Context cb = normal::make_context(hp);
    BnfResult bnf = birkhoff_normal_form(cb, hp, RemovalStrategy::DegreeByDegree);
    TauPoly oracle = curve_to_original(pb.field, central_to_taupoly(cb, bnf.fd.b[0], 5));
    // agreement through weight N; the doubling window 2^n = 8 > N covers it
    CHECK(tp_eq(nf.beta[0], tp_truncate_weight(oracle, 0, 7)));

    // the map is not the identity here
    Context ctx = ell_ctx(pb);
    CHECK(!series_eq(ctx, nf.map_q[0], identity_component(ctx, 0, true, 6)));
}

TEST_CASE("benchmark normalization is certified and matches the gradient oracle") {
    const Normalization& nf = bench_nf();
    CHECK(nf.certified);
    CHECK(nf.map_real);
    CHECK(nf.beta[0].coeff(std::vector<int>{0, 0}) == BaseNumber::one());
    CHECK(nf.beta[1].coeff(std::vector<int>{0, 0}) == BaseNumber::theta());

    NormalFormProblem hp = complexify(nf.input);
    Context cb = normal::make_context(hp);
    BnfResult bnf = birkhoff_normal_form(cb, hp, RemovalStrategy::DegreeByDegree);
    for (int i = 0; i < 2; ++i) {
        TauPoly oracle = curve_to_original(
            nf.input.field, central_to_taupoly(cb, bnf.fd.b[static_cast<size_t>(i)], 5));
        CHECK(tp_eq(nf.beta[static_cast<size_t>(i)], tp_truncate_weight(oracle, 0, 7)));
    }
}

TEST_CASE("map reversion closes on random real maps") {
    Rng rng(9090);
    for (int d = 1; d <= 2; ++d) {
        Context ctx(d, NumberField(2),
                    std::vector<BaseNumber>(static_cast<size_t>(d), BaseNumber::one()));
        const int N = 5;
        for (int inst = 0; inst < 6; ++inst) {
            std::vector<Series> mq, mp;
            for (int side = 0; side < 2; ++side) {
                for (int i = 0; i < d; ++i) {
                    Series x = identity_component(ctx, i, side == 0, N);
                    for (int t = 0; t < 5; ++t) {
                        Monomial m = Monomial::unit(d);
                        int qp = 0;
                        for (int j = 0; j < d; ++j) {
                            m.a[static_cast<size_t>(j)] = static_cast<int>(rng.range(0, 2));
                            m.b[static_cast<size_t>(j)] = static_cast<int>(rng.range(0, 2));
                            m.c[static_cast<size_t>(j)] = static_cast<int>(rng.range(0, 1));
                            qp += m.a[static_cast<size_t>(j)] + m.b[static_cast<size_t>(j)];
                        }
                        if (qp < 2 || m.weight() > N) continue;
                        x.add_term(ctx, m, scalar_const(ctx, BaseNumber(rand_rat(rng))));
                    }
                    (side == 0 ? mq : mp).push_back(x);
                }
            }
            std::vector<Series> g = invert_map(ctx, mq, mp, N);
            // the reversion check inside covers map o g; verify g o map too
            for (int i = 0; i < 2 * d; ++i) {
                Series back = substitute_components(ctx, g[static_cast<size_t>(i)], mq, mp);
                CHECK(series_eq(ctx, back,
                                identity_component(ctx, i % d, i < d, N)));
            }
        }
    }
}

TEST_CASE("harmonic tori sit at the integrator noise floor") {
    EllipticProblem pb = harmonic_problem({BaseNumber::one(), BaseNumber::theta()}, 4);
    Normalization nf = build_normalization(pb, 3, 1);

    TorusParams par;
    par.tau = {0.09, 0.0625};
    par.T_span = 100;
    par.sample_dt = 0.05;
    par.K = 4;
    par.seed = 11;
    par.integrator.tol = 1e-12;
    TorusReport rep = torus_defect(nf, par);
    CHECK(rep.defect < 1e-10);
    CHECK(rep.defect_anchored < 1e-10);
    CHECK(rep.energy_drift <
          10 * par.integrator.tol *
              std::max(1.0, static_cast<double>(rep.accepted) / par.K));
    CHECK(rep.beta_pred[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.beta_pred[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    // frequency recovery on a long run with fine sampling
    par.T_span = 200;
    par.sample_dt = 1e-2;
    par.K = 2;
    TorusReport fr = torus_defect(nf, par);
    CHECK(std::abs(fr.freq_est[0] - 1.0) < 1e-8);
    CHECK(std::abs(fr.freq_est[1] - std::sqrt(2.0)) < 1e-8);

    // identical seeds reproduce the report bit for bit, independent of the
    // thread count
#ifdef _OPENMP
    omp_set_num_threads(3);
#endif
    TorusReport fr2 = torus_defect(nf, par);
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    TorusReport fr3 = torus_defect(nf, par);
    CHECK(fr2.defect == fr.defect);
    CHECK(fr3.defect == fr.defect);
    for (int i = 0; i < 2; ++i) {
        CHECK(fr2.freq_est[static_cast<size_t>(i)] == fr.freq_est[static_cast<size_t>(i)]);
        CHECK(fr3.freq_est[static_cast<size_t>(i)] == fr.freq_est[static_cast<size_t>(i)]);
    }
}

TEST_CASE("anharmonic d = 1 defect stays bounded") {
    EllipticProblem pb = harmonic_problem({BaseNumber::one()}, 6);
    {
        Context ctx = ell_ctx(pb);
        add_qp(ctx, pb.H, {0}, {3}, BaseNumber(Rat(1, 10)));
    }
    Normalization nf = build_normalization(pb, 4, 2);
    CHECK(nf.certified);

    TorusParams par;
    par.tau = {0.04};
    par.sample_dt = 0.05;
    par.K = 3;
    par.seed = 7;
    par.T_span = 20;
    TorusReport a = torus_defect(nf, par);
    par.T_span = 40;
    TorusReport b = torus_defect(nf, par);
    CHECK(a.defect > 0);
    CHECK(a.defect < 1e-3);
    // integrable system: the pulled-back actions oscillate, they do not drift
    CHECK(b.defect < 1.6 * a.defect + 1e-13);
}

TEST_CASE("defect scaling on the two-mode benchmark") {
    const Normalization& nf = bench_nf();
    TorusParams par;
    par.sample_dt = 0.05;
    par.T_span = 100;
    par.K = 8;
    par.seed = 20260823;
    par.integrator.tol = 1e-13;

    std::vector<double> rhos = {0.1, 0.05};
    std::vector<double> defects;
    for (double rho : rhos) {
        par.rho = rho;
        par.tau = {rho * rho, rho * rho};
        TorusReport rep = torus_defect(nf, par);
        defects.push_back(rep.defect);
        CHECK(rep.energy_drift <
              10 * par.integrator.tol *
                  std::max(1.0, static_cast<double>(rep.accepted) / par.K));
        // frequencies within 10 rho^{N-2} of the truncated curve
        for (int i = 0; i < 2; ++i) {
            const size_t ii = static_cast<size_t>(i);
            CHECK(std::abs(rep.freq_est[ii] - rep.beta_pred[ii]) <
                  10 * std::pow(rho, nf.N - 2));
        }
    }
    CHECK(defects[1] < defects[0]); // monotone in rho
    const double slope = std::log2(defects[0] / defects[1]);
    CHECK(slope >= nf.N - 2);
}

TEST_CASE("defect measurement is symmetric under time reversal") {
    EllipticProblem pb = harmonic_problem({BaseNumber::one()}, 6);
    {
        Context ctx = ell_ctx(pb);
        add_qp(ctx, pb.H, {0}, {3}, BaseNumber(Rat(1, 10)));
    }
    Normalization nf = build_normalization(pb, 4, 2);
    TorusParams par;
    par.tau = {0.04};
    par.sample_dt = 0.1;
    par.T_span = 30;
    par.K = 1;
    par.seed = 3;
    par.keep_traces = true;
    TorusReport rep = torus_defect(nf, par);
    REQUIRE(rep.traces.size() == 1);
    std::vector<double> acts;
    for (const auto& row : rep.traces[0]) acts.push_back(row[3]); // (t, q, p, I, E)
    const double fwd = range_defect_of(acts);
    std::vector<double> rev(acts.rbegin(), acts.rend());
    CHECK(range_defect_of(rev) == fwd);
    CHECK(fwd == doctest::Approx(rep.defect).epsilon(1e-12));

    // integrating backwards lands on the analytic harmonic solution
    EllipticProblem h1 = harmonic_problem({BaseNumber::one()}, 4);
    Context ctx = ell_ctx(h1);
    HamiltonianFlow fl = make_flow(ctx, h1.H);
    IntegratorOptions opt;
    opt.tol = 1e-12;
    Trajectory back = integrate_flow(fl, {1.0, 0.0}, -10.0, 0.5, opt);
    const double tend = back.t.back();
    CHECK(tend == doctest::Approx(-10.0).epsilon(1e-12));
    CHECK(back.z.back()[0] == doctest::Approx(std::cos(10.0)).epsilon(1e-9));
    CHECK(back.z.back()[1] == doctest::Approx(std::sin(10.0)).epsilon(1e-9));
}

TEST_CASE("leapfrog requires separability and conserves energy") {
    // mixed term p q^2 is not separable
    EllipticProblem pb = harmonic_problem({BaseNumber::one()}, 6);
    Context ctx = ell_ctx(pb);
    Series Hm = pb.H;
    add_qp(ctx, Hm, {1}, {2}, BaseNumber(Rat(1, 10)));
    HamiltonianFlow mixed = make_flow(ctx, Hm);
    CHECK(!mixed.separable);
    IntegratorOptions lf;
    lf.kind = IntegratorOptions::Kind::Leapfrog;
    CHECK_THROWS_AS(integrate_flow(mixed, {0.3, 0.1}, 1.0, 0.1, lf), RangeError);

    // separable quartic: fixed-step composition holds energy to high order
    Series Hs = pb.H;
    add_qp(ctx, Hs, {0}, {4}, BaseNumber(Rat(1, 5)));
    HamiltonianFlow sep = make_flow(ctx, Hs);
    CHECK(sep.separable);
    lf.fixed_step = 1e-3;
    Trajectory tlf = integrate_flow(sep, {0.4, 0.0}, 10.0, 0.5, lf);
    CHECK(tlf.energy_drift < 1e-10);

    IntegratorOptions rk;
    rk.tol = 1e-12;
    Trajectory trk = integrate_flow(sep, {0.4, 0.0}, 10.0, 0.5, rk);
    CHECK(tlf.z.back()[0] == doctest::Approx(trk.z.back()[0]).epsilon(1e-7));
    CHECK(tlf.z.back()[1] == doctest::Approx(trk.z.back()[1]).epsilon(1e-7));
}

TEST_CASE("frequency estimation guards and exact synthetic input") {
    // exact rotations recover the signed rates
    std::vector<double> t;
    std::vector<std::vector<double>> zeta;
    for (int k = 0; k < 200; ++k) {
        const double tk = 0.1 * k;
        t.push_back(tk);
        // mode 1 clockwise at 0.7, mode 2 counterclockwise at 0.3
        zeta.push_back({0.5 * std::cos(0.7 * tk), 0.2 * std::cos(0.3 * tk),
                        -0.5 * std::sin(0.7 * tk), 0.2 * std::sin(0.3 * tk)});
    }
    FrequencyEstimate fe = estimate_frequencies(t, zeta, 2);
    CHECK(fe.value[0] == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(fe.value[1] == doctest::Approx(-0.3).epsilon(1e-10));
    CHECK(fe.sigma[0] < 1e-10);

    // zero radius
    std::vector<std::vector<double>> zero(t.size(), std::vector<double>(4, 0.0));
    CHECK_THROWS_AS(estimate_frequencies(t, zero, 2), PhaseUnwrapAmbiguous);

    // rotation faster than the unwrap guard
    std::vector<double> t2;
    std::vector<std::vector<double>> fast;
    for (int k = 0; k < 50; ++k) {
        t2.push_back(static_cast<double>(k));
        fast.push_back({std::cos(3.0 * k), std::sin(3.0 * k)});
    }
    CHECK_THROWS_AS(estimate_frequencies(t2, fast, 1), PhaseUnwrapAmbiguous);

    // too few samples
    std::vector<double> t3(t.begin(), t.begin() + 4);
    std::vector<std::vector<double>> z3(zeta.begin(), zeta.begin() + 4);
    CHECK_THROWS_AS(estimate_frequencies(t3, z3, 2), RangeError);
}

TEST_CASE("torus runs reject bad labels and surface divergence") {
    EllipticProblem pb = harmonic_problem({BaseNumber::one()}, 4);
    Normalization nf = build_normalization(pb, 3, 1);
    TorusParams par;
    par.tau = {0.01};
    par.K = 2;
    par.T_span = 5;
    par.sample_dt = 0.1;

    TorusParams bad = par;
    bad.tau = {0.01, 0.01};
    CHECK_THROWS_AS(torus_defect(nf, bad), RangeError);
    bad = par;
    bad.tau = {0.0};
    CHECK_THROWS_AS(torus_defect(nf, bad), RangeError);
    bad = par;
    bad.K = 0;
    CHECK_THROWS_AS(torus_defect(nf, bad), RangeError);
    bad = par;
    bad.validity_radius = 1e-3;
    CHECK_THROWS_AS(torus_defect(nf, bad), InverseDiverged);

    TorusReport ok = torus_defect(nf, par);
    CHECK(ok.defect >= 0);
    CHECK(ok.angles.size() == 2);
}
