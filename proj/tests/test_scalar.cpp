#include <doctest.h>

#include "hnf/rng.hpp"
#include "hnf/scalar.hpp"

using namespace hnf;
using namespace hnf::scalar;

namespace {

Context make_ctx_sqrt2() {
    // d = 2, alpha = (1, sqrt2)
    NumberField f(2);
    return Context(2, f, {BaseNumber::one(), BaseNumber::theta()});
}

BaseNumber rand_base(Rng& rng, bool with_i = true) {
    auto rr = [&rng]() {
        Rat q(rng.range(-6, 6), rng.range(1, 4));
        q.canonicalize();
        return q;
    };
    BaseNumber b(rr(), rr(), with_i ? rr() : Rat(0), with_i ? rr() : Rat(0));
    return b;
}

} // namespace

TEST_CASE("field axioms for quadratic-imaginary extension") {
    NumberField f(2);
    NumberField f5(5);
    Rng rng(2024);
    for (int it = 0; it < 2000; ++it) {
        const NumberField& F = (it % 2) ? f5 : f;
        BaseNumber a = rand_base(rng), b = rand_base(rng), c = rand_base(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, b + c) == F.mul(a, b) + F.mul(a, c));
        CHECK(F.mul(a, b) == F.mul(b, a));
        CHECK(a + BaseNumber::zero() == a);
        CHECK(F.mul(a, BaseNumber::one()) == a);
        if (!a.is_zero()) CHECK(F.mul(a, F.inv(a)) == BaseNumber::one());
    }
}

TEST_CASE("field constant must be a positive non-square") {
    CHECK_THROWS_AS(NumberField(4), RangeError);
    CHECK_THROWS_AS(NumberField(9), RangeError);
    CHECK_THROWS_AS(NumberField(0), RangeError);
    CHECK_THROWS_AS(NumberField(-1), RangeError);
    CHECK_NOTHROW(NumberField(2));
    CHECK_NOTHROW(NumberField(5));
}

TEST_CASE("exact sign of real elements") {
    NumberField f(2);
    // 3 - 2*sqrt2 > 0, 1 - sqrt2 < 0, 2 - sqrt2 > 0
    CHECK(f.sign_real(BaseNumber(Rat(3), Rat(-2), Rat(0), Rat(0))) == 1);
    CHECK(f.sign_real(BaseNumber(Rat(1), Rat(-1), Rat(0), Rat(0))) == -1);
    CHECK(f.sign_real(BaseNumber(Rat(2), Rat(-1), Rat(0), Rat(0))) == 1);
    CHECK(f.sign_real(BaseNumber::zero()) == 0);
}

TEST_CASE("base number text round trip") {
    Rng rng(7);
    for (int it = 0; it < 200; ++it) {
        BaseNumber a = rand_base(rng);
        CHECK(base_parse(base_str(a)) == a);
    }
    CHECK(base_parse("3/7+1/2*theta") == BaseNumber(Rat(3, 7), Rat(1, 2), Rat(0), Rat(0)));
    CHECK(base_parse("-i") == BaseNumber(Rat(0), Rat(0), Rat(-1), Rat(0)));
    CHECK(base_parse("2*i*theta-1") == BaseNumber(Rat(-1), Rat(0), Rat(0), Rat(2)));
    CHECK_THROWS_AS(base_parse("1++2"), ParseError);
    CHECK_THROWS_AS(base_parse("x"), ParseError);
}

TEST_CASE("sum of equal denominators keeps a single form factor") {
    Context ctx = make_ctx_sqrt2();
    int id = ctx.intern_form({1, -1}, {"test", "p1q2"});
    Scalar one = scalar_const(ctx, BaseNumber::one());
    Scalar x = scalar_div_form(ctx, one, id);
    Scalar s = scalar_add(ctx, x, x);
    // expect numerator 2, denominator {l:1}
    REQUIRE(s.den.size() == 1);
    CHECK(s.den[0] == std::pair<int, int>(id, 1));
    CHECK(s.num == OmegaPoly::constant(2, BaseNumber(Rat(2))));
}

TEST_CASE("multiplying by the form polynomial cancels the denominator") {
    Context ctx = make_ctx_sqrt2();
    int id = ctx.intern_form({1, -1}, {"test", "p1q2"});
    const ResonanceForm& fo = ctx.form(id);
    Scalar x = scalar_div_form(ctx, scalar_const(ctx, BaseNumber::one()), id);
    Scalar lpoly = scalar_poly(OmegaPoly::linear_form(fo.alpha_J, fo.J));
    Scalar p = scalar_mul(ctx, x, lpoly);
    CHECK(p.den.empty());
    CHECK(p.num == OmegaPoly::constant(2, BaseNumber::one()));

    // and a squared denominator cancels twice
    Scalar x2 = scalar_mul(ctx, x, x);
    Scalar p2 = scalar_mul(ctx, scalar_mul(ctx, x2, lpoly), lpoly);
    CHECK(p2.den.empty());
    CHECK(p2.num == OmegaPoly::constant(2, BaseNumber::one()));
}

TEST_CASE("omega derivative of an inverse form, d = 2") {
    Context ctx = make_ctx_sqrt2();
    int id = ctx.intern_form({1, -1}, {"test", "p1q2"});
    Scalar x = scalar_div_form(ctx, scalar_const(ctx, BaseNumber::one()), id);
    // l = alpha1 - alpha2 + omega1 - omega2; d/domega2 (1/l) = +1/l^2
    Scalar d2 = scalar_domega(ctx, x, 1);
    Scalar expect{OmegaPoly::constant(2, BaseNumber::one()), {{id, 2}}};
    CHECK(scalar_rep_eq(d2, expect));
    // d/domega1 (1/l) = -1/l^2
    Scalar d1 = scalar_domega(ctx, x, 0);
    Scalar expect1{OmegaPoly::constant(2, -BaseNumber::one()), {{id, 2}}};
    CHECK(scalar_rep_eq(d1, expect1));
}

TEST_CASE("evaluation of 1/(alpha1 - alpha2) at omega = 0") {
    set_precision_bits(128);
    Context ctx = make_ctx_sqrt2();
    int id = ctx.intern_form({1, -1}, {"test", "p1q2"});
    Scalar x = scalar_div_form(ctx, scalar_const(ctx, BaseNumber::one()), id);
    std::vector<CC> omega(2, CC());
    CC v = scalar_eval(ctx, x, omega);
    // 1/(1 - sqrt2) = -(1 + sqrt2)
    Real expect = -(Real(1) + sqrt(Real(2)));
    CHECK(abs(v.re - expect) < Real("1e-30"));
    CHECK(abs(v.im) < Real("1e-35"));

    // divisor vanishes at omega = (0, 1 - sqrt2) + adjustment making l = 0:
    // l(omega) = 1 - sqrt2 + w1 - w2 = 0 at w1 = sqrt2 - 1, w2 = 0
    std::vector<CC> bad(2, CC());
    bad[0] = CC(sqrt(Real(2)) - Real(1), Real(0));
    CHECK_THROWS_AS(scalar_eval(ctx, x, bad), DivisorVanishes);
}

TEST_CASE("omega derivative matches central finite differences") {
    set_precision_bits(256);
    Context ctx = make_ctx_sqrt2();
    int id1 = ctx.intern_form({1, -1}, {"test", "m1"});
    int id2 = ctx.intern_form({2, 1}, {"test", "m2"});

    // s = (3 + omega1^2 omega2) / (l1^2 l2)
    OmegaPoly num = OmegaPoly::constant(2, BaseNumber(Rat(3)));
    num.set({2, 1}, BaseNumber::one());
    Scalar s{num, {{id1, 2}, {id2, 1}}};

    Rng rng(99);
    Real h = pow(Real(2), -60);
    for (int k = 0; k < 2; ++k) {
        Scalar ds = scalar_domega(ctx, s, k);
        for (int it = 0; it < 5; ++it) {
            // sample away from the zero sets of l1, l2
            std::vector<CC> w = {CC(Real(2 + rng.unit()), Real(0)), CC(Real(rng.unit()), Real(0))};
            std::vector<CC> wp = w, wm = w;
            wp[static_cast<size_t>(k)].re += h;
            wm[static_cast<size_t>(k)].re -= h;
            CC fd = (scalar_eval(ctx, s, wp) - scalar_eval(ctx, s, wm)) / CC(2 * h, Real(0));
            CC ex = scalar_eval(ctx, ds, w);
            CHECK(abs(fd.re - ex.re) < Real("1e-30"));
            CHECK(abs(fd.im - ex.im) < Real("1e-30"));
        }
    }
}

TEST_CASE("resonant covector is rejected at form creation") {
    NumberField f(2);
    Context ctx(2, f, {BaseNumber::one(), BaseNumber(Rat(2))}); // alpha = (1, 2)
    CHECK_THROWS_AS(ctx.intern_form({2, -1}, {"test", "res"}), ResonantMonomial);
    CHECK_NOTHROW(ctx.intern_form({1, 1}, {"test", "ok"}));
}

TEST_CASE("zero results clear their denominators") {
    Context ctx = make_ctx_sqrt2();
    int id = ctx.intern_form({1, -1}, {"t", "m"});
    Scalar x = scalar_div_form(ctx, scalar_const(ctx, BaseNumber::one()), id);
    Scalar z = scalar_sub(ctx, x, x);
    CHECK(z.is_zero());
    CHECK(z.den.empty());
}

TEST_CASE("scalar ring laws on random small-denominator elements") {
    Context ctx = make_ctx_sqrt2();
    int ids[3] = {ctx.intern_form({1, -1}, {"t", "a"}), ctx.intern_form({0, 2}, {"t", "b"}),
                  ctx.intern_form({2, 1}, {"t", "c"})};
    Rng rng(5150);
    auto rand_scalar = [&]() {
        OmegaPoly n;
        int nt = static_cast<int>(rng.range(0, 2));
        for (int t = 0; t <= nt; ++t)
            n.set({static_cast<int>(rng.range(0, 2)), static_cast<int>(rng.range(0, 1))},
                  rand_base(rng));
        Scalar s = scalar_poly(n);
        for (int k = 0; k < 2; ++k)
            if (rng.unit() < 0.5) s = scalar_div_form(ctx, s, ids[rng.range(0, 2)]);
        return s;
    };
    for (int it = 0; it < 300; ++it) {
        Scalar a = rand_scalar(), b = rand_scalar(), c = rand_scalar();
        CHECK(scalar_eq(ctx, scalar_add(ctx, a, b), scalar_add(ctx, b, a)));
        CHECK(scalar_eq(ctx, scalar_mul(ctx, a, b), scalar_mul(ctx, b, a)));
        CHECK(scalar_eq(ctx, scalar_mul(ctx, a, scalar_add(ctx, b, c)),
                        scalar_add(ctx, scalar_mul(ctx, a, b), scalar_mul(ctx, a, c))));
        CHECK(scalar_eq(ctx, scalar_add(ctx, scalar_add(ctx, a, b), c),
                        scalar_add(ctx, a, scalar_add(ctx, b, c))));
        // representation determinism for commuted inputs
        CHECK(scalar_rep_eq(scalar_add(ctx, a, b), scalar_add(ctx, b, a)));
        CHECK(scalar_rep_eq(scalar_mul(ctx, a, b), scalar_mul(ctx, b, a)));
    }
}

TEST_CASE("ledger records first creation with origin and sorts by covector") {
    Context ctx = make_ctx_sqrt2();
    ctx.intern_form({1, 1}, {"step A", "m1"});
    ctx.intern_form({0, 1}, {"step B", "m2"});
    ctx.intern_form({1, 1}, {"step C", "m3"}); // duplicate: no new entry
    REQUIRE(ctx.ledger().size() == 2);
    CHECK(ctx.ledger()[0].origin.step == "step A");
    auto sorted = ctx.ledger_sorted();
    CHECK(sorted[0].J == std::vector<int>{0, 1});
    CHECK(sorted[1].J == std::vector<int>{1, 1});
    CHECK(sorted[0].magnitude == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}
