#include "hnf/elliptic.hpp"

#include "hnf/errors.hpp"

namespace hnf::tori {

using scalar::Rat;
using scalar::Scalar;
using series::Monomial;

namespace {

// Constant coefficient of a scalar known to be a field constant.
BaseNumber const_coeff(int d, const Scalar& s) { return s.num.constant_term(d); }

bool scalar_is_const(const Scalar& s) { return s.den.empty() && s.num.is_constant(); }

// 2^{-D/2} as a field element.  Odd D needs theta = sqrt 2.
BaseNumber half_power(const NumberField& field, int D) {
    Rat inv(1);
    const Rat half(1, 2);
    for (int k = 0; k < D / 2; ++k) inv *= half;
    if (D % 2 == 0) return BaseNumber(inv);
    if (field.m() != 2) throw RangeError("rotating coordinates need sqrt 2 in the field");
    return BaseNumber(Rat(0), inv * half, Rat(0), Rat(0));
}

// Substitute q_j -> (q_j + sgn i p_j)/sqrt2, p_j -> (p_j + sgn i q_j)/sqrt2.
Series cayley_subst(const Context& ctx, const Series& f, int sgn) {
    const NumberField& field = ctx.field();
    const int d = f.d;
    const BaseNumber si = sgn > 0 ? BaseNumber::imag_unit()
                                  : BaseNumber(Rat(0), Rat(0), Rat(-1), Rat(0));
    Series out = Series::zero(d, f.cutoff);
    for (const auto& [m, s] : f.terms) {
        for (int c : m.c)
            if (c != 0) throw RangeError("rotating substitution applies to (q, p) series only");
        if (!scalar_is_const(s)) throw RangeError("rotating substitution needs constant scalars");
        // Unscaled product of degree-1 factors; the 2^{-D/2} comes at the end.
        Series prod = Series::zero(d, f.cutoff);
        prod.add_term(ctx, Monomial::unit(d), scalar::scalar_const(ctx, BaseNumber::one()));
        int D = 0;
        for (int j = 0; j < d; ++j) {
            Series fq = Series::zero(d, f.cutoff);
            Monomial mq = Monomial::unit(d), mp = Monomial::unit(d);
            mq.b[j] = 1;
            mp.a[j] = 1;
            fq.add_term(ctx, mq, scalar::scalar_const(ctx, BaseNumber::one()));
            fq.add_term(ctx, mp, scalar::scalar_const(ctx, si));
            for (int k = 0; k < m.b[j]; ++k, ++D) prod = series::mul(ctx, prod, fq);
            Series fp = Series::zero(d, f.cutoff);
            fp.add_term(ctx, mp, scalar::scalar_const(ctx, BaseNumber::one()));
            fp.add_term(ctx, mq, scalar::scalar_const(ctx, si));
            for (int k = 0; k < m.a[j]; ++k, ++D) prod = series::mul(ctx, prod, fp);
        }
        const BaseNumber scale = field.mul(const_coeff(d, s), half_power(field, D));
        out = series::add(ctx, out, series::scale(ctx, prod, scale));
    }
    return out;
}

} // namespace

void validate_elliptic(const EllipticProblem& pb) {
    if (pb.d < 1) throw RangeError("dimension must be positive");
    if (static_cast<int>(pb.alpha.size()) != pb.d) throw RangeError("alpha has wrong length");
    if (pb.H.d != pb.d) throw RangeError("H has wrong dimension");
    if (pb.cutoff < 2 || pb.H.cutoff != pb.cutoff) throw RangeError("cutoff mismatch");
    for (const BaseNumber& a : pb.alpha) {
        if (!a.is_real()) throw RangeError("frequencies must be real");
        if (pb.field.sign_real(a) <= 0) throw RangeError("frequencies must be positive");
    }
    std::map<Monomial, BaseNumber> quad;
    for (const auto& [m, s] : pb.H.terms) {
        for (int c : m.c)
            if (c != 0) throw RangeError("H must not carry tau");
        if (!scalar_is_const(s)) throw RangeError("H needs constant scalars");
        const BaseNumber c = const_coeff(pb.d, s);
        if (!c.is_real()) throw RangeError("H must be real");
        const int w = m.weight();
        if (w < 2) throw QuadraticMismatch("terms below weight 2");
        if (w == 2) quad.emplace(m, c);
    }
    for (int i = 0; i < pb.d; ++i) {
        const BaseNumber want = pb.field.mul_rat(pb.alpha[i], Rat(1, 2));
        for (int side = 0; side < 2; ++side) {
            Monomial m = Monomial::unit(pb.d);
            (side == 0 ? m.a : m.b)[i] = 2;
            auto it = quad.find(m);
            if (it == quad.end() || it->second != want)
                throw QuadraticMismatch("quadratic part is not 1/2 sum alpha (p^2+q^2)");
            quad.erase(it);
        }
    }
    if (!quad.empty()) throw QuadraticMismatch("extra weight-2 terms");
}

Series to_rotating(const Context& ctx, const Series& f) { return cayley_subst(ctx, f, -1); }

Series to_elliptic(const Context& ctx, const Series& f) { return cayley_subst(ctx, f, +1); }

bool is_real_in_original_coordinates(const Context& ctx, const Series& f) {
    const NumberField& field = ctx.field();
    // (-i)^k for k mod 4
    const BaseNumber mi(Rat(0), Rat(0), Rat(-1), Rat(0));
    BaseNumber pow_mi[4] = {BaseNumber::one(), mi, field.mul(mi, mi),
                            field.mul(field.mul(mi, mi), mi)};
    for (const auto& [m, s] : f.terms) {
        for (int c : m.c)
            if (c != 0) throw RangeError("reality scan applies to (q, p) series only");
        if (!scalar_is_const(s)) throw RangeError("reality scan needs constant scalars");
        Monomial sw = m;
        std::swap(sw.a, sw.b);
        BaseNumber partner = BaseNumber::zero();
        if (const Scalar* ps = f.find(sw)) {
            if (!scalar_is_const(*ps)) throw RangeError("reality scan needs constant scalars");
            partner = const_coeff(f.d, *ps);
        }
        const BaseNumber want = field.mul(pow_mi[m.weight() % 4], partner.conj_i());
        if (const_coeff(f.d, s) != want) return false;
    }
    // Terms whose partner is absent but which are themselves absent are fine;
    // a present partner with an absent term fails above when the loop reaches
    // the partner.
    return true;
}

NormalFormProblem complexify(const EllipticProblem& pb) {
    validate_elliptic(pb);
    Context ctx(pb.d, pb.field, pb.alpha);
    NormalFormProblem out;
    out.d = pb.d;
    out.field = pb.field;
    out.cutoff = pb.cutoff;
    const BaseNumber mi(Rat(0), Rat(0), Rat(-1), Rat(0));
    for (const BaseNumber& a : pb.alpha) out.alpha.push_back(pb.field.mul(mi, a));
    out.H = to_rotating(ctx, pb.H);
    normal::validate_problem(out);
    return out;
}

} // namespace hnf::tori
