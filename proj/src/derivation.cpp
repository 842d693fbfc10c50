#include "hnf/derivation.hpp"

#include <algorithm>

#include "hnf/errors.hpp"

namespace hnf::series {

Derivation Derivation::zero(int d, int cutoff) {
    Derivation v;
    v.gen = Series::zero(d, cutoff);
    v.domega.assign(static_cast<size_t>(d), Series::zero(d, cutoff));
    v.dtau.assign(static_cast<size_t>(d), Series::zero(d, cutoff));
    return v;
}

bool Derivation::is_zero() const {
    if (!gen.is_zero()) return false;
    for (const Series& s : domega)
        if (!s.is_zero()) return false;
    for (const Series& s : dtau)
        if (!s.is_zero()) return false;
    return true;
}

Derivation derivation_add(const Context& ctx, const Derivation& u, const Derivation& v) {
    Derivation r;
    r.gen = add(ctx, u.gen, v.gen);
    for (size_t i = 0; i < u.domega.size(); ++i) {
        r.domega.push_back(add(ctx, u.domega[i], v.domega[i]));
        r.dtau.push_back(add(ctx, u.dtau[i], v.dtau[i]));
    }
    r.declared_order = std::min(u.declared_order, v.declared_order);
    return r;
}

Derivation derivation_neg(const Derivation& v) {
    Derivation r = v;
    r.gen = neg(v.gen);
    for (Series& s : r.domega) s = neg(s);
    for (Series& s : r.dtau) s = neg(s);
    return r;
}

Derivation derivation_scale_rat(const Context& ctx, const Derivation& v, const Rat& q) {
    Derivation r = v;
    r.gen = scale_rat(ctx, v.gen, q);
    for (Series& s : r.domega) s = scale_rat(ctx, s, q);
    for (Series& s : r.dtau) s = scale_rat(ctx, s, q);
    return r;
}

int derivation_order(const Derivation& v) {
    int o = kInfOrder;
    if (!v.gen.is_zero()) o = std::min(o, v.gen.order() - 2);
    for (const Series& s : v.domega)
        if (!s.is_zero()) o = std::min(o, s.order());
    for (const Series& s : v.dtau)
        if (!s.is_zero()) o = std::min(o, s.order() - 2);
    return o;
}

Derivation derivation_truncate(const Derivation& v, int lo, int hi) {
    Derivation r = v;
    // guard hi + 2 against overflow when hi is "infinity"
    int hi2 = hi >= kInfOrder - 2 ? hi : hi + 2;
    r.gen = truncate(v.gen, lo + 2, hi2);
    for (Series& s : r.domega) s = truncate(s, lo, hi);
    for (Series& s : r.dtau) s = truncate(s, lo + 2, hi2);
    r.declared_order = std::max(v.declared_order, lo);
    return r;
}

Series apply_derivation(const Context& ctx, const Derivation& v, const Series& f) {
    Series r = poisson(ctx, f, v.gen);
    for (int i = 0; i < f.d; ++i) {
        size_t k = static_cast<size_t>(i);
        if (!v.domega[k].is_zero())
            r = add(ctx, r, mul(ctx, v.domega[k], partial_omega(ctx, f, i)));
        if (!v.dtau[k].is_zero()) r = add(ctx, r, mul(ctx, v.dtau[k], partial_tau(ctx, f, i)));
    }
    return r;
}

Series exp_derivation(const Context& ctx, const Derivation& v, const Series& f) {
    if (v.is_zero()) return f;
    if (derivation_order(v) < 1) throw NonPositiveOrder("exp of derivation");
    Series acc = f;
    Series term = f;
    for (long k = 1; !term.is_zero(); ++k) {
        Rat inv_k(1, static_cast<unsigned long>(k));
        term = scale_rat(ctx, apply_derivation(ctx, v, term), inv_k);
        acc = add(ctx, acc, term);
        if (k > 4 * (f.cutoff + 2)) throw NonPositiveOrder("exp did not terminate");
    }
    return acc;
}

Derivation op_L(Context& ctx, const Series& m, const std::string& origin_step) {
    Derivation r = Derivation::zero(m.d, m.cutoff);
    Series ham = Series::zero(m.d, m.cutoff);
    Series mos = Series::zero(m.d, m.cutoff);
    for (const auto& [mono, s] : m.terms) {
        if (mono.is_moser())
            mos.terms.emplace(mono, s);
        else
            ham.terms.emplace(mono, s);
    }
    for (const auto& [mono, s] : ham.terms) {
        int id = ctx.intern_form(mono.resonance_covector(), {origin_step, mono.str()});
        r.gen.set_term(mono, scalar_div_form(ctx, s, id));
    }
    if (!mos.is_zero()) r.domega = moser_linear_part(ctx, mos);
    r.declared_order = std::min(derivation_order(r), m.cutoff + 1);
    return r;
}

Derivation op_j(Context& ctx, const Series& A, const Series& m, const std::string& origin_step) {
    Series T = sub(ctx, A, make_unfolding(ctx, A.cutoff));
    if (!in_moser_algebra(T)) throw BadLowerPart("T has non-invariant monomials");
    for (const Series& g : moser_linear_part(ctx, T))
        if (!g.is_zero()) throw BadLowerPart("T has nonzero linear part along the ideal");
    Derivation Lm = op_L(ctx, m, origin_step);
    Series corr = apply_derivation(ctx, Lm, T);
    return op_L(ctx, sub(ctx, m, corr), origin_step);
}

} // namespace hnf::series
