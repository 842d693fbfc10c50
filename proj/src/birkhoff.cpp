#include "hnf/birkhoff.hpp"

#include "hnf/derivation.hpp"
#include "hnf/errors.hpp"
#include "hnf/frequency.hpp"

namespace hnf::normal {

using namespace hnf::series;
using scalar::Scalar;

void validate_problem(const NormalFormProblem& pb) {
    if (pb.d <= 0 || static_cast<int>(pb.alpha.size()) != pb.d)
        throw QuadraticMismatch("dimension/frequency size mismatch");
    if (pb.H.d != pb.d || pb.H.cutoff != pb.cutoff)
        throw QuadraticMismatch("series dimension or cutoff mismatch");
    std::vector<bool> seen(static_cast<size_t>(pb.d), false);
    for (const auto& [m, s] : pb.H.terms) {
        for (int e : m.c)
            if (e != 0) throw QuadraticMismatch("tau dependence in input: " + m.str());
        if (!s.den.empty() || !s.num.is_constant())
            throw QuadraticMismatch("non-constant coefficient at " + m.str());
        int w = m.weight();
        if (w < 2) throw QuadraticMismatch("term below weight 2: " + m.str());
        if (w == 2) {
            int i = -1;
            for (int k = 0; k < pb.d; ++k) {
                size_t ks = static_cast<size_t>(k);
                if (m.a[ks] == 1 && m.b[ks] == 1) i = k;
            }
            if (i < 0 || m.a != m.b)
                throw QuadraticMismatch("quadratic part not diagonal: " + m.str());
            if (!(s.num.constant_term(pb.d) == pb.alpha[static_cast<size_t>(i)]))
                throw QuadraticMismatch("quadratic coefficient differs from the frequency at " +
                                        m.str());
            seen[static_cast<size_t>(i)] = true;
        }
    }
    for (int i = 0; i < pb.d; ++i)
        if (!seen[static_cast<size_t>(i)])
            throw QuadraticMismatch("missing quadratic term p" + std::to_string(i + 1) + "q" +
                                    std::to_string(i + 1));
}

Context make_context(const NormalFormProblem& pb) {
    return Context(pb.d, pb.field, pb.alpha);
}

namespace {

/// Generator removing `target` with coefficient s: -s p^a q^b / (alpha, a-b).
/// Interns the form so the divisor lands in the ledger.
Series removal_generator(Context& ctx, const Monomial& target, const Scalar& s, int cutoff,
                         const std::string& step) {
    std::vector<int> J = target.resonance_covector();
    int id = ctx.intern_form(J, {step, target.str()});
    const BaseNumber& div = ctx.form(id).alpha_J;
    Series chi = Series::zero(ctx.d(), cutoff);
    Scalar c = scalar_div_const(ctx, scalar_neg(s), div);
    chi.set_term(target, c);
    return chi;
}

Series apply_generator(Context& ctx, const Series& chi, const Series& H) {
    Derivation v = Derivation::zero(H.d, H.cutoff);
    v.gen = chi;
    v.declared_order = derivation_order(v);
    return exp_derivation(ctx, v, H);
}

} // namespace

BnfResult birkhoff_normal_form(Context& ctx, const NormalFormProblem& pb,
                               RemovalStrategy strategy) {
    validate_problem(pb);
    const int W = pb.cutoff;
    Series Hc = pb.H;
    std::vector<Series> gens;

    for (int w = 3; w <= W; ++w) {
        const std::string step = "bnf w=" + std::to_string(w);
        if (strategy == RemovalStrategy::DegreeByDegree) {
            Series chi = Series::zero(pb.d, W);
            for (const auto& [m, s] : Hc.terms)
                if (m.weight() == w && m.a != m.b)
                    chi = add(ctx, chi, removal_generator(ctx, m, s, W, step));
            if (chi.is_zero()) continue;
            Hc = apply_generator(ctx, chi, Hc);
            gens.push_back(chi);
        } else {
            for (;;) {
                const Monomial* target = nullptr;
                const Scalar* coeff = nullptr;
                for (const auto& [m, s] : Hc.terms) {
                    if (m.weight() != w || m.a == m.b) continue;
                    target = &m;
                    coeff = &s;
                    break; // map order: lex-smallest first
                }
                if (!target) break;
                Series chi = removal_generator(ctx, *target, *coeff, W, step);
                Hc = apply_generator(ctx, chi, Hc);
                gens.push_back(chi);
            }
        }
    }

    for (const auto& [m, s] : Hc.terms)
        if (m.a != m.b && !s.is_zero()) throw ResonantMonomial(m.resonance_covector());

    BnfResult out;
    out.fd.B = Series::zero(pb.d, W);
    for (const auto& [m, s] : Hc.terms) {
        Monomial t = Monomial::unit(pb.d);
        t.c = m.a;
        out.fd.B.add_term(ctx, t, s);
    }
    for (int i = 0; i < pb.d; ++i) out.fd.b.push_back(partial_tau(ctx, out.fd.B, i));
    out.fd.F_basis = frequency_space(ctx, out.fd.b, W / 2);
    out.generators = std::move(gens);
    return out;
}

} // namespace hnf::normal
