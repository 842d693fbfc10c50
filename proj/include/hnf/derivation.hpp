#pragma once

#include "hnf/series.hpp"

namespace hnf::series {

/// Derivation of the graded ring: a Hamiltonian part {., gen} plus central
/// parts sum_i domega[i] d/d omega_i + sum_i dtau[i] d/d tau_i.
///
/// Order bookkeeping: a generator of weight w acts with order w - 2; a
/// domega coefficient of weight w acts with order w; a dtau coefficient of
/// weight w acts with order w - 2.
struct Derivation {
    Series gen;
    std::vector<Series> domega;
    std::vector<Series> dtau;
    int declared_order = 0;

    static Derivation zero(int d, int cutoff);
    bool is_zero() const;
};

Derivation derivation_add(const Context& ctx, const Derivation& u, const Derivation& v);
Derivation derivation_neg(const Derivation& v);
Derivation derivation_scale_rat(const Context& ctx, const Derivation& v, const Rat& r);

/// Actual order: the least order over the three parts; kInfOrder when zero.
int derivation_order(const Derivation& v);

/// Keep the action window [lo, hi): generator weights [lo+2, hi+2),
/// domega weights [lo, hi), dtau weights [lo+2, hi+2).
Derivation derivation_truncate(const Derivation& v, int lo, int hi);

/// v(f) = {f, gen} + sum domega_i d/domega_i f + sum dtau_i d/dtau_i f.
Series apply_derivation(const Context& ctx, const Derivation& v, const Series& f);

/// e^v(f) = sum_k v^k(f)/k!; requires order(v) >= 1 (NonPositiveOrder).
Series exp_derivation(const Context& ctx, const Derivation& v, const Series& f);

/// The homological solution operator: monomials with a != b divide by
/// (alpha+omega, a-b) into a Hamiltonian generator; the invariant part
/// feeds its gradient coefficients into d/d omega. C[[omega,tau]]-linear.
/// `origin_step` labels ledger entries for forms created here.
Derivation op_L(Context& ctx, const Series& m, const std::string& origin_step);

/// Unfolding-corrected solution operator j_A(m) = L(m - (Lm)(T)), T = A - A0.
/// Requires T invariant with vanishing linear part (BadLowerPart).
Derivation op_j(Context& ctx, const Series& A, const Series& m, const std::string& origin_step);

} // namespace hnf::series
