#pragma once

#include <limits>
#include <map>

#include "hnf/monomial.hpp"
#include "hnf/scalar.hpp"

namespace hnf::series {

using scalar::BaseNumber;
using scalar::Context;
using scalar::Rat;
using scalar::Scalar;

inline constexpr int kInfOrder = std::numeric_limits<int>::max();

/// Graded formal series: monomials with small-denominator scalar
/// coefficients, truncated at total weight <= cutoff. Zero coefficients are
/// never stored; iteration order is the lexicographic monomial order.
struct Series {
    int d = 0;
    int cutoff = 0;
    std::map<Monomial, Scalar> terms;

    static Series zero(int d, int cutoff) { return Series{d, cutoff, {}}; }

    bool is_zero() const { return terms.empty(); }

    /// Least weight of a stored monomial; kInfOrder for the zero series.
    int order() const {
        int o = kInfOrder;
        for (const auto& [m, s] : terms) o = std::min(o, m.weight());
        return o;
    }

    int max_weight() const {
        int w = -1;
        for (const auto& [m, s] : terms) w = std::max(w, m.weight());
        return w;
    }

    /// Insert-or-accumulate; drops zeros and terms beyond the cutoff.
    void add_term(const Context& ctx, const Monomial& m, const Scalar& s);
    /// Overwrite one coefficient (same truncation rules).
    void set_term(const Monomial& m, const Scalar& s);

    const Scalar* find(const Monomial& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? nullptr : &it->second;
    }
};

Series add(const Context& ctx, const Series& f, const Series& g);
Series sub(const Context& ctx, const Series& f, const Series& g);
Series neg(const Series& f);
Series scale(const Context& ctx, const Series& f, const BaseNumber& c);
Series scale_rat(const Context& ctx, const Series& f, const Rat& r);
Series scale_scalar(const Context& ctx, const Series& f, const Scalar& s);
Series mul(const Context& ctx, const Series& f, const Series& g);

/// Keep monomials with lo <= weight < hi.
Series truncate(const Series& f, int lo, int hi);
/// Keep monomials with weight < hi.
inline Series truncate_above(const Series& f, int hi) { return truncate(f, 0, hi); }

Series partial_p(const Context& ctx, const Series& f, int i);
Series partial_q(const Context& ctx, const Series& f, int i);
Series partial_tau(const Context& ctx, const Series& f, int i);
/// Coefficient-wise d/d omega_i.
Series partial_omega(const Context& ctx, const Series& f, int i);

/// {f, g} = sum_i dq_i f dp_i g - dp_i f dq_i g.
Series poisson(const Context& ctx, const Series& f, const Series& g);

/// Projection onto the invariant sub-algebra (keep a == b monomials).
Series moser_project(const Series& f);
/// Complementary projection (a != b monomials).
Series moser_complement(const Series& f);
bool in_moser_algebra(const Series& f);

/// For f in the invariant algebra, the d gradient coefficients of its
/// first-order Taylor term along the ideal generators: monomial
/// (pq)^a tau^c contributes a_i * tau^(a - e_i + c) to component i.
/// Throws NotInMoserAlgebra when f has a non-invariant monomial.
std::vector<Series> moser_linear_part(const Context& ctx, const Series& f);

/// Formal unfolding sum_i (alpha_i + omega_i) p_i q_i.
Series make_unfolding(const Context& ctx, int cutoff);

/// Substitute tau_i := p_i q_i (fold c into a and b); weight preserving.
Series subst_tau_to_pq(const Context& ctx, const Series& f);

/// Exact membership test for R0 + I^2, where I is generated by the
/// p_i q_i - tau_i. Uses that I is the vanishing ideal of tau = pq and the
/// generators are a regular sequence: f belongs iff f|_{tau:=pq} collapses
/// to invariant monomials defining g(omega,tau), and each tau-derivative
/// matches that of g after the same substitution.
bool in_R0_plus_I2(const Context& ctx, const Series& f);

/// True when every monomial has a = b = 0 (element of C[[omega,tau]]).
bool is_central_series(const Series& f);

/// Mathematical equality, coefficient-wise.
bool series_eq(const Context& ctx, const Series& f, const Series& g);

std::string series_str(const Context& ctx, const Series& f);

/// p_i q_i - tau_i, the i-th generator of the ideal.
Series ideal_generator(const Context& ctx, int i, int cutoff);

} // namespace hnf::series
