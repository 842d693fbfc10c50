#pragma once

#include <map>
#include <string>
#include <vector>

#include "hnf/number_field.hpp"

namespace hnf::normal {

using scalar::BaseNumber;
using scalar::CC;
using scalar::NumberField;
using scalar::Rat;

/// Polynomial in tau_1..tau_d over the base field, truncated at total
/// tau-degree max_deg (tau_i has weight 2, so weight = 2 * degree).
/// Zero coefficients are never stored.
struct TauPoly {
    int d = 0;
    int max_deg = 0;
    std::map<std::vector<int>, BaseNumber> terms;

    static TauPoly zero(int d, int max_deg);
    static TauPoly constant(int d, int max_deg, const BaseNumber& c);
    static TauPoly variable(int d, int max_deg, int i);

    bool is_zero() const { return terms.empty(); }
    /// Least total degree of a stored term; INT_MAX when zero.
    int order() const;
    BaseNumber coeff(const std::vector<int>& e) const;
    /// Accumulate; drops zero results and terms beyond max_deg.
    void add_term(const std::vector<int>& e, const BaseNumber& c);
};

TauPoly tp_add(const TauPoly& a, const TauPoly& b);
TauPoly tp_sub(const TauPoly& a, const TauPoly& b);
TauPoly tp_neg(const TauPoly& a);
TauPoly tp_mul(const NumberField& f, const TauPoly& a, const TauPoly& b);
TauPoly tp_scale(const NumberField& f, const TauPoly& a, const BaseNumber& c);
TauPoly tp_partial(const TauPoly& a, int i);
/// Keep terms with 2*degree in [wlo, whi) (weight window).
TauPoly tp_truncate_weight(const TauPoly& a, int wlo, int whi);
/// Multiplicative inverse; requires an invertible constant term
/// (throws NewtonNonUnit otherwise).
TauPoly tp_inv(const NumberField& f, const TauPoly& a);
bool tp_eq(const TauPoly& a, const TauPoly& b);
CC tp_eval(const NumberField& f, const TauPoly& a, const std::vector<CC>& tau);
std::string tp_str(const TauPoly& a);

} // namespace hnf::normal
