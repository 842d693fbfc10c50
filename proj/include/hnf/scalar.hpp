#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hnf/context.hpp"

namespace hnf::scalar {

/// Polynomial in omega_1..omega_d over Q(theta)(i). Keys are exponent
/// vectors of length d; zero coefficients are never stored.
class OmegaPoly {
  public:
    using Terms = std::map<std::vector<int>, BaseNumber>;

    OmegaPoly() = default;
    static OmegaPoly constant(int d, const BaseNumber& c);
    static OmegaPoly variable(int d, int k); // omega_{k+1}
    /// c0 + sum_i J_i omega_i, the polynomial of a resonance form shifted by c0.
    static OmegaPoly linear_form(const BaseNumber& c0, const std::vector<int>& J);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    BaseNumber constant_term(int d) const;
    int total_degree() const;

    const Terms& terms() const { return terms_; }
    void set(const std::vector<int>& e, const BaseNumber& c); // erases zero

    friend OmegaPoly operator+(const OmegaPoly& a, const OmegaPoly& b);
    friend OmegaPoly operator-(const OmegaPoly& a, const OmegaPoly& b);
    friend OmegaPoly operator-(const OmegaPoly& a);
    bool operator==(const OmegaPoly& o) const { return terms_ == o.terms_; }

    OmegaPoly mul(const NumberField& f, const OmegaPoly& o) const;
    OmegaPoly scale(const NumberField& f, const BaseNumber& c) const;
    OmegaPoly partial(int k) const; // d/d omega_{k+1}

    CC eval(const NumberField& f, const std::vector<CC>& omega) const;

    /// Exact division by the linear polynomial of `form` (c0 = (alpha,J)).
    /// Returns the quotient when division is exact, nullopt otherwise.
    std::optional<OmegaPoly> divide_by_form(const NumberField& f, const ResonanceForm& form) const;

    std::string str() const; // canonical text, omega1..omegad

  private:
    Terms terms_;
};

/// Element of the small-denominator scalar ring: an omega-polynomial
/// numerator over a multiset of resonance-form denominators.
///
/// Invariants: zero numerator forces an empty denominator; den is sorted by
/// form id with multiplicities > 0; after every operation exact per-form
/// cancellation has been attempted.
struct Scalar {
    OmegaPoly num;
    std::vector<std::pair<int, int>> den; // (form id, multiplicity)

    bool is_zero() const { return num.is_zero(); }
};

Scalar scalar_zero();
Scalar scalar_const(const Context& ctx, const BaseNumber& c);
Scalar scalar_rat(const Context& ctx, const Rat& r);
/// Numerator-only scalar from a polynomial.
Scalar scalar_poly(OmegaPoly p);

Scalar scalar_add(const Context& ctx, const Scalar& a, const Scalar& b);
Scalar scalar_sub(const Context& ctx, const Scalar& a, const Scalar& b);
Scalar scalar_neg(const Scalar& a);
Scalar scalar_mul(const Context& ctx, const Scalar& a, const Scalar& b);
Scalar scalar_scale(const Context& ctx, const Scalar& a, const BaseNumber& c);
/// Divide by a nonzero field constant.
Scalar scalar_div_const(const Context& ctx, const Scalar& a, const BaseNumber& c);
/// Divide by the resonance form with this id (pushes into the denominator).
Scalar scalar_div_form(const Context& ctx, const Scalar& a, int form_id);

/// Partial derivative in omega_{k+1} by the quotient rule; never creates
/// new forms, only deepens existing denominators.
Scalar scalar_domega(const Context& ctx, const Scalar& a, int k);

/// Evaluate at a numeric omega at the current precision.
/// Each MPFR operation is correctly rounded; composite rounding is not
/// certified end to end. Throws DivisorVanishes on an exactly-zero divisor.
CC scalar_eval(const Context& ctx, const Scalar& a, const std::vector<CC>& omega);

/// Mathematical equality (cross-multiplied); independent of representation.
bool scalar_eq(const Context& ctx, const Scalar& a, const Scalar& b);

/// Structural equality of the canonical representation.
bool scalar_rep_eq(const Scalar& a, const Scalar& b);

std::string scalar_str(const Context& ctx, const Scalar& a);

} // namespace hnf::scalar
