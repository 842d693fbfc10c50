#pragma once

#include "hnf/problem.hpp"

namespace hnf::tori {

using normal::NormalFormProblem;
using scalar::BaseNumber;
using scalar::Context;
using scalar::NumberField;
using series::Series;

/// Problem data around a linearly stable equilibrium:
///
///     H = 1/2 sum_i alpha_i (p_i^2 + q_i^2)  +  (terms of weight >= 3)
///
/// with real coefficients (no i in any scalar) and real positive frequencies.
/// The series lives in (q, p) only; tau exponents must all be zero.
struct EllipticProblem {
    int d = 0;
    NumberField field{2};
    std::vector<BaseNumber> alpha;
    Series H;
    int cutoff = 0;
};

/// Check dimensions, reality, positivity of alpha, absence of tau, and that
/// the weight-2 part of H is exactly 1/2 sum alpha_i (p_i^2 + q_i^2).
/// Throws QuadraticMismatch / RangeError.
void validate_elliptic(const EllipticProblem& pb);

/// Substitute q_j -> (q_j - i p_j)/sqrt 2, p_j -> (p_j - i q_j)/sqrt 2 into a
/// real (q, p) series.  Pure rotation of coordinates; exact in the field
/// (sqrt 2 requires minimal polynomial x^2 - 2).  Throws RangeError on tau
/// exponents or when the field cannot represent sqrt 2.
Series to_rotating(const Context& ctx, const Series& f);

/// Inverse substitution q_j -> (q_j + i p_j)/sqrt 2, p_j -> (p_j + i q_j)/sqrt 2.
/// to_elliptic(to_rotating(f)) == f exactly.
Series to_elliptic(const Context& ctx, const Series& f);

/// A (q, p) series is the image under to_rotating of a real series iff its
/// coefficients satisfy  c_{ab} = (-i)^{|a|+|b|} conj(c_{ba})  where conj
/// flips the sign of i and a <-> b swaps the p and q exponent vectors.
/// Exact coefficient scan.
bool is_real_in_original_coordinates(const Context& ctx, const Series& f);

/// Build the product-coordinate problem equivalent to pb: H_rot = H o C with
/// frequencies alpha_rot = -i alpha, so the quadratic part becomes
/// sum_i (-i alpha_i) p_i q_i.  The returned problem validates under
/// validate_problem and feeds the iteration directly.
NormalFormProblem complexify(const EllipticProblem& pb);

} // namespace hnf::tori
