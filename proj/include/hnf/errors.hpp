#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hnf {

/// Base class for all typed errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline std::string vec_str(const std::vector<int>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}
} // namespace detail

/// A denominator form evaluated to zero at the requested point.
struct DivisorVanishes : Error {
    std::vector<int> J;
    explicit DivisorVanishes(std::vector<int> j)
        : Error("divisor vanishes at evaluation point: l" + detail::vec_str(j)), J(std::move(j)) {}
};

/// A required divisor (alpha, a-b) is exactly zero: the monomial is resonant.
struct ResonantMonomial : Error {
    std::vector<int> J;
    explicit ResonantMonomial(std::vector<int> j)
        : Error("resonant monomial: (alpha,J) = 0 for J = " + detail::vec_str(j)), J(std::move(j)) {}
};

/// A derivation was required to have strictly positive order and does not.
struct NonPositiveOrder : Error {
    explicit NonPositiveOrder(const std::string& w) : Error("non-positive order: " + w) {}
};

/// An argument had to lie in the invariant-monomial algebra and does not.
struct NotInMoserAlgebra : Error {
    explicit NotInMoserAlgebra(const std::string& w) : Error("not in invariant algebra: " + w) {}
};

/// The unfolding part T fails its structural precondition.
struct BadLowerPart : Error {
    explicit BadLowerPart(const std::string& w) : Error("bad lower part: " + w) {}
};

/// The active weight window has passed the series cutoff.
struct CutoffExceeded : Error {
    explicit CutoffExceeded(const std::string& w) : Error("cutoff exceeded: " + w) {}
};

/// The Newton solve hit a non-invertible leading coefficient.
struct NewtonNonUnit : Error {
    explicit NewtonNonUnit(const std::string& w) : Error("newton step not a unit: " + w) {}
};

/// A sequence/range parameter is out of its admissible domain.
struct RangeError : Error {
    explicit RangeError(const std::string& w) : Error("range error: " + w) {}
};

/// An enumeration or sampling request exceeds the configured budget.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& w) : Error("budget exceeded: " + w) {}
};

/// A polynomial fails a declared vanishing-order requirement.
struct OrderMismatch : Error {
    explicit OrderMismatch(const std::string& w) : Error("order mismatch: " + w) {}
};

/// Requested radii are incompatible (inner radius not strictly inside).
struct RadiusExceeded : Error {
    explicit RadiusExceeded(const std::string& w) : Error("radius exceeded: " + w) {}
};

/// The ODE integrator could not meet its tolerance.
struct IntegratorFailure : Error {
    explicit IntegratorFailure(const std::string& w) : Error("integrator failure: " + w) {}
};

/// Truncated inverse of the normalization map left its validity region.
struct InverseDiverged : Error {
    explicit InverseDiverged(const std::string& w) : Error("inverse diverged: " + w) {}
};

/// Phase increment between samples exceeded pi; unwrapping is ambiguous.
struct PhaseUnwrapAmbiguous : Error {
    explicit PhaseUnwrapAmbiguous(const std::string& w) : Error("phase unwrap ambiguous: " + w) {}
};

/// Input text does not conform to the grammar.
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("parse error: " + w) {}
};

/// Quadratic part of a Hamiltonian does not match the declared frequencies.
struct QuadraticMismatch : Error {
    explicit QuadraticMismatch(const std::string& w) : Error("quadratic part mismatch: " + w) {}
};

/// A declared bound class is not strictly positive where required.
struct NotStrictClass : Error {
    explicit NotStrictClass(const std::string& w) : Error("bound class not strict: " + w) {}
};

} // namespace hnf
