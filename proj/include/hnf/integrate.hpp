#pragma once

#include <cstdint>
#include <vector>

#include "hnf/elliptic.hpp"

namespace hnf::tori {

/// Dense real polynomial in (q_1..q_d, p_1..p_d), compiled to doubles for
/// trajectory work.  Exponent layout: e[0..d) are q exponents, e[d..2d) are p.
struct RealPoly {
    int d = 0;
    struct Term {
        std::vector<int> e;
        double c = 0;
    };
    std::vector<Term> terms;

    double eval(const std::vector<double>& z) const;
};

/// Compile a constant-scalar, tau-free, exactly real series.  Throws
/// RangeError if a coefficient carries tau, a detuning polynomial, or an
/// imaginary part.
RealPoly compile_poly(const Context& ctx, const Series& f);

/// Right-hand side of Hamilton's equations, dot q = dH/dp, dot p = -dH/dq.
struct HamiltonianFlow {
    int d = 0;
    RealPoly H;
    std::vector<RealPoly> dq;
    std::vector<RealPoly> dp;
    bool separable = false; ///< every monomial pure in q or pure in p
};

HamiltonianFlow make_flow(const Context& ctx, const Series& H);

struct IntegratorOptions {
    enum class Kind { Rk8, Leapfrog };
    Kind kind = Kind::Rk8;
    double tol = 1e-12;       ///< Rk8 local error target per step
    double h0 = 1e-2;         ///< initial step
    double fixed_step = 1e-3; ///< Leapfrog step
    long long max_steps = 40000000;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<std::vector<double>> z; ///< states (q_1..q_d, p_1..p_d)
    long long accepted = 0;
    long long rejected = 0;
    double energy_drift = 0; ///< max |H(z(t)) - H(z(0))| over the samples
};

/// Integrate from z0 over [0, T] (T may be negative), recording a sample
/// every |sample_dt| of time plus both endpoints.
///
/// Rk8 is an embedded 7(8) pair with standard step control; throws
/// IntegratorFailure when the step collapses below 1e-14 * max(1, |T|) or the
/// step budget runs out.  Leapfrog is a fixed-step fourth-order composition
/// of kick-drift-kick maps and requires a separable flow (RangeError
/// otherwise).
Trajectory integrate_flow(const HamiltonianFlow& fl, const std::vector<double>& z0,
                          double T, double sample_dt, const IntegratorOptions& opt);

} // namespace hnf::tori
