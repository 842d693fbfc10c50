#pragma once

#include "hnf/hnf_iteration.hpp"
#include "hnf/tau_poly.hpp"

namespace hnf::normal {

/// Result of eliminating the detuning: the curve omega_n(tau) solving the
/// pushed coordinate equations R_{n,i}(omega, tau) = 0, and the restriction
/// h_n(tau) of the invariant part of F_n to that curve.
struct OmegaElimination {
    std::vector<TauPoly> omega; // omega_n(tau), omega_n(0) = 0
    TauPoly h;                  // h_n(tau)
    std::vector<Series> R;      // R_{n,i}, central series in (omega, tau)
};

/// Push the coordinate functions omega_i through the applied exponentials
/// e^{-v_0}, ..., e^{-v_{n-1}} and solve R_n(omega(tau), tau) = 0 by Newton
/// iteration in the tau-adic topology, to weight k (tau-degree k/2).
/// Throws NewtonNonUnit if the omega-linear part fails to be invertible.
OmegaElimination omega_eliminate(const Context& ctx, const IterationState& st, int k);

/// Evaluate a scalar at omega = w(tau): numerator and denominator forms
/// become tau-polynomials; denominators must have invertible constant term.
TauPoly scalar_at_tau(const Context& ctx, const scalar::Scalar& s,
                      const std::vector<TauPoly>& w, int max_deg);

/// Evaluate a central series (a = b = 0) at omega = w(tau).
TauPoly central_at_tau(const Context& ctx, const Series& f,
                       const std::vector<TauPoly>& w, int max_deg);

/// Restriction of the invariant part of f to tau on the curve omega = w(tau):
/// each (pq)^a tau^c monomial contributes its scalar at w times tau^{a+c}.
TauPoly moser_restriction(const Context& ctx, const Series& f,
                          const std::vector<TauPoly>& w, int max_deg);

} // namespace hnf::normal
