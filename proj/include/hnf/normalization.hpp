#pragma once

#include "hnf/elliptic.hpp"
#include "hnf/tau_poly.hpp"

namespace hnf::tori {

using normal::TauPoly;

/// Truncated normalizing map for an elliptic problem.
///
/// map_q[i], map_p[i] are the components of Psi_N in (tau, q, p): real series
/// of weight <= N whose linear part is the identity.  On the torus family
/// p_i^2 + q_i^2 = tau_i the flow of H o Psi_N is, up to weight-(N+1) errors,
/// a rigid rotation with frequency vector beta[i](tau).
struct Normalization {
    int d = 0;
    int N = 0;       ///< normalization order (weight cutoff of the map)
    int n_steps = 0; ///< doubling steps used to reach weight N
    EllipticProblem input;

    std::vector<Series> map_q; ///< Q_i = q_i + (weight >= 2 corrections)
    std::vector<Series> map_p; ///< P_i = p_i + ...
    std::vector<TauPoly> beta; ///< frequency polynomial, real, degree <= N/2
    std::vector<TauPoly> omega_curve; ///< detuning curve in product coordinates

    bool map_real = false;  ///< components came out exactly real
    bool certified = false; ///< see below
    Series remainder;       ///< H o Psi - NF part, central part removed, weight <= N
};

/// Run the doubling iteration on the complexified problem for n_steps steps,
/// eliminate the detuning parameters, transport the coordinate functions
/// through the same product of flows, substitute the detuning curve, convert
/// back to the original real coordinates, and truncate at weight N.
///
/// Also certifies, by exact arithmetic, that
///
///     H o Psi_N  -  1/2 sum_i beta_i(tau) (P_i^2 + Q_i^2)
///
/// lies in  C[[tau]] + I^2 + (weight > N)  where I is the ideal generated by
/// p_i^2 + q_i^2 - tau_i: the invariant linear part of the difference is the
/// zero series.  `certified` records the outcome; `remainder` keeps the
/// residual for inspection.
///
/// Preconditions: validate_elliptic(pb); 1 <= N <= pb.cutoff; n_steps >= 1 and
/// 2^n_steps + 2 > N (the step window must clear the requested order), else
/// CutoffExceeded.
Normalization build_normalization(const EllipticProblem& pb, int N, int n_steps);

/// beta evaluated at a numeric tau (real parts; imaginary parts vanish for a
/// certified normalization).
std::vector<double> beta_at(const NumberField& field, const Normalization& nf,
                            const std::vector<double>& tau);

} // namespace hnf::tori
