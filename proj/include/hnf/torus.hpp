#pragma once

#include "hnf/integrate.hpp"
#include "hnf/normalization.hpp"

namespace hnf::tori {

/// f with each q_i / p_i replaced by cq[i] / cp[i]; tau factors pass through.
/// Cutoff is the minimum over f and the components.
Series substitute_components(const Context& ctx, const Series& f,
                             const std::vector<Series>& cq, const std::vector<Series>& cp);

/// Truncated compositional inverse of the normalizing map: series G in
/// (tau, q, p) with G o Psi = id + (weight > N) exactly at cutoff N, computed
/// by fixed-point reversion in the (q, p) filtration.  Returns the 2d
/// components (q side first).  Throws Error if the reversion check fails.
std::vector<Series> invert_map(const Context& ctx, const std::vector<Series>& map_q,
                               const std::vector<Series>& map_p, int N);

/// Least-squares rotation rates of zeta_i = (q_i, p_i) pairs along a sampled
/// trajectory.  Phases are unwrapped sample to sample; an increment whose
/// wrapped value exceeds 0.9 pi, or a sample at radius ~0, throws
/// PhaseUnwrapAmbiguous.  value[i] is the clockwise angular rate (so a
/// harmonic mode q + ip ~ e^{-i alpha t} reports +alpha); sigma[i] is the
/// standard error of the fitted slope.  Needs >= 8 samples.
struct FrequencyEstimate {
    std::vector<double> value;
    std::vector<double> sigma;
};
FrequencyEstimate estimate_frequencies(const std::vector<double>& t,
                                       const std::vector<std::vector<double>>& zeta, int d);

struct TorusParams {
    std::vector<double> tau; ///< torus label, all entries > 0
    double rho = 0;          ///< scale tag echoed into the report
    double T_span = 100;
    double sample_dt = 0.05;
    int K = 8;               ///< random initial angles per torus
    std::uint64_t seed = 1;
    double validity_radius = 1.0; ///< InverseDiverged beyond this in normalized coords
    bool keep_traces = false;     ///< store per-sample rows for dumping
    IntegratorOptions integrator;
};

struct TorusReport {
    std::vector<double> tau;
    double rho = 0;
    /// Largest oscillation max_t I_i(t) - min_t I_i(t) of the pulled-back
    /// actions I_i = zeta_q^2 + zeta_p^2 over all K trajectories.  Measured
    /// as a range so reversing a trajectory in time cannot change it.
    double defect = 0;
    /// Same data anchored at the initial sample: max |I_i(t) - I_i(0)|.
    double defect_anchored = 0;
    double energy_drift = 0;
    std::vector<double> freq_est;   ///< mean over trajectories
    std::vector<double> freq_sigma; ///< scatter + fit uncertainty
    std::vector<double> beta_pred;  ///< beta_N(tau)
    std::vector<std::vector<double>> angles; ///< seeded initial angles, per trajectory
    long long accepted = 0;
    long long rejected = 0;
    std::uint64_t seed = 0;
    /// When keep_traces: per trajectory, rows (t, q.., p.., I_1..I_d, energy).
    std::vector<std::vector<std::vector<double>>> traces;
};

/// Seed K points on the torus tau, push them through Psi_N, integrate the
/// original flow, pull the samples back through the truncated inverse, and
/// measure how far the pulled-back actions move.  Trajectories run in
/// parallel; the report merges them in seed order, so results are
/// independent of thread count.
TorusReport torus_defect(const Normalization& nf, const TorusParams& par);

} // namespace hnf::tori
