#pragma once

#include "hnf/birkhoff.hpp"
#include "hnf/tau_poly.hpp"

namespace hnf::normal {

/// Exact reduced row echelon form over the base field; returns the nonzero
/// rows with unit pivots, in pivot-column order.
std::vector<std::vector<BaseNumber>> row_reduce(const NumberField& f,
                                                std::vector<std::vector<BaseNumber>> rows);

/// Membership of v in the row span of an RREF basis (exact).
bool in_row_span(const NumberField& f, const std::vector<std::vector<BaseNumber>>& basis,
                 std::vector<BaseNumber> v);

/// Row-reduced span of the tau-coefficient vectors of the frequency map
/// gradient, over 1 <= |a| <= max_order. This is the frequency space: the
/// coefficient vectors of b - b(0) span the same space as the higher
/// derivative vectors of b at 0.
std::vector<std::vector<BaseNumber>> frequency_space(const Context& ctx,
                                                     const std::vector<Series>& b,
                                                     int max_order);

/// Check that every tau-coefficient vector of omega(tau) lies in the span.
struct InvarianceReport {
    bool ok = true;
    std::vector<std::vector<int>> offending; // tau exponents that escape
};
InvarianceReport frequency_invariance_check(const Context& ctx,
                                            const std::vector<TauPoly>& omega,
                                            const FrequencyData& fd);

} // namespace hnf::normal
