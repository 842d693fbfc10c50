#pragma once

#include "hnf/problem.hpp"

namespace hnf::normal {

/// Normal form data: B as a tau-series, its gradient b (the frequency map,
/// b(0) = alpha), and an exact row-reduced basis of the frequency space
/// spanned by the tau-coefficient vectors of b.
struct FrequencyData {
    Series B;
    std::vector<Series> b;
    std::vector<std::vector<BaseNumber>> F_basis;
};

enum class RemovalStrategy {
    DegreeByDegree,  ///< one generator per weight, removing the whole layer
    MonomialAtATime, ///< one generator per monomial, lex order within a weight
};

struct BnfResult {
    FrequencyData fd;
    std::vector<Series> generators; // canonical transformations, in order applied
};

/// Classical normalization: conjugate away every p^a q^b with a != b, weight
/// by weight up to the cutoff. The surviving invariant part, rewritten with
/// p_i q_i -> tau_i, is B; it does not depend on the removal strategy.
/// Throws ResonantMonomial when some required divisor (alpha, a-b) vanishes.
BnfResult birkhoff_normal_form(Context& ctx, const NormalFormProblem& pb,
                               RemovalStrategy strategy);

} // namespace hnf::normal
