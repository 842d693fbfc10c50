#pragma once

#include "hnf/series.hpp"

namespace hnf::normal {

using scalar::BaseNumber;
using scalar::Context;
using scalar::NumberField;
using series::Series;

/// Input data for both normalization engines: H = sum alpha_i p_i q_i + O(3)
/// over the base field, truncated at weight `cutoff`.
struct NormalFormProblem {
    int d = 0;
    NumberField field{2};
    std::vector<BaseNumber> alpha;
    Series H; // pure (q, p) series: no omega/tau dependence, constant scalars
    int cutoff = 0;
};

/// Shape check: every coefficient a field constant without denominators, no
/// tau exponents, nothing below weight 2, and the quadratic part exactly
/// sum alpha_i p_i q_i. Throws QuadraticMismatch.
void validate_problem(const NormalFormProblem& pb);

Context make_context(const NormalFormProblem& pb);

} // namespace hnf::normal
