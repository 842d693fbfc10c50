#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hnf/errors.hpp"
#include "hnf/rational.hpp"
#include "hnf/real.hpp"

namespace hnf::lemmas {

using arith::R128;
using scalar::Rat;

/// Sparse polynomial over exact rationals: one exponent vector per variable.
struct PolyTerm {
    std::vector<int> index;
    Rat coeff;
};
using Poly = std::vector<PolyTerm>;

/// Constant-coefficient differential operator sum a_J d^J; same layout, the
/// index holds derivative orders.
using DiffOp = Poly;

/// Restriction estimate on square-mean norms: for f vanishing to order N,
/// |f|_s <= (s/t)^{d+N} |f|_t.  Monomials are orthogonal with
/// |z^I|^2 = C(I) u^{2d+2|I|}, C(I) = pi^d / prod(1+i_k); the common pi^d
/// cancels, so both squared norms are exact rationals.
struct RestrictionCheck {
    Rat lhs_sq, rhs_sq;  // squared norms, pi^d factor dropped from both
    bool pass = false;
    bool equality = false;
};
RestrictionCheck arnold_moser_check(const Poly& f, int d, const Rat& t, const Rat& s, int N);

/// Common shape of the sampled sup-norm falsification checks.  observed only
/// grows with more samples (sampled sups are lower bounds; any denominator
/// uses an exact upper majorant), so a reported falsification is sound and
/// adding samples never flips fail to pass.
struct SupCheck {
    double observed = 0;
    double bound = 0;
    bool pass = true;
    long long samples = 0;
    std::string note;
};

/// Derivative bound |P f|_V / sup_U |f| <= C k!/r^k with C = max |a_J|,
/// k the operator order, r = t - s the polydisc gap.  The denominator is the
/// coefficient majorant sum |a_I| t^{|I|} >= sup_U |f|.
SupCheck cauchy_nagumo_check(const DiffOp& P, const Poly& f, int d, const Rat& t, const Rat& s,
                             long long samples, std::uint64_t seed);

/// Corollary for Hamiltonian derivations: sup_V |{h,f}| <= (pairs/r^2)
/// sup_U|h| sup_U|f|.  Variables are laid out q_1..q_pairs, p_1..p_pairs.
SupCheck hamiltonian_derivation_check(const Poly& h, const Poly& f, int pairs, const Rat& t,
                                      const Rat& s, long long samples, std::uint64_t seed);

/// Square-mean controls sup on a smaller polydisc:
/// sup_V |f| <= pi^{-d/2} r^{-d} |f|_{L2(U)}; the pi powers cancel against
/// the monomial norms, leaving bound = r^{-d} sqrt(sum |a_I|^2 t^{2d+2|I|} /
/// prod(1+i_k)).
SupCheck local_equiv_check(const Poly& f, int d, const Rat& t, const Rat& s, long long samples,
                           std::uint64_t seed);

/// Scalar core of the Borel-transform estimate: with r = u_norm/(t-s),
///   sum |a_n| r^n n^n e^{-n}/n!  <=  sum |a_n| r^n,
/// termwise via n^n <= e^n n!.  radius <= 0 means no declared radius;
/// otherwise u_norm >= radius*(t-s) raises RadiusExceeded.
struct BorelCheck {
    R128 lhs_bound, rhs;
    bool pass = false;
    bool termwise = false;
};
BorelCheck borel_check(const std::vector<Rat>& coeffs, const R128& u_norm, const R128& t,
                       const R128& s, const R128& radius = R128(0));

} // namespace hnf::lemmas
