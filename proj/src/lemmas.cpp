#include "hnf/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "hnf/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hnf::lemmas {

namespace {

using scalar::rat_pow;

R128 rat_to_r128(const Rat& x) {
    return R128(x.get_num().get_str()) / R128(x.get_den().get_str());
}

void check_dim(const Poly& f, int d, const char* who) {
    for (const PolyTerm& m : f)
        if (static_cast<int>(m.index.size()) != d)
            throw RangeError(std::string(who) + ": term dimension mismatch");
}

int total_degree(const std::vector<int>& idx) {
    int s = 0;
    for (int e : idx) {
        if (e < 0) throw RangeError("negative exponent");
        s += e;
    }
    return s;
}

/// sum |a_I|^2 u^{2d+2|I|} / prod(1+i_k): the squared square-mean norm with
/// the pi^d factor dropped.
Rat norm_sq_over_pi(const Poly& f, int d, const Rat& u) {
    Rat total = 0;
    for (const PolyTerm& m : f) {
        if (m.coeff == 0) continue;
        Rat denom = 1;
        for (int e : m.index) denom *= e + 1;
        total += m.coeff * m.coeff / denom * rat_pow(u, 2 * (d + total_degree(m.index)));
    }
    return total;
}

/// sum |a_I| u^{|I|}: exact majorant of the sup norm on the radius-u polydisc.
Rat coeff_majorant(const Poly& f, const Rat& u) {
    Rat total = 0;
    for (const PolyTerm& m : f) total += abs(m.coeff) * rat_pow(u, total_degree(m.index));
    return total;
}

Poly diff_var(const Poly& f, int var) {
    Poly out;
    for (const PolyTerm& m : f) {
        int e = m.index[static_cast<size_t>(var)];
        if (e == 0 || m.coeff == 0) continue;
        PolyTerm t = m;
        t.coeff *= e;
        t.index[static_cast<size_t>(var)] = e - 1;
        out.push_back(std::move(t));
    }
    return out;
}

void accumulate_product(std::map<std::vector<int>, Rat>& acc, const Poly& a, const Poly& b,
                        const Rat& sign) {
    for (const PolyTerm& x : a)
        for (const PolyTerm& y : b) {
            std::vector<int> idx(x.index.size());
            for (size_t i = 0; i < idx.size(); ++i) idx[i] = x.index[i] + y.index[i];
            acc[idx] += sign * x.coeff * y.coeff;
        }
}

Poly from_map(std::map<std::vector<int>, Rat>&& acc) {
    Poly out;
    for (auto& [idx, c] : acc)
        if (c != 0) out.push_back(PolyTerm{idx, c});
    return out;
}

/// d^J applied termwise: z^I -> i!/(i-j)! z^{I-J}, zero when any i_k < j_k.
Poly apply_op(const DiffOp& P, const Poly& f) {
    std::map<std::vector<int>, Rat> acc;
    for (const PolyTerm& op : P)
        for (const PolyTerm& m : f) {
            Rat c = op.coeff * m.coeff;
            std::vector<int> idx(m.index.size());
            bool dead = false;
            for (size_t v = 0; v < idx.size() && !dead; ++v) {
                int i = m.index[v], j = op.index[v];
                if (i < j) {
                    dead = true;
                    break;
                }
                for (int w = 0; w < j; ++w) c *= i - w;
                idx[v] = i - j;
            }
            if (!dead && c != 0) acc[idx] += c;
        }
    return from_map(std::move(acc));
}

std::complex<double> eval(const Poly& f, const std::complex<double>* z, int d) {
    std::complex<double> total = 0;
    for (const PolyTerm& m : f) {
        std::complex<double> term = m.coeff.get_d();
        for (int v = 0; v < d; ++v)
            for (int e = 0; e < m.index[static_cast<size_t>(v)]; ++e)
                term *= z[v];
        total += term;
    }
    return total;
}

/// Max |f| over `samples` points of the distinguished boundary (torus) of the
/// radius-u polydisc; by the maximum principle this approaches sup over the
/// closed polydisc from below.
double sampled_sup(const Poly& f, int d, double u, long long samples, std::uint64_t seed) {
    if (d > 8) throw RangeError("sup sampling supports at most 8 variables");
    double best = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : best) schedule(static)
#endif
    for (long long i = 0; i < samples; ++i) {
        Rng stream(rng_at(seed, static_cast<std::uint64_t>(i)));
        std::complex<double> z[8];
        for (int v = 0; v < d; ++v) {
            double th = 2 * M_PI * stream.unit();
            z[v] = std::polar(u, th);
        }
        best = std::max(best, std::abs(eval(f, z, d)));
    }
    return best;
}

const char* kFalsifyNote =
    "falsification-only: sampled sup is a lower bound, majorant denominators are upper "
    "bounds, so observed <= true ratio and only grows with samples";

SupCheck finish(double observed, double bound, long long samples) {
    SupCheck out;
    out.observed = observed;
    out.bound = bound;
    out.samples = samples;
    out.pass = observed <= bound * (1 + 1e-9);
    out.note = kFalsifyNote;
    return out;
}

void check_gap(const Rat& t, const Rat& s) {
    if (!(s > 0 && t > s)) throw RangeError("need polydisc radii t > s > 0");
}

} // namespace

RestrictionCheck arnold_moser_check(const Poly& f, int d, const Rat& t, const Rat& s, int N) {
    check_gap(t, s);
    if (d < 1) throw RangeError("need d >= 1");
    if (N < 0) throw RangeError("vanishing order must be non-negative");
    check_dim(f, d, "arnold_moser_check");
    for (const PolyTerm& m : f)
        if (m.coeff != 0 && total_degree(m.index) < N)
            throw OrderMismatch("term of degree " + std::to_string(total_degree(m.index)) +
                                " below declared vanishing order " + std::to_string(N));

    RestrictionCheck out;
    out.lhs_sq = norm_sq_over_pi(f, d, s);
    out.rhs_sq = rat_pow(s / t, 2 * (d + N)) * norm_sq_over_pi(f, d, t);
    out.pass = out.lhs_sq <= out.rhs_sq;
    out.equality = out.lhs_sq == out.rhs_sq;
    return out;
}

SupCheck cauchy_nagumo_check(const DiffOp& P, const Poly& f, int d, const Rat& t, const Rat& s,
                             long long samples, std::uint64_t seed) {
    check_gap(t, s);
    if (samples < 1) throw RangeError("need at least one sample");
    check_dim(P, d, "cauchy_nagumo_check operator");
    check_dim(f, d, "cauchy_nagumo_check");

    int k = 0;
    Rat C = 0;
    for (const PolyTerm& op : P) {
        if (op.coeff == 0) continue;
        k = std::max(k, total_degree(op.index));
        C = std::max(C, Rat(abs(op.coeff)));
    }
    double kfact = 1;
    for (int i = 2; i <= k; ++i) kfact *= i;
    const double r = Rat(t - s).get_d();
    const double bound = C.get_d() * kfact / std::pow(r, k);

    Poly Pf = apply_op(P, f);
    const double denom = coeff_majorant(f, t).get_d();
    const double numer = sampled_sup(Pf, d, s.get_d(), samples, seed);
    return finish(denom == 0 ? 0.0 : numer / denom, bound, samples);
}

SupCheck hamiltonian_derivation_check(const Poly& h, const Poly& f, int pairs, const Rat& t,
                                      const Rat& s, long long samples, std::uint64_t seed) {
    check_gap(t, s);
    if (pairs < 1) throw RangeError("need at least one (q,p) pair");
    if (samples < 1) throw RangeError("need at least one sample");
    const int d = 2 * pairs;
    check_dim(h, d, "hamiltonian_derivation_check");
    check_dim(f, d, "hamiltonian_derivation_check");

    std::map<std::vector<int>, Rat> acc;
    for (int i = 0; i < pairs; ++i) {
        accumulate_product(acc, diff_var(h, i), diff_var(f, pairs + i), Rat(1));
        accumulate_product(acc, diff_var(h, pairs + i), diff_var(f, i), Rat(-1));
    }
    Poly bracket = from_map(std::move(acc));

    const double r = Rat(t - s).get_d();
    const double bound = pairs / (r * r);
    const double denom = Rat(coeff_majorant(h, t) * coeff_majorant(f, t)).get_d();
    const double numer = sampled_sup(bracket, d, s.get_d(), samples, seed);
    return finish(denom == 0 ? 0.0 : numer / denom, bound, samples);
}

SupCheck local_equiv_check(const Poly& f, int d, const Rat& t, const Rat& s, long long samples,
                           std::uint64_t seed) {
    check_gap(t, s);
    if (d < 1) throw RangeError("need d >= 1");
    if (samples < 1) throw RangeError("need at least one sample");
    check_dim(f, d, "local_equiv_check");

    const double r = Rat(t - s).get_d();
    // pi^{-d/2} r^{-d} * sqrt(pi^d S(t)) = r^{-d} sqrt(S(t))
    const double bound =
        std::sqrt(rat_to_r128(norm_sq_over_pi(f, d, t)).convert_to<double>()) / std::pow(r, d);
    const double observed = sampled_sup(f, d, s.get_d(), samples, seed);
    return finish(observed, bound, samples);
}

BorelCheck borel_check(const std::vector<Rat>& coeffs, const R128& u_norm, const R128& t,
                       const R128& s, const R128& radius) {
    if (!(t > s)) throw RangeError("need t > s");
    if (u_norm < 0) throw RangeError("u_norm must be non-negative");
    if (radius > 0 && u_norm >= radius * (t - s))
        throw RadiusExceeded("u_norm outside the convergence radius of f");

    const R128 r = u_norm / (t - s);
    BorelCheck out;
    out.lhs_bound = 0;
    out.rhs = 0;
    out.termwise = true;
    R128 rpow = 1;
    for (size_t n = 0; n < coeffs.size(); ++n) {
        R128 an = rat_to_r128(Rat(abs(coeffs[n])));
        // n^n e^{-n} / n! <= 1, the termwise content of the lemma
        R128 g = n == 0 ? R128(1)
                        : exp(R128(n) * log(R128(n)) - R128(n) - lgamma(R128(n) + 1));
        if (g > 1) out.termwise = false;
        out.lhs_bound += an * g * rpow;
        out.rhs += an * rpow;
        rpow *= r;
    }
    out.pass = out.lhs_bound <= out.rhs;
    return out;
}

} // namespace hnf::lemmas
