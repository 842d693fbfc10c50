#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <string>

#include "hnf/rational.hpp"

namespace hnf::scalar {

using Real = boost::multiprecision::mpfr_float;

/// Set the working MPFR precision in bits for subsequently created Reals.
void set_precision_bits(unsigned bits);

/// Minimal complex type over an arbitrary real type (MPC is not linked).
template <class R>
struct Cx {
    R re{0}, im{0};

    Cx() = default;
    Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cx(R r) : re(std::move(r)) {}

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator/(const Cx& a, const Cx& b) {
        R n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    R abs2() const { return re * re + im * im; }
    bool is_zero() const { return re == 0 && im == 0; }
};

using CC = Cx<Real>;

/// Element of Q(theta)(i) with theta^2 = m: u + t*theta + v*i + w*i*theta.
struct BaseNumber {
    Rat u{0}, t{0}, v{0}, w{0};

    BaseNumber() = default;
    explicit BaseNumber(Rat ru) : u(std::move(ru)) {}
    BaseNumber(Rat ru, Rat rt, Rat rv, Rat rw)
        : u(std::move(ru)), t(std::move(rt)), v(std::move(rv)), w(std::move(rw)) {}

    static BaseNumber zero() { return BaseNumber(); }
    static BaseNumber one() { return BaseNumber(Rat(1)); }
    static BaseNumber theta() { return BaseNumber(Rat(0), Rat(1), Rat(0), Rat(0)); }
    static BaseNumber imag_unit() { return BaseNumber(Rat(0), Rat(0), Rat(1), Rat(0)); }

    bool is_zero() const { return u == 0 && t == 0 && v == 0 && w == 0; }
    bool is_rational() const { return t == 0 && v == 0 && w == 0; }
    /// Real in the embedded sense: no i components.
    bool is_real() const { return v == 0 && w == 0; }

    friend bool operator==(const BaseNumber& a, const BaseNumber& b) {
        return a.u == b.u && a.t == b.t && a.v == b.v && a.w == b.w;
    }
    friend bool operator!=(const BaseNumber& a, const BaseNumber& b) { return !(a == b); }
    /// Lexicographic order on components; used only for deterministic containers.
    friend bool operator<(const BaseNumber& a, const BaseNumber& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.t != b.t) return a.t < b.t;
        if (a.v != b.v) return a.v < b.v;
        return a.w < b.w;
    }

    friend BaseNumber operator+(const BaseNumber& a, const BaseNumber& b) {
        return {a.u + b.u, a.t + b.t, a.v + b.v, a.w + b.w};
    }
    friend BaseNumber operator-(const BaseNumber& a, const BaseNumber& b) {
        return {a.u - b.u, a.t - b.t, a.v - b.v, a.w - b.w};
    }
    friend BaseNumber operator-(const BaseNumber& a) { return {-a.u, -a.t, -a.v, -a.w}; }

    /// Complex conjugation i -> -i.
    BaseNumber conj_i() const { return {u, t, -v, -w}; }
    /// Galois conjugation theta -> -theta.
    BaseNumber conj_theta() const { return {u, -t, v, w}; }
};

/// The coefficient field Q(theta)(i), theta = sqrt(m), m a positive non-square.
class NumberField {
  public:
    explicit NumberField(long m = 2);

    long m() const { return m_; }

    BaseNumber mul(const BaseNumber& a, const BaseNumber& b) const;
    BaseNumber inv(const BaseNumber& a) const;     // throws RangeError on zero
    BaseNumber div(const BaseNumber& a, const BaseNumber& b) const { return mul(a, inv(b)); }
    BaseNumber mul_rat(const BaseNumber& a, const Rat& r) const {
        return {a.u * r, a.t * r, a.v * r, a.w * r};
    }
    BaseNumber pow(const BaseNumber& a, long e) const;

    /// |a|^2 = a * conj_i(a); lands in the real subfield (v = w = 0).
    BaseNumber abs2(const BaseNumber& a) const;

    /// Exact sign of a real element x + y*theta (requires is_real()).
    int sign_real(const BaseNumber& a) const;

    /// Embedding with theta -> +sqrt(m), at the current default precision.
    CC eval(const BaseNumber& a) const;
    /// Double-precision embedding for magnitudes and sampling.
    double eval_real_double(const BaseNumber& a) const;

    static bool is_square(long m, long* root = nullptr);

  private:
    long m_;
};

std::string base_str(const BaseNumber& a);
BaseNumber base_parse(const std::string& text);

} // namespace hnf::scalar
