#include "hnf/number_field.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace hnf::scalar {

void set_precision_bits(unsigned bits) {
    if (bits < 24) bits = 24;
    // boost's mpfr_float tracks precision in decimal digits
    unsigned digits = static_cast<unsigned>(static_cast<double>(bits) * 0.30103) + 2;
    Real::default_precision(digits);
}

bool NumberField::is_square(long m, long* root) {
    if (m < 0) return false;
    long r = static_cast<long>(std::lround(std::sqrt(static_cast<double>(m))));
    for (long c = (r > 1 ? r - 1 : 0); c <= r + 1; ++c) {
        if (c * c == m) {
            if (root) *root = c;
            return true;
        }
    }
    return false;
}

NumberField::NumberField(long m) : m_(m) {
    if (m <= 0 || is_square(m))
        throw RangeError("field constant must be a positive non-square, got " + std::to_string(m));
}

BaseNumber NumberField::mul(const BaseNumber& a, const BaseNumber& b) const {
    // (u + t T + v i + w i T)(u' + t' T + v' i + w' i T), T^2 = m, i^2 = -1
    Rat m(m_);
    return {a.u * b.u + m * a.t * b.t - a.v * b.v - m * a.w * b.w,
            a.u * b.t + a.t * b.u - a.v * b.w - a.w * b.v,
            a.u * b.v + a.v * b.u + m * (a.t * b.w + a.w * b.t),
            a.u * b.w + a.w * b.u + a.t * b.v + a.v * b.t};
}

BaseNumber NumberField::abs2(const BaseNumber& a) const {
    return mul(a, a.conj_i());
}

BaseNumber NumberField::inv(const BaseNumber& a) const {
    if (a.is_zero()) throw RangeError("inverse of zero field element");
    // 1/z = conj_i(z) / |z|^2 with |z|^2 = x^2 + y^2 in Q(theta),
    // then (p + q T)^{-1} = (p - q T)/(p^2 - m q^2), nonzero since m is non-square.
    BaseNumber n2 = abs2(a); // real: n2.v = n2.w = 0
    Rat p = n2.u, q = n2.t;
    Rat norm = p * p - Rat(m_) * q * q;
    BaseNumber n2inv(p / norm, -q / norm, Rat(0), Rat(0));
    return mul(a.conj_i(), n2inv);
}

BaseNumber NumberField::pow(const BaseNumber& a, long e) const {
    BaseNumber base = e < 0 ? inv(a) : a;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    BaseNumber r = BaseNumber::one();
    while (k) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

int NumberField::sign_real(const BaseNumber& a) const {
    if (!a.is_real()) throw RangeError("sign of non-real field element");
    // sign of x + y*sqrt(m), exactly
    int sx = sgn(a.u), sy = sgn(a.t);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // opposite signs: compare x^2 vs m y^2
    Rat d = a.u * a.u - Rat(m_) * a.t * a.t;
    int sd = sgn(d);
    return sd == 0 ? 0 : sd * sx;
}

CC NumberField::eval(const BaseNumber& a) const {
    Real sm = sqrt(Real(m_));
    Real re = Real(a.u.get_mpq_t()) + Real(a.t.get_mpq_t()) * sm;
    Real im = Real(a.v.get_mpq_t()) + Real(a.w.get_mpq_t()) * sm;
    return {re, im};
}

double NumberField::eval_real_double(const BaseNumber& a) const {
    double sm = std::sqrt(static_cast<double>(m_));
    return a.u.get_d() + a.t.get_d() * sm;
}

namespace {

void append_term(std::string& out, const Rat& c, const char* sym) {
    if (c == 0) return;
    Rat a = abs(c);
    if (out.empty()) {
        if (c < 0) out += "-";
    } else {
        out += (c < 0) ? "-" : "+";
    }
    if (*sym == 0) {
        out += rat_str(a);
    } else {
        if (a != 1) { out += rat_str(a); out += "*"; }
        out += sym;
    }
}

} // namespace

std::string base_str(const BaseNumber& a) {
    std::string out;
    append_term(out, a.u, "");
    append_term(out, a.t, "theta");
    append_term(out, a.v, "i");
    append_term(out, a.w, "i*theta");
    return out.empty() ? "0" : out;
}

BaseNumber base_parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty field element");

    BaseNumber acc;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
            throw ParseError("consecutive signs in '" + text + "'");
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty()) throw ParseError("dangling sign in '" + text + "'");
        i = j;

        // term := [rat *] [i] [* theta] in any sensible order, split on '*'
        Rat coef(1);
        bool has_i = false, has_theta = false, has_num = false;
        size_t p = 0;
        while (p <= term.size()) {
            size_t q = term.find('*', p);
            std::string f = term.substr(p, (q == std::string::npos ? term.size() : q) - p);
            if (f == "i") {
                if (has_i) throw ParseError("repeated i in '" + term + "'");
                has_i = true;
            } else if (f == "theta") {
                if (has_theta) throw ParseError("repeated theta in '" + term + "'");
                has_theta = true;
            } else if (!f.empty()) {
                if (has_num) throw ParseError("two numeric factors in '" + term + "'");
                coef = rat_parse(f);
                has_num = true;
            } else {
                throw ParseError("empty factor in '" + term + "'");
            }
            if (q == std::string::npos) break;
            p = q + 1;
        }
        coef *= sign;
        BaseNumber part;
        if (!has_i && !has_theta) part.u = coef;
        else if (!has_i) part.t = coef;
        else if (!has_theta) part.v = coef;
        else part.w = coef;
        acc = acc + part;
    }
    return acc;
}

} // namespace hnf::scalar
