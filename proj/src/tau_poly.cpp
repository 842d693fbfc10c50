#include "hnf/tau_poly.hpp"

#include <climits>

#include "hnf/errors.hpp"

namespace hnf::normal {

namespace {
int total(const std::vector<int>& e) {
    int s = 0;
    for (int x : e) s += x;
    return s;
}
BaseNumber rat_scale(const BaseNumber& c, const Rat& r) {
    return BaseNumber(c.u * r, c.t * r, c.v * r, c.w * r);
}
} // namespace

TauPoly TauPoly::zero(int d, int max_deg) {
    TauPoly p;
    p.d = d;
    p.max_deg = max_deg;
    return p;
}

TauPoly TauPoly::constant(int d, int max_deg, const BaseNumber& c) {
    TauPoly p = zero(d, max_deg);
    p.add_term(std::vector<int>(static_cast<size_t>(d), 0), c);
    return p;
}

TauPoly TauPoly::variable(int d, int max_deg, int i) {
    TauPoly p = zero(d, max_deg);
    std::vector<int> e(static_cast<size_t>(d), 0);
    e[static_cast<size_t>(i)] = 1;
    p.add_term(e, BaseNumber::one());
    return p;
}

int TauPoly::order() const {
    int o = INT_MAX;
    for (const auto& [e, c] : terms) o = std::min(o, total(e));
    return o;
}

BaseNumber TauPoly::coeff(const std::vector<int>& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? BaseNumber::zero() : it->second;
}

void TauPoly::add_term(const std::vector<int>& e, const BaseNumber& c) {
    if (c.is_zero() || total(e) > max_deg) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

TauPoly tp_add(const TauPoly& a, const TauPoly& b) {
    TauPoly r = a;
    r.max_deg = std::min(a.max_deg, b.max_deg);
    for (const auto& [e, c] : b.terms) r.add_term(e, c);
    // re-truncate in case the bound shrank
    for (auto it = r.terms.begin(); it != r.terms.end();)
        it = total(it->first) > r.max_deg ? r.terms.erase(it) : std::next(it);
    return r;
}

TauPoly tp_sub(const TauPoly& a, const TauPoly& b) { return tp_add(a, tp_neg(b)); }

TauPoly tp_neg(const TauPoly& a) {
    TauPoly r = a;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

TauPoly tp_mul(const NumberField& f, const TauPoly& a, const TauPoly& b) {
    TauPoly r = TauPoly::zero(a.d, std::min(a.max_deg, b.max_deg));
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            if (total(ea) + total(eb) > r.max_deg) continue;
            std::vector<int> e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, f.mul(ca, cb));
        }
    return r;
}

TauPoly tp_scale(const NumberField& f, const TauPoly& a, const BaseNumber& c) {
    TauPoly r = TauPoly::zero(a.d, a.max_deg);
    for (const auto& [e, x] : a.terms) r.add_term(e, f.mul(x, c));
    return r;
}

TauPoly tp_partial(const TauPoly& a, int i) {
    TauPoly r = TauPoly::zero(a.d, a.max_deg);
    size_t k = static_cast<size_t>(i);
    for (const auto& [e, c] : a.terms) {
        if (e[k] == 0) continue;
        std::vector<int> f = e;
        f[k] -= 1;
        r.add_term(f, rat_scale(c, Rat(e[k])));
    }
    return r;
}

TauPoly tp_truncate_weight(const TauPoly& a, int wlo, int whi) {
    TauPoly r = TauPoly::zero(a.d, a.max_deg);
    for (const auto& [e, c] : a.terms) {
        int w = 2 * total(e);
        if (w >= wlo && w < whi) r.add_term(e, c);
    }
    return r;
}

TauPoly tp_inv(const NumberField& f, const TauPoly& a) {
    std::vector<int> z(static_cast<size_t>(a.d), 0);
    BaseNumber c0 = a.coeff(z);
    if (c0.is_zero())
        throw NewtonNonUnit("inverting a tau-series with zero constant term");
    // a = c0 (1 + x), x of positive order: geometric series in x
    BaseNumber c0i = f.inv(c0);
    TauPoly x = tp_scale(f, a, c0i);
    x.add_term(z, -BaseNumber::one());
    TauPoly acc = TauPoly::constant(a.d, a.max_deg, c0i);
    TauPoly pw = TauPoly::constant(a.d, a.max_deg, BaseNumber::one());
    for (int k = 1; k <= a.max_deg; ++k) {
        pw = tp_mul(f, pw, tp_neg(x));
        if (pw.is_zero()) break;
        acc = tp_add(acc, tp_scale(f, pw, c0i));
    }
    return acc;
}

bool tp_eq(const TauPoly& a, const TauPoly& b) { return a.terms == b.terms; }

CC tp_eval(const NumberField& f, const TauPoly& a, const std::vector<CC>& tau) {
    CC acc{};
    for (const auto& [e, c] : a.terms) {
        CC t = f.eval(c);
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t = t * tau[i];
        acc = acc + t;
    }
    return acc;
}

std::string tp_str(const TauPoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : a.terms) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "tau" + std::to_string(i + 1);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs = scalar::base_str(c);
        if (mono.empty())
            out += cs;
        else if (cs == "1")
            out += mono;
        else
            out += (cs.find(' ') != std::string::npos || cs.find('+') != std::string::npos
                        ? "(" + cs + ")"
                        : cs) +
                   "*" + mono;
    }
    return out;
}

} // namespace hnf::normal
