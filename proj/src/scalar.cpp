#include "hnf/scalar.hpp"

#include <algorithm>
#include <cmath>

namespace hnf::scalar {

// ---------------------------------------------------------------- Context

Context::Context(int d, NumberField field, std::vector<BaseNumber> alpha)
    : d_(d), field_(std::move(field)), alpha_(std::move(alpha)) {
    if (d_ < 1) throw RangeError("dimension must be >= 1");
    if (alpha_.size() != static_cast<size_t>(d_))
        throw RangeError("alpha length does not match dimension");
}

BaseNumber Context::pair_alpha(const std::vector<int>& J) const {
    BaseNumber s;
    for (int i = 0; i < d_; ++i)
        s = s + field_.mul_rat(alpha_[static_cast<size_t>(i)], Rat(J[static_cast<size_t>(i)]));
    return s;
}

int Context::find_form(const std::vector<int>& J) const {
    auto it = form_ids_.find(J);
    return it == form_ids_.end() ? -1 : it->second;
}

int Context::intern_form(const std::vector<int>& J, const FormOrigin& origin) {
    if (J.size() != static_cast<size_t>(d_)) throw RangeError("form length mismatch");
    auto it = form_ids_.find(J);
    if (it != form_ids_.end()) return it->second;
    BaseNumber aj = pair_alpha(J);
    if (aj.is_zero()) throw ResonantMonomial(J);
    int id = static_cast<int>(forms_.size());
    forms_.push_back(ResonanceForm{J, aj});
    form_ids_.emplace(J, id);
    CC v = field_.eval(aj);
    double mag = std::sqrt(static_cast<double>(v.abs2()));
    ledger_.push_back(LedgerEntry{J, aj, mag, origin});
    return id;
}

std::vector<LedgerEntry> Context::ledger_sorted() const {
    std::vector<LedgerEntry> out = ledger_;
    std::sort(out.begin(), out.end(),
              [](const LedgerEntry& a, const LedgerEntry& b) { return a.J < b.J; });
    return out;
}

// -------------------------------------------------------------- OmegaPoly

OmegaPoly OmegaPoly::constant(int d, const BaseNumber& c) {
    OmegaPoly p;
    if (!c.is_zero()) p.terms_.emplace(std::vector<int>(static_cast<size_t>(d), 0), c);
    return p;
}

OmegaPoly OmegaPoly::variable(int d, int k) {
    OmegaPoly p;
    std::vector<int> e(static_cast<size_t>(d), 0);
    e[static_cast<size_t>(k)] = 1;
    p.terms_.emplace(std::move(e), BaseNumber::one());
    return p;
}

OmegaPoly OmegaPoly::linear_form(const BaseNumber& c0, const std::vector<int>& J) {
    int d = static_cast<int>(J.size());
    OmegaPoly p = constant(d, c0);
    for (int i = 0; i < d; ++i) {
        if (J[static_cast<size_t>(i)] == 0) continue;
        std::vector<int> e(static_cast<size_t>(d), 0);
        e[static_cast<size_t>(i)] = 1;
        p.terms_.emplace(std::move(e), BaseNumber(Rat(J[static_cast<size_t>(i)])));
    }
    return p;
}

bool OmegaPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

BaseNumber OmegaPoly::constant_term(int d) const {
    auto it = terms_.find(std::vector<int>(static_cast<size_t>(d), 0));
    return it == terms_.end() ? BaseNumber::zero() : it->second;
}

int OmegaPoly::total_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int x : e) s += x;
        deg = std::max(deg, s);
    }
    return deg;
}

void OmegaPoly::set(const std::vector<int>& e, const BaseNumber& c) {
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

OmegaPoly operator+(const OmegaPoly& a, const OmegaPoly& b) {
    OmegaPoly r = a;
    for (const auto& [e, c] : b.terms_) {
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
            r.terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

OmegaPoly operator-(const OmegaPoly& a) {
    OmegaPoly r = a;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

OmegaPoly operator-(const OmegaPoly& a, const OmegaPoly& b) { return a + (-b); }

OmegaPoly OmegaPoly::mul(const NumberField& f, const OmegaPoly& o) const {
    OmegaPoly r;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            std::vector<int> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            BaseNumber c = f.mul(ca, cb);
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                if (!c.is_zero()) r.terms_.emplace(std::move(e), c);
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

OmegaPoly OmegaPoly::scale(const NumberField& f, const BaseNumber& c) const {
    OmegaPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, a] : terms_) {
        BaseNumber p = f.mul(a, c);
        if (!p.is_zero()) r.terms_.emplace(e, p);
    }
    return r;
}

OmegaPoly OmegaPoly::partial(int k) const {
    OmegaPoly r;
    size_t ki = static_cast<size_t>(k);
    for (const auto& [e, c] : terms_) {
        if (e[ki] == 0) continue;
        std::vector<int> e2 = e;
        e2[ki] -= 1;
        r.terms_.emplace(std::move(e2), BaseNumber(Rat(e[ki]) * c.u, Rat(e[ki]) * c.t,
                                                   Rat(e[ki]) * c.v, Rat(e[ki]) * c.w));
    }
    return r;
}

CC OmegaPoly::eval(const NumberField& f, const std::vector<CC>& omega) const {
    CC acc;
    for (const auto& [e, c] : terms_) {
        CC term = f.eval(c);
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) term = term * omega[i];
        acc = acc + term;
    }
    return acc;
}

std::optional<OmegaPoly> OmegaPoly::divide_by_form(const NumberField& f,
                                                   const ResonanceForm& form) const {
    if (is_zero()) return OmegaPoly();
    size_t d = form.J.size();
    size_t piv = d;
    for (size_t i = 0; i < d; ++i)
        if (form.J[i] != 0) { piv = i; break; }
    if (piv == d) return std::nullopt; // degenerate form; cannot happen for interned forms
    Rat cj(form.J[piv]);

    // rho = form polynomial minus its pivot term (no omega_piv dependence)
    OmegaPoly rho = OmegaPoly::linear_form(form.alpha_J, form.J);
    {
        std::vector<int> e(d, 0);
        e[piv] = 1;
        rho.set(e, BaseNumber::zero());
    }

    // split by pivot exponent
    std::map<int, OmegaPoly> slices;
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        std::vector<int> e2 = e;
        int k = e2[piv];
        e2[piv] = 0;
        slices[k].set(e2, c);
        deg = std::max(deg, k);
    }
    if (deg == 0) return std::nullopt;

    std::map<int, OmegaPoly> quot;
    for (int k = deg; k >= 1; --k) {
        OmegaPoly qk = slices[k].scale(f, BaseNumber(Rat(1) / cj));
        if (!qk.is_zero()) {
            quot[k - 1] = qk;
            slices[k - 1] = slices[k - 1] - qk.mul(f, rho);
        }
        slices.erase(k);
    }
    if (!slices[0].is_zero()) return std::nullopt;

    OmegaPoly q;
    for (const auto& [k, part] : quot) {
        for (const auto& [e, c] : part.terms()) {
            std::vector<int> e2 = e;
            e2[piv] += k;
            q.set(e2, c);
        }
    }
    return q;
}

std::string OmegaPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "omega" + std::to_string(i + 1);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs = base_str(c);
        bool wrap = cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos;
        if (mono.empty()) {
            out += wrap ? "(" + cs + ")" : cs;
        } else if (cs == "1") {
            out += mono;
        } else {
            out += (wrap ? "(" + cs + ")" : cs) + "*" + mono;
        }
    }
    return out;
}

// ----------------------------------------------------------------- Scalar

namespace {

using Den = std::vector<std::pair<int, int>>;

Den den_union_max(const Den& a, const Den& b) {
    Den r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            r.emplace_back(a[i].first, std::max(a[i].second, b[j].second));
            ++i, ++j;
        }
    }
    return r;
}

Den den_sum(const Den& a, const Den& b) {
    Den r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return r;
}

/// Multiplicity-wise difference big - small (requires big >= small).
Den den_diff(const Den& big, const Den& small) {
    Den r;
    size_t j = 0;
    for (const auto& [id, m] : big) {
        int sub = 0;
        if (j < small.size() && small[j].first == id) sub = small[j++].second;
        if (m - sub > 0) r.emplace_back(id, m - sub);
    }
    return r;
}

OmegaPoly den_expand(const Context& ctx, const Den& den) {
    OmegaPoly p = OmegaPoly::constant(ctx.d(), BaseNumber::one());
    for (const auto& [id, mult] : den) {
        const ResonanceForm& f = ctx.form(id);
        OmegaPoly lf = OmegaPoly::linear_form(f.alpha_J, f.J);
        for (int k = 0; k < mult; ++k) p = p.mul(ctx.field(), lf);
    }
    return p;
}

/// Restore invariants: clear denominator on zero, cancel exact form factors.
Scalar normalize(const Context& ctx, Scalar s) {
    if (s.num.is_zero()) {
        s.den.clear();
        return s;
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& [id, mult] : s.den) {
            while (mult > 0) {
                auto q = s.num.divide_by_form(ctx.field(), ctx.form(id));
                if (!q) break;
                s.num = std::move(*q);
                --mult;
                progress = true;
            }
        }
        std::erase_if(s.den, [](const std::pair<int, int>& e) { return e.second == 0; });
    }
    return s;
}

} // namespace

Scalar scalar_zero() { return Scalar{}; }

Scalar scalar_const(const Context& ctx, const BaseNumber& c) {
    return Scalar{OmegaPoly::constant(ctx.d(), c), {}};
}

Scalar scalar_rat(const Context& ctx, const Rat& r) {
    return scalar_const(ctx, BaseNumber(r));
}

Scalar scalar_poly(OmegaPoly p) { return Scalar{std::move(p), {}}; }

Scalar scalar_add(const Context& ctx, const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Den d = den_union_max(a.den, b.den);
    OmegaPoly na = a.num.mul(ctx.field(), den_expand(ctx, den_diff(d, a.den)));
    OmegaPoly nb = b.num.mul(ctx.field(), den_expand(ctx, den_diff(d, b.den)));
    return normalize(ctx, Scalar{na + nb, std::move(d)});
}

Scalar scalar_neg(const Scalar& a) { return Scalar{-a.num, a.den}; }

Scalar scalar_sub(const Context& ctx, const Scalar& a, const Scalar& b) {
    return scalar_add(ctx, a, scalar_neg(b));
}

Scalar scalar_mul(const Context& ctx, const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return scalar_zero();
    return normalize(ctx, Scalar{a.num.mul(ctx.field(), b.num), den_sum(a.den, b.den)});
}

Scalar scalar_scale(const Context& ctx, const Scalar& a, const BaseNumber& c) {
    if (c.is_zero()) return scalar_zero();
    return Scalar{a.num.scale(ctx.field(), c), a.den};
}

Scalar scalar_div_const(const Context& ctx, const Scalar& a, const BaseNumber& c) {
    return scalar_scale(ctx, a, ctx.field().inv(c));
}

Scalar scalar_div_form(const Context& ctx, const Scalar& a, int form_id) {
    if (a.is_zero()) return scalar_zero();
    return normalize(ctx, Scalar{a.num, den_sum(a.den, Den{{form_id, 1}})});
}

Scalar scalar_domega(const Context& ctx, const Scalar& a, int k) {
    if (a.is_zero()) return scalar_zero();
    // d(N / prod l_i^{m_i}) = N' / D  -  sum_i m_i J_{i,k} N / (D * l_i)
    Scalar r{a.num.partial(k), a.den};
    r = normalize(ctx, r);
    for (const auto& [id, mult] : a.den) {
        const ResonanceForm& f = ctx.form(id);
        int jk = f.J[static_cast<size_t>(k)];
        if (jk == 0) continue;
        Scalar t{a.num.scale(ctx.field(), BaseNumber(Rat(-mult * jk))),
                 den_sum(a.den, Den{{id, 1}})};
        r = scalar_add(ctx, r, normalize(ctx, t));
    }
    return r;
}

CC scalar_eval(const Context& ctx, const Scalar& a, const std::vector<CC>& omega) {
    CC n = a.num.eval(ctx.field(), omega);
    CC d(Real(1), Real(0));
    for (const auto& [id, mult] : a.den) {
        const ResonanceForm& f = ctx.form(id);
        CC lv = f.alpha_J.is_zero() ? CC() : ctx.field().eval(f.alpha_J);
        for (size_t i = 0; i < f.J.size(); ++i) {
            if (f.J[i] == 0) continue;
            CC ji(Real(f.J[i]), Real(0));
            lv = lv + ji * omega[i];
        }
        if (lv.is_zero()) throw DivisorVanishes(f.J);
        for (int k = 0; k < mult; ++k) d = d * lv;
    }
    return n / d;
}

bool scalar_eq(const Context& ctx, const Scalar& a, const Scalar& b) {
    Den d = den_union_max(a.den, b.den);
    OmegaPoly na = a.num.mul(ctx.field(), den_expand(ctx, den_diff(d, a.den)));
    OmegaPoly nb = b.num.mul(ctx.field(), den_expand(ctx, den_diff(d, b.den)));
    return na == nb;
}

bool scalar_rep_eq(const Scalar& a, const Scalar& b) {
    return a.den == b.den && a.num == b.num;
}

std::string scalar_str(const Context& ctx, const Scalar& a) {
    if (a.is_zero()) return "0";
    std::string n = a.num.str();
    if (a.den.empty()) return n;
    std::string d;
    for (const auto& [id, mult] : a.den) {
        const ResonanceForm& f = ctx.form(id);
        if (!d.empty()) d += "*";
        d += "l";
        d += detail::vec_str(f.J);
        if (mult > 1) d += "^" + std::to_string(mult);
    }
    return "(" + n + ")/(" + d + ")";
}

} // namespace hnf::scalar
