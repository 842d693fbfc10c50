#include "hnf/series.hpp"

#include <algorithm>

#include "hnf/errors.hpp"

namespace hnf::series {

std::string exp_str(const char* base, const std::vector<int>& e) {
    std::string out;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += base + std::to_string(i + 1);
        if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

std::string Monomial::str() const {
    std::string s;
    for (const std::string& part : {exp_str("p", a), exp_str("q", b), exp_str("tau", c)}) {
        if (part.empty()) continue;
        if (!s.empty()) s += "*";
        s += part;
    }
    return s.empty() ? "1" : s;
}

void Series::add_term(const Context& ctx, const Monomial& m, const Scalar& s) {
    if (s.is_zero() || m.weight() > cutoff) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, s);
    } else {
        it->second = scalar_add(ctx, it->second, s);
        if (it->second.is_zero()) terms.erase(it);
    }
}

void Series::set_term(const Monomial& m, const Scalar& s) {
    if (s.is_zero() || m.weight() > cutoff) {
        terms.erase(m);
        return;
    }
    terms[m] = s;
}

Series add(const Context& ctx, const Series& f, const Series& g) {
    Series r = truncate(f, 0, std::min(f.cutoff, g.cutoff) + 1);
    r.cutoff = std::min(f.cutoff, g.cutoff);
    for (const auto& [m, s] : g.terms) r.add_term(ctx, m, s);
    return r;
}

Series neg(const Series& f) {
    Series r = f;
    for (auto& [m, s] : r.terms) s = scalar_neg(s);
    return r;
}

Series sub(const Context& ctx, const Series& f, const Series& g) {
    return add(ctx, f, neg(g));
}

Series scale(const Context& ctx, const Series& f, const BaseNumber& c) {
    Series r = Series::zero(f.d, f.cutoff);
    if (c.is_zero()) return r;
    for (const auto& [m, s] : f.terms) r.set_term(m, scalar_scale(ctx, s, c));
    return r;
}

Series scale_rat(const Context& ctx, const Series& f, const Rat& r) {
    return scale(ctx, f, BaseNumber(r));
}

Series scale_scalar(const Context& ctx, const Series& f, const Scalar& s) {
    Series r = Series::zero(f.d, f.cutoff);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : f.terms) r.set_term(m, scalar_mul(ctx, c, s));
    return r;
}

Series mul(const Context& ctx, const Series& f, const Series& g) {
    Series r = Series::zero(f.d, std::min(f.cutoff, g.cutoff));
    for (const auto& [mf, sf] : f.terms) {
        int wf = mf.weight();
        for (const auto& [mg, sg] : g.terms) {
            if (wf + mg.weight() > r.cutoff) continue;
            Monomial m = mf;
            for (size_t i = 0; i < m.a.size(); ++i) {
                m.a[i] += mg.a[i];
                m.b[i] += mg.b[i];
                m.c[i] += mg.c[i];
            }
            r.add_term(ctx, m, scalar_mul(ctx, sf, sg));
        }
    }
    return r;
}

Series truncate(const Series& f, int lo, int hi) {
    Series r = Series::zero(f.d, f.cutoff);
    for (const auto& [m, s] : f.terms) {
        int w = m.weight();
        if (w >= lo && w < hi) r.terms.emplace(m, s);
    }
    return r;
}

namespace {

enum class Var { P, Q, Tau };

Series partial(const Context& ctx, const Series& f, int i, Var which) {
    Series r = Series::zero(f.d, f.cutoff);
    size_t k = static_cast<size_t>(i);
    for (const auto& [m, s] : f.terms) {
        const std::vector<int>& e = which == Var::P ? m.a : (which == Var::Q ? m.b : m.c);
        if (e[k] == 0) continue;
        Monomial m2 = m;
        std::vector<int>& e2 = which == Var::P ? m2.a : (which == Var::Q ? m2.b : m2.c);
        e2[k] -= 1;
        r.add_term(ctx, m2, scalar_scale(ctx, s, BaseNumber(Rat(e[k]))));
    }
    return r;
}

} // namespace

Series partial_p(const Context& ctx, const Series& f, int i) { return partial(ctx, f, i, Var::P); }
Series partial_q(const Context& ctx, const Series& f, int i) { return partial(ctx, f, i, Var::Q); }
Series partial_tau(const Context& ctx, const Series& f, int i) {
    return partial(ctx, f, i, Var::Tau);
}

Series partial_omega(const Context& ctx, const Series& f, int i) {
    Series r = Series::zero(f.d, f.cutoff);
    for (const auto& [m, s] : f.terms) r.set_term(m, scalar_domega(ctx, s, i));
    return r;
}

Series poisson(const Context& ctx, const Series& f, const Series& g) {
    Series r = Series::zero(f.d, std::min(f.cutoff, g.cutoff));
    for (int i = 0; i < f.d; ++i) {
        r = add(ctx, r, mul(ctx, partial_q(ctx, f, i), partial_p(ctx, g, i)));
        r = sub(ctx, r, mul(ctx, partial_p(ctx, f, i), partial_q(ctx, g, i)));
    }
    return r;
}

Series moser_project(const Series& f) {
    Series r = Series::zero(f.d, f.cutoff);
    for (const auto& [m, s] : f.terms)
        if (m.is_moser()) r.terms.emplace(m, s);
    return r;
}

Series moser_complement(const Series& f) {
    Series r = Series::zero(f.d, f.cutoff);
    for (const auto& [m, s] : f.terms)
        if (!m.is_moser()) r.terms.emplace(m, s);
    return r;
}

bool in_moser_algebra(const Series& f) {
    return std::all_of(f.terms.begin(), f.terms.end(),
                       [](const auto& t) { return t.first.is_moser(); });
}

std::vector<Series> moser_linear_part(const Context& ctx, const Series& f) {
    std::vector<Series> out(static_cast<size_t>(f.d), Series::zero(f.d, f.cutoff));
    for (const auto& [m, s] : f.terms) {
        if (!m.is_moser()) throw NotInMoserAlgebra(m.str());
        for (size_t i = 0; i < m.a.size(); ++i) {
            if (m.a[i] == 0) continue;
            Monomial t = Monomial::unit(f.d);
            t.c = m.c;
            for (size_t k = 0; k < m.a.size(); ++k) t.c[k] += m.a[k];
            t.c[i] -= 1;
            out[i].add_term(ctx, t, scalar_scale(ctx, s, BaseNumber(Rat(m.a[i]))));
        }
    }
    return out;
}

Series make_unfolding(const Context& ctx, int cutoff) {
    Series r = Series::zero(ctx.d(), cutoff);
    for (int i = 0; i < ctx.d(); ++i) {
        Monomial m = Monomial::unit(ctx.d());
        m.a[static_cast<size_t>(i)] = 1;
        m.b[static_cast<size_t>(i)] = 1;
        scalar::OmegaPoly num =
            scalar::OmegaPoly::constant(ctx.d(), ctx.alpha()[static_cast<size_t>(i)]) +
            scalar::OmegaPoly::variable(ctx.d(), i);
        r.set_term(m, scalar_poly(num));
    }
    return r;
}

Series ideal_generator(const Context& ctx, int i, int cutoff) {
    Series r = Series::zero(ctx.d(), cutoff);
    Monomial pq = Monomial::unit(ctx.d());
    pq.a[static_cast<size_t>(i)] = 1;
    pq.b[static_cast<size_t>(i)] = 1;
    r.set_term(pq, scalar_const(ctx, BaseNumber::one()));
    Monomial t = Monomial::unit(ctx.d());
    t.c[static_cast<size_t>(i)] = 1;
    r.set_term(t, scalar_const(ctx, -BaseNumber::one()));
    return r;
}

Series subst_tau_to_pq(const Context& ctx, const Series& f) {
    Series r = Series::zero(f.d, f.cutoff);
    for (const auto& [m, s] : f.terms) {
        Monomial n = m;
        for (size_t i = 0; i < n.c.size(); ++i) {
            n.a[i] += n.c[i];
            n.b[i] += n.c[i];
            n.c[i] = 0;
        }
        r.add_term(ctx, n, s);
    }
    return r;
}

bool in_R0_plus_I2(const Context& ctx, const Series& f) {
    Series s0 = subst_tau_to_pq(ctx, f);
    // the image must land in C[[omega, pq]]; its pq -> tau rewrite is the R0 part
    Series g = Series::zero(f.d, f.cutoff);
    for (const auto& [m, s] : s0.terms) {
        if (m.a != m.b) return false;
        Monomial n = Monomial::unit(f.d);
        n.c = m.a;
        g.add_term(ctx, n, s);
    }
    for (int i = 0; i < f.d; ++i) {
        Series lhs = subst_tau_to_pq(ctx, partial_tau(ctx, f, i));
        Series rhs = subst_tau_to_pq(ctx, partial_tau(ctx, g, i));
        if (!series_eq(ctx, lhs, rhs)) return false;
    }
    return true;
}

bool is_central_series(const Series& f) {
    for (const auto& [m, s] : f.terms) {
        (void)s;
        for (int e : m.a)
            if (e != 0) return false;
        for (int e : m.b)
            if (e != 0) return false;
    }
    return true;
}

bool series_eq(const Context& ctx, const Series& f, const Series& g) {
    for (const auto& [m, s] : f.terms) {
        const Scalar* o = g.find(m);
        if (!o) {
            if (!s.is_zero()) return false;
        } else if (!scalar_eq(ctx, s, *o)) {
            return false;
        }
    }
    for (const auto& [m, s] : g.terms)
        if (!f.find(m) && !s.is_zero()) return false;
    return true;
}

std::string series_str(const Context& ctx, const Series& f) {
    if (f.is_zero()) return "0";
    // order by weight, then lexicographically
    std::vector<const std::pair<const Monomial, Scalar>*> items;
    items.reserve(f.terms.size());
    for (const auto& t : f.terms) items.push_back(&t);
    std::stable_sort(items.begin(), items.end(), [](const auto* x, const auto* y) {
        return x->first.weight() < y->first.weight();
    });
    std::string out;
    for (const auto* t : items) {
        if (!out.empty()) out += " + ";
        std::string cs = scalar_str(ctx, t->second);
        std::string ms = t->first.str();
        if (ms == "1") {
            out += cs;
        } else if (cs == "1") {
            out += ms;
        } else {
            bool wrap = cs.find(' ') != std::string::npos || cs.find('+') != std::string::npos ||
                        cs.find('-', 1) != std::string::npos;
            out += (wrap && cs[0] != '(' ? "(" + cs + ")" : cs) + "*" + ms;
        }
    }
    return out;
}

} // namespace hnf::series
