#pragma once

#include <string>
#include <vector>

namespace hnf::series {

/// Monomial p^a q^b tau^c in d degrees of freedom. Weights: p, q count 1,
/// tau counts 2, omega counts 0 (omega lives in the scalars).
struct Monomial {
    std::vector<int> a; // p exponents
    std::vector<int> b; // q exponents
    std::vector<int> c; // tau exponents

    static Monomial unit(int d) {
        return {std::vector<int>(static_cast<size_t>(d), 0),
                std::vector<int>(static_cast<size_t>(d), 0),
                std::vector<int>(static_cast<size_t>(d), 0)};
    }

    int weight() const {
        int w = 0;
        for (int x : a) w += x;
        for (int x : b) w += x;
        for (int x : c) w += 2 * x;
        return w;
    }

    /// Invariant monomials have matching p and q exponents.
    bool is_moser() const { return a == b; }

    /// J = a - b, the covector pairing with the frequencies.
    std::vector<int> resonance_covector() const {
        std::vector<int> J(a.size());
        for (size_t i = 0; i < a.size(); ++i) J[i] = a[i] - b[i];
        return J;
    }

    friend bool operator==(const Monomial& x, const Monomial& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
    friend bool operator<(const Monomial& x, const Monomial& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    }

    std::string str() const;
};

std::string exp_str(const char* base, const std::vector<int>& e);

} // namespace hnf::series
