#pragma once

// The symmetric algebra S(n): sparse polynomials over Q in the root
// variables e_α, evaluation at linear forms, and the Poisson bracket.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "liealg.hpp"
#include "linear_form.hpp"
#include "rational.hpp"
#include "rootsys.hpp"

namespace nilcascade {

/// Sorted (root, positive exponent) pairs.
using Monomial = std::vector<std::pair<Root, unsigned>>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

inline unsigned mono_degree(const Monomial& m) {
    unsigned d = 0;
    for (auto& [r, p] : m) d += p;
    return d;
}

/// m with the exponent of position k lowered by one.
inline Monomial mono_drop(const Monomial& m, std::size_t k) {
    Monomial out(m);
    if (--out[k].second == 0) out.erase(out.begin() + static_cast<long>(k));
    return out;
}

inline std::string to_string(const Monomial& m) {
    if (m.empty()) return "1";
    std::string s;
    for (auto& [r, p] : m) {
        if (!s.empty()) s += "*";
        s += "e[" + to_string(r) + "]";
        if (p > 1) s += "^" + std::to_string(p);
    }
    return s;
}

class SymPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    SymPoly() = default;
    static SymPoly constant(const Rational& c) {
        SymPoly p;
        p.add_term({}, c);
        return p;
    }
    static SymPoly var(const Root& r, const Rational& c = 1) {
        SymPoly p;
        p.add_term({{r, 1}}, c);
        return p;
    }
    static SymPoly from_terms(const Terms& t) {
        SymPoly p;
        for (auto& [m, c] : t) p.add_term(m, c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        for (auto& [r, p] : m)
            if (p == 0) throw InvariantError("zero exponent in monomial");
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;
    }

    /// Part of homogeneous degree d.
    SymPoly homogeneous_part(unsigned d) const {
        SymPoly out;
        for (auto& [m, c] : terms_)
            if (mono_degree(m) == d) out.add_term(m, c);
        return out;
    }

    std::vector<Root> variables() const {
        std::set<Root> vs;
        for (auto& [m, c] : terms_)
            for (auto& [r, p] : m) vs.insert(r);
        return {vs.begin(), vs.end()};
    }

    SymPoly& operator+=(const SymPoly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SymPoly& operator-=(const SymPoly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
    friend SymPoly operator-(const SymPoly& a) { return SymPoly() - a; }

    friend SymPoly operator*(const SymPoly& a, const SymPoly& b) {
        SymPoly out;
        for (auto& [m1, c1] : a.terms_)
            for (auto& [m2, c2] : b.terms_) out.add_term(mono_mul(m1, m2), c1 * c2);
        return out;
    }
    friend SymPoly operator*(const Rational& f, const SymPoly& a) {
        SymPoly out;
        if (f == 0) return out;
        for (auto& [m, c] : a.terms_) out.terms_.emplace(m, f * c);
        return out;
    }

    SymPoly pow(unsigned k) const {
        SymPoly out = constant(1);
        for (unsigned i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }

    /// f(λ): substitute λ(e_α) for every variable.
    Rational evaluate(const LinearForm& lambda) const {
        Rational total = 0;
        std::map<Root, Rational> cache;
        for (auto& [m, c] : terms_) {
            Rational t = c;
            for (auto& [r, p] : m) {
                auto it = cache.find(r);
                if (it == cache.end()) it = cache.emplace(r, lambda.require(r)).first;
                for (unsigned k = 0; k < p; ++k) t *= it->second;
                if (t == 0) break;
            }
            total += t;
        }
        return total;
    }

private:
    Terms terms_;
};

inline std::string to_string(const SymPoly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (auto& [m, c] : f.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + to_string(c) + ")";
        if (!m.empty()) s += "*" + to_string(m);
    }
    return s;
}

/// The linear polynomial Σ c_k e_k for a coordinate vector of `alg`.
inline SymPoly linear_poly(const NilAlgebra& alg, const RVec& v) {
    SymPoly p;
    for (std::size_t k = 0; k < alg.dim(); ++k)
        if (v[k] != 0) p.add_term({{alg.root(k), 1}}, v[k]);
    return p;
}

/// {f, g}: the biderivation extending {x, y} = [x, y] for x, y ∈ n.
inline SymPoly poisson_bracket(const SymPoly& f, const SymPoly& g, const NilAlgebra& alg) {
    SymPoly out;
    std::map<std::pair<Root, Root>, const SparseTerms*> brackets;
    auto lookup = [&](const Root& a, const Root& b) -> const SparseTerms& {
        auto key = std::make_pair(a, b);
        auto it = brackets.find(key);
        if (it != brackets.end()) return *it->second;
        auto& t = alg.bracket_terms(alg.require_index(a), alg.require_index(b));
        brackets.emplace(key, &t);
        return t;
    };
    for (auto& [m1, c1] : f.terms())
        for (auto& [m2, c2] : g.terms())
            for (std::size_t a = 0; a < m1.size(); ++a)
                for (std::size_t b = 0; b < m2.size(); ++b) {
                    auto& terms = lookup(m1[a].first, m2[b].first);
                    if (terms.empty()) continue;
                    Rational scale = c1 * c2 * m1[a].second * m2[b].second;
                    Monomial rest = mono_mul(mono_drop(m1, a), mono_drop(m2, b));
                    for (auto& [k, c] : terms) out.add_term(mono_mul(rest, {{alg.root(k), 1}}), scale * c);
                }
    return out;
}

}  // namespace nilcascade
