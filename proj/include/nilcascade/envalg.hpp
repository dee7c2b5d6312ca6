#pragma once

// The enveloping algebra U(n) in PBW normal form over the basis order of a
// NilAlgebra, the symmetrization map σ : S(n) → U(n), and centrality checks.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "liealg.hpp"
#include "rational.hpp"
#include "symalg.hpp"

namespace nilcascade {

/// A word of basis indices; PBW-ordered words are nondecreasing.
using Word = std::vector<std::size_t>;

class PbwElement {
public:
    using Terms = std::map<Word, Rational>;

    PbwElement() = default;
    static PbwElement word(Word w, const Rational& c = 1) {
        if (!std::is_sorted(w.begin(), w.end())) throw InvariantError("PbwElement::word needs an ordered word");
        PbwElement e;
        e.add_term(w, c);
        return e;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Word& w, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    PbwElement& add_scaled(const PbwElement& o, const Rational& f) {
        for (auto& [w, c] : o.terms_) add_term(w, f * c);
        return *this;
    }
    PbwElement& operator+=(const PbwElement& o) { return add_scaled(o, 1); }
    PbwElement& operator-=(const PbwElement& o) { return add_scaled(o, -1); }
    friend PbwElement operator+(PbwElement a, const PbwElement& b) { return a += b; }
    friend PbwElement operator-(PbwElement a, const PbwElement& b) { return a -= b; }

    unsigned degree() const {
        std::size_t d = 0;
        for (auto& [w, c] : terms_) d = std::max(d, w.size());
        return static_cast<unsigned>(d);
    }

    bool operator==(const PbwElement& o) const { return terms_ == o.terms_; }

private:
    Terms terms_;
};

/// Upper bound on monomial degree for symmetrize: 8, or lower if the
/// environment variable NILCASCADE_MAX_DEGREE says so.
inline unsigned max_symmetrize_degree() {
    unsigned cap = 8;
    if (const char* env = std::getenv("NILCASCADE_MAX_DEGREE")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v < static_cast<long>(cap)) cap = static_cast<unsigned>(v);
    }
    return cap;
}

/// U(n) for a fixed algebra; carries a memo of normalized words.
class Enveloping {
public:
    explicit Enveloping(NilAlgebra alg) : alg_(std::move(alg)) {}

    const NilAlgebra& algebra() const { return alg_; }

    /// Straighten a word by e_b e_a = e_a e_b + [e_b, e_a] at the first descent.
    PbwElement normalize(const Word& w) const {
        if (std::is_sorted(w.begin(), w.end())) return PbwElement::word(w);
        {
            std::lock_guard lock(mu_);
            auto it = memo_.find(w);
            if (it != memo_.end()) return it->second;
        }
        std::size_t p = 0;
        while (w[p] <= w[p + 1]) ++p;
        Word swapped(w);
        std::swap(swapped[p], swapped[p + 1]);
        PbwElement out = normalize(swapped);
        for (auto& [k, c] : alg_.bracket_terms(w[p], w[p + 1])) {
            Word shorter(w.begin(), w.begin() + static_cast<long>(p));
            shorter.push_back(k);
            shorter.insert(shorter.end(), w.begin() + static_cast<long>(p) + 2, w.end());
            out.add_scaled(normalize(shorter), c);
        }
        std::lock_guard lock(mu_);
        memo_.emplace(w, out);
        return out;
    }

    PbwElement normalize(const PbwElement& u) const {
        PbwElement out;
        for (auto& [w, c] : u.terms()) out.add_scaled(normalize(w), c);
        return out;
    }

    /// Word in root names; each root must be a basis root of the algebra.
    PbwElement normalize_roots(const std::vector<Root>& roots) const {
        Word w;
        for (auto& r : roots) w.push_back(alg_.require_index(r));
        return normalize(w);
    }

    PbwElement generator(std::size_t k) const { return PbwElement::word({k}); }

    PbwElement multiply(const PbwElement& u, const PbwElement& v) const {
        PbwElement out;
        for (auto& [w1, c1] : u.terms())
            for (auto& [w2, c2] : v.terms()) {
                Word w(w1);
                w.insert(w.end(), w2.begin(), w2.end());
                out.add_scaled(normalize(w), c1 * c2);
            }
        return out;
    }

    PbwElement commutator(const PbwElement& u, const PbwElement& v) const { return multiply(u, v) - multiply(v, u); }

    /// σ(x_1…x_d) = (1/d!) Σ_π x_{π(1)}…x_{π(d)}, extended linearly.
    PbwElement symmetrize(const SymPoly& f) const {
        unsigned cap = max_symmetrize_degree();
        PbwElement out;
        for (auto& [m, c] : f.terms()) {
            if (mono_degree(m) > cap)
                throw ValidationError("degree_cap", "symmetrize is limited to monomial degree " + std::to_string(cap));
            Word w;
            for (auto& [r, p] : m)
                for (unsigned k = 0; k < p; ++k) w.push_back(alg_.require_index(r));
            std::sort(w.begin(), w.end());
            std::vector<Word> perms;
            do perms.push_back(w);
            while (std::next_permutation(w.begin(), w.end()));
            Rational weight = c / Rational(static_cast<long>(perms.size()));
            for (auto& pw : perms) out.add_scaled(normalize(pw), weight);
        }
        return out;
    }

    /// Read a PBW element as a polynomial (drops the ordering).
    SymPoly as_polynomial(const PbwElement& u) const {
        SymPoly out;
        for (auto& [w, c] : u.terms()) {
            Monomial m;
            for (auto k : w) m = mono_mul(m, {{alg_.root(k), 1}});
            out.add_term(m, c);
        }
        return out;
    }

    struct CentralityResult {
        bool central = true;
        std::optional<std::size_t> witness;  // basis index γ with [u, e_γ] ≠ 0
        PbwElement commutator;
    };

    CentralityResult is_central(const PbwElement& u) const {
        for (std::size_t g = 0; g < alg_.dim(); ++g) {
            auto c = commutator(u, generator(g));
            if (!c.is_zero()) return {false, g, c};
        }
        return {};
    }

private:
    NilAlgebra alg_;
    mutable std::mutex mu_;
    mutable std::map<Word, PbwElement> memo_;
};

inline std::string to_string(const PbwElement& u, const NilAlgebra& alg) {
    if (u.is_zero()) return "0";
    std::string s;
    for (auto& [w, c] : u.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + to_string(c) + ")";
        for (auto k : w) s += "*" + alg.label(k);
    }
    return s;
}

}  // namespace nilcascade
