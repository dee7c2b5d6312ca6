#pragma once

// Central and Poisson-central generators: determinant minors ξ_I^J (types A
// and C), Pfaffians ξ_I (types B and D), the canonical generators ξ_β and
// Δ_β attached to cascade roots, and generator families of the ideals I(p,k).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cascade.hpp"
#include "envalg.hpp"
#include "error.hpp"
#include "liealg.hpp"
#include "rootsys.hpp"
#include "symalg.hpp"

namespace nilcascade {

using PolyMatrix = std::vector<std::vector<SymPoly>>;

/// Laplace expansion along rows, memoized on the set of unused columns.
inline SymPoly poly_determinant(const PolyMatrix& m) {
    std::size_t n = m.size();
    if (n == 0) return SymPoly::constant(1);
    if (n > 20) throw ValidationError("too_large", "determinant larger than 20x20");
    std::map<std::uint32_t, SymPoly> memo;
    auto rec = [&](auto&& self, std::size_t row, std::uint32_t cols) -> SymPoly {
        if (row == n) return SymPoly::constant(1);
        auto it = memo.find(cols);
        if (it != memo.end()) return it->second;
        SymPoly out;
        int sign = 1;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(cols & (1u << c))) continue;
            if (!m[row][c].is_zero()) {
                SymPoly minor = self(self, row + 1, cols & ~(1u << c));
                out += Rational(sign) * (m[row][c] * minor);
            }
            sign = -sign;
        }
        memo.emplace(cols, out);
        return out;
    };
    return rec(rec, 0, (1u << n) - 1u);
}

/// Pfaffian of an antisymmetric matrix by first-row expansion, memoized on
/// the set of remaining indices.
inline SymPoly poly_pfaffian(const PolyMatrix& a) {
    std::size_t n = a.size();
    if (n % 2) return {};
    if (n > 20) throw ValidationError("too_large", "Pfaffian larger than 20x20");
    std::map<std::uint32_t, SymPoly> memo;
    auto rec = [&](auto&& self, std::uint32_t mask) -> SymPoly {
        if (mask == 0) return SymPoly::constant(1);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::size_t s0 = 0;
        while (!(mask & (1u << s0))) ++s0;
        std::uint32_t rest = mask & ~(1u << s0);
        SymPoly out;
        int sign = 1;
        for (std::size_t t = s0 + 1; t < n; ++t) {
            if (!(rest & (1u << t))) continue;
            if (!a[s0][t].is_zero()) out += Rational(sign) * (a[s0][t] * self(self, rest & ~(1u << t)));
            sign = -sign;
        }
        memo.emplace(mask, out);
        return out;
    };
    return rec(rec, (1u << n) - 1u);
}

namespace detail {

inline void require_descending(const OrderSpec& order, const std::vector<int>& seq, const std::string& what) {
    for (std::size_t s = 0; s + 1 < seq.size(); ++s)
        if (!order.greater(seq[s], seq[s + 1]))
            throw ValidationError("bad_minor", what + " must be strictly decreasing in the order");
}

}  // namespace detail

/// ξ_I^J.  A: ε_{i_1} ≻ … ≻ ε_{i_k} ≻ ε_{j_k} ≻ … ≻ ε_{j_1}, entry (s,t) is
/// e_{ε_{i_s} − ε_{j_{k−t+1}}}.  C: both sequences decreasing, entry (s,t) is
/// e_{ε_{i_s} + ε_{j_{k−t+1}}}, or 2e_{2ε_{i_s}} when the indices coincide.
inline SymPoly xi_minor(const std::vector<int>& I, const std::vector<int>& J, const OrderSpec& order) {
    SystemType s = order.system();
    if (s != SystemType::A && s != SystemType::C)
        throw ValidationError("bad_minor", "xi_minor applies to types A and C");
    if (I.size() != J.size() || I.empty()) throw ValidationError("bad_minor", "I and J must be nonempty of equal size");
    std::size_t k = I.size();
    detail::require_descending(order, I, "I");
    if (s == SystemType::A) {
        std::vector<int> chain(I);
        chain.insert(chain.end(), J.rbegin(), J.rend());
        detail::require_descending(order, chain, "i_1, ..., i_k, j_k, ..., j_1");
    } else {
        detail::require_descending(order, J, "J");
    }
    PolyMatrix m(k, std::vector<SymPoly>(k));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) {
            int i = I[r], j = J[k - 1 - c];
            if (s == SystemType::A) m[r][c] = SymPoly::var(Root::diff(i, j));
            else if (i == j) m[r][c] = SymPoly::var(Root::twice(i), 2);
            else m[r][c] = SymPoly::var(Root::sum(i, j));
        }
    return poly_determinant(m);
}

/// The antisymmetric matrix A with A[s][t] = e_{ε_{i_s}+ε_{i_t}} for s < t.
inline PolyMatrix pfaffian_matrix(const std::vector<int>& I) {
    std::size_t n = I.size();
    PolyMatrix a(n, std::vector<SymPoly>(n));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            a[s][t] = SymPoly::var(Root::sum(I[s], I[t]));
            a[t][s] = -a[s][t];
        }
    return a;
}

/// The displayed square-root matrix: row s, column t holds the (s, 2k−t+1)
/// entry of the antisymmetric matrix, so it is antisymmetric about the
/// antidiagonal with zeroes there.
inline PolyMatrix pfaffian_display_matrix(const std::vector<int>& I) {
    auto a = pfaffian_matrix(I);
    std::size_t n = I.size();
    PolyMatrix d(n, std::vector<SymPoly>(n));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) d[s][t] = a[s][n - 1 - t];
    return d;
}

/// ξ_I for types B and D, normalized so that e_{i1+i2} e_{i3+i4} ⋯ enters
/// with coefficient +1.
inline SymPoly xi_pfaffian(const std::vector<int>& I, const OrderSpec& order) {
    if (order.system() != SystemType::B && order.system() != SystemType::D)
        throw ValidationError("bad_minor", "xi_pfaffian applies to types B and D");
    if (I.empty() || I.size() % 2) throw ValidationError("bad_minor", "Pfaffian index sequence must have even positive length");
    detail::require_descending(order, I, "I");
    SymPoly pf = poly_pfaffian(pfaffian_matrix(I));
    Monomial lead;
    for (std::size_t s = 0; s < I.size(); s += 2) lead = mono_mul(lead, {{Root::sum(I[s], I[s + 1]), 1}});
    Rational c = pf.coeff(lead);
    if (c == 0) throw InvariantError("Pfaffian misses its normalization monomial");
    return (1 / c) * pf;
}

/// Substitute e_α ↦ e_{j_M(α)} in a polynomial over the standard algebra.
inline SymPoly relabel(const SymPoly& f, const Window& w) {
    SymPoly out;
    for (auto& [m, c] : f.terms()) {
        Monomial mm;
        for (auto& [r, p] : m) mm = mono_mul(mm, {{w.to_actual(r), p}});
        out.add_term(mm, c);
    }
    return out;
}

/// Closed-form canonical generator of the finite system Φ_n for a root of
/// its finite cascade, written in the layout of the finite formulas.  For A
/// the rank is the matrix size n.
inline SymPoly finite_generator(SystemType s, int n, const Root& beta) {
    auto fc = finite_cascade(s, n);
    if (std::find(fc.begin(), fc.end(), beta) == fc.end())
        throw ValidationError("not_in_cascade", to_string(beta) + " is not in the finite cascade");
    switch (s) {
        case SystemType::A: {
            int i = beta.i;
            PolyMatrix m(static_cast<std::size_t>(i), std::vector<SymPoly>(static_cast<std::size_t>(i)));
            for (int r = 1; r <= i; ++r)
                for (int c = 1; c <= i; ++c)
                    m[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)] = SymPoly::var(Root::diff(r, n - i + c));
            return poly_determinant(m);
        }
        case SystemType::C: {
            int i = beta.i;
            PolyMatrix m(static_cast<std::size_t>(i), std::vector<SymPoly>(static_cast<std::size_t>(i)));
            for (int r = 1; r <= i; ++r)
                for (int c = 1; c <= i; ++c) {
                    int col = i - c + 1;
                    m[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)] =
                        r == col ? SymPoly::var(Root::twice(r), 2) : SymPoly::var(Root::sum(r, col));
                }
            return poly_determinant(m);
        }
        case SystemType::B:
        case SystemType::D: {
            if (beta.kind == RootKind::Short)
                throw ValidationError("no_formula", "no canonical generator formula for the short cascade root " + to_string(beta));
            if (beta.kind == RootKind::Diff)
                throw ValidationError("no_formula", "no canonical generator formula for " + to_string(beta));
            std::vector<int> I;
            for (int k = 1; k <= beta.j; ++k) I.push_back(k);
            return xi_pfaffian(I, OrderSpec::finite(s, n));
        }
    }
    return {};
}

/// ξ_β^M: the finite generator of j_M^{-1}(β) carried into S(n_M).
inline SymPoly generator_in_window(const Root& beta, const Window& w) {
    auto std_beta = w.to_standard(beta);
    if (!std_beta) throw ValidationError("not_in_window", to_string(beta) + " is not a positive root of the window");
    return relabel(finite_generator(w.system(), w.rank(), *std_beta), w);
}

struct CanonicalGenerator {
    Root beta;
    std::size_t position = 0;  // k with β = β_k
    std::set<int> window;      // N_k
    SymPoly xi;
    std::optional<PbwElement> delta;  // σ(ξ_β) in U(n_{N_k})
};

/// ξ_β and Δ_β for the k-th cascade root β, instantiated on M = N_k.
inline CanonicalGenerator canonical_generator(const Root& beta, const OrderSpec& order, bool with_delta = true,
                                              std::size_t max_steps = 100000) {
    order.require_positive(beta);
    CascadeState state;
    std::vector<Root> emitted;
    for (std::size_t step = 0; step < max_steps; ++step) {
        auto next = cascade_step(state, order);
        if (!next) break;
        state = std::move(next->second);
        emitted.push_back(next->first);
        if (next->first == beta) break;
        bool all_consumed = true;
        for (int k : beta.indices())
            if (!state.consumed.count(k)) all_consumed = false;
        if (all_consumed) break;
    }
    if (emitted.empty() || emitted.back() != beta)
        throw ValidationError("not_in_cascade", to_string(beta) + " is not a root of the cascade of this order");

    CanonicalGenerator g{beta, emitted.size(), state.consumed, {}, std::nullopt};
    switch (order.system()) {
        case SystemType::A: {
            std::vector<int> I, J;
            for (auto& r : emitted) {
                I.push_back(r.i);
                J.push_back(r.j);
            }
            g.xi = xi_minor(I, J, order);
            break;
        }
        case SystemType::C: {
            std::vector<int> I;
            for (auto& r : emitted) I.push_back(r.i);
            g.xi = xi_minor(I, I, order);
            break;
        }
        case SystemType::B:
        case SystemType::D: {
            std::vector<int> I;
            for (auto& r : emitted) {
                auto pair = order.sorted_descending({r.i, r.j});
                I.insert(I.end(), pair.begin(), pair.end());
            }
            g.xi = xi_pfaffian(I, order);
            break;
        }
    }
    if (with_delta) {
        Enveloping u(NilAlgebra(Window(order, g.window)));
        g.delta = u.symmetrize(g.xi);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Upper-right pairs and the ideals I(p, k)

struct UpperRightPair {
    enum class Kind { General, Diagonal, MaxRow } kind = Kind::General;
    int i = 0;  // General, Diagonal
    int j = 0;  // General, MaxRow

    static UpperRightPair general(int i, int j) { return {Kind::General, i, j}; }
    static UpperRightPair diagonal(int i) { return {Kind::Diagonal, i, 0}; }
    static UpperRightPair maxrow(int j) { return {Kind::MaxRow, 0, j}; }

    bool operator==(const UpperRightPair&) const = default;
};

inline std::string to_string(const UpperRightPair& p) {
    switch (p.kind) {
        case UpperRightPair::Kind::General: return "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
        case UpperRightPair::Kind::Diagonal: return "(" + std::to_string(p.i) + ",-" + std::to_string(p.i) + ")";
        case UpperRightPair::Kind::MaxRow: return "maxrow(" + std::to_string(p.j) + ")";
    }
    return {};
}

/// "(i,j)", "(i,-i)" or "maxrow(j)".
inline UpperRightPair parse_pair(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    auto bad = [&] { return ValidationError("bad_pair", "cannot parse upper-right pair '" + std::string(text) + "'"); };
    auto to_int = [&](const std::string& x) {
        if (x.empty() || x.size() > 10) throw bad();
        std::size_t k = (x[0] == '-') ? 1 : 0;
        if (k == x.size()) throw bad();
        for (; k < x.size(); ++k)
            if (x[k] < '0' || x[k] > '9') throw bad();
        return std::stoi(x);
    };
    if (s.rfind("maxrow(", 0) == 0 && s.back() == ')') {
        int j = to_int(s.substr(7, s.size() - 8));
        if (j < 1) throw bad();
        return UpperRightPair::maxrow(j);
    }
    if (s.size() < 5 || s.front() != '(' || s.back() != ')') throw bad();
    auto comma = s.find(',');
    if (comma == std::string::npos) throw bad();
    int i = to_int(s.substr(1, comma - 1));
    int j = to_int(s.substr(comma + 1, s.size() - comma - 2));
    if (i < 1) throw bad();
    if (j == -i) return UpperRightPair::diagonal(i);
    if (j < 1) throw bad();
    return UpperRightPair::general(i, j);
}

/// Checks the pair against the type and order; returns m for MaxRow.
inline std::optional<int> validate_pair(const UpperRightPair& p, const OrderSpec& order) {
    SystemType s = order.system();
    switch (p.kind) {
        case UpperRightPair::Kind::General:
            if (s != SystemType::A) throw ValidationError("bad_pair", "pairs (i,j) with j > 0 are used for type A only; use (i,-i) or maxrow(j)");
            if (!order.greater(p.i, p.j)) throw ValidationError("bad_pair", "pair (i,j) needs e_i > e_j in the order");
            return std::nullopt;
        case UpperRightPair::Kind::Diagonal:
            if (s == SystemType::A) throw ValidationError("bad_pair", "diagonal pairs (i,-i) do not exist in type A");
            if (!order.covers(p.i)) throw ValidationError("index_not_covered", "index " + std::to_string(p.i) + " is not covered by the order");
            return std::nullopt;
        case UpperRightPair::Kind::MaxRow: {
            if (s != SystemType::B && s != SystemType::D) throw ValidationError("bad_pair", "maxrow pairs exist for types B and D only");
            auto m = order.max_element();
            if (!m) throw ValidationError("bad_pair", "maxrow pair needs an order with a maximal element");
            if (!order.covers(p.j)) throw ValidationError("index_not_covered", "index " + std::to_string(p.j) + " is not covered by the order");
            if (p.j == *m) throw ValidationError("bad_pair", "maxrow(j) needs j different from the maximal index");
            return m;
        }
    }
    return std::nullopt;
}

/// k' = 2k for B/D diagonal pairs, k otherwise.
inline std::size_t k_prime(const UpperRightPair& p, SystemType s, std::size_t k) {
    bool bd = s == SystemType::B || s == SystemType::D;
    return (bd && p.kind == UpperRightPair::Kind::Diagonal) ? 2 * k : k;
}

struct IdealGenerators {
    std::vector<SymPoly> generators;
    bool is_zero_ideal = false;
};

namespace detail {

/// All size-k subsets of `pool` (kept in pool order).
inline std::vector<std::vector<int>> subsets(const std::vector<int>& pool, std::size_t k) {
    std::vector<std::vector<int>> out;
    if (k > pool.size()) return out;
    std::vector<bool> pick(pool.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
        std::vector<int> s;
        for (std::size_t t = 0; t < pool.size(); ++t)
            if (pick[t]) s.push_back(pool[t]);
        out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

}  // namespace detail

/// Generators of I(p, k) whose indices lie in the window, and whether the
/// full ideal is zero.
inline IdealGenerators ideal_generators(const UpperRightPair& p, std::size_t k, const std::set<int>& window,
                                        const OrderSpec& order) {
    if (k < 1) throw ValidationError("bad_k", "k must be positive");
    auto m = validate_pair(p, order);
    if (p.kind == UpperRightPair::Kind::MaxRow && k != 1) throw ValidationError("bad_k", "maxrow pairs admit only k = 1");
    for (int x : window)
        if (!order.covers(x)) throw ValidationError("index_not_covered", "window index " + std::to_string(x) + " is not covered by the order");
    auto sorted = order.sorted_descending({window.begin(), window.end()});
    auto at_least = [&](int bound) {
        std::vector<int> out;
        for (int x : sorted)
            if (order.at_least(x, bound)) out.push_back(x);
        return out;
    };
    auto finite_below = [](std::optional<std::size_t> c, std::size_t bound) { return c && *c < bound; };

    IdealGenerators out;
    SystemType s = order.system();
    switch (p.kind) {
        case UpperRightPair::Kind::General: {
            auto rows = at_least(p.i);
            std::vector<int> cols;  // listed ≺-ascending: j_1 first
            for (auto it = sorted.rbegin(); it != sorted.rend(); ++it)
                if (order.at_least(p.j, *it)) cols.push_back(*it);
            for (auto& I : detail::subsets(rows, k))
                for (auto& J : detail::subsets(cols, k)) out.generators.push_back(xi_minor(I, J, order));
            out.is_zero_ideal = finite_below(order.count_at_least(p.i), k) || finite_below(order.count_at_most(p.j), k);
            break;
        }
        case UpperRightPair::Kind::Diagonal: {
            auto rows = at_least(p.i);
            if (s == SystemType::C) {
                auto subs = detail::subsets(rows, k);
                for (std::size_t a = 0; a < subs.size(); ++a)
                    for (std::size_t b = a; b < subs.size(); ++b) out.generators.push_back(xi_minor(subs[a], subs[b], order));
                out.is_zero_ideal = finite_below(order.count_at_least(p.i), k);
            } else {
                for (auto& I : detail::subsets(rows, 2 * k)) out.generators.push_back(xi_pfaffian(I, order));
                out.is_zero_ideal = finite_below(order.count_at_least(p.i), 2 * k);
            }
            break;
        }
        case UpperRightPair::Kind::MaxRow: {
            if (window.count(*m))
                for (int x : at_least(p.j))
                    if (x != *m) out.generators.push_back(SymPoly::var(Root::sum(*m, x)));
            break;
        }
    }
    return out;
}

}  // namespace nilcascade
