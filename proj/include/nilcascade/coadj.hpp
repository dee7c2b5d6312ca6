#pragma once

// The skew form β_λ, complete flags of ideals, Vergne polarizations, the
// coadjoint action (matrix and ad-series realizations) and the invariants of
// regular coadjoint orbits of type A.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "centgen.hpp"
#include "error.hpp"
#include "liealg.hpp"
#include "linalg.hpp"
#include "linear_form.hpp"
#include "rational.hpp"
#include "symalg.hpp"

namespace nilcascade {

/// B[a][b] = λ([e_a, e_b]) for λ given by its basis coordinates.
inline Matrix gram(const NilAlgebra& alg, const RVec& lambda) {
    Matrix b(alg.dim(), alg.dim());
    for (std::size_t x = 0; x < alg.dim(); ++x)
        for (std::size_t y = 0; y < alg.dim(); ++y) {
            Rational v = 0;
            for (auto& [k, c] : alg.bracket_terms(x, y)) v += c * lambda[k];
            b(x, y) = v;
        }
    return b;
}

inline Matrix gram(const NilAlgebra& alg, const LinearForm& lambda) { return gram(alg, lambda.on_basis(alg)); }

inline std::size_t beta_rank(const NilAlgebra& alg, const RVec& lambda) { return rank(gram(alg, lambda)); }

inline std::vector<RVec> beta_kernel(const NilAlgebra& alg, const RVec& lambda) { return kernel(gram(alg, lambda)); }

/// n_1 ⊂ n_2 ⊂ … ⊂ n_dim with dim n_i = i, each an ideal: refine the lower
/// central series from the deepest term outward.  Entry i-1 holds a basis
/// of n_i.
inline std::vector<std::vector<RVec>> ideal_flag(const NilAlgebra& alg) {
    auto series = lower_central_series(alg);
    std::vector<std::vector<RVec>> flag;
    std::vector<RVec> cur;
    for (auto it = series.rbegin(); it != series.rend(); ++it)
        for (auto& v : *it) {
            if (in_span(cur, v)) continue;
            cur.push_back(v);
            flag.push_back(cur);
        }
    if (cur.size() != alg.dim()) throw InvariantError("ideal flag does not reach the whole algebra");
    return flag;
}

/// p = Σ_i Ker(β_λ restricted to n_i) over ideal_flag.
inline std::vector<RVec> vergne_polarization(const NilAlgebra& alg, const RVec& lambda) {
    Matrix b = gram(alg, lambda);
    std::vector<RVec> gens;
    for (auto& basis : ideal_flag(alg)) {
        std::size_t d = basis.size();
        Matrix v(d, alg.dim());
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < alg.dim(); ++c) v(r, c) = basis[r][c];
        Matrix restricted = v * b * v.transpose();
        for (auto& y : kernel(restricted)) {
            RVec w(alg.dim());
            for (std::size_t r = 0; r < d; ++r)
                if (y[r] != 0)
                    for (std::size_t c = 0; c < alg.dim(); ++c) w[c] += y[r] * basis[r][c];
            gens.push_back(std::move(w));
        }
    }
    return row_basis(gens, alg.dim());
}

// ---------------------------------------------------------------------------
// Coadjoint action

/// (exp x).μ via ν(y) = Σ_i μ((−ad x)^i y) / i!, stopping once (ad x)^i y = 0.
inline RVec coadjoint_act_series(const NilAlgebra& alg, const RVec& x, const RVec& mu) {
    RVec out(alg.dim());
    for (std::size_t b = 0; b < alg.dim(); ++b) {
        RVec y = alg.unit(b);
        Rational total = 0;
        for (unsigned i = 0;; ++i) {
            bool zero = true;
            for (std::size_t k = 0; k < alg.dim(); ++k)
                if (y[k] != 0) {
                    zero = false;
                    total += mu[k] * y[k];
                }
            if (zero) break;
            if (i > alg.dim() + 1) throw InvariantError("ad-series does not terminate");
            RVec next = alg.bracket(x, y);
            Rational f = Rational(-1) / Rational(static_cast<long>(i + 1));
            for (auto& c : next) c *= f;
            y = std::move(next);
        }
        out[b] = total;
    }
    return out;
}

/// The lower-triangular matrix representing μ: Σ μ(e_α) e_α^T / ‖e_α‖²,
/// so that tr(μ̃ e_β) = μ(e_β) for every basis root β.
inline Matrix dual_matrix(const NilAlgebra& alg, const RVec& mu) {
    Matrix out(alg.matrix_size(), alg.matrix_size());
    for (std::size_t k = 0; k < alg.dim(); ++k) {
        if (mu[k] == 0) continue;
        Matrix e = alg.realize(k);
        Rational norm = (e * e.transpose()).trace();
        out = out + e.transpose().scaled(mu[k] / norm);
    }
    return out;
}

/// (g μ̃ g⁻¹)_low for g = exp(x).
inline Matrix coadjoint_matrix(const NilAlgebra& alg, const RVec& x, const RVec& mu) {
    Matrix xm = alg.to_matrix(x);
    Matrix g = exp_nilpotent(xm);
    Matrix ginv = exp_nilpotent(xm.scaled(-1));
    Matrix conj = g * dual_matrix(alg, mu) * ginv;
    for (std::size_t r = 0; r < conj.rows(); ++r)
        for (std::size_t c = r; c < conj.cols(); ++c) conj(r, c) = 0;
    return conj;
}

/// (exp x).μ through the matrix realization: ν(e_β) = tr((g μ̃ g⁻¹)_low e_β).
inline RVec coadjoint_act_matrix(const NilAlgebra& alg, const RVec& x, const RVec& mu) {
    Matrix low = coadjoint_matrix(alg, x, mu);
    RVec out(alg.dim());
    for (std::size_t k = 0; k < alg.dim(); ++k) out[k] = (low * alg.realize(k)).trace();
    return out;
}

/// One step of a transport sequence: exp(t e_k).
struct TransportStep {
    std::size_t generator;
    Rational parameter;
};

inline RVec apply_transport(const NilAlgebra& alg, const std::vector<TransportStep>& steps, RVec mu) {
    for (auto& s : steps) {
        RVec x(alg.dim());
        x[s.generator] = s.parameter;
        mu = coadjoint_act_series(alg, x, mu);
    }
    return mu;
}

/// For hei_n and μ(z) = α ≠ 0: a sequence of one-parameter steps moving μ
/// to the form with prescribed x/y coordinates (z is fixed by the action).
/// exp(t x_i) shifts μ(y_i) by −tα; exp(s y_i) shifts μ(x_i) by +sα.
inline std::vector<TransportStep> heisenberg_reach(const NilAlgebra& hei, const RVec& mu, const RVec& target) {
    auto z = hei.index_of(Root::diff(1, hei.window().rank()));
    if (!z || hei.dim() % 2 == 0) throw ValidationError("bad_algebra", "heisenberg_reach needs a Heisenberg algebra");
    Rational alpha = mu[*z];
    if (alpha == 0) throw ValidationError("degenerate", "mu(z) = 0: the orbit is a point");
    if (target[*z] != alpha) throw ValidationError("unreachable", "the coadjoint action fixes mu(z)");
    int n = hei.window().rank() - 2;
    std::vector<TransportStep> steps;
    for (int i = 1; i <= n; ++i) {
        std::size_t xi = hei.require_index(Root::diff(1, i + 1));
        std::size_t yi = hei.require_index(Root::diff(i + 1, n + 2));
        Rational t = (mu[yi] - target[yi]) / alpha;
        if (t != 0) steps.push_back({xi, t});
        Rational s = (target[xi] - mu[xi]) / alpha;
        if (s != 0) steps.push_back({yi, s});
    }
    return steps;
}

// ---------------------------------------------------------------------------
// Regular orbits of type A

/// ξ_i: the i×i corner minor with rows 1..i and columns n−i+1..n of the
/// window's standard layout.
inline SymPoly corner_minor(const Window& w, int i) {
    int n = w.rank();
    PolyMatrix m(static_cast<std::size_t>(i), std::vector<SymPoly>(static_cast<std::size_t>(i)));
    for (int r = 1; r <= i; ++r)
        for (int c = 1; c <= i; ++c)
            m[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)] =
                SymPoly::var(w.to_actual(Root::diff(r, n - i + c)));
    return poly_determinant(m);
}

struct OrbitInvariants {
    std::vector<Rational> c;                     // c_1, …, c_m, m = [n/2]
    bool regular = false;                        // maximal orbit dimension
    std::vector<SymPoly> generators;             // ξ_i − c_i when regular
    std::size_t regular_dimension = 0;           // 2((n−2) + (n−4) + …)
};

inline OrbitInvariants orbit_invariants(const LinearForm& lambda, const Window& w) {
    if (w.system() != SystemType::A) throw ValidationError("bad_system", "orbit invariants are implemented for type A");
    int n = w.rank();
    int m = n / 2;
    OrbitInvariants out;
    for (int i = 1; i <= m; ++i) {
        Matrix v(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
        for (int r = 1; r <= i; ++r)
            for (int c = 1; c <= i; ++c)
                v(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1)) =
                    lambda.require(w.to_actual(Root::diff(r, n - i + c)));
        out.c.push_back(determinant(v));
    }
    out.regular = true;
    for (int i = 1; i <= m; ++i) {
        bool needed = (n % 2 == 1) || i < m;
        if (needed && out.c[static_cast<std::size_t>(i - 1)] == 0) out.regular = false;
    }
    for (int d = n - 2; d > 0; d -= 2) out.regular_dimension += 2 * static_cast<std::size_t>(d);
    if (out.regular)
        for (int i = 1; i <= m; ++i)
            out.generators.push_back(corner_minor(w, i) - SymPoly::constant(out.c[static_cast<std::size_t>(i - 1)]));
    return out;
}

}  // namespace nilcascade
