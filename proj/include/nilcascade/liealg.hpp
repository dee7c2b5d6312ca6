#pragma once

// Matrix realization of the nilradical n_n of type A/B/C/D, structure
// constants in the root-vector basis, and Lie brackets.  Window algebras n_M
// are relabelings of the standard algebra through j_M; subalgebras spanned by
// root vectors (for instance the Heisenberg algebra inside type A) reuse the
// ambient table.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "rational.hpp"
#include "rootsys.hpp"

namespace nilcascade {

/// Sparse coordinate vector in the root basis, keyed by root name.
using LieVector = std::map<Root, Rational>;

inline void add_to(LieVector& v, const Root& r, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = v.emplace(r, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

/// Matrix side length of g_n: n (A), 2n (C, D), 2n+1 (B).
inline int matrix_size(SystemType s, int n) {
    switch (s) {
        case SystemType::A: return n;
        case SystemType::B: return 2 * n + 1;
        default: return 2 * n;
    }
}

/// Row/column position of a label among 1..n, (0), -n..-1.
inline int label_position(SystemType s, int n, int label) {
    if (label > 0 && label <= n) return label - 1;
    if (label == 0 && s == SystemType::B) return n;
    if (label < 0 && -label <= n && s != SystemType::A) return matrix_size(s, n) + label;
    throw InvariantError("label outside the realization");
}

inline int position_label(SystemType s, int n, int pos) {
    if (pos < n) return pos + 1;
    if (s == SystemType::B && pos == n) return 0;
    return pos - matrix_size(s, n);
}

/// Sparse matrix entry (row label, column label, value).
struct MatrixEntry {
    int row;
    int col;
    Rational value;
};

/// The realization of a standard positive root of Φ_n.  The short root uses
/// e_{i,0} - e_{0,-i} with the √2 dropped.
inline std::vector<MatrixEntry> realize_entries(const Root& r, SystemType s, int n) {
    if (!kind_allowed(s, r.kind)) throw ValidationError("not_positive", to_string(r) + " is not a root of this type");
    for (int k : r.indices())
        if (k > n) throw ValidationError("not_positive", to_string(r) + " lies outside rank " + std::to_string(n));
    if (r.kind == RootKind::Diff && r.i > r.j) throw ValidationError("not_positive", to_string(r) + " is negative");
    switch (r.kind) {
        case RootKind::Diff:
            if (s == SystemType::A) return {{r.i, r.j, 1}};
            return {{r.i, r.j, 1}, {-r.j, -r.i, -1}};
        case RootKind::Sum:
            return {{r.i, -r.j, 1}, {r.j, -r.i, s == SystemType::C ? 1 : -1}};
        case RootKind::Double: return {{r.i, -r.i, 1}};
        case RootKind::Short: return {{r.i, 0, 1}, {0, -r.i, -1}};
    }
    return {};
}

inline Matrix realize(const Root& r, SystemType s, int n) {
    int size = matrix_size(s, n);
    Matrix m(static_cast<std::size_t>(size), static_cast<std::size_t>(size));
    for (auto& e : realize_entries(r, s, n))
        m(static_cast<std::size_t>(label_position(s, n, e.row)), static_cast<std::size_t>(label_position(s, n, e.col))) += e.value;
    return m;
}

/// Height in simple roots of the standard system.
inline int root_height(const Root& r, SystemType s, int n) {
    switch (r.kind) {
        case RootKind::Diff: return r.j - r.i;
        case RootKind::Sum:
            if (s == SystemType::B) return (n - r.i + 1) + (n - r.j + 1);
            if (s == SystemType::C) return 2 * n - r.i - r.j + 1;
            return 2 * n - r.i - r.j;
        case RootKind::Double: return 2 * (n - r.i) + 1;
        case RootKind::Short: return n - r.i + 1;
    }
    return 0;
}

/// Positive roots of Φ_n in PBW basis order: height ascending, ties by root.
inline std::vector<Root> basis_order(SystemType s, int n) {
    auto roots = positive_roots(s, n);
    std::stable_sort(roots.begin(), roots.end(), [&](const Root& a, const Root& b) {
        int ha = root_height(a, s, n), hb = root_height(b, s, n);
        if (ha != hb) return ha < hb;
        return a < b;
    });
    return roots;
}

using SparseTerms = std::vector<std::pair<std::size_t, Rational>>;

/// Structure constants of the standard algebra n_n.
struct StructureTable {
    SystemType system;
    int rank;
    std::vector<Root> basis;
    std::map<Root, std::size_t> index;
    std::vector<std::vector<SparseTerms>> table;  // table[a][b] = [e_a, e_b]
};

namespace detail {

inline SparseTerms expand_commutator(const std::vector<MatrixEntry>& x, const std::vector<MatrixEntry>& y,
                                     const StructureTable& t) {
    std::map<std::pair<int, int>, Rational> prod;
    auto accumulate = [&](const std::vector<MatrixEntry>& p, const std::vector<MatrixEntry>& q, int sign) {
        for (auto& a : p)
            for (auto& b : q)
                if (a.col == b.row) prod[{a.row, b.col}] += sign * a.value * b.value;
    };
    accumulate(x, y, 1);
    accumulate(y, x, -1);
    std::erase_if(prod, [](auto& kv) { return kv.second == 0; });
    if (prod.empty()) return {};

    // Each root vector has a pivot entry with coefficient 1 that no other
    // root vector touches; read coordinates off the pivots, then verify.
    auto pivot = [&](const Root& r) -> std::pair<int, int> {
        switch (r.kind) {
            case RootKind::Diff: return {r.i, r.j};
            case RootKind::Sum: return {r.i, -r.j};
            case RootKind::Double: return {r.i, -r.i};
            case RootKind::Short: return {r.i, 0};
        }
        return {0, 0};
    };
    SparseTerms out;
    auto residue = prod;
    for (std::size_t k = 0; k < t.basis.size(); ++k) {
        auto it = prod.find(pivot(t.basis[k]));
        if (it == prod.end()) continue;
        Rational c = it->second;
        out.emplace_back(k, c);
        for (auto& e : realize_entries(t.basis[k], t.system, t.rank)) {
            auto& slot = residue[{e.row, e.col}];
            slot -= c * e.value;
        }
    }
    for (auto& [pos, v] : residue)
        if (v != 0) throw InvariantError("commutator does not expand in the root basis");
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return out;
}

inline std::shared_ptr<const StructureTable> build_table(SystemType s, int n) {
    auto t = std::make_shared<StructureTable>();
    t->system = s;
    t->rank = n;
    t->basis = basis_order(s, n);
    for (std::size_t k = 0; k < t->basis.size(); ++k) t->index[t->basis[k]] = k;
    std::vector<std::vector<MatrixEntry>> mats;
    for (auto& r : t->basis) mats.push_back(realize_entries(r, s, n));
    std::size_t d = t->basis.size();
    t->table.assign(d, std::vector<SparseTerms>(d));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) {
            t->table[a][b] = expand_commutator(mats[a], mats[b], *t);
            for (auto& [k, c] : t->table[a][b]) t->table[b][a].emplace_back(k, -c);
        }
    return t;
}

}  // namespace detail

/// Memoized structure table of n_n; concurrent callers share one instance.
inline std::shared_ptr<const StructureTable> structure_table(SystemType s, int n) {
    static std::mutex mu;
    static std::map<std::pair<SystemType, int>, std::shared_ptr<const StructureTable>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({s, n});
        if (it != cache.end()) return it->second;
    }
    auto t = detail::build_table(s, n);
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(s, n), std::move(t)).first->second;
}

/// A nilpotent Lie algebra spanned by root vectors: n_M for a window, or a
/// bracket-closed subalgebra of it.  Basis elements are named by their
/// actual roots (through j_M) and optionally carry display labels.
class NilAlgebra {
public:
    /// n_n with its standard labels.
    static NilAlgebra standard(SystemType s, int n) { return NilAlgebra(Window::standard(s, n)); }

    explicit NilAlgebra(const Window& window) : window_(window) {
        table_ = structure_table(window.system(), window.rank());
        for (std::size_t k = 0; k < table_->basis.size(); ++k) ambient_.push_back(k);
        finish();
    }

    /// The span of the given roots of the window; must be closed under bracket.
    static NilAlgebra subalgebra(const Window& window, const std::vector<Root>& roots,
                                 std::vector<std::string> labels = {}) {
        NilAlgebra alg(window, 0);
        std::vector<std::size_t> picked;
        for (auto& r : roots) {
            auto std_root = window.to_standard(r);
            if (!std_root) throw ValidationError("not_positive", to_string(r) + " is not a positive root of the window");
            picked.push_back(alg.table_->index.at(*std_root));
        }
        std::vector<std::pair<std::size_t, std::string>> tagged;
        for (std::size_t k = 0; k < picked.size(); ++k)
            tagged.emplace_back(picked[k], labels.empty() ? std::string() : labels.at(k));
        std::sort(tagged.begin(), tagged.end());
        if (std::adjacent_find(tagged.begin(), tagged.end(), [](auto& a, auto& b) { return a.first == b.first; }) != tagged.end())
            throw ValidationError("bad_subalgebra", "repeated root in subalgebra basis");
        for (auto& [k, l] : tagged) {
            alg.ambient_.push_back(k);
            if (!labels.empty()) alg.labels_.push_back(l);
        }
        alg.finish();
        return alg;
    }

    /// hei_n inside A_{n+2}: x_i = e1-e(i+1), y_i = e(i+1)-e(n+2), z = e1-e(n+2).
    static NilAlgebra heisenberg(int n) {
        if (n < 1) throw ValidationError("bad_rank", "Heisenberg algebra needs n >= 1");
        auto w = Window::standard(SystemType::A, n + 2);
        std::vector<Root> roots;
        std::vector<std::string> labels;
        for (int i = 1; i <= n; ++i) {
            roots.push_back(Root::diff(1, i + 1));
            labels.push_back("x" + std::to_string(i));
            roots.push_back(Root::diff(i + 1, n + 2));
            labels.push_back("y" + std::to_string(i));
        }
        roots.push_back(Root::diff(1, n + 2));
        labels.push_back("z");
        return subalgebra(w, roots, labels);
    }

    SystemType system() const { return window_.system(); }
    const Window& window() const { return window_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Root>& basis() const { return basis_; }
    const Root& root(std::size_t k) const { return basis_.at(k); }
    bool is_full() const { return ambient_.size() == table_->basis.size(); }
    const std::shared_ptr<const StructureTable>& table() const { return table_; }

    std::string label(std::size_t k) const { return labels_.empty() ? to_string(basis_.at(k)) : labels_.at(k); }
    bool has_labels() const { return !labels_.empty(); }

    std::optional<std::size_t> index_of(const Root& r) const {
        auto it = local_.find(r);
        if (it == local_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t require_index(const Root& r) const {
        if (auto k = index_of(r)) return *k;
        throw ValidationError("not_in_algebra", to_string(r) + " is not a basis root of this algebra");
    }

    /// Root (standard labels) of the k-th basis element.
    const Root& standard_root(std::size_t k) const { return table_->basis[ambient_.at(k)]; }

    /// [e_a, e_b] in local coordinates.
    const SparseTerms& bracket_terms(std::size_t a, std::size_t b) const { return local_table_[a][b]; }

    RVec bracket(const RVec& x, const RVec& y) const {
        RVec out(dim());
        for (std::size_t a = 0; a < dim(); ++a) {
            if (x[a] == 0) continue;
            for (std::size_t b = 0; b < dim(); ++b) {
                if (y[b] == 0) continue;
                Rational f = x[a] * y[b];
                for (auto& [k, c] : local_table_[a][b]) out[k] += f * c;
            }
        }
        return out;
    }

    LieVector bracket(const LieVector& x, const LieVector& y) const { return to_lie(bracket(to_coords(x), to_coords(y))); }

    RVec to_coords(const LieVector& v) const {
        RVec out(dim());
        for (auto& [r, c] : v) out[require_index(r)] += c;
        return out;
    }

    LieVector to_lie(const RVec& v) const {
        LieVector out;
        for (std::size_t k = 0; k < dim(); ++k)
            if (v[k] != 0) out[basis_[k]] = v[k];
        return out;
    }

    RVec unit(std::size_t k) const {
        RVec v(dim());
        v[k] = 1;
        return v;
    }

    std::size_t matrix_size() const { return static_cast<std::size_t>(nilcascade::matrix_size(system(), window_.rank())); }

    /// Matrix of e_k in the realization of g_n (standard labels).
    Matrix realize(std::size_t k) const { return nilcascade::realize(standard_root(k), system(), window_.rank()); }

    Matrix to_matrix(const RVec& v) const {
        Matrix m(matrix_size(), matrix_size());
        for (std::size_t k = 0; k < dim(); ++k)
            if (v[k] != 0) m = m + realize(k).scaled(v[k]);
        return m;
    }

    /// ad(x) as a dim×dim matrix acting on coordinate columns.
    Matrix ad(const RVec& x) const {
        Matrix m(dim(), dim());
        for (std::size_t b = 0; b < dim(); ++b) {
            RVec col = bracket(x, unit(b));
            for (std::size_t k = 0; k < dim(); ++k) m(k, b) = col[k];
        }
        return m;
    }

private:
    NilAlgebra(const Window& window, int) : window_(window), table_(structure_table(window.system(), window.rank())) {}

    void finish() {
        std::map<std::size_t, std::size_t> to_local;
        for (std::size_t k = 0; k < ambient_.size(); ++k) {
            to_local[ambient_[k]] = k;
            basis_.push_back(window_.to_actual(table_->basis[ambient_[k]]));
            local_[basis_.back()] = k;
        }
        local_table_.assign(dim(), std::vector<SparseTerms>(dim()));
        for (std::size_t a = 0; a < dim(); ++a)
            for (std::size_t b = 0; b < dim(); ++b)
                for (auto& [k, c] : table_->table[ambient_[a]][ambient_[b]]) {
                    auto it = to_local.find(k);
                    if (it == to_local.end()) throw ValidationError("bad_subalgebra", "span is not closed under the bracket");
                    local_table_[a][b].emplace_back(it->second, c);
                }
    }

    Window window_;
    std::shared_ptr<const StructureTable> table_;
    std::vector<std::size_t> ambient_;
    std::vector<Root> basis_;
    std::vector<std::string> labels_;
    std::map<Root, std::size_t> local_;
    std::vector<std::vector<SparseTerms>> local_table_;
};

/// Lower central series n ⊃ [n,n] ⊃ … ⊃ 0, each term as an echelon basis.
inline std::vector<std::vector<RVec>> lower_central_series(const NilAlgebra& alg) {
    std::vector<std::vector<RVec>> series;
    std::vector<RVec> cur;
    for (std::size_t k = 0; k < alg.dim(); ++k) cur.push_back(alg.unit(k));
    cur = row_basis(cur, alg.dim());
    while (!cur.empty()) {
        series.push_back(cur);
        std::vector<RVec> next;
        for (std::size_t a = 0; a < alg.dim(); ++a)
            for (auto& v : cur) next.push_back(alg.bracket(alg.unit(a), v));
        next = row_basis(next, alg.dim());
        if (next.size() == cur.size()) throw InvariantError("lower central series stalls: algebra is not nilpotent");
        cur = std::move(next);
    }
    return series;
}

}  // namespace nilcascade
