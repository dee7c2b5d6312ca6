#pragma once

// Linear forms λ ∈ n*: finitely supported root maps, the Cauchy family of
// type A, and explicit tables over a finite window.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "liealg.hpp"
#include "rational.hpp"
#include "rootsys.hpp"

namespace nilcascade {

/// A finite list of rationals, or the progression start, start+step, ...
/// Entry k (1-based) is the value attached to index k.
class RationalStream {
public:
    static RationalStream list(std::vector<Rational> items) {
        RationalStream s;
        s.items_ = std::move(items);
        s.finite_ = true;
        return s;
    }
    static RationalStream arith(Rational start, Rational step) {
        RationalStream s;
        s.start_ = std::move(start);
        s.step_ = std::move(step);
        s.finite_ = false;
        return s;
    }

    bool finite() const { return finite_; }
    const std::vector<Rational>& items() const { return items_; }
    const Rational& start() const { return start_; }
    const Rational& step() const { return step_; }

    std::optional<Rational> at(int index) const {
        if (index < 1) return std::nullopt;
        if (finite_) {
            if (static_cast<std::size_t>(index) > items_.size()) return std::nullopt;
            return items_[static_cast<std::size_t>(index - 1)];
        }
        return start_ + step_ * (index - 1);
    }

    bool pairwise_distinct() const {
        if (!finite_) return step_ != 0;
        std::set<Rational> seen(items_.begin(), items_.end());
        return seen.size() == items_.size();
    }

    std::optional<Rational> lower_bound() const {
        if (finite_) {
            if (items_.empty()) return std::nullopt;
            return *std::min_element(items_.begin(), items_.end());
        }
        if (step_ >= 0) return start_;
        return std::nullopt;
    }

    std::optional<Rational> upper_bound() const {
        if (finite_) {
            if (items_.empty()) return std::nullopt;
            return *std::max_element(items_.begin(), items_.end());
        }
        if (step_ <= 0) return start_;
        return std::nullopt;
    }

private:
    bool finite_ = true;
    std::vector<Rational> items_;
    Rational start_, step_;
};

class LinearForm {
public:
    struct FinSupport {
        std::map<Root, Rational> entries;
    };
    struct Cauchy {
        RationalStream a, b;
    };
    struct Table {
        SystemType system;
        std::vector<int> window;  // ≻-descending
        std::map<Root, Rational> entries;
    };

    static LinearForm finsupport(std::map<Root, Rational> entries) {
        std::erase_if(entries, [](auto& kv) { return kv.second == 0; });
        return LinearForm(FinSupport{std::move(entries)});
    }

    /// λ(e_{ε_i-ε_j}) = 1/(a_i + b_j).  Rejected unless the a's and the b's
    /// are pairwise distinct and every sum a_i + b_j is provably nonzero.
    static LinearForm cauchy(RationalStream a, RationalStream b) {
        if (!a.pairwise_distinct() || !b.pairwise_distinct())
            throw ValidationError("bad_cauchy", "Cauchy sequences must have pairwise distinct entries");
        bool certified = false;
        auto la = a.lower_bound(), lb = b.lower_bound(), ua = a.upper_bound(), ub = b.upper_bound();
        if (la && lb && *la + *lb > 0) certified = true;
        if (ua && ub && *ua + *ub < 0) certified = true;
        if (!certified && a.finite() && b.finite()) {
            certified = true;
            for (auto& x : a.items())
                for (auto& y : b.items())
                    if (x + y == 0) certified = false;
        }
        if (!certified)
            throw ValidationError("bad_cauchy", "cannot certify a_i + b_j != 0 for all i, j");
        return LinearForm(Cauchy{std::move(a), std::move(b)});
    }

    /// Values on the roots of Φ_M, zero inside the window where not listed.
    static LinearForm table(const Window& w, std::map<Root, Rational> entries) {
        std::erase_if(entries, [](auto& kv) { return kv.second == 0; });
        for (auto& [r, v] : entries)
            if (!w.to_standard(r)) throw ValidationError("bad_table", to_string(r) + " is not a positive root of the window");
        return LinearForm(Table{w.system(), w.indices(), std::move(entries)});
    }

    /// λ(e_α) = tr(μ e_α) for a lower-triangular μ in the window realization
    /// (rows labelled by window positions 1..n, (0), -n..-1).
    static LinearForm from_window_matrix(const Window& w, const Matrix& mu) {
        std::size_t size = static_cast<std::size_t>(matrix_size(w.system(), w.rank()));
        if (mu.rows() != size || mu.cols() != size)
            throw ValidationError("bad_table", "table matrix must be " + std::to_string(size) + "x" + std::to_string(size));
        for (std::size_t r = 0; r < size; ++r)
            for (std::size_t c = r; c < size; ++c)
                if (mu(r, c) != 0) throw ValidationError("bad_table", "table matrix must be strictly lower triangular");
        std::map<Root, Rational> entries;
        for (auto& r : positive_roots(w.system(), w.rank())) {
            Rational v = (mu * realize(r, w.system(), w.rank())).trace();
            if (v != 0) entries[w.to_actual(r)] = v;
        }
        return table(w, std::move(entries));
    }

    bool is_finsupport() const { return std::holds_alternative<FinSupport>(rep_); }
    bool is_cauchy() const { return std::holds_alternative<Cauchy>(rep_); }
    bool is_table() const { return std::holds_alternative<Table>(rep_); }
    const FinSupport& as_finsupport() const { return std::get<FinSupport>(rep_); }
    const Cauchy& as_cauchy() const { return std::get<Cauchy>(rep_); }
    const Table& as_table() const { return std::get<Table>(rep_); }

    std::string kind() const {
        if (is_finsupport()) return "finsupport";
        if (is_cauchy()) return "cauchy";
        return "table";
    }

    /// λ(e_α), absent when α lies outside the form's domain.
    std::optional<Rational> value(const Root& r) const {
        if (auto f = std::get_if<FinSupport>(&rep_)) {
            auto it = f->entries.find(r);
            return it == f->entries.end() ? Rational(0) : it->second;
        }
        if (auto c = std::get_if<Cauchy>(&rep_)) {
            if (r.kind != RootKind::Diff) return std::nullopt;
            auto x = c->a.at(r.i), y = c->b.at(r.j);
            if (!x || !y) return std::nullopt;
            return 1 / (*x + *y);
        }
        auto& t = std::get<Table>(rep_);
        for (int k : r.indices())
            if (std::find(t.window.begin(), t.window.end(), k) == t.window.end()) return std::nullopt;
        auto it = t.entries.find(r);
        return it == t.entries.end() ? Rational(0) : it->second;
    }

    Rational require(const Root& r) const {
        if (auto v = value(r)) return *v;
        throw ValidationError("outside_domain", "linear form is undefined on e_" + to_string(r));
    }

    /// Indices touched by a nonzero value (finite families only).
    std::set<int> support_indices() const {
        std::set<int> out;
        const std::map<Root, Rational>* m = nullptr;
        if (auto f = std::get_if<FinSupport>(&rep_)) m = &f->entries;
        if (auto t = std::get_if<Table>(&rep_)) m = &t->entries;
        if (!m) throw ValidationError("unsupported_family", "the Cauchy family has infinite support");
        for (auto& [r, v] : *m)
            for (int k : r.indices()) out.insert(k);
        return out;
    }

    /// Coordinates of λ on the basis of an algebra (λ(e_k) per basis index).
    RVec on_basis(const NilAlgebra& alg) const {
        RVec out(alg.dim());
        for (std::size_t k = 0; k < alg.dim(); ++k) out[k] = require(alg.root(k));
        return out;
    }

private:
    explicit LinearForm(std::variant<FinSupport, Cauchy, Table> rep) : rep_(std::move(rep)) {}
    std::variant<FinSupport, Cauchy, Table> rep_;
};

/// A finitely supported form from basis coordinates of an algebra.
inline LinearForm form_from_coords(const NilAlgebra& alg, const RVec& coords) {
    std::map<Root, Rational> m;
    for (std::size_t k = 0; k < alg.dim(); ++k)
        if (coords[k] != 0) m[alg.root(k)] = coords[k];
    return LinearForm::finsupport(std::move(m));
}

}  // namespace nilcascade
