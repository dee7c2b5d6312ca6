#pragma once

// Classical root systems A/B/C/D, computable linear orders on the index set
// {1, 2, ...}, and finite windows of such an order.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "error.hpp"

namespace nilcascade {

enum class SystemType : std::uint8_t { A, B, C, D };

inline char to_char(SystemType s) { return "ABCD"[static_cast<int>(s)]; }

inline SystemType parse_system(std::string_view s) {
    if (s == "A") return SystemType::A;
    if (s == "B") return SystemType::B;
    if (s == "C") return SystemType::C;
    if (s == "D") return SystemType::D;
    throw ValidationError("bad_system", "unknown root system '" + std::string(s) + "'");
}

/// Smallest admissible rank for positive_roots.
inline int min_rank(SystemType s) { return s == SystemType::D ? 2 : 1; }

enum class RootKind : std::uint8_t { Diff, Sum, Double, Short };

/// ε_i − ε_j, ε_i + ε_j (stored with i < j), 2ε_i or ε_i.
struct Root {
    RootKind kind = RootKind::Diff;
    int i = 0;
    int j = 0;  // unused (0) for Double and Short

    static Root diff(int i, int j) {
        if (i == j || i < 1 || j < 1)
            throw ValidationError("bad_root", "e" + std::to_string(i) + "-e" + std::to_string(j) + " is not a root");
        return {RootKind::Diff, i, j};
    }
    static Root sum(int i, int j) {
        if (i == j || i < 1 || j < 1)
            throw ValidationError("bad_root", "e" + std::to_string(i) + "+e" + std::to_string(j) + " is not a root");
        return {RootKind::Sum, std::min(i, j), std::max(i, j)};
    }
    static Root twice(int i) {
        if (i < 1) throw ValidationError("bad_root", "index must be positive");
        return {RootKind::Double, i, 0};
    }
    static Root unit(int i) {
        if (i < 1) throw ValidationError("bad_root", "index must be positive");
        return {RootKind::Short, i, 0};
    }

    auto operator<=>(const Root&) const = default;

    /// Indices the root touches (one or two).
    std::vector<int> indices() const {
        if (kind == RootKind::Diff || kind == RootKind::Sum) return {i, j};
        return {i};
    }

    /// Coordinates in the ε basis.
    std::map<int, int> coords() const {
        std::map<int, int> c;
        switch (kind) {
            case RootKind::Diff: c[i] += 1; c[j] -= 1; break;
            case RootKind::Sum: c[i] += 1; c[j] += 1; break;
            case RootKind::Double: c[i] += 2; break;
            case RootKind::Short: c[i] += 1; break;
        }
        return c;
    }
};

inline std::string to_string(const Root& r) {
    auto e = [](int k) { return "e" + std::to_string(k); };
    switch (r.kind) {
        case RootKind::Diff: return e(r.i) + "-" + e(r.j);
        case RootKind::Sum: return e(r.i) + "+" + e(r.j);
        case RootKind::Double: return "2" + e(r.i);
        case RootKind::Short: return e(r.i);
    }
    return {};
}

/// Grammar: e<i>-e<j> | e<i>+e<j> | 2e<i> | e<i>.
inline Root parse_root(std::string_view s) {
    auto bad = [&] { return ValidationError("bad_root", "cannot parse root '" + std::string(s) + "'"); };
    std::size_t pos = 0;
    auto read_index = [&]() {
        if (pos >= s.size() || s[pos] != 'e') throw bad();
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start || pos - start > 9) throw bad();
        return std::stoi(std::string(s.substr(start, pos - start)));
    };
    bool twice = false;
    if (!s.empty() && s[0] == '2') {
        twice = true;
        pos = 1;
    }
    int i = read_index();
    if (twice) {
        if (pos != s.size()) throw bad();
        return Root::twice(i);
    }
    if (pos == s.size()) return Root::unit(i);
    char op = s[pos++];
    int j = read_index();
    if (pos != s.size()) throw bad();
    if (op == '-') return Root::diff(i, j);
    if (op == '+') return Root::sum(i, j);
    throw bad();
}

/// Whether the root's shape exists in the given type (ignores positivity).
inline bool kind_allowed(SystemType s, RootKind k) {
    switch (k) {
        case RootKind::Diff: return true;
        case RootKind::Sum: return s != SystemType::A;
        case RootKind::Double: return s == SystemType::C;
        case RootKind::Short: return s == SystemType::B;
    }
    return false;
}

/// Positive roots of the standard finite system of the given rank, sorted
/// by (kind, i, j).
inline std::vector<Root> positive_roots(SystemType s, int n) {
    if (n < min_rank(s))
        throw ValidationError("bad_rank", std::string("rank ") + std::to_string(n) + " is below the minimum for type " + to_char(s));
    std::vector<Root> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.push_back(Root::diff(i, j));
    if (s != SystemType::A)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) out.push_back(Root::sum(i, j));
    if (s == SystemType::C)
        for (int i = 1; i <= n; ++i) out.push_back(Root::twice(i));
    if (s == SystemType::B)
        for (int i = 1; i <= n; ++i) out.push_back(Root::unit(i));
    std::sort(out.begin(), out.end());
    return out;
}

/// Whether a + b (or a − b) is a root of the infinite system of type s.
inline bool is_root_vector(SystemType s, const std::map<int, int>& c) {
    std::vector<int> nz;
    for (auto [k, v] : c)
        if (v != 0) nz.push_back(v);
    if (nz.size() == 2) {
        bool diff = (nz[0] == 1 && nz[1] == -1) || (nz[0] == -1 && nz[1] == 1);
        bool sum = (nz[0] == nz[1]) && (nz[0] == 1 || nz[0] == -1);
        return diff || (sum && s != SystemType::A);
    }
    if (nz.size() == 1) {
        if (nz[0] == 2 || nz[0] == -2) return s == SystemType::C;
        if (nz[0] == 1 || nz[0] == -1) return s == SystemType::B;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Orders

/// A finite list of indices, or the arithmetic progression start, start+step, ...
class IndexStream {
public:
    struct Arith {
        int start = 1;
        int step = 1;
    };

    IndexStream() = default;
    static IndexStream list(std::vector<int> items) { return IndexStream(std::move(items)); }
    static IndexStream arith(int start, int step) {
        if (start < 1 || step < 1)
            throw ValidationError("bad_stream", "arithmetic stream needs positive start and step");
        return IndexStream(Arith{start, step});
    }

    bool finite() const { return std::holds_alternative<std::vector<int>>(rep_); }
    bool empty() const { return finite() && items().empty(); }
    std::size_t size() const { return items().size(); }  // finite streams only
    const std::vector<int>& items() const { return std::get<std::vector<int>>(rep_); }
    const Arith& progression() const { return std::get<Arith>(rep_); }

    int at(std::size_t pos) const {
        if (finite()) return items().at(pos);
        return progression().start + static_cast<int>(pos) * progression().step;
    }

    std::optional<std::size_t> position(int idx) const {
        if (finite()) {
            auto& v = items();
            auto it = std::find(v.begin(), v.end(), idx);
            if (it == v.end()) return std::nullopt;
            return static_cast<std::size_t>(it - v.begin());
        }
        auto [a, s] = progression();
        if (idx < a || (idx - a) % s != 0) return std::nullopt;
        return static_cast<std::size_t>((idx - a) / s);
    }

    bool operator==(const IndexStream&) const = default;

private:
    explicit IndexStream(std::vector<int> v) : rep_(std::move(v)) {}
    explicit IndexStream(Arith a) : rep_(a) {}
    std::variant<std::vector<int>, Arith> rep_ = std::vector<int>{};
};

inline bool operator==(const IndexStream::Arith& x, const IndexStream::Arith& y) {
    return x.start == y.start && x.step == y.step;
}

enum class Cmp { Less, Equal, Greater };

/// ε_{top[0]} ≻ ε_{top[1]} ≻ … ≻ … ≻ ε_{bottom[1]} ≻ ε_{bottom[0]}, with ε_i ≻ 0
/// for all i. Either both streams are finite and together enumerate {1..N}
/// (a finite-rank order), or they partition all positive integers.
class OrderSpec {
public:
    OrderSpec(SystemType system, IndexStream top, IndexStream bottom)
        : system_(system), top_(std::move(top)), bottom_(std::move(bottom)) {
        validate();
    }

    /// ε_1 ≻ ε_2 ≻ ε_3 ≻ …
    static OrderSpec natural(SystemType s) { return {s, IndexStream::arith(1, 1), IndexStream::list({})}; }
    /// ε_1 ≻ ε_3 ≻ ε_5 ≻ … ≻ ε_6 ≻ ε_4 ≻ ε_2
    static OrderSpec interleaved(SystemType s) { return {s, IndexStream::arith(1, 2), IndexStream::arith(2, 2)}; }
    /// … ≻ ε_3 ≻ ε_2 ≻ ε_1
    static OrderSpec reversed(SystemType s) { return {s, IndexStream::list({}), IndexStream::arith(1, 1)}; }
    /// ε_1 ≻ … ≻ ε_n (finite rank).
    static OrderSpec finite(SystemType s, int n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        return {s, IndexStream::list(std::move(v)), IndexStream::list({})};
    }

    SystemType system() const { return system_; }
    const IndexStream& top() const { return top_; }
    const IndexStream& bottom() const { return bottom_; }
    bool is_finite() const { return top_.finite() && bottom_.finite(); }
    /// Number of indices of a finite-rank order.
    std::size_t finite_size() const { return top_.size() + bottom_.size(); }

    bool covers(int idx) const { return locate(idx).has_value(); }

    Cmp compare(int i, int j) const {
        auto a = require(i), b = require(j);
        if (i == j) return Cmp::Equal;
        auto rank = [](const Loc& l) { return l.in_top ? 1 : 0; };
        if (rank(a) != rank(b)) return rank(a) > rank(b) ? Cmp::Greater : Cmp::Less;
        if (a.in_top) return a.pos < b.pos ? Cmp::Greater : Cmp::Less;
        return a.pos > b.pos ? Cmp::Greater : Cmp::Less;
    }
    bool greater(int i, int j) const { return compare(i, j) == Cmp::Greater; }
    bool at_least(int i, int j) const { return compare(i, j) != Cmp::Less; }

    /// ≻-largest index outside `excluded`, if one exists.
    std::optional<int> max_remaining(const std::set<int>& excluded) const {
        if (auto x = first_not_in(top_, excluded)) return x;
        if (!top_.finite() || !bottom_.finite()) return std::nullopt;
        for (std::size_t k = bottom_.size(); k-- > 0;)
            if (!excluded.count(bottom_.at(k))) return bottom_.at(k);
        return std::nullopt;
    }

    /// ≺-smallest index outside `excluded`, if one exists.
    std::optional<int> min_remaining(const std::set<int>& excluded) const {
        if (auto x = first_not_in(bottom_, excluded)) return x;
        if (!top_.finite() || !bottom_.finite()) return std::nullopt;
        for (std::size_t k = top_.size(); k-- > 0;)
            if (!excluded.count(top_.at(k))) return top_.at(k);
        return std::nullopt;
    }

    std::optional<int> max_element() const { return max_remaining({}); }
    std::optional<int> min_element() const { return min_remaining({}); }

    /// |{s : ε_s ⪰ ε_i}|, absent when infinite.
    std::optional<std::size_t> count_at_least(int i) const {
        auto l = require(i);
        if (l.in_top) return l.pos + 1;
        if (!top_.finite() || !bottom_.finite()) return std::nullopt;
        return top_.size() + (bottom_.size() - l.pos);
    }

    /// |{s : ε_s ⪯ ε_j}|, absent when infinite.
    std::optional<std::size_t> count_at_most(int j) const {
        auto l = require(j);
        if (!l.in_top) return l.pos + 1;
        if (!top_.finite() || !bottom_.finite()) return std::nullopt;
        return (top_.size() - l.pos) + bottom_.size();
    }

    /// Sort indices so that the ≻-largest comes first.
    std::vector<int> sorted_descending(std::vector<int> idx) const {
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return greater(a, b); });
        return idx;
    }

    /// The positive root ε_i − ε_j is positive iff ε_i ≻ ε_j; sums, doubles and
    /// short roots are positive whenever the type has them.
    bool is_positive(const Root& r) const {
        if (!kind_allowed(system_, r.kind)) return false;
        for (int k : r.indices())
            if (!covers(k)) return false;
        if (r.kind == RootKind::Diff) return greater(r.i, r.j);
        return true;
    }

    void require_positive(const Root& r) const {
        if (!is_positive(r))
            throw ValidationError("not_positive", to_string(r) + " is not a positive root of type " +
                                                      std::string(1, to_char(system_)) + " under this order");
    }

    bool operator==(const OrderSpec&) const = default;

private:
    struct Loc {
        bool in_top;
        std::size_t pos;
    };

    std::optional<Loc> locate(int idx) const {
        if (auto p = top_.position(idx)) return Loc{true, *p};
        if (auto p = bottom_.position(idx)) return Loc{false, *p};
        return std::nullopt;
    }

    Loc require(int idx) const {
        if (auto l = locate(idx)) return *l;
        throw ValidationError("index_not_covered", "index " + std::to_string(idx) + " is not covered by the order");
    }

    static std::optional<int> first_not_in(const IndexStream& s, const std::set<int>& excluded) {
        for (std::size_t k = 0;; ++k) {
            if (s.finite() && k >= s.size()) return std::nullopt;
            int x = s.at(k);
            if (!excluded.count(x)) return x;
        }
    }

    void validate() const {
        auto check_list = [](const IndexStream& s) {
            if (!s.finite()) return;
            std::set<int> seen;
            for (int x : s.items()) {
                if (x < 1) throw ValidationError("bad_order", "indices must be positive");
                if (!seen.insert(x).second)
                    throw ValidationError("bad_order", "index " + std::to_string(x) + " repeated in a stream");
            }
        };
        check_list(top_);
        check_list(bottom_);

        if (is_finite()) {
            std::size_t n = finite_size();
            if (n == 0) throw ValidationError("bad_order", "empty order");
            std::vector<int> all(top_.items());
            all.insert(all.end(), bottom_.items().begin(), bottom_.items().end());
            std::sort(all.begin(), all.end());
            for (std::size_t k = 0; k < n; ++k)
                if (all[k] != static_cast<int>(k + 1))
                    throw ValidationError("bad_order", "a finite order must enumerate exactly {1.." + std::to_string(n) + "} once");
            return;
        }

        // Infinite: beyond every list item and progression start, membership
        // is periodic with period lcm(steps), so one extra period suffices.
        long bound = 0, period = 1;
        for (const IndexStream* s : {&top_, &bottom_}) {
            if (s->finite()) {
                for (int x : s->items()) bound = std::max<long>(bound, x);
            } else {
                bound = std::max<long>(bound, s->progression().start);
                period = std::lcm(period, static_cast<long>(s->progression().step));
            }
        }
        if (period > 1000000) throw ValidationError("bad_order", "progression steps too large to validate");
        for (long x = 1; x <= bound + period; ++x) {
            int hits = (top_.position(static_cast<int>(x)) ? 1 : 0) + (bottom_.position(static_cast<int>(x)) ? 1 : 0);
            if (hits != 1)
                throw ValidationError("bad_order", "streams must partition the positive integers; index " + std::to_string(x) +
                                                       (hits == 0 ? " is missing" : " appears twice"));
        }
    }

    SystemType system_;
    IndexStream top_;
    IndexStream bottom_;
};

// ---------------------------------------------------------------------------
// Windows

/// A finite index set M listed ≻-descending; relabel(k) = indices[k-1] is the
/// order isomorphism from the standard rank-|M| system onto Φ_M.
class Window {
public:
    Window(const OrderSpec& order, const std::set<int>& m) : system_(order.system()) {
        if (m.empty()) throw ValidationError("bad_window", "window must be nonempty");
        for (int x : m)
            if (!order.covers(x)) throw ValidationError("index_not_covered", "window index " + std::to_string(x) + " is not covered by the order");
        indices_ = order.sorted_descending({m.begin(), m.end()});
        for (std::size_t k = 0; k < indices_.size(); ++k) pos_[indices_[k]] = static_cast<int>(k + 1);
        if (rank() < min_rank(system_))
            throw ValidationError("bad_rank", "window too small for type " + std::string(1, to_char(system_)));
    }

    /// {1..n} under the natural order.
    static Window standard(SystemType s, int n) {
        std::set<int> m;
        for (int k = 1; k <= n; ++k) m.insert(k);
        return Window(OrderSpec::finite(s, n), m);
    }

    SystemType system() const { return system_; }
    int rank() const { return static_cast<int>(indices_.size()); }
    const std::vector<int>& indices() const { return indices_; }
    int relabel(int k) const { return indices_.at(static_cast<std::size_t>(k - 1)); }
    bool contains(int idx) const { return pos_.count(idx) > 0; }
    std::optional<int> position(int idx) const {
        auto it = pos_.find(idx);
        if (it == pos_.end()) return std::nullopt;
        return it->second;
    }
    std::set<int> index_set() const { return {indices_.begin(), indices_.end()}; }

    /// j_M on roots: standard root of Φ_n → root of Φ_M.
    Root to_actual(const Root& r) const {
        switch (r.kind) {
            case RootKind::Diff: return Root::diff(relabel(r.i), relabel(r.j));
            case RootKind::Sum: return Root::sum(relabel(r.i), relabel(r.j));
            case RootKind::Double: return Root::twice(relabel(r.i));
            case RootKind::Short: return Root::unit(relabel(r.i));
        }
        return r;
    }

    /// j_M^{-1}; absent when the root leaves the window or is not positive.
    std::optional<Root> to_standard(const Root& r) const {
        if (!kind_allowed(system_, r.kind)) return std::nullopt;
        auto p = position(r.i);
        if (!p) return std::nullopt;
        switch (r.kind) {
            case RootKind::Diff: {
                auto q = position(r.j);
                if (!q || *q < *p) return std::nullopt;
                return Root::diff(*p, *q);
            }
            case RootKind::Sum: {
                auto q = position(r.j);
                if (!q) return std::nullopt;
                return Root::sum(*p, *q);
            }
            case RootKind::Double: return Root::twice(*p);
            case RootKind::Short: return Root::unit(*p);
        }
        return std::nullopt;
    }

    bool operator==(const Window&) const = default;

private:
    SystemType system_;
    std::vector<int> indices_;
    std::map<int, int> pos_;
};

}  // namespace nilcascade
