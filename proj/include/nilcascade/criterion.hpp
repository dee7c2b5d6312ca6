#pragma once

// The nontriviality criterion for I(λ): the matrices [λ]_p, exact ranks, the
// "rank not maximal" test, and the three-valued verdict.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cascade.hpp"
#include "centgen.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "linear_form.hpp"
#include "rootsys.hpp"

namespace nilcascade {

/// Row and column index sets of [λ]_p as predicates plus counts.
struct PairRegion {
    UpperRightPair pair;
    const OrderSpec* order;
    std::optional<int> max_index;  // m for MaxRow

    PairRegion(const UpperRightPair& p, const OrderSpec& o) : pair(p), order(&o), max_index(validate_pair(p, o)) {}

    bool is_row(int x) const {
        if (!order->covers(x)) return false;
        switch (pair.kind) {
            case UpperRightPair::Kind::General: return order->at_least(x, pair.i);
            case UpperRightPair::Kind::Diagonal: return order->at_least(x, pair.i);
            case UpperRightPair::Kind::MaxRow: return x == *max_index;
        }
        return false;
    }

    bool is_col(int x) const {
        if (!order->covers(x)) return false;
        switch (pair.kind) {
            case UpperRightPair::Kind::General: return order->at_least(pair.j, x);
            case UpperRightPair::Kind::Diagonal: return order->at_least(x, pair.i);
            case UpperRightPair::Kind::MaxRow: return order->at_least(x, pair.j);
        }
        return false;
    }

    /// Absent when infinite.
    std::optional<std::size_t> row_count() const {
        if (pair.kind == UpperRightPair::Kind::MaxRow) return 1;
        return order->count_at_least(pair.i);
    }

    std::optional<std::size_t> col_count() const {
        switch (pair.kind) {
            case UpperRightPair::Kind::General: return order->count_at_most(pair.j);
            case UpperRightPair::Kind::Diagonal: return order->count_at_least(pair.i);
            case UpperRightPair::Kind::MaxRow: return order->count_at_least(pair.j);
        }
        return std::nullopt;
    }
};

/// Entry (i', j') of [λ]_p.  A: λ(e_{ε_i'−ε_j'}).  C: λ(e_{ε_i'+ε_j'}) off
/// the diagonal, 2λ(e_{2ε_i'}) on it.  B/D: ±λ(e_{ε_i'+ε_j'}) with the sign
/// of i' versus j' in the order (antisymmetric), 0 on the diagonal.
inline Rational lambda_entry(const LinearForm& lambda, SystemType s, const OrderSpec& order, int row, int col) {
    switch (s) {
        case SystemType::A: return lambda.require(Root::diff(row, col));
        case SystemType::C:
            if (row == col) return 2 * lambda.require(Root::twice(row));
            return lambda.require(Root::sum(row, col));
        case SystemType::B:
        case SystemType::D:
            if (row == col) return 0;
            return order.greater(row, col) ? lambda.require(Root::sum(row, col)) : Rational(-lambda.require(Root::sum(row, col)));
    }
    return 0;
}

/// The submatrix of [λ]_p on the given rows and columns (listed in order).
inline Matrix lambda_matrix(const LinearForm& lambda, const UpperRightPair& p, const OrderSpec& order,
                            const std::vector<int>& rows, const std::vector<int>& cols) {
    PairRegion region(p, order);
    for (int r : rows)
        if (!region.is_row(r)) throw ValidationError("bad_window", "index " + std::to_string(r) + " is not a row of [lambda]_p");
    for (int c : cols)
        if (!region.is_col(c)) throw ValidationError("bad_window", "index " + std::to_string(c) + " is not a column of [lambda]_p");
    Matrix m(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b) m(a, b) = lambda_entry(lambda, order.system(), order, rows[a], cols[b]);
    return m;
}

struct WindowSlice {
    std::vector<int> rows, cols;
};

/// Rows and columns of [λ]_p inside a finite index set, ≻-descending.
inline WindowSlice window_slice(const UpperRightPair& p, const OrderSpec& order, const std::set<int>& window) {
    PairRegion region(p, order);
    WindowSlice out;
    for (int x : order.sorted_descending({window.begin(), window.end()})) {
        if (region.is_row(x)) out.rows.push_back(x);
        if (region.is_col(x)) out.cols.push_back(x);
    }
    return out;
}

inline std::size_t window_rank(const LinearForm& lambda, const UpperRightPair& p, const OrderSpec& order,
                               const std::set<int>& window) {
    auto sl = window_slice(p, order, window);
    return rank(lambda_matrix(lambda, p, order, sl.rows, sl.cols));
}

struct RankCertificate {
    bool not_maximal = false;
    std::optional<std::size_t> rank;       // absent when infinite
    std::optional<std::size_t> row_count;  // absent when infinite
    std::optional<std::size_t> col_count;
    std::string reason;
    WindowSlice support;  // rows/columns carrying the nonzero block
};

/// Decide whether rk[λ]_p is not maximal: rank finite and either both sizes
/// infinite, or the least size finite and larger than the rank.
inline RankCertificate rank_not_maximal(const LinearForm& lambda, const UpperRightPair& p, const OrderSpec& order) {
    PairRegion region(p, order);
    RankCertificate cert;
    cert.row_count = region.row_count();
    cert.col_count = region.col_count();
    if (lambda.is_cauchy()) {
        if (order.system() != SystemType::A) throw ValidationError("unsupported_family", "the Cauchy family is defined for type A");
        cert.not_maximal = false;
        auto least = cert.row_count && cert.col_count ? std::min(*cert.row_count, *cert.col_count)
                                                       : (cert.row_count ? cert.row_count : cert.col_count);
        cert.rank = least;  // every finite minor is a nonzero Cauchy determinant
        cert.reason = "cauchy: every square minor equals prod(a_i-a_j)(b_j-b_i)/prod(a_i+b_j), nonzero by distinctness";
        return cert;
    }
    if (!lambda.is_finsupport()) throw ValidationError("unsupported_family", "rank_not_maximal needs a finsupport or cauchy form");
    auto support = lambda.support_indices();
    cert.support = window_slice(p, order, support);
    std::size_t r = rank(lambda_matrix(lambda, p, order, cert.support.rows, cert.support.cols));
    cert.rank = r;
    if (!cert.row_count && !cert.col_count) {
        cert.not_maximal = true;
        cert.reason = "finite rank, both sizes infinite";
    } else {
        std::size_t least = cert.row_count && cert.col_count ? std::min(*cert.row_count, *cert.col_count)
                                                             : (cert.row_count ? *cert.row_count : *cert.col_count);
        cert.not_maximal = least > r;
        cert.reason = cert.not_maximal ? "least size " + std::to_string(least) + " exceeds rank " + std::to_string(r)
                                       : "rank equals least size " + std::to_string(least);
    }
    return cert;
}

/// Smallest k with rank < k'.
inline std::size_t witness_k(const UpperRightPair& p, SystemType s, std::size_t rank_value) {
    bool bd = s == SystemType::B || s == SystemType::D;
    if (bd && p.kind == UpperRightPair::Kind::Diagonal) return rank_value / 2 + 1;
    return rank_value + 1;
}

/// All I(p,k) window generators vanish at λ ⇔ window rank of [λ]_p < k'.
struct LocusCheck {
    bool equivalent = false;
    bool generators_vanish = false;
    bool rank_below = false;
    std::size_t rank = 0;
    std::size_t k_prime = 0;
    std::size_t generator_count = 0;
};

inline LocusCheck rank_locus_equivalence(const LinearForm& lambda, const UpperRightPair& p, std::size_t k,
                                         const std::set<int>& window, const OrderSpec& order) {
    auto gens = ideal_generators(p, k, window, order);
    LocusCheck out;
    out.generator_count = gens.generators.size();
    out.generators_vanish = true;
    for (auto& g : gens.generators)
        if (g.evaluate(lambda) != 0) {
            out.generators_vanish = false;
            break;
        }
    out.rank = window_rank(lambda, p, order, window);
    out.k_prime = k_prime(p, order.system(), k);
    out.rank_below = out.rank < out.k_prime;
    out.equivalent = out.generators_vanish == out.rank_below;
    return out;
}

// ---------------------------------------------------------------------------
// Verdict

struct LadderEntry {
    std::size_t size;
    std::vector<int> window;
    UpperRightPair pair;
    std::size_t rank;
    std::size_t rows, cols;
};

struct Verdict {
    enum class Kind { Nonzero, Zero, Undetermined } kind = Kind::Undetermined;
    std::optional<Root> cascade_witness;
    std::optional<UpperRightPair> pair;
    std::size_t k = 0;
    std::optional<RankCertificate> rank_certificate;
    std::string certificate;
    std::vector<LadderEntry> window_report;
};

inline std::string to_string(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Nonzero: return "nonzero";
        case Verdict::Kind::Zero: return "zero";
        case Verdict::Kind::Undetermined: return "undetermined";
    }
    return {};
}

/// Candidate indices: the support, each stream's first element, and the
/// first two elements past the support in each infinite stream.
inline std::vector<int> candidate_indices(const OrderSpec& order, const std::set<int>& support) {
    std::set<int> c;
    for (int x : support)
        if (order.covers(x)) c.insert(x);
    for (const IndexStream* s : {&order.top(), &order.bottom()}) {
        if (s->finite() && s->empty()) continue;
        c.insert(s->at(0));
        if (!s->finite()) {
            std::size_t past = 0;
            for (int x : support)
                if (auto pos = s->position(x)) past = std::max(past, *pos + 1);
            c.insert(s->at(past));
            c.insert(s->at(past + 1));
        }
    }
    return order.sorted_descending({c.begin(), c.end()});
}

inline std::vector<UpperRightPair> candidate_pairs(const OrderSpec& order, const std::vector<int>& idx) {
    std::vector<UpperRightPair> out;
    switch (order.system()) {
        case SystemType::A:
            for (int i : idx)
                for (int j : idx)
                    if (order.greater(i, j)) out.push_back(UpperRightPair::general(i, j));
            break;
        case SystemType::C:
            for (int i : idx) out.push_back(UpperRightPair::diagonal(i));
            break;
        case SystemType::B:
        case SystemType::D: {
            for (int i : idx) out.push_back(UpperRightPair::diagonal(i));
            auto m = order.max_element();
            if (m)
                for (int j : idx)
                    if (j != *m) out.push_back(UpperRightPair::maxrow(j));
            break;
        }
    }
    return out;
}

inline Verdict nontriviality_verdict(const OrderSpec& order, const LinearForm& lambda, std::size_t max_window = 16) {
    Verdict v;
    auto cas = cascade(order, 1);
    if (!cas.roots.empty()) {
        v.kind = Verdict::Kind::Nonzero;
        v.cascade_witness = cas.roots.front();
        v.certificate = "cascade nonempty: the center contributes a nonconstant element of I(lambda)";
        return v;
    }
    if (lambda.is_cauchy()) {
        if (order.system() != SystemType::A) throw ValidationError("unsupported_family", "the Cauchy family is defined for type A");
        v.kind = Verdict::Kind::Zero;
        v.certificate = "cauchy: all minors of every [lambda]_p are nonzero Cauchy determinants, so every rank is maximal";
        return v;
    }
    if (lambda.is_finsupport()) {
        for (auto& p : candidate_pairs(order, candidate_indices(order, lambda.support_indices()))) {
            auto cert = rank_not_maximal(lambda, p, order);
            if (!cert.not_maximal) continue;
            v.kind = Verdict::Kind::Nonzero;
            v.pair = p;
            v.k = witness_k(p, order.system(), *cert.rank);
            v.certificate = "rank of [lambda]_p is not maximal: " + cert.reason;
            v.rank_certificate = cert;
            return v;
        }
    }
    // No decision: report ranks on growing windows inside λ's domain.
    std::vector<int> domain;
    if (lambda.is_table()) {
        domain = lambda.as_table().window;
        std::erase_if(domain, [&](int x) { return !order.covers(x); });
        domain = order.sorted_descending(domain);
    } else {
        for (std::size_t k = 0; k < max_window; ++k)
            if (auto x = order.max_remaining({domain.begin(), domain.end()})) domain.push_back(*x);
    }
    v.certificate = "no pair certified; window ranks reported";
    for (std::size_t n = 2; n <= std::min(max_window, domain.size()); n *= 2) {
        std::vector<int> w(domain.begin(), domain.begin() + static_cast<long>(n));
        std::set<int> ws(w.begin(), w.end());
        UpperRightPair p = order.system() == SystemType::A ? UpperRightPair::general(w.front(), w.back())
                                                            : UpperRightPair::diagonal(w.back());
        auto sl = window_slice(p, order, ws);
        v.window_report.push_back({n, w, p, rank(lambda_matrix(lambda, p, order, sl.rows, sl.cols)), sl.rows.size(), sl.cols.size()});
    }
    return v;
}

}  // namespace nilcascade
