#pragma once

#include <map>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include <nilcascade/nilcascade.hpp>

namespace testing_support {

using namespace nilcascade;

inline Rational random_rational(std::mt19937_64& rng, int range = 5, int denom = 3) {
    std::uniform_int_distribution<int> num(-range, range), den(1, denom);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline RVec random_vector(std::mt19937_64& rng, std::size_t dim, int range = 5, int denom = 3) {
    RVec v(dim);
    for (auto& x : v) x = random_rational(rng, range, denom);
    return v;
}

/// Sparse random vector: each coordinate nonzero with probability 1/2.
inline RVec random_sparse(std::mt19937_64& rng, std::size_t dim) {
    RVec v(dim);
    std::bernoulli_distribution coin(0.5);
    for (auto& x : v)
        if (coin(rng)) x = random_rational(rng);
    return v;
}

/// Matrix commutator XY − YX.
inline Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

/// Random index set of the given size from {1..pool}.
inline std::set<int> random_window(std::mt19937_64& rng, int pool, int size) {
    std::vector<int> all;
    for (int k = 1; k <= pool; ++k) all.push_back(k);
    std::shuffle(all.begin(), all.end(), rng);
    return {all.begin(), all.begin() + size};
}

// Random λ on the roots of a window, built from a low-rank pattern half of
// the time so both sides of the rank locus get exercised.
inline LinearForm random_window_form(std::mt19937_64& rng, const OrderSpec& o, const std::vector<int>& w) {
    SystemType s = o.system();
    std::size_t n = w.size();
    Matrix m(n, n);
    std::bernoulli_distribution coin(0.5);
    if (coin(rng)) {
        std::uniform_int_distribution<int> terms(0, 2);
        for (int t = terms(rng); t > 0; --t) {
            auto u = random_vector(rng, n), v = random_vector(rng, n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    if (s == SystemType::A) m(a, b) += u[a] * v[b];
                    if (s == SystemType::C) m(a, b) += u[a] * u[b];
                    if (s == SystemType::B || s == SystemType::D) m(a, b) += u[a] * v[b] - v[a] * u[b];
                }
        }
    } else {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (coin(rng)) m(a, b) = random_rational(rng);
    }
    std::map<Root, Rational> entries;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (m(a, b) == 0 || !o.greater(w[a], w[b])) {
                if (s == SystemType::C && a == b && m(a, b) != 0) entries[Root::twice(w[a])] = m(a, b) / 2;
                continue;
            }
            if (s == SystemType::A) entries[Root::diff(w[a], w[b])] = m(a, b);
            else entries[Root::sum(w[a], w[b])] = m(a, b);
        }
    return LinearForm::finsupport(entries);
}

}  // namespace testing_support

namespace nilcascade {

inline void PrintTo(const Root& r, std::ostream* os) { *os << to_string(r); }
inline void PrintTo(const SymPoly& f, std::ostream* os) { *os << to_string(f); }
inline void PrintTo(const Matrix& m, std::ostream* os) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        *os << (r ? "; " : "[");
        for (std::size_t c = 0; c < m.cols(); ++c) *os << (c ? " " : "") << to_string(m(r, c));
    }
    *os << "]";
}

}  // namespace nilcascade
