#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "error.hpp"

namespace nilcascade {

using Rational = mpq_class;

/// Canonical "p/q" form, q > 0 and gcd(p, q) = 1. Integers keep the "/1".
inline std::string to_string(const Rational& r) {
    Rational c(r);
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Accepts "p", "p/q", with an optional leading sign on p.
inline Rational parse_rational(std::string_view text) {
    auto bad = [&] {
        return ValidationError("bad_rational", "not a rational number: '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad();
    auto digits = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t k = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) k = 1;
        if (k == s.size()) return false;
        for (; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) throw bad();
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    mpz_class p(n), q{std::string(den)};
    if (q == 0) throw ValidationError("bad_rational", "zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline Rational factorial(unsigned n) {
    mpz_class f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return Rational(f);
}

}  // namespace nilcascade
