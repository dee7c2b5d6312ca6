#pragma once

// Kostant cascades: the inductive construction over an order, and the
// closed-form finite cascades.

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rootsys.hpp"

namespace nilcascade {

struct CascadeState {
    std::set<int> consumed;   // N_k
    std::vector<Root> emitted;  // β_1, …, β_k
};

/// One step of the table: the next cascade root and the new state, or
/// nothing when the required extremum does not exist.
inline std::optional<std::pair<Root, CascadeState>> cascade_step(const CascadeState& state, const OrderSpec& order) {
    auto top = order.max_remaining(state.consumed);
    if (!top) return std::nullopt;
    CascadeState next = state;
    Root r;
    switch (order.system()) {
        case SystemType::A: {
            auto low = order.min_remaining(state.consumed);
            if (!low || *low == *top) return std::nullopt;
            r = Root::diff(*top, *low);
            next.consumed.insert({*top, *low});
            break;
        }
        case SystemType::C:
            r = Root::twice(*top);
            next.consumed.insert(*top);
            break;
        case SystemType::B:
        case SystemType::D: {
            auto without = state.consumed;
            without.insert(*top);
            auto second = order.max_remaining(without);
            if (!second) return std::nullopt;
            r = Root::sum(*top, *second);
            next.consumed.insert({*top, *second});
            break;
        }
    }
    next.emitted.push_back(r);
    return std::make_pair(r, std::move(next));
}

struct CascadeResult {
    std::vector<Root> roots;
    bool terminated = false;  // the cascade ended before reaching the limit
    std::vector<std::set<int>> windows;  // N_1, …, N_k
};

inline CascadeResult cascade(const OrderSpec& order, std::size_t limit) {
    CascadeResult out;
    CascadeState state;
    while (out.roots.size() < limit) {
        auto step = cascade_step(state, order);
        if (!step) {
            out.terminated = true;
            break;
        }
        state = std::move(step->second);
        out.roots.push_back(step->first);
        out.windows.push_back(state.consumed);
    }
    return out;
}

/// The maximal strongly orthogonal set of the finite system of the given
/// rank: A_{n-1}: ε_i − ε_{n−i+1}; C_n: 2ε_i; B_n, D_n: ε_{2i−1} ∓ ε_{2i},
/// plus ε_n for B_n with n odd.  For A the rank is the matrix size n.
inline std::vector<Root> finite_cascade(SystemType s, int n) {
    if (n < min_rank(s))
        throw ValidationError("bad_rank", std::string("rank ") + std::to_string(n) + " is below the minimum for type " + to_char(s));
    std::vector<Root> out;
    switch (s) {
        case SystemType::A:
            for (int i = 1; i <= n / 2; ++i) out.push_back(Root::diff(i, n - i + 1));
            break;
        case SystemType::C:
            for (int i = 1; i <= n; ++i) out.push_back(Root::twice(i));
            break;
        case SystemType::B:
        case SystemType::D:
            for (int i = 1; 2 * i <= n; ++i) {
                out.push_back(Root::diff(2 * i - 1, 2 * i));
                out.push_back(Root::sum(2 * i - 1, 2 * i));
            }
            if (s == SystemType::B && n % 2 == 1) out.push_back(Root::unit(n));
            break;
    }
    return out;
}

/// Neither β + β' nor β − β' is a root.
inline bool strongly_orthogonal(SystemType s, const Root& a, const Root& b) {
    auto ca = a.coords(), cb = b.coords();
    auto plus = ca, minus = ca;
    for (auto [k, v] : cb) {
        plus[k] += v;
        minus[k] -= v;
    }
    return !is_root_vector(s, plus) && !is_root_vector(s, minus);
}

}  // namespace nilcascade
