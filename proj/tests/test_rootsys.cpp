#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "support.hpp"

using namespace nilcascade;

namespace {

std::vector<Root> roots_of(std::initializer_list<const char*> names) {
    std::vector<Root> out;
    for (auto n : names) out.push_back(parse_root(n));
    std::sort(out.begin(), out.end());
    return out;
}

// All vectors ±ε_i±ε_j, ±2ε_i, ±ε_i of the type that are positive in the
// lexicographic sense (first nonzero coordinate positive).
std::set<std::map<int, int>> brute_positive(SystemType s, int n) {
    std::set<std::map<int, int>> out;
    auto keep = [&](std::map<int, int> c) {
        std::erase_if(c, [](auto& kv) { return kv.second == 0; });
        if (c.empty() || c.begin()->second <= 0) return;
        if (is_root_vector(s, c)) out.insert(c);
    };
    for (int i = 1; i <= n; ++i)
        for (int a : {-2, -1, 1, 2}) {
            keep({{i, a}});
            for (int j = 1; j <= n; ++j)
                for (int b : {-1, 1})
                    if (i != j && (a == 1 || a == -1)) keep({{i, a}, {j, b}});
        }
    return out;
}

// Position key of an index in an order given by explicit prefixes.
int rank_in(const std::vector<int>& descending, int x) {
    return static_cast<int>(std::find(descending.begin(), descending.end(), x) - descending.begin());
}

}  // namespace

TEST(RootsysPositiveRoots, SmallRanks) {
    EXPECT_EQ(positive_roots(SystemType::A, 3), roots_of({"e1-e2", "e1-e3", "e2-e3"}));
    EXPECT_EQ(positive_roots(SystemType::C, 2), roots_of({"e1-e2", "e1+e2", "2e1", "2e2"}));
    EXPECT_EQ(positive_roots(SystemType::D, 2), roots_of({"e1-e2", "e1+e2"}));
    EXPECT_EQ(positive_roots(SystemType::B, 1), roots_of({"e1"}));
}

TEST(RootsysPositiveRoots, RankBelowMinimumRejected) {
    EXPECT_THROW(positive_roots(SystemType::D, 1), ValidationError);
    EXPECT_THROW(positive_roots(SystemType::A, 0), ValidationError);
}

TEST(RootsysPositiveRoots, MatchLexicographicBruteForce) {
    for (auto s : {SystemType::A, SystemType::B, SystemType::C, SystemType::D})
        for (int n = min_rank(s); n <= 6; ++n) {
            std::set<std::map<int, int>> got;
            for (auto& r : positive_roots(s, n)) got.insert(r.coords());
            EXPECT_EQ(got, brute_positive(s, n)) << to_char(s) << n;
        }
}

TEST(RootsysPositiveRoots, CountsFollowTypeFormulas) {
    for (int n = 2; n <= 8; ++n) {
        std::size_t nn = static_cast<std::size_t>(n);
        EXPECT_EQ(positive_roots(SystemType::A, n).size(), nn * (nn - 1) / 2);
        EXPECT_EQ(positive_roots(SystemType::B, n).size(), nn * nn);
        EXPECT_EQ(positive_roots(SystemType::C, n).size(), nn * nn);
        EXPECT_EQ(positive_roots(SystemType::D, n).size(), nn * (nn - 1));
    }
}

TEST(RootsysRoot, ParseAndPrintRoundTrip) {
    for (auto s : {"e1-e2", "e3-e2", "e1+e7", "2e4", "e5", "e10-e12"}) EXPECT_EQ(to_string(parse_root(s)), s);
    EXPECT_EQ(parse_root("e7+e1"), Root::sum(1, 7));
    EXPECT_EQ(to_string(parse_root("e7+e1")), "e1+e7");
}

TEST(RootsysRoot, MalformedRootsRejected) {
    for (auto s : {"", "e", "e1-e1", "e0", "2e0", "x1", "e1*e2", "e1-", "e1-e2-e3", "2e1+e2", "e-1"})
        EXPECT_THROW(parse_root(s), ValidationError) << s;
}

TEST(RootsysRoot, KindsAllowedPerType) {
    EXPECT_FALSE(kind_allowed(SystemType::A, RootKind::Sum));
    EXPECT_TRUE(kind_allowed(SystemType::B, RootKind::Short));
    EXPECT_FALSE(kind_allowed(SystemType::B, RootKind::Double));
    EXPECT_TRUE(kind_allowed(SystemType::C, RootKind::Double));
    EXPECT_FALSE(kind_allowed(SystemType::D, RootKind::Short));
}

TEST(RootsysOrder, InterleavedComparisons) {
    auto o = OrderSpec::interleaved(SystemType::A);
    EXPECT_EQ(o.compare(1, 3), Cmp::Greater);
    EXPECT_EQ(o.compare(5, 5), Cmp::Equal);
    EXPECT_EQ(o.compare(4, 2), Cmp::Greater);
    EXPECT_EQ(o.compare(2, 4), Cmp::Less);
    EXPECT_EQ(o.compare(99, 100), Cmp::Greater);
}

TEST(RootsysOrder, Extrema) {
    auto nat = OrderSpec::natural(SystemType::A);
    EXPECT_EQ(nat.max_remaining({1, 2}), 3);
    EXPECT_FALSE(nat.min_element().has_value());
    auto inter = OrderSpec::interleaved(SystemType::A);
    EXPECT_EQ(inter.max_element(), 1);
    EXPECT_EQ(inter.min_element(), 2);
    auto rev = OrderSpec::reversed(SystemType::A);
    EXPECT_FALSE(rev.max_element().has_value());
    EXPECT_EQ(rev.min_element(), 1);
}

TEST(RootsysOrder, CountsAboveAndBelow) {
    auto nat = OrderSpec::natural(SystemType::A);
    EXPECT_EQ(nat.count_at_least(3), 3u);
    EXPECT_FALSE(nat.count_at_most(3).has_value());
    auto inter = OrderSpec::interleaved(SystemType::C);
    EXPECT_EQ(inter.count_at_most(4), 2u);
    EXPECT_FALSE(inter.count_at_least(4).has_value());
}

TEST(RootsysOrder, ComparisonsMatchExplicitListing) {
    std::vector<int> top = {4, 1, 6}, bottom = {2, 5, 3};
    OrderSpec o(SystemType::B, IndexStream::list(top), IndexStream::list(bottom));
    std::vector<int> desc = top;
    desc.insert(desc.end(), bottom.rbegin(), bottom.rend());
    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b) {
            Cmp want = a == b ? Cmp::Equal : (rank_in(desc, a) < rank_in(desc, b) ? Cmp::Greater : Cmp::Less);
            EXPECT_EQ(o.compare(a, b), want) << a << " " << b;
        }
    EXPECT_EQ(o.sorted_descending({1, 2, 3, 4, 5, 6}), desc);
    EXPECT_EQ(o.max_element(), 4);
    EXPECT_EQ(o.min_element(), 2);
}

TEST(RootsysOrder, InvalidOrdersRejected) {
    EXPECT_THROW(OrderSpec(SystemType::A, IndexStream::arith(1, 3), IndexStream::arith(2, 3)), ValidationError);
    EXPECT_THROW(OrderSpec(SystemType::A, IndexStream::arith(1, 1), IndexStream::list({2})), ValidationError);
    EXPECT_THROW(OrderSpec(SystemType::A, IndexStream::list({1, 3}), IndexStream::list({})), ValidationError);
    EXPECT_THROW(OrderSpec(SystemType::A, IndexStream::list({1, 1}), IndexStream::list({2})), ValidationError);
    EXPECT_NO_THROW(OrderSpec(SystemType::A, IndexStream::list({2, 1}), IndexStream::arith(3, 1)));
    EXPECT_THROW(OrderSpec(SystemType::A, IndexStream::arith(1, 3), IndexStream::list({})), ValidationError);
    EXPECT_NO_THROW(OrderSpec(SystemType::A, IndexStream::arith(1, 1), IndexStream::list({})));
}

TEST(RootsysOrder, TransitivityAndAntisymmetryOnRandomTriples) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> idx(1, 40);
    std::vector<OrderSpec> orders = {OrderSpec::natural(SystemType::A), OrderSpec::interleaved(SystemType::D),
                                     OrderSpec::reversed(SystemType::C),
                                     OrderSpec(SystemType::B, IndexStream::arith(2, 2), IndexStream::arith(1, 2)),
                                     OrderSpec(SystemType::A, IndexStream::list({5, 2}), IndexStream::list({1, 3, 4}))};
    for (auto& o : orders)
        for (int t = 0; t < 500; ++t) {
            int a = idx(rng), b = idx(rng), c = idx(rng);
            if (!o.covers(a) || !o.covers(b) || !o.covers(c)) continue;
            EXPECT_EQ(o.greater(a, b), o.compare(b, a) == Cmp::Less);
            EXPECT_EQ(o.compare(a, b) == Cmp::Equal, a == b);
            if (o.greater(a, b) && o.greater(b, c)) {
                EXPECT_TRUE(o.greater(a, c));
            }
        }
}

TEST(RootsysOrder, PositivityFollowsTheOrder) {
    auto inter = OrderSpec::interleaved(SystemType::C);
    EXPECT_TRUE(inter.is_positive(Root::diff(3, 4)));
    EXPECT_TRUE(inter.is_positive(Root::diff(4, 2)));
    EXPECT_FALSE(inter.is_positive(Root::diff(2, 4)));
    EXPECT_TRUE(inter.is_positive(Root::sum(2, 4)));
    EXPECT_TRUE(inter.is_positive(Root::twice(2)));
    EXPECT_FALSE(inter.is_positive(Root::unit(2)));
    EXPECT_THROW(inter.require_positive(Root::diff(2, 1)), ValidationError);
}

TEST(RootsysWindow, RelabelSortsDescending) {
    auto inter = OrderSpec::interleaved(SystemType::A);
    Window w(inter, {1, 2, 3, 4});
    EXPECT_EQ(w.indices(), (std::vector<int>{1, 3, 4, 2}));
    EXPECT_EQ(w.relabel(1), 1);
    EXPECT_EQ(w.relabel(4), 2);
    EXPECT_EQ(w.to_actual(Root::diff(2, 3)), Root::diff(3, 4));
    EXPECT_EQ(w.to_standard(Root::diff(4, 2)), Root::diff(3, 4));
    EXPECT_FALSE(w.to_standard(Root::diff(2, 4)).has_value());
    EXPECT_FALSE(w.to_standard(Root::diff(1, 5)).has_value());
}

TEST(RootsysWindow, RelabelIsABijectionOntoPositiveRoots) {
    std::mt19937_64 rng(3);
    for (auto s : {SystemType::A, SystemType::B, SystemType::C, SystemType::D})
        for (auto o : {OrderSpec::natural(s), OrderSpec::interleaved(s), OrderSpec::reversed(s)})
            for (int trial = 0; trial < 5; ++trial) {
                auto m = testing_support::random_window(rng, 9, 4);
                Window w(o, m);
                EXPECT_EQ(w.relabel(1), o.sorted_descending({m.begin(), m.end()}).front());
                std::set<Root> image;
                for (auto& r : positive_roots(s, 4)) {
                    Root a = w.to_actual(r);
                    EXPECT_TRUE(o.is_positive(a)) << to_string(a);
                    EXPECT_EQ(w.to_standard(a), r);
                    image.insert(a);
                }
                EXPECT_EQ(image.size(), positive_roots(s, 4).size());
            }
}

TEST(RootsysWindow, UncoveredIndexRejected) {
    auto o = OrderSpec::finite(SystemType::A, 4);
    EXPECT_THROW(Window(o, {1, 5}), ValidationError);
    EXPECT_THROW(Window(OrderSpec::natural(SystemType::D), {3}), ValidationError);
}
