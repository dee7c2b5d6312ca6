#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "support.hpp"

using namespace nilcascade;

namespace {

using Kind = UpperRightPair::Kind;

std::vector<int> as_vector(const std::set<int>& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(CriterionMatrix, Examples) {
    auto a = OrderSpec::natural(SystemType::A);
    auto lam = LinearForm::finsupport({{Root::diff(1, 4), 1}});
    Matrix want(2, 2);
    want(0, 0) = 1;
    EXPECT_EQ(lambda_matrix(lam, UpperRightPair::general(2, 4), a, {1, 2}, {4, 5}), want);

    auto c = OrderSpec::natural(SystemType::C);
    Matrix six(1, 1);
    six(0, 0) = 6;
    EXPECT_EQ(lambda_matrix(LinearForm::finsupport({{Root::twice(1), 3}}), UpperRightPair::diagonal(1), c, {1}, {1}), six);

    auto d = OrderSpec::natural(SystemType::D);
    auto dl = LinearForm::finsupport({{Root::sum(1, 2), 2}, {Root::sum(1, 3), 5}});
    Matrix dm = lambda_matrix(dl, UpperRightPair::diagonal(3), d, {1, 2, 3}, {1, 2, 3});
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(dm(k, k), 0);
    EXPECT_EQ(dm.transpose(), dm.scaled(-1));
    EXPECT_EQ(dm(0, 1), 2);
}

TEST(CriterionMatrix, RejectsIndicesOutsideTheRegion) {
    auto a = OrderSpec::natural(SystemType::A);
    auto lam = LinearForm::finsupport({});
    EXPECT_THROW(lambda_matrix(lam, UpperRightPair::general(2, 4), a, {3}, {4}), ValidationError);
    EXPECT_THROW(lambda_matrix(lam, UpperRightPair::general(2, 4), a, {1}, {3}), ValidationError);
    EXPECT_THROW(lambda_matrix(lam, UpperRightPair::diagonal(1), a, {1}, {1}), ValidationError);
}

TEST(CriterionRank, Examples) {
    auto a = OrderSpec::natural(SystemType::A);
    auto lam = LinearForm::finsupport({{Root::diff(1, 2), 1}});
    auto beyond = rank_not_maximal(lam, UpperRightPair::general(2, 5), a);
    EXPECT_TRUE(beyond.not_maximal);
    EXPECT_EQ(beyond.rank, 0u);
    auto single = rank_not_maximal(lam, UpperRightPair::general(1, 2), a);
    EXPECT_FALSE(single.not_maximal);
    EXPECT_EQ(single.rank, 1u);
    EXPECT_EQ(single.row_count, 1u);
    EXPECT_FALSE(single.col_count.has_value());

    auto cauchy = LinearForm::cauchy(RationalStream::arith(1, 1), RationalStream::arith(0, 1));
    for (auto p : {UpperRightPair::general(1, 2), UpperRightPair::general(3, 4), UpperRightPair::general(5, 9)})
        EXPECT_FALSE(rank_not_maximal(cauchy, p, a).not_maximal);
}

TEST(CriterionRank, CauchyMinorsAreNonzero) {
    // Independent check of the analytic certificate on finite minors.
    auto a = OrderSpec::natural(SystemType::A);
    auto cauchy = LinearForm::cauchy(RationalStream::arith(1, 1), RationalStream::arith(Rational(1, 2), 1));
    for (int i = 1; i <= 4; ++i) {
        std::vector<int> rows, cols;
        for (int x = 1; x <= i; ++x) rows.push_back(x);
        for (int x = i + 1; x <= 2 * i; ++x) cols.push_back(x);
        Matrix m = lambda_matrix(cauchy, UpperRightPair::general(i, i + 1), a, rows, cols);
        EXPECT_EQ(rank(m), static_cast<std::size_t>(i));
    }
}

TEST(CriterionRank, MonotoneInTheWindowAndStableBeyondTheSupport) {
    std::mt19937_64 rng(107);
    auto a = OrderSpec::natural(SystemType::A);
    for (int t = 0; t < 30; ++t) {
        auto lam = testing_support::random_window_form(rng, a, {1, 2, 3, 4, 5, 6});
        auto p = UpperRightPair::general(3, 4);
        std::set<int> w;
        std::size_t last = 0;
        for (int x = 1; x <= 9; ++x) {
            w.insert(x);
            std::size_t r = window_rank(lam, p, a, w);
            EXPECT_GE(r, last);
            if (x > 6) {
                EXPECT_EQ(r, last);
            }
            last = r;
        }
    }
}

TEST(CriterionRank, InvariantUnderTheWindowGroup) {
    std::mt19937_64 rng(109);
    for (auto s : {SystemType::A, SystemType::B, SystemType::C, SystemType::D}) {
        auto o = OrderSpec::natural(s);
        auto w = Window(o, {1, 2, 3, 4});
        NilAlgebra alg(w);
        for (int t = 0; t < 10; ++t) {
            auto mu = testing_support::random_sparse(rng, alg.dim());
            auto x = testing_support::random_sparse(rng, alg.dim());
            auto before = form_from_coords(alg, mu);
            auto after = form_from_coords(alg, coadjoint_act_series(alg, x, mu));
            std::vector<UpperRightPair> pairs;
            if (s == SystemType::A) pairs = {UpperRightPair::general(1, 2), UpperRightPair::general(2, 3), UpperRightPair::general(2, 4)};
            else pairs = {UpperRightPair::diagonal(1), UpperRightPair::diagonal(2), UpperRightPair::diagonal(4)};
            for (auto& p : pairs)
                EXPECT_EQ(window_rank(after, p, o, {1, 2, 3, 4}), window_rank(before, p, o, {1, 2, 3, 4})) << to_char(s) << " " << to_string(p);
        }
    }
}

TEST(CriterionLocus, Examples) {
    auto a = OrderSpec::natural(SystemType::A);
    std::set<int> w{1, 2, 3, 4, 5, 6, 7, 8};
    auto zero = rank_locus_equivalence(LinearForm::finsupport({}), UpperRightPair::general(4, 5), 2, w, a);
    EXPECT_TRUE(zero.equivalent);
    EXPECT_TRUE(zero.generators_vanish);
    EXPECT_TRUE(zero.rank_below);

    std::map<Root, Rational> identity;
    for (int k = 1; k <= 4; ++k) identity[Root::diff(k, k + 4)] = 1;
    auto full = rank_locus_equivalence(LinearForm::finsupport(identity), UpperRightPair::general(4, 5), 2, w, a);
    EXPECT_TRUE(full.equivalent);
    EXPECT_EQ(full.rank, 4u);
    EXPECT_FALSE(full.generators_vanish);
    EXPECT_FALSE(full.rank_below);
}

TEST(CriterionLocus, RandomWindowsForEveryPairKind) {
    std::mt19937_64 rng(113);
    struct Case {
        SystemType s;
        Kind kind;
    };
    for (auto [s, kind] : std::vector<Case>{{SystemType::A, Kind::General}, {SystemType::C, Kind::Diagonal}, {SystemType::B, Kind::Diagonal},
                                            {SystemType::D, Kind::Diagonal}, {SystemType::B, Kind::MaxRow}, {SystemType::D, Kind::MaxRow}}) {
        int both = 0, neither = 0;
        for (int t = 0; t < 60; ++t) {
            auto o = t % 2 ? OrderSpec::natural(s) : OrderSpec::interleaved(s);
            if (kind == Kind::MaxRow && !o.max_element()) o = OrderSpec::natural(s);
            auto w = testing_support::random_window(rng, 8, 6);
            if (kind == Kind::MaxRow) w.insert(*o.max_element());
            auto idx = o.sorted_descending(as_vector(w));
            auto lam = testing_support::random_window_form(rng, o, idx);
            std::uniform_int_distribution<std::size_t> pos(0, idx.size() - 2);
            UpperRightPair p;
            std::size_t k = 1;
            switch (kind) {
                case Kind::General: {
                    std::size_t a = pos(rng);
                    std::uniform_int_distribution<std::size_t> later(a + 1, idx.size() - 1);
                    p = UpperRightPair::general(idx[a], idx[later(rng)]);
                    k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
                    break;
                }
                case Kind::Diagonal:
                    p = UpperRightPair::diagonal(idx[std::uniform_int_distribution<std::size_t>(1, idx.size() - 1)(rng)]);
                    k = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
                    break;
                case Kind::MaxRow: {
                    std::vector<int> rest;
                    for (int x : idx)
                        if (x != *o.max_element()) rest.push_back(x);
                    p = UpperRightPair::maxrow(rest[std::uniform_int_distribution<std::size_t>(0, rest.size() - 1)(rng)]);
                    break;
                }
            }
            auto res = rank_locus_equivalence(lam, p, k, w, o);
            EXPECT_TRUE(res.equivalent) << to_char(s) << " " << to_string(p) << " k=" << k << " rank=" << res.rank;
            if (res.generators_vanish && res.rank_below) ++both;
            if (!res.generators_vanish && !res.rank_below) ++neither;
        }
        EXPECT_GT(both, 0) << to_char(s);
        EXPECT_GT(neither, 0) << to_char(s);
    }
}

TEST(CriterionVerdict, FinSupportUnderTheNaturalOrder) {
    auto a = OrderSpec::natural(SystemType::A);
    auto lam = LinearForm::finsupport({{Root::diff(1, 2), 1}, {Root::diff(2, 3), Rational(-1, 2)}});
    auto v = nontriviality_verdict(a, lam);
    ASSERT_EQ(v.kind, Verdict::Kind::Nonzero);
    ASSERT_TRUE(v.pair.has_value());
    ASSERT_TRUE(v.rank_certificate.has_value());
    EXPECT_TRUE(v.rank_certificate->not_maximal);
    EXPECT_EQ(v.k, *v.rank_certificate->rank + 1);

    // The witness ideal vanishes at λ on a window covering the support.
    std::set<int> w{1, 2, 3, 4, 5, 6};
    auto gens = ideal_generators(*v.pair, v.k, w, a);
    for (auto& g : gens.generators) EXPECT_EQ(g.evaluate(lam), 0) << to_string(g);
}

TEST(CriterionVerdict, WitnessIdealsVanishForRandomFinSupport) {
    std::mt19937_64 rng(127);
    for (auto s : {SystemType::A, SystemType::B, SystemType::D}) {
        auto o = OrderSpec::natural(s);
        if (!cascade(o, 1).roots.empty()) continue;
        for (int t = 0; t < 20; ++t) {
            auto lam = testing_support::random_window_form(rng, o, {1, 2, 3, 4});
            auto v = nontriviality_verdict(o, lam);
            ASSERT_EQ(v.kind, Verdict::Kind::Nonzero) << to_char(s);
            ASSERT_TRUE(v.pair.has_value());
            std::set<int> w{1, 2, 3, 4, 5, 6, 7};
            for (auto& g : ideal_generators(*v.pair, v.k, w, o).generators) EXPECT_EQ(g.evaluate(lam), 0);
        }
    }
}

TEST(CriterionVerdict, CauchyIsZero) {
    auto a = OrderSpec::natural(SystemType::A);
    auto v = nontriviality_verdict(a, LinearForm::cauchy(RationalStream::arith(1, 1), RationalStream::arith(0, 1)));
    EXPECT_EQ(v.kind, Verdict::Kind::Zero);
    EXPECT_FALSE(v.pair.has_value());
    EXPECT_THROW(rank_not_maximal(LinearForm::cauchy(RationalStream::arith(1, 1), RationalStream::arith(0, 1)),
                                  UpperRightPair::diagonal(1), OrderSpec::natural(SystemType::D)),
                 ValidationError);
}

TEST(CriterionVerdict, NonemptyCascadeDecides) {
    auto c = nontriviality_verdict(OrderSpec::natural(SystemType::C), LinearForm::finsupport({}));
    EXPECT_EQ(c.kind, Verdict::Kind::Nonzero);
    EXPECT_EQ(c.cascade_witness, Root::twice(1));
    auto i = nontriviality_verdict(OrderSpec::interleaved(SystemType::A),
                                   LinearForm::cauchy(RationalStream::arith(1, 1), RationalStream::arith(0, 1)));
    EXPECT_EQ(i.kind, Verdict::Kind::Nonzero);
    EXPECT_EQ(i.cascade_witness, Root::diff(1, 2));
}

TEST(CriterionVerdict, TableFormIsUndeterminedWithAReport) {
    auto a = OrderSpec::natural(SystemType::A);
    auto w = Window(a, {1, 2, 3, 4});
    NilAlgebra alg(w);
    std::map<Root, Rational> entries;
    for (auto& r : alg.basis()) entries[r] = 1;
    auto v = nontriviality_verdict(a, LinearForm::table(w, entries));
    EXPECT_EQ(v.kind, Verdict::Kind::Undetermined);
    ASSERT_FALSE(v.window_report.empty());
    EXPECT_EQ(v.window_report.front().size, 2u);
    EXPECT_EQ(v.window_report.front().rank, 1u);
}

TEST(CriterionVerdict, Deterministic) {
    auto a = OrderSpec::natural(SystemType::A);
    auto lam = LinearForm::finsupport({{Root::diff(2, 5), 3}, {Root::diff(1, 3), 1}});
    auto v1 = nontriviality_verdict(a, lam), v2 = nontriviality_verdict(a, lam);
    EXPECT_EQ(v1.pair, v2.pair);
    EXPECT_EQ(v1.k, v2.k);
    EXPECT_EQ(v1.certificate, v2.certificate);
}
