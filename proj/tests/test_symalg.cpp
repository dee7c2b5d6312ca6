#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "support.hpp"

using namespace nilcascade;

namespace {

SymPoly v(const char* root) { return SymPoly::var(parse_root(root)); }

// ∂f/∂e_r.
SymPoly derivative(const SymPoly& f, const Root& r) {
    SymPoly out;
    for (auto& [m, c] : f.terms())
        for (std::size_t k = 0; k < m.size(); ++k)
            if (m[k].first == r) out.add_term(mono_drop(m, k), c * m[k].second);
    return out;
}

// {f, g}(λ) = λ([df_λ, dg_λ]) with the differentials taken at λ.
Rational bracket_at(const SymPoly& f, const SymPoly& g, const NilAlgebra& alg, const RVec& lambda) {
    auto form = form_from_coords(alg, lambda);
    RVec df(alg.dim()), dg(alg.dim());
    for (std::size_t k = 0; k < alg.dim(); ++k) {
        df[k] = derivative(f, alg.root(k)).evaluate(form);
        dg[k] = derivative(g, alg.root(k)).evaluate(form);
    }
    auto br = alg.bracket(df, dg);
    Rational total = 0;
    for (std::size_t k = 0; k < alg.dim(); ++k) total += lambda[k] * br[k];
    return total;
}

SymPoly random_poly(std::mt19937_64& rng, const NilAlgebra& alg, int terms, unsigned max_degree) {
    std::uniform_int_distribution<std::size_t> pick(0, alg.dim() - 1);
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    SymPoly f;
    for (int t = 0; t < terms; ++t) {
        SymPoly m = SymPoly::constant(testing_support::random_rational(rng));
        for (unsigned d = deg(rng); d > 0; --d) m = m * SymPoly::var(alg.root(pick(rng)));
        f += m;
    }
    return f;
}

}  // namespace

TEST(SymalgArithmetic, RingOperations) {
    auto x = v("e1-e2"), y = v("e2-e3");
    EXPECT_EQ((x + y) * (x - y), x.pow(2) - y.pow(2));
    EXPECT_TRUE((x - x).is_zero());
    EXPECT_EQ((x + y).pow(3).coeff({{parse_root("e1-e2"), 2}, {parse_root("e2-e3"), 1}}), 3);
    EXPECT_EQ((x * y).degree(), 2u);
    EXPECT_EQ(((x * y) + x + SymPoly::constant(4)).homogeneous_part(1), x);
    EXPECT_EQ(Rational(0) * x, SymPoly());
}

TEST(SymalgEvaluate, Examples) {
    auto a4 = NilAlgebra::standard(SystemType::A, 4);
    auto lam = LinearForm::finsupport({{parse_root("e1-e2"), Rational(3, 2)}});
    EXPECT_EQ(v("e1-e2").evaluate(lam), Rational(3, 2));
    EXPECT_EQ(SymPoly::constant(1).evaluate(lam), 1);

    std::map<Root, Rational> ones;
    for (auto r : {"e1-e3", "e1-e4", "e2-e3", "e2-e4"}) ones[parse_root(r)] = 1;
    auto minor = v("e1-e3") * v("e2-e4") - v("e1-e4") * v("e2-e3");
    EXPECT_EQ(minor.evaluate(LinearForm::finsupport(ones)), 0);
    (void)a4;
}

TEST(SymalgPoisson, Examples) {
    auto a3 = NilAlgebra::standard(SystemType::A, 3);
    auto x = v("e1-e2"), y = v("e2-e3");
    EXPECT_EQ(poisson_bracket(x, y, a3), v("e1-e3"));
    EXPECT_TRUE(poisson_bracket(x, x, a3).is_zero());
    EXPECT_EQ(poisson_bracket(x, y.pow(2), a3), Rational(2) * (y * v("e1-e3")));
    EXPECT_TRUE(poisson_bracket(SymPoly::constant(7), y, a3).is_zero());
}

TEST(SymalgPoisson, UnknownVariableRejected) {
    auto a3 = NilAlgebra::standard(SystemType::A, 3);
    EXPECT_THROW(poisson_bracket(v("e1-e4"), v("e1-e2"), a3), ValidationError);
}

TEST(SymalgPoisson, AgreesWithPointwiseDifferentials) {
    std::mt19937_64 rng(23);
    for (auto s : {SystemType::A, SystemType::B, SystemType::C, SystemType::D}) {
        auto alg = NilAlgebra::standard(s, 3);
        for (int t = 0; t < 15; ++t) {
            auto f = random_poly(rng, alg, 4, 3), g = random_poly(rng, alg, 4, 3);
            auto lam = testing_support::random_vector(rng, alg.dim());
            EXPECT_EQ(poisson_bracket(f, g, alg).evaluate(form_from_coords(alg, lam)), bracket_at(f, g, alg, lam));
        }
    }
}

TEST(SymalgPoisson, AntisymmetryLeibnizJacobi) {
    std::mt19937_64 rng(29);
    for (auto s : {SystemType::A, SystemType::C, SystemType::D}) {
        auto alg = NilAlgebra::standard(s, 4);
        for (int t = 0; t < 10; ++t) {
            auto f = random_poly(rng, alg, 3, 2), g = random_poly(rng, alg, 3, 2), h = random_poly(rng, alg, 3, 2);
            auto pb = [&](const SymPoly& a, const SymPoly& b) { return poisson_bracket(a, b, alg); };
            EXPECT_EQ(pb(f, g), -pb(g, f));
            EXPECT_EQ(pb(f, g * h), pb(f, g) * h + g * pb(f, h));
            EXPECT_TRUE((pb(f, pb(g, h)) + pb(g, pb(h, f)) + pb(h, pb(f, g))).is_zero());
        }
    }
}

TEST(SymalgPoisson, LinearPolynomialsBracketLikeTheLieAlgebra) {
    std::mt19937_64 rng(31);
    auto alg = NilAlgebra::standard(SystemType::B, 3);
    for (int t = 0; t < 20; ++t) {
        auto x = testing_support::random_sparse(rng, alg.dim()), y = testing_support::random_sparse(rng, alg.dim());
        EXPECT_EQ(poisson_bracket(linear_poly(alg, x), linear_poly(alg, y), alg), linear_poly(alg, alg.bracket(x, y)));
    }
}
