#include <gtest/gtest.h>

#include <qbern/bernoulli.hpp>
#include <qbern/bernstein.hpp>

#include "test_support.hpp"

using namespace qbern;
using qbern::testing::Gen;
using qbern::testing::Q;
using qbern::testing::R;

namespace {

// B_0 = 1, Σ_{j=0}^{m} C(m+1,j) B_j = 0.
std::vector<Rational> bernoulli_by_recurrence(long max_m) {
    std::vector<Rational> b{R(1)};
    for (long m = 1; m <= max_m; ++m) {
        Rational s(0);
        for (long j = 0; j < m; ++j) s += binomial(m + 1, j) * b[static_cast<std::size_t>(j)];
        b.push_back(-s / binomial(m + 1, m));
    }
    return b;
}

} // namespace

TEST(BernoulliNumbers, OrderOne) {
    const auto t = bernoulli_numbers(1, 20);
    EXPECT_EQ(t.at(0), R(1));
    EXPECT_EQ(t.at(1), R(-1, 2));
    EXPECT_EQ(t.at(2), R(1, 6));
    EXPECT_EQ(t.at(3), R(0));
    EXPECT_EQ(t.values, bernoulli_by_recurrence(20));
    for (long m = 1; m <= 20; ++m) {
        Rational s(0);
        for (long j = 0; j <= m; ++j) s += binomial(m + 1, j) * t.at(j);
        EXPECT_EQ(s, R(0)) << m;
    }
    for (long j = 1; 2 * j + 1 <= 20; ++j) EXPECT_EQ(t.at(2 * j + 1), R(0));
}

TEST(BernoulliNumbers, HigherOrders) {
    for (long k = 1; k <= 5; ++k) EXPECT_EQ(bernoulli_numbers(k, 6).at(0), R(1));
    // (1 - t/2 + t^2/12 - ...)^2 = 1 - t + (1/4 + 1/6) t^2 + ...; coefficient of t times 1!
    const auto t2 = bernoulli_numbers(2, 4);
    EXPECT_EQ(t2.at(1), R(-1));
    EXPECT_EQ(t2.at(2), R(5, 12) * R(2));
    EXPECT_THROW(bernoulli_numbers(0, 4), DomainError);
}

TEST(BernoulliNumbers, OrderAdditivity) {
    // B_m^(a+b) = Σ_j C(m,j) B_j^(a) B_{m-j}^(b)
    for (long a = 1; a <= 4; ++a)
        for (long b = 1; a + b <= 4; ++b) {
            const auto ta = bernoulli_numbers(a, 12), tb = bernoulli_numbers(b, 12), tab = bernoulli_numbers(a + b, 12);
            for (long m = 0; m <= 12; ++m) {
                Rational s(0);
                for (long j = 0; j <= m; ++j) s += binomial(m, j) * ta.at(j) * tb.at(m - j);
                EXPECT_EQ(s, tab.at(m)) << a << "+" << b << " m=" << m;
            }
        }
}

TEST(QBernoulli, Examples) {
    for (const auto& q : qbern::testing::sample_qs()) {
        EXPECT_EQ(q_bernoulli(0, 2, R(3, 7), q), R(1));
        EXPECT_EQ(q_bernoulli(1, 1, R(3, 7), q), R(3, 7) - R(1, 2));
    }
    // q = 1: classical B_n(x); B_2(x) = x^2 - x + 1/6
    const Rational x = R(2, 5);
    EXPECT_EQ(q_bernoulli(2, 1, x, Q(1, 1)), x * x - x + R(1, 6));
}

TEST(QBernoulli, ClassicalCollapse) {
    Gen g(3);
    for (long k = 1; k <= 3; ++k)
        for (long n = 0; n <= 8; ++n) {
            const Rational x = g.rational();
            EXPECT_EQ(q_bernoulli(n, k, x, Q(1, 1)), bernoulli_polynomial_classical(n, k, x));
        }
}

TEST(QBernoulli, UmbralExamples) {
    EXPECT_EQ(q_bernoulli_umbral(0, 1, R(1, 3), Q(1, 2)), R(1));
    // x = 0: every (1-0)_q^j is 1
    for (long n = 0; n <= 5; ++n) {
        const QParam q = Q(2, 3);
        const auto table = bernoulli_numbers(2, n);
        Rational expected(0);
        for (long m = 0; m <= n; ++m)
            expected += gauss_binom(n, m, q) * q_factorial(m, q) / factorial(m) * table.at(m);
        EXPECT_EQ(q_bernoulli_umbral(n, 2, R(0), q), expected);
    }
    EXPECT_EQ(q_bernoulli_umbral(1, 1, R(1, 2), Q(1, 2)), R(0));
}

TEST(BernsteinClosedForm, Examples) {
    for (const auto& q : qbern::testing::sample_qs()) EXPECT_EQ(theorem10_rhs(1, 1, R(2, 7), q), R(2, 7));
    EXPECT_EQ(theorem10_rhs(1, 2, R(1, 2), Q(1, 2)), R(3, 8));
    EXPECT_EQ(theorem10_rhs(2, 5, R(0), Q(1, 3)), R(0));
    EXPECT_THROW(theorem10_rhs(0, 2, R(1, 2), Q(1, 2)), DomainError);
}

TEST(SeriesOracle, Examples) {
    EXPECT_EQ(genfun30_coefficient(3, 2, R(1, 2), Q(1, 2)), R(0));
    EXPECT_EQ(genfun30_coefficient(3, 3, R(2, 5), Q(1, 3)), pow(R(2, 5), 3));
    EXPECT_EQ(genfun30_coefficient(1, 3, R(1, 3), Q(1, 2)), basis_poly(1, 3, Q(1, 2)).eval(R(1, 3)));
}

TEST(BernsteinClosedForm, AllRoutesAgree) {
    Gen g(77);
    for (long k = 1; k <= 3; ++k)
        for (long l = 0; l <= 6; ++l)
            for (int s = 0; s < 8; ++s) {
                const Rational x = g.unit();
                const QParam q(g.unit());
                const Rational basis = basis_poly(k, l, q).eval(x);
                EXPECT_EQ(genfun30_coefficient(k, l, x, q), basis);
                EXPECT_EQ(theorem10_rhs(k, l, x, q), basis) << k << "," << l;
                EXPECT_EQ(theorem10_rhs(k, l, x, q, ClosedFormVariant::forward_difference), basis) << k << "," << l;
            }
}
