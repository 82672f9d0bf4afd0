#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <qbern/approx.hpp>
#include <qbern/bernstein.hpp>

#include "test_support.hpp"

using namespace qbern;
using namespace qbern::approx;
using qbern::testing::Gen;
using qbern::testing::Q;
using qbern::testing::R;

namespace {

ExperimentConfig config(const std::string& fn, std::vector<long> degrees, QSchedule schedule, long grid = 101) {
    ExperimentConfig c;
    c.function = fn;
    c.degrees = std::move(degrees);
    c.schedule = std::move(schedule);
    c.grid_size = grid;
    return c;
}

QSchedule fixed(const Rational& q) { return QSchedule{ScheduleKind::fixed, q, {}}; }
QSchedule one_minus_inverse() { return QSchedule{}; }

std::vector<long> range(long lo, long hi) {
    std::vector<long> out;
    for (long n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("qbern_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Functions, Registry) {
    EXPECT_DOUBLE_EQ(lookup_function("exp").approx(1.0), std::exp(1.0));
    EXPECT_NEAR(lookup_function("sin-pi").approx(0.5), 1.0, 1e-15);
    EXPECT_EQ(lookup_function("abs-shift").exact(R(1, 5)), R(3, 10));
    EXPECT_EQ(lookup_function("runge").exact(R(1, 2)), R(1));
    EXPECT_EQ(lookup_function("runge").exact(R(0)), R(4, 29));
    EXPECT_DOUBLE_EQ(lookup_function("runge").approx(0.0), 4.0 / 29.0);
    const auto p = lookup_function("poly:1,-1/2,3");
    EXPECT_EQ(p.exact(R(2)), R(12));
    EXPECT_DOUBLE_EQ(p.approx(2.0), 12.0);
    EXPECT_FALSE(lookup_function("exp").has_exact());
    EXPECT_THROW(lookup_function("cosh"), UnknownFunction);
    EXPECT_THROW(lookup_function("poly:1,x"), ParseError);
}

TEST(Weights, MatchBasisPolynomials) {
    Gen g(5);
    for (int trial = 0; trial < 40; ++trial) {
        const long n = g.integer(0, 12);
        const QParam q(trial % 5 == 0 ? R(1) : g.unit());
        const Rational x = trial % 7 == 0 ? R(trial % 2) : g.unit();
        const auto w = basis_weights(n, x, q);
        ASSERT_EQ(w.size(), static_cast<std::size_t>(n + 1));
        Rational sum(0);
        for (long k = 0; k <= n; ++k) {
            EXPECT_EQ(w[static_cast<std::size_t>(k)], basis_poly(k, n, q).eval(x)) << n << "," << k;
            EXPECT_GE(w[static_cast<std::size_t>(k)].sign(), 0);
            sum += w[static_cast<std::size_t>(k)];
        }
        EXPECT_EQ(sum, R(1));
    }
}

TEST(Weights, ConversionIsAccurate) {
    const QParam q = Q(63, 64);
    const WeightKernel kernel(64, q);
    for (long i = 0; i <= 10; ++i) {
        const Rational x(i, 10);
        for (const auto& w : kernel.weights(x)) {
            const double exact = w.value().to_double();
            // both mantissas and the reference are truncated: < 3.5 * 2^-52 relative
            EXPECT_NEAR(w.to_double(), exact, 3.5 * 0x1p-52 * std::fabs(exact));
        }
    }
}

TEST(Weights, RejectsPointsOutsideUnitInterval) {
    EXPECT_THROW(basis_weights(3, R(3, 2), Q(1, 2)), DomainError);
    EXPECT_THROW(basis_weights(3, R(-1, 2), Q(1, 2)), DomainError);
}

TEST(Approximate, ReproducesConstantsAndIdentity) {
    for (const char* fn : {"poly:1", "poly:0,1"}) {
        for (const auto& q : {R(1, 2), R(9, 10), R(1)}) {
            const auto t = approximate(config(fn, range(1, 64), fixed(q)));
            ASSERT_EQ(t.rows.size(), 64U);
            for (const auto& r : t.rows) EXPECT_LE(r.sup_error, 1e-12) << fn << " n=" << r.n << " q=" << r.q;
        }
        for (const auto& r : approximate(config(fn, range(2, 64), one_minus_inverse())).rows)
            EXPECT_LE(r.sup_error, 1e-12) << fn << " n=" << r.n;
    }
}

TEST(Approximate, RungeDecreasesUnderDefaultSchedule) {
    const auto t = approximate(config("runge", {4, 8, 16, 32, 64}, one_minus_inverse()));
    ASSERT_EQ(t.rows.size(), 5U);
    for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_LT(t.rows[i].sup_error, t.rows[i - 1].sup_error);
    EXPECT_DOUBLE_EQ(t.rows[0].q, 0.75);
    EXPECT_DOUBLE_EQ(t.rows[4].q, 63.0 / 64.0);
}

TEST(Approximate, FixedQDoesNotConverge) {
    const auto t = approximate(config("runge", {4, 8, 16, 32, 64}, fixed(R(1, 2))));
    const double pinned[] = {0.56596591415767183, 0.55314733922908632, 0.5526562699152382, 0.55265441478459487,
                             0.5526544147562914};
    ASSERT_EQ(t.rows.size(), 5U);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(t.rows[i].sup_error, pinned[i], 1e-12) << t.rows[i].n;
    EXPECT_GT(t.rows.back().sup_error, 0.5);
}

TEST(Approximate, EndpointInterpolation) {
    for (const char* fn : {"exp", "sin-pi", "runge", "abs-shift"}) {
        const auto f = lookup_function(fn);
        for (long n : {1L, 5L, 17L}) {
            const QParam q = Q(2, 3);
            const WeightKernel kernel(n, q);
            std::vector<double> nodes;
            for (long k = 0; k <= n; ++k) nodes.push_back(f.approx((q_int(k, q) / q_int(n, q)).to_double()));
            EXPECT_EQ(operator_value(nodes, kernel, R(0)), f.approx(0.0)) << fn;
            EXPECT_EQ(operator_value(nodes, kernel, R(1)), f.approx(1.0)) << fn;
        }
    }
}

TEST(Approximate, ErrorOrdering) {
    for (const char* fn : {"exp", "sin-pi", "abs-shift", "runge"}) {
        QSchedule custom{ScheduleKind::custom, R(1), {R(1, 3), R(1), R(4, 5)}};
        const auto t = approximate(config(fn, {3, 1, 9}, custom, 33));
        ASSERT_EQ(t.rows.size(), 9U);
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            EXPECT_GE(t.rows[i].sup_error, t.rows[i].mean_error);
            EXPECT_GE(t.rows[i].mean_error, 0.0);
            if (i > 0) {
                const auto& a = t.rows[i - 1];
                const auto& b = t.rows[i];
                EXPECT_TRUE(a.n < b.n || (a.n == b.n && a.q < b.q));
            }
        }
    }
}

TEST(Approximate, MeanOverGridMatchesExactOperator) {
    // abs-shift has exact node values, so the binary64 result can be checked
    // against exact evaluation of the operator polynomial.
    const auto f = lookup_function("abs-shift");
    const long n = 7, grid = 11;
    const QParam q = Q(3, 4);
    const Poly op = operator_poly(f, n, q);
    double sup = 0.0, total = 0.0;
    for (long i = 0; i < grid; ++i) {
        const Rational x(i, grid - 1);
        const double err = std::fabs(op.eval(x).to_double() - f.approx(x.to_double()));
        sup = std::max(sup, err);
        total += err;
    }
    const auto t = approximate(config("abs-shift", {n}, fixed(R(3, 4)), grid));
    EXPECT_NEAR(t.rows[0].sup_error, sup, 1e-14);
    EXPECT_NEAR(t.rows[0].mean_error, total / grid, 1e-14);
}

TEST(Approximate, ConfigErrors) {
    EXPECT_THROW(approximate(config("nope", {4}, one_minus_inverse())), UnknownFunction);
    EXPECT_THROW(approximate(config("runge", {0}, fixed(R(1, 2)))), DomainError);
    EXPECT_THROW(approximate(config("runge", {1}, one_minus_inverse())), InvalidQ);
    EXPECT_THROW(approximate(config("runge", {4}, fixed(R(3, 2)))), InvalidQ);
    EXPECT_THROW(approximate(config("runge", {4}, fixed(R(1, 2)), 1)), DomainError);
}

TEST(Csv, EmptyTableIsHeaderOnly) {
    const auto path = temp_path("empty.csv");
    emit_csv(ErrorTable{}, path);
    EXPECT_EQ(slurp(path), "n,q,sup_error,mean_error\n");
    EXPECT_TRUE(read_csv(path).rows.empty());
    std::filesystem::remove(path);
}

TEST(Csv, OneRowIsTwoLines) {
    const auto path = temp_path("one.csv");
    emit_csv(ErrorTable{{{8, 0.875, 0.25, 0.125}}}, path);
    EXPECT_EQ(slurp(path), "n,q,sup_error,mean_error\n8,0.875,0.25,0.125\n");
    std::filesystem::remove(path);
}

TEST(Csv, RoundTripAndOrder) {
    const auto t = approximate(config("sin-pi", {9, 2, 5}, QSchedule{ScheduleKind::custom, R(1), {R(1, 3), R(1, 7)}}));
    const auto path = temp_path("rt.csv");
    emit_csv(t, path);
    EXPECT_EQ(read_csv(path), t);
    ErrorTable shuffled{{t.rows[3], t.rows[0], t.rows[5], t.rows[1], t.rows[4], t.rows[2]}};
    EXPECT_EQ(to_csv(shuffled), to_csv(t));
    std::filesystem::remove(path);
}

TEST(Csv, Errors) {
    EXPECT_THROW(emit_csv(ErrorTable{}, "/nonexistent-dir/x.csv"), IoError);
    EXPECT_THROW(read_csv("/nonexistent-dir/x.csv"), IoError);
    EXPECT_THROW(parse_csv("n,q\n"), ParseError);
    EXPECT_THROW(parse_csv("n,q,sup_error,mean_error\n1,0.5,abc,0\n"), ParseError);
}

TEST(Config, FromJson) {
    const auto a = config_from_json(json::parse(R"({"function":"exp","degrees":[3,6],"grid_size":21,
                                                    "schedule":{"fixed":"2/3"}})"));
    EXPECT_EQ(a.function, "exp");
    EXPECT_EQ(a.degrees, (std::vector<long>{3, 6}));
    EXPECT_EQ(a.grid_size, 21);
    EXPECT_EQ(a.schedule.kind, ScheduleKind::fixed);
    EXPECT_EQ(a.schedule.fixed, R(2, 3));
    const auto b = config_from_json(json::parse(R"({"schedule":{"custom":["1/2","1"]}})"));
    EXPECT_EQ(b.schedule.custom, (std::vector<Rational>{R(1, 2), R(1)}));
    EXPECT_EQ(config_from_json(json::parse(R"({"schedule":"one-minus-inverse"})")).schedule.kind,
              ScheduleKind::one_minus_inverse);
    EXPECT_THROW(config_from_json(json::parse(R"({"schedule":"geometric"})")), ParseError);
    EXPECT_THROW(config_from_json(json::parse(R"({"degrees":"many"})")), ParseError);
}

TEST(Config, JsonMirror) {
    const ErrorTable t{{{4, 0.5, 0.25, 0.125}}};
    const json j = to_json(t);
    ASSERT_EQ(j["rows"].size(), 1U);
    EXPECT_EQ(j["rows"][0]["n"], 4);
    EXPECT_EQ(j["rows"][0]["sup_error"], 0.25);
}
