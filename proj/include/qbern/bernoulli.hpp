#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "qcore.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "stirling.hpp"

namespace qbern {

/// Higher-order Bernoulli numbers B_m^(k), m = 0..max_m:
/// (t/(e^t-1))^k = Σ_m B_m^(k) t^m/m!.
struct BernoulliTable {
    long order = 1;
    std::vector<Rational> values;

    [[nodiscard]] long max_m() const { return static_cast<long>(values.size()) - 1; }
    [[nodiscard]] const Rational& at(long m) const { return values.at(static_cast<std::size_t>(m)); }
};

/// The raw series (t/(e^t-1))^k truncated after t^max_m.
inline TruncSeries bernoulli_series(long k, long max_m) {
    if (k < 1) throw DomainError("Bernoulli order must be >= 1");
    if (max_m < 0) throw InvalidOrder("max_m must be >= 0");
    const auto order = static_cast<std::size_t>(max_m);
    std::vector<Rational> shifted; // (e^t - 1)/t = Σ t^m/(m+1)!
    shifted.reserve(order + 1);
    for (long m = 0; m <= max_m; ++m) shifted.push_back(Rational(1) / factorial(m + 1));
    const TruncSeries kernel = series_invert(TruncSeries(std::move(shifted), order));
    return series_pow(kernel, static_cast<unsigned>(k));
}

inline BernoulliTable bernoulli_numbers(long k, long max_m) {
    const TruncSeries s = bernoulli_series(k, max_m);
    BernoulliTable table{k, {}};
    table.values.reserve(static_cast<std::size_t>(max_m + 1));
    for (long m = 0; m <= max_m; ++m) table.values.push_back(s[static_cast<std::size_t>(m)] * factorial(m));
    return table;
}

/// Maps j to the j-th "power" of the argument: x^j, or (1-x)_q^j for the
/// umbral reading.
using PowerProvider = std::function<Rational(long)>;

/// Σ_{m=0..n} C(n,m)_q ([m]_q!/m!) power(n-m) B_m^(k).
inline Rational q_bernoulli_kernel(long n, const BernoulliTable& table, const QParam& q, const PowerProvider& power) {
    if (n < 0) throw DomainError("index must be nonnegative");
    if (table.max_m() < n) throw InvalidOrder("Bernoulli table too short for index " + std::to_string(n));
    Rational sum(0);
    Rational qfact(1);
    Rational qi(0);
    Rational qpow(1);
    for (long m = 0; m <= n; ++m) {
        if (m > 0) {
            qi += qpow;
            qpow *= q.value();
            qfact *= qi;
        }
        const Rational& b = table.at(m);
        if (b.is_zero()) continue;
        sum += gauss_binom(n, m, q) * (qfact / factorial(m)) * power(n - m) * b;
    }
    return sum;
}

inline PowerProvider ordinary_powers(const Rational& x) {
    return [x](long j) { return pow(x, j); };
}

inline PowerProvider shifted_factorial_powers(const Rational& x, const QParam& q) {
    return [x, q](long j) { return q_shifted_factorial(x, j, q); };
}

/// β_n^(k)(x, q).
inline Rational q_bernoulli(long n, long k, const Rational& x, const QParam& q) {
    return q_bernoulli_kernel(n, bernoulli_numbers(k, n), q, ordinary_powers(x));
}

/// β_n^(k)((1-x)_q, q): powers x^j replaced by (1-x)_q^j.
inline Rational q_bernoulli_umbral(long n, long k, const Rational& x, const QParam& q) {
    return q_bernoulli_kernel(n, bernoulli_numbers(k, n), q, shifted_factorial_powers(x, q));
}

/// Classical B_n^(k)(x) = n! [t^n] (t/(e^t-1))^k e^{xt}.
inline Rational bernoulli_polynomial_classical(long n, long k, const Rational& x) {
    const auto order = static_cast<std::size_t>(n);
    std::vector<Rational> exp_terms;
    for (long j = 0; j <= n; ++j) exp_terms.push_back(pow(x, j) / factorial(j));
    const TruncSeries product = bernoulli_series(k, n) * TruncSeries(std::move(exp_terms), order);
    return product[order] * factorial(n);
}

enum class ClosedFormVariant { stirling, forward_difference };

/// Closed form of B_{k,l}(x,q) through order-k q-Bernoulli polynomials at (1-x)_q:
///   (k!/[k]_q!) x^k Σ_m ([m]_q!/m!) S(m,k) C(l,m)_q β_{l-m}^(k)((1-x)_q, q)
/// The forward_difference variant writes k! S(m,k) as Δ^k 0^m.
inline Rational theorem10_rhs(long k, long l, const Rational& x, const QParam& q,
                              ClosedFormVariant variant = ClosedFormVariant::stirling) {
    if (k < 1 || l < 0) throw DomainError("closed form needs k >= 1 and l >= 0");
    const BernoulliTable table = bernoulli_numbers(k, l);
    const PowerProvider powers = shifted_factorial_powers(x, q);
    const QParam classical(Rational(1));
    Rational sum(0);
    for (long m = 0; m <= l; ++m) {
        Rational weight;
        if (variant == ClosedFormVariant::stirling) {
            weight = factorial(k) * stirling2(m, k);
        } else {
            std::vector<Rational> seq;
            for (long j = 0; j <= k; ++j) seq.push_back(pow(Rational(j), m));
            weight = q_difference(seq, k, classical);
        }
        if (weight.is_zero()) continue;
        sum += (q_factorial(m, q) / factorial(m)) * weight * gauss_binom(l, m, q) *
               q_bernoulli_kernel(l - m, table, q, powers);
    }
    return pow(x, k) / q_factorial(k, q) * sum;
}

/// [l]_q! times the t^l coefficient of (tx)^k/[k]_q! e_q((1-x)_q t),
/// using l + k + 2 series terms.
inline Rational genfun30_coefficient(long k, long l, const Rational& x, const QParam& q) {
    if (k < 1 || l < 0) throw DomainError("series oracle needs k >= 1 and l >= 0");
    const auto order = static_cast<std::size_t>(l + k + 1);
    std::vector<Rational> terms;
    terms.reserve(order + 1);
    for (std::size_t m = 0; m <= order; ++m) terms.push_back(q_shifted_factorial(x, static_cast<long>(m), q));
    const TruncSeries egf = q_egf_series(terms, q);
    const TruncSeries tx = TruncSeries::monomial(1, x, order);
    const TruncSeries lead = series_pow(tx, static_cast<unsigned>(k)) * (Rational(1) / q_factorial(k, q));
    return (lead * egf)[static_cast<std::size_t>(l)] * q_factorial(l, q);
}

} // namespace qbern
