#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace qbern {

/// The deformation parameter, restricted to 0 < q <= 1.
class QParam {
public:
    explicit QParam(Rational q) : q_(std::move(q)) {
        if (q_.sign() <= 0 || q_ > Rational(1))
            throw InvalidQ("q must satisfy 0 < q <= 1, got " + q_.str());
    }
    static QParam parse(std::string_view text) { return QParam(Rational::parse(text)); }

    [[nodiscard]] const Rational& value() const { return q_; }
    [[nodiscard]] bool is_one() const { return q_.is_one(); }
    [[nodiscard]] Rational pow(long e) const { return qbern::pow(q_, e); }

    friend bool operator==(const QParam&, const QParam&) = default;

private:
    Rational q_;
};

/// [n]_q = 1 + q + ... + q^(n-1); equals n at q = 1.
inline Rational q_int(long n, const QParam& q) {
    Rational sum(0);
    Rational term(1);
    for (long i = 0; i < n; ++i) {
        sum += term;
        term *= q.value();
    }
    return sum;
}

/// [n]_q! with [0]_q! = 1.
inline Rational q_factorial(long n, const QParam& q) {
    Rational prod(1);
    Rational qi(0);
    Rational qpow(1);
    for (long i = 1; i <= n; ++i) {
        qi += qpow; // qi = [i]_q
        qpow *= q.value();
        prod *= qi;
    }
    return prod;
}

/// Gaussian binomial coefficient; zero unless 0 <= k <= n.
inline Rational gauss_binom(long n, long k, const QParam& q) {
    if (n < 0 || k < 0 || k > n) return Rational(0);
    if (k > n - k) k = n - k;
    Rational num(1);
    Rational den(1);
    for (long i = 0; i < k; ++i) {
        num *= q_int(n - i, q);
        den *= q_int(i + 1, q);
    }
    return num / den;
}

/// (1-b)_q^n = prod_{i=1..n} (1 - b q^(i-1)).
inline Rational q_shifted_factorial(const Rational& b, long n, const QParam& q) {
    Rational prod(1);
    Rational bq = b;
    for (long i = 1; i <= n; ++i) {
        prod *= Rational(1) - bq;
        bq *= q.value();
    }
    return prod;
}

/// q-binomial theorem: the polynomial in b whose value is (1-b)_q^n,
/// coefficient of b^i being C(n,i)_q q^C(i,2) (-1)^i.
inline Poly q_binom_expand(long n, const QParam& q) {
    std::vector<Rational> cs;
    cs.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) {
        Rational c = gauss_binom(n, i, q) * q.pow(i * (i - 1) / 2);
        cs.push_back(i % 2 == 0 ? c : -c);
    }
    return Poly(std::move(cs));
}

/// 1/(1-b)_q^n as a series in b: coefficient of b^i is C(n+i-1,i)_q.
inline TruncSeries q_reciprocal_series(long order, long n, const QParam& q) {
    if (n < 1) throw InvalidOrder("reciprocal series needs n >= 1, got " + std::to_string(n));
    if (order < 0) throw InvalidOrder("truncation order must be >= 0, got " + std::to_string(order));
    std::vector<Rational> cs;
    cs.reserve(static_cast<std::size_t>(order + 1));
    for (long i = 0; i <= order; ++i) cs.push_back(gauss_binom(n + i - 1, i, q));
    return TruncSeries(std::move(cs), static_cast<std::size_t>(order));
}

/// Series sum_n a_n t^n / [n]_q!, truncated at order terms.size()-1.
inline TruncSeries q_egf_series(std::span<const Rational> terms, const QParam& q) {
    if (terms.empty()) throw InvalidOrder("q-exponential series needs at least one term");
    std::vector<Rational> cs;
    cs.reserve(terms.size());
    Rational fact(1);
    Rational qi(0);
    Rational qpow(1);
    for (std::size_t n = 0; n < terms.size(); ++n) {
        if (n > 0) {
            qi += qpow;
            qpow *= q.value();
            fact *= qi;
        }
        cs.push_back(terms[n] / fact);
    }
    return TruncSeries(std::move(cs), terms.size() - 1);
}

/// Jackson q-derivative on coefficients: x^n -> [n]_q x^(n-1).
inline Poly q_derivative(const Poly& p, const QParam& q) {
    if (q.is_one()) throw QEqualsOne("the Jackson q-derivative requires q != 1");
    if (p.degree() < 1) return {};
    std::vector<Rational> cs;
    cs.reserve(p.coeffs().size() - 1);
    for (std::size_t n = 1; n < p.coeffs().size(); ++n) cs.push_back(p.coeffs()[n] * q_int(static_cast<long>(n), q));
    return Poly(std::move(cs));
}

/// Δ_q^n f(0) = sum_k C(n,k)_q (-1)^(n-k) q^C(n-k,2) f(k).
inline Rational q_difference(std::span<const Rational> seq, long n, const QParam& q) {
    if (n < 0 || seq.size() < static_cast<std::size_t>(n + 1))
        throw InsufficientSequence("q-difference of order " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                                   " values, got " + std::to_string(seq.size()));
    Rational sum(0);
    for (long k = 0; k <= n; ++k) {
        const long j = n - k;
        Rational term = gauss_binom(n, k, q) * q.pow(j * (j - 1) / 2) * seq[static_cast<std::size_t>(k)];
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

/// The other index order of the same operator:
/// sum_k C(n,k)_q (-1)^k q^C(k,2) f(n-k).
inline Rational q_difference_reversed(std::span<const Rational> seq, long n, const QParam& q) {
    if (n < 0 || seq.size() < static_cast<std::size_t>(n + 1))
        throw InsufficientSequence("q-difference of order " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                                   " values, got " + std::to_string(seq.size()));
    Rational sum(0);
    for (long k = 0; k <= n; ++k) {
        Rational term = gauss_binom(n, k, q) * q.pow(k * (k - 1) / 2) * seq[static_cast<std::size_t>(n - k)];
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

} // namespace qbern
