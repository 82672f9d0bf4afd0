#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bernstein.hpp"
#include "errors.hpp"
#include "polynomial.hpp"
#include "qcore.hpp"
#include "rational.hpp"

namespace qbern {

/// S(n,k) = Δ^k 0^n / k! via the alternating sum Σ_l C(k,l) (-1)^(k-l) l^n / k!.
inline Rational stirling2(long n, long k) {
    if (n < 0 || k < 0) throw DomainError("Stirling indices must be nonnegative");
    if (k > n) return Rational(0);
    Rational sum(0);
    for (long l = 0; l <= k; ++l) {
        Rational term = binomial(k, l) * pow(Rational(l), n); // 0^0 = 1
        if ((k - l) % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum / factorial(k);
}

/// Δ_q^k applied to j -> [j]_q^m at 0, taking [0]_q^0 = 1.
inline Rational delta_q_zero_power(long k, long m, const QParam& q) {
    if (k < 0 || m < 0) throw DomainError("indices must be nonnegative");
    std::vector<Rational> seq;
    seq.reserve(static_cast<std::size_t>(k + 1));
    for (long j = 0; j <= k; ++j) seq.push_back(pow(q_int(j, q), m));
    return q_difference(seq, k, q);
}

/// S(n,k:q) = q^(-C(k,2)) / [k]_q! · Δ_q^k 0^n.
inline Rational q_stirling2(long n, long k, const QParam& q) {
    if (n < 0 || k < 0) throw DomainError("Stirling indices must be nonnegative");
    return q.pow(-(k * (k - 1) / 2)) / q_factorial(k, q) * delta_q_zero_power(k, n, q);
}

/// The "(-1)^j q^C(j,2) C(k,j)_q [k-j]_q^n" ordering of the same sum.
inline Rational q_stirling2_reversed(long n, long k, const QParam& q) {
    if (n < 0 || k < 0) throw DomainError("Stirling indices must be nonnegative");
    std::vector<Rational> seq;
    seq.reserve(static_cast<std::size_t>(k + 1));
    for (long j = 0; j <= k; ++j) seq.push_back(pow(q_int(j, q), n));
    return q.pow(-(k * (k - 1) / 2)) / q_factorial(k, q) * q_difference_reversed(seq, k, q);
}

/// Triangular table of S(n,k) (classical) or S(n,k:q).
struct StirlingTable {
    long max_n = 0;
    std::vector<std::vector<Rational>> values; // values[n][k], 0 <= k <= n

    [[nodiscard]] const Rational& at(long n, long k) const {
        return values[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
};

inline StirlingTable stirling_table(long max_n) {
    StirlingTable t{max_n, {}};
    for (long n = 0; n <= max_n; ++n) {
        std::vector<Rational> row;
        for (long k = 0; k <= n; ++k) row.push_back(stirling2(n, k));
        t.values.push_back(std::move(row));
    }
    return t;
}

inline StirlingTable q_stirling_table(long max_n, const QParam& q) {
    StirlingTable t{max_n, {}};
    for (long n = 0; n <= max_n; ++n) {
        std::vector<Rational> row;
        for (long k = 0; k <= n; ++k) row.push_back(q_stirling2(n, k, q));
        t.values.push_back(std::move(row));
    }
    return t;
}

enum class CorollaryForm { delta_form, stirling_form };

/// Σ_k C(n,k)_q x^k Δ_q^k 0^m, or the same with Δ_q^k 0^m written as
/// [k]_q! q^C(k,2) S(m,k:q). Both should equal [n]_q^m B_{n,q}(t^m | x).
inline Poly corollary_rhs(long n, long m, const QParam& q, CorollaryForm which) {
    if (n < 1 || m < 0) throw DomainError("corollary needs n >= 1 and m >= 0");
    std::vector<Rational> cs;
    cs.reserve(static_cast<std::size_t>(n + 1));
    for (long k = 0; k <= n; ++k) {
        Rational inner = which == CorollaryForm::delta_form
                             ? delta_q_zero_power(k, m, q)
                             : q_factorial(k, q) * q.pow(k * (k - 1) / 2) * q_stirling2(m, k, q);
        cs.push_back(gauss_binom(n, k, q) * inner);
    }
    return Poly(std::move(cs));
}

/// [n]_q^m B_{n,q}(t^m | x) computed from the operator itself.
inline Poly scaled_power_image(long n, long m, const QParam& q) {
    const auto f = SampledFunction::polynomial("t^" + std::to_string(m), Poly::monomial(static_cast<std::size_t>(m)));
    return operator_poly(f, n, q) * pow(q_int(n, q), m);
}

/// Generalized binomial C(x,k) = x(x-1)...(x-k+1)/k!.
inline Rational binomial_rational(const Rational& x, long k) {
    Rational prod(1);
    for (long i = 0; i < k; ++i) prod *= x - Rational(i);
    return prod / factorial(k);
}

struct RationalPair {
    Rational first;
    Rational second;
};

/// (x^n, Σ_k C(x,k) k! S(n,k)).
inline RationalPair falling_factorial_identity(long n, const Rational& x) {
    if (n < 0) throw DomainError("exponent must be nonnegative");
    Rational sum(0);
    for (long k = 0; k <= n; ++k) sum += binomial_rational(x, k) * factorial(k) * stirling2(n, k);
    return {pow(x, n), sum};
}

} // namespace qbern
