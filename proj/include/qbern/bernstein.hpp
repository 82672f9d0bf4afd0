#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "qcore.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace qbern {

/// Basis index (k, n) of B_{k,n}(x,q). Any pair is valid; k > n is the zero polynomial.
struct BasisIndex {
    long k = 0;
    long n = 0;
};

/// A function on [0,1] that the operator samples. `exact` may be empty for
/// transcendental functions, which are then only usable in binary64 mode.
struct SampledFunction {
    std::string name;
    std::function<Rational(const Rational&)> exact;
    std::function<double(double)> approx;

    [[nodiscard]] bool has_exact() const { return static_cast<bool>(exact); }

    /// Wraps a polynomial with exact rational coefficients.
    static SampledFunction polynomial(std::string name, Poly p) {
        std::vector<double> dc;
        for (const auto& c : p.coeffs()) dc.push_back(c.to_double());
        return SampledFunction{
            std::move(name),
            [p](const Rational& t) { return p.eval(t); },
            [dc](double t) {
                double acc = 0.0;
                for (auto it = dc.rbegin(); it != dc.rend(); ++it) acc = acc * t + *it;
                return acc;
            }};
    }
};

/// B_{k,n}(x,q) = C(n,k)_q x^k (1-x)_q^(n-k).
inline Poly basis_poly(long k, long n, const QParam& q) {
    if (k < 0 || k > n) return {};
    return q_binom_expand(n - k, q).shift_up(static_cast<std::size_t>(k)) * gauss_binom(n, k, q);
}

inline Poly basis_poly(BasisIndex idx, const QParam& q) { return basis_poly(idx.k, idx.n, q); }

/// Builds B_{k,n} from degree zero with
/// B_{k,n} = q^k (1 - q^(n-k-1) x) B_{k,n-1} + x B_{k-1,n-1}.
inline Poly basis_poly_via_recurrence(long k, long n, const QParam& q) {
    if (k < 0 || k > n) return {};
    std::vector<Poly> row{Poly{Rational(1)}}; // degree 0
    for (long m = 1; m <= n; ++m) {
        std::vector<Poly> next(static_cast<std::size_t>(m + 1));
        for (long j = 0; j <= m; ++j) {
            Poly value;
            if (j <= m - 1) {
                const Poly factor{Rational(1), -q.pow(m - j - 1)};
                value += factor * row[static_cast<std::size_t>(j)] * q.pow(j);
            }
            if (j >= 1) value += row[static_cast<std::size_t>(j - 1)].shift_up(1);
            next[static_cast<std::size_t>(j)] = std::move(value);
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(k)];
}

/// Power-basis form sum_{i=k..n} C(n,i)_q C(i,k)_q (-1)^(i-k) q^C(i-k,2) x^i.
inline Poly basis_power_expansion(long k, long n, const QParam& q) {
    if (k < 0 || k > n) return {};
    std::vector<Rational> cs(static_cast<std::size_t>(n + 1), Rational(0));
    for (long i = k; i <= n; ++i) {
        const long d = i - k;
        Rational c = gauss_binom(n, i, q) * gauss_binom(i, k, q) * q.pow(d * (d - 1) / 2);
        cs[static_cast<std::size_t>(i)] = d % 2 == 0 ? c : -c;
    }
    return Poly(std::move(cs));
}

/// Closed form of D_q B_{k,n}: [n]_q q^(-k) (q B_{k-1,n-1}(qx) - B_{k,n-1}(qx)).
/// Defined for every q, including q = 1.
inline Poly basis_qderivative(long k, long n, const QParam& q) {
    if (n < 1) return {};
    const Poly lower = basis_poly(k - 1, n - 1, q).scale_argument(q.value()) * q.value();
    const Poly same = basis_poly(k, n - 1, q).scale_argument(q.value());
    return (lower - same) * (q_int(n, q) * q.pow(-k));
}

struct PolyPair {
    Poly left;
    Poly right;
};

/// Both sides of the degree-reduction identity
/// ([n-k]/[n]) B_{k,n} + ([k+1]/[n]) B_{k+1,n} = B_{k,n-1} + x [n-k-1] (1-q) B_{k,n-1}.
inline PolyPair degree_reduction_sides(long k, long n, const QParam& q) {
    if (n < 1) throw DomainError("degree reduction needs n >= 1");
    const Rational qn = q_int(n, q);
    PolyPair sides;
    sides.left = basis_poly(k, n, q) * (q_int(n - k, q) / qn) + basis_poly(k + 1, n, q) * (q_int(k + 1, q) / qn);
    const Poly reduced = basis_poly(k, n - 1, q);
    sides.right = reduced + reduced.shift_up(1) * (q_int(n - k - 1, q) * (Rational(1) - q.value()));
    return sides;
}

struct PointCheck {
    Rational x;
    Rational lhs;
    Rational rhs;
    [[nodiscard]] bool holds() const { return lhs == rhs; }
};

/// Checks B_{k,n} = ([n-k+1]/[k]) (x / (1 - x q^(n-k))) B_{k-1,n} at each sample.
inline std::vector<PointCheck> ratio_step(long k, long n, const QParam& q, const std::vector<Rational>& xs) {
    if (k < 1 || k > n) throw DomainError("ratio step needs 1 <= k <= n");
    const Poly current = basis_poly(k, n, q);
    const Poly previous = basis_poly(k - 1, n, q);
    const Rational coeff = q_int(n - k + 1, q) / q_int(k, q);
    const Rational qpow = q.pow(n - k);
    std::vector<PointCheck> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        const Rational pole = Rational(1) - x * qpow;
        if (pole.is_zero()) throw PoleAtSample("x = " + x.str() + " is a pole of x/(1 - x q^(n-k))");
        out.push_back({x, current.eval(x), coeff * (x / pole) * previous.eval(x)});
    }
    return out;
}

/// sum_{k=i..n} (C(k,i)_q / C(n,i)_q) B_{k,n}(x,q), which should equal x^i.
inline Poly moment_sum(long i, long n, const QParam& q) {
    if (i < 0 || i > n) throw DomainError("moment sum needs 0 <= i <= n");
    const Rational denom = gauss_binom(n, i, q);
    Poly sum;
    for (long k = i; k <= n; ++k) sum += basis_poly(k, n, q) * (gauss_binom(k, i, q) / denom);
    return sum;
}

/// Operator node [k]_q / [n]_q.
inline Rational operator_node(long k, long n, const QParam& q) { return q_int(k, q) / q_int(n, q); }

inline std::vector<Rational> operator_node_values(const SampledFunction& f, long n, const QParam& q) {
    if (!f.has_exact()) throw DomainError("function '" + f.name + "' has no exact evaluator");
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(n + 1));
    const Rational qn = q_int(n, q);
    for (long k = 0; k <= n; ++k) values.push_back(f.exact(q_int(k, q) / qn));
    return values;
}

/// The operator image B_{n,q}(f | x) as a polynomial in x.
inline Poly operator_poly(const SampledFunction& f, long n, const QParam& q) {
    if (n < 1) throw DomainError("operator order must be >= 1");
    const auto values = operator_node_values(f, n, q);
    Poly sum;
    for (long k = 0; k <= n; ++k) sum += basis_poly(k, n, q) * values[static_cast<std::size_t>(k)];
    return sum;
}

/// Σ_k C(n,k)_q x^k Δ_q^k applied to the node sequence j -> f([j]/[n]).
inline Poly operator_delta_poly(const SampledFunction& f, long n, const QParam& q) {
    if (n < 1) throw DomainError("operator order must be >= 1");
    const auto values = operator_node_values(f, n, q);
    std::vector<Rational> cs;
    cs.reserve(static_cast<std::size_t>(n + 1));
    for (long k = 0; k <= n; ++k) cs.push_back(gauss_binom(n, k, q) * q_difference(values, k, q));
    return Poly(std::move(cs));
}

inline void check_unit_interval(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw DomainError("x must lie in [0,1], got " + x.str());
}

/// B_{n,q}(f | x) = Σ_k B_{k,n}(x,q) f([k]_q/[n]_q).
inline Rational operator_apply(const SampledFunction& f, long n, const QParam& q, const Rational& x) {
    if (n < 1) throw DomainError("operator order must be >= 1");
    check_unit_interval(x);
    const auto values = operator_node_values(f, n, q);
    Rational sum(0);
    Rational xk(1);
    for (long k = 0; k <= n; ++k) {
        sum += gauss_binom(n, k, q) * xk * q_shifted_factorial(x, n - k, q) * values[static_cast<std::size_t>(k)];
        xk *= x;
    }
    return sum;
}

inline Rational operator_delta_form(const SampledFunction& f, long n, const QParam& q, const Rational& x) {
    check_unit_interval(x);
    return operator_delta_poly(f, n, q).eval(x);
}

/// [n]_q! times the t^n coefficient of x^k t^k/[k]_q! e_q((1-x)_q t).
inline Rational genfun_coefficient(long k, long n, const Rational& x, const QParam& q) {
    if (n < 0 || k < 0) throw DomainError("generating function indices must be nonnegative");
    if (n < k) return Rational(0);
    const auto order = static_cast<std::size_t>(n);
    std::vector<Rational> terms;
    terms.reserve(order + 1);
    for (long m = 0; m <= n; ++m) terms.push_back(q_shifted_factorial(x, m, q));
    const TruncSeries egf = q_egf_series(terms, q);
    const TruncSeries lead =
        TruncSeries::monomial(static_cast<std::size_t>(k), pow(x, k) / q_factorial(k, q), order);
    return (lead * egf)[order] * q_factorial(n, q);
}

/// M[i][k] = coefficient of x^i in B_{k,n}(x,q); maps Bernstein
/// coefficients to power-basis coefficients.
inline RMatrix to_power_matrix(long n, const QParam& q) {
    if (n < 0) throw DomainError("matrix degree must be >= 0");
    const auto size = static_cast<std::size_t>(n + 1);
    RMatrix m(size, size);
    for (long k = 0; k <= n; ++k) {
        const Poly b = basis_power_expansion(k, n, q);
        for (long i = 0; i <= n; ++i) m(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = b[static_cast<std::size_t>(i)];
    }
    return m;
}

/// Inverse of to_power_matrix from the moment identity:
/// entry [k][i] = C(k,i)_q / C(n,i)_q.
inline RMatrix from_power_matrix(long n, const QParam& q) {
    if (n < 0) throw DomainError("matrix degree must be >= 0");
    const auto size = static_cast<std::size_t>(n + 1);
    RMatrix m(size, size);
    for (long i = 0; i <= n; ++i) {
        const Rational denom = gauss_binom(n, i, q);
        for (long k = i; k <= n; ++k)
            m(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) = gauss_binom(k, i, q) / denom;
    }
    return m;
}

/// q-binomial probability mass p(X = k); q = 1 is the classical binomial law.
inline Rational pmf(long n, long k, const Rational& x, const QParam& q) {
    check_unit_interval(x);
    if (n < 0 || k < 0 || k > n) throw DomainError("pmf needs 0 <= k <= n");
    return gauss_binom(n, k, q) * pow(x, k) * q_shifted_factorial(x, n - k, q);
}

} // namespace qbern
