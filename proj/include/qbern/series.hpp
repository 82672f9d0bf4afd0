#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qbern {

/// Power series in t truncated after t^order.
///
/// Coefficients are raw: coefficient n multiplies t^n, with no factorial
/// normalization. Callers that work with exponential or q-exponential
/// generating functions scale by n! or [n]_q! themselves.
template <typename T>
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, T(0)) {}

    /// Takes the first order+1 entries of cs, zero-padding if cs is shorter.
    TruncatedSeries(std::vector<T> cs, std::size_t order) : coeffs_(std::move(cs)) {
        coeffs_.resize(order + 1, T(0));
    }

    static TruncatedSeries one(std::size_t order) {
        TruncatedSeries s(order);
        s.coeffs_[0] = T(1);
        return s;
    }

    /// c · t^n, or the zero series when n exceeds the order.
    static TruncatedSeries monomial(std::size_t n, T c, std::size_t order) {
        TruncatedSeries s(order);
        if (n <= order) s.coeffs_[n] = std::move(c);
        return s;
    }

    [[nodiscard]] std::size_t order() const { return coeffs_.size() - 1; }
    [[nodiscard]] const std::vector<T>& coeffs() const { return coeffs_; }

    [[nodiscard]] const T& operator[](std::size_t n) const {
        if (n > order())
            throw std::out_of_range("coefficient t^" + std::to_string(n) + " beyond truncation order " +
                                    std::to_string(order()));
        return coeffs_[n];
    }

    [[nodiscard]] TruncatedSeries truncate(std::size_t order) const {
        return TruncatedSeries(std::vector<T>(coeffs_.begin(), coeffs_.begin() + std::min(order, this->order()) + 1),
                               order);
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        std::size_t n = std::min(a.order(), b.order());
        TruncatedSeries s(n);
        for (std::size_t i = 0; i <= n; ++i) s.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return s;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        std::size_t n = std::min(a.order(), b.order());
        TruncatedSeries s(n);
        for (std::size_t i = 0; i <= n; ++i) s.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return s;
    }
    friend TruncatedSeries operator*(TruncatedSeries a, const T& c) {
        for (auto& v : a.coeffs_) v = v * c;
        return a;
    }

    /// Cauchy product truncated at min(order(a), order(b)).
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        std::size_t n = std::min(a.order(), b.order());
        TruncatedSeries s(n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.coeffs_[i] == T(0)) continue;
            for (std::size_t j = 0; i + j <= n; ++j) s.coeffs_[i + j] = s.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
        }
        return s;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<T> coeffs_;
};

using TruncSeries = TruncatedSeries<Rational>;

inline TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) { return a * b; }

/// Multiplicative inverse up to the truncation order of a.
inline TruncSeries series_invert(const TruncSeries& a) {
    if (a[0].is_zero()) throw ZeroConstantTerm("series has zero constant term and no inverse");
    const std::size_t n = a.order();
    std::vector<Rational> b(n + 1);
    const Rational inv0 = Rational(1) / a[0];
    b[0] = inv0;
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc(0);
        for (std::size_t j = 1; j <= m; ++j) acc += a[j] * b[m - j];
        b[m] = -acc * inv0;
    }
    return TruncSeries(std::move(b), n);
}

/// a^k by repeated squaring; a^0 is the one-series.
inline TruncSeries series_pow(const TruncSeries& a, unsigned k) {
    TruncSeries result = TruncSeries::one(a.order());
    TruncSeries base = a;
    while (k > 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

} // namespace qbern
