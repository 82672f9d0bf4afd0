#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace qbern {

/// Dense univariate polynomial, coeffs()[i] is the coefficient of x^i.
///
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients and equality is structural.
template <typename T>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<T> cs) : coeffs_(cs) { normalize(); }
    explicit Polynomial(std::vector<T> cs) : coeffs_(std::move(cs)) { normalize(); }

    static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }

    /// c · x^n
    static Polynomial monomial(std::size_t n, T c = T(1)) {
        std::vector<T> cs(n + 1, T(0));
        cs[n] = std::move(c);
        return Polynomial(std::move(cs));
    }

    [[nodiscard]] const std::vector<T>& coeffs() const { return coeffs_; }
    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    [[nodiscard]] T operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }

    [[nodiscard]] T eval(const T& x) const {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// p(c·x): coefficient i is scaled by c^i.
    [[nodiscard]] Polynomial scale_argument(const T& c) const {
        std::vector<T> cs = coeffs_;
        T power(1);
        for (auto& v : cs) {
            v = v * power;
            power = power * c;
        }
        return Polynomial(std::move(cs));
    }

    /// x^k · p
    [[nodiscard]] Polynomial shift_up(std::size_t k) const {
        if (is_zero()) return {};
        std::vector<T> cs(k, T(0));
        cs.insert(cs.end(), coeffs_.begin(), coeffs_.end());
        return Polynomial(std::move(cs));
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + o.coeffs_[i];
        normalize();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] - o.coeffs_[i];
        normalize();
        return *this;
    }
    Polynomial& operator*=(const T& c) {
        for (auto& v : coeffs_) v = v * c;
        normalize();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) { return a * T(-1); }
    friend Polynomial operator*(Polynomial a, const T& c) { return a *= c; }
    friend Polynomial operator*(const T& c, Polynomial a) { return a *= c; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> cs(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == T(0)) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) cs[i + j] = cs[i + j] + a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial(std::move(cs));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
    }

    std::vector<T> coeffs_;
};

using Poly = Polynomial<Rational>;

enum class PolyOp { add, sub, mul };

inline Poly poly_arith(const Poly& p, const Poly& r, PolyOp op) {
    switch (op) {
    case PolyOp::add: return p + r;
    case PolyOp::sub: return p - r;
    case PolyOp::mul: return p * r;
    }
    return {};
}

inline Rational poly_eval(const Poly& p, const Rational& x) { return p.eval(x); }

/// Human-readable form, lowest degree first: "1 - 3/2 x + 1/2 x^2".
inline std::string to_string(const Poly& p, std::string_view var = "x") {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const Rational& c = p.coeffs()[i];
        if (c.is_zero()) continue;
        Rational mag = abs(c);
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        if (i == 0) {
            out += mag.str();
            continue;
        }
        if (!mag.is_one()) out += mag.str() + " ";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

} // namespace qbern
