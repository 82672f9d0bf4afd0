#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <qbern/polynomial.hpp>
#include <qbern/qcore.hpp>
#include <qbern/rational.hpp>

namespace qbern::testing {

inline Rational R(long n, long d = 1) { return Rational(n, d); }
inline QParam Q(long n, long d) { return QParam(Rational(n, d)); }

/// Small deterministic generator of rationals and polynomials for
/// property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    Rational rational(long max_num = 9, long max_den = 9) {
        return Rational(integer(-max_num, max_num), integer(1, max_den));
    }

    /// Rational strictly inside (0,1).
    Rational unit() {
        long d = integer(2, 11);
        return Rational(integer(1, d - 1), d);
    }

    Poly poly(long max_degree) {
        std::vector<Rational> cs;
        long deg = integer(0, max_degree);
        for (long i = 0; i <= deg; ++i) cs.push_back(rational());
        return Poly(std::move(cs));
    }

    /// Nonzero polynomial of exact degree deg.
    Poly poly_exact(long deg) {
        std::vector<Rational> cs;
        for (long i = 0; i < deg; ++i) cs.push_back(rational());
        Rational lead;
        do lead = rational(); while (lead.is_zero());
        cs.push_back(lead);
        return Poly(std::move(cs));
    }

private:
    std::mt19937_64 rng_;
};

/// Five q values used by the exact identity tests.
inline std::vector<QParam> sample_qs() { return {Q(1, 2), Q(1, 3), Q(2, 3), Q(3, 7), Q(1, 1)}; }

} // namespace qbern::testing
