#pragma once

// Registry of every checked identity. Each entry documents how its q-degree
// bound was obtained: deg_q C(n,k)_q = k(n-k), deg_q [n]_q = n-1, and every
// coefficient of B_{k,n}(x,q) has q-degree at most C(n,2).

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bernoulli.hpp"
#include "bernstein.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "qcore.hpp"
#include "rational.hpp"
#include "stirling.hpp"
#include "verify.hpp"

namespace qbern::verify {

namespace detail {

inline long c2(long n) { return n * (n - 1) / 2; }

/// Deterministic inputs for one identity instance; independent of q.
class InstanceRng {
public:
    explicit InstanceRng(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Rational rational() { return Rational(integer(-9, 9), integer(1, 9)); }

    Poly poly_exact(long degree) {
        std::vector<Rational> cs;
        for (long i = 0; i < degree; ++i) cs.push_back(rational());
        Rational lead;
        do lead = rational(); while (lead.is_zero());
        cs.push_back(lead);
        return Poly(std::move(cs));
    }

    std::vector<Rational> sequence(long length) {
        std::vector<Rational> out;
        for (long i = 0; i < length; ++i) out.push_back(rational());
        return out;
    }

private:
    std::mt19937_64 rng_;
};

inline std::vector<Params> range_n(const std::string& name, long lo, long hi) {
    std::vector<Params> out;
    for (long n = lo; n <= hi; ++n) out.push_back({{name, n}});
    return out;
}

/// (n, k) with n in [n_lo, n_hi] and k in [k_lo, n + k_extra].
inline std::vector<Params> range_nk(long n_lo, long n_hi, long k_lo, long k_extra) {
    std::vector<Params> out;
    for (long n = n_lo; n <= n_hi; ++n)
        for (long k = k_lo; k <= n + k_extra; ++k) out.push_back({{"n", n}, {"k", k}});
    return out;
}

inline std::vector<Params> range_grid(const std::string& a, long a_lo, long a_hi, const std::string& b, long b_lo,
                                      long b_hi) {
    std::vector<Params> out;
    for (long i = a_lo; i <= a_hi; ++i)
        for (long j = b_lo; j <= b_hi; ++j) out.push_back({{a, i}, {b, j}});
    return out;
}

inline const Poly& x_poly() {
    static const Poly x{Rational(0), Rational(1)};
    return x;
}

inline std::optional<Mismatch> compare_on(const std::vector<Rational>& xs, const std::function<Rational(const Rational&)>& lhs,
                                          const std::function<Rational(const Rational&)>& rhs) {
    for (const auto& x : xs)
        if (auto bad = compare(x, lhs(x), rhs(x))) return bad;
    return std::nullopt;
}

/// Test polynomial f of the instance's degree d, drawn from the instance seed.
inline SampledFunction instance_function(const Params& p, const CheckContext& ctx) {
    InstanceRng rng(ctx.seed);
    return SampledFunction::polynomial("f", rng.poly_exact(p["d"]));
}

// Operator identities share the same (n, d) grid and degree bound:
// weights C(n,2), node values [k]^j [n]^(d-j) after clearing [n]^d.
inline std::vector<Params> operator_grid() { return range_grid("n", 1, 8, "d", 0, 5); }
inline long operator_bound(const Params& p) { return c2(p["n"]) + p["d"] * (p["n"] - 1) + 1; }

} // namespace detail

inline std::vector<IdentitySpec> build_registry() {
    using namespace detail;
    std::vector<IdentitySpec> r;

    r.push_back(IdentitySpec{
        .id = "eq1-pascal",
        .statement = "C(n+1,k)_q = C(n,k-1)_q + q^k C(n,k)_q = q^(n+1-k) C(n,k-1)_q + C(n,k)_q",
        .param_ranges = "0<=n<=15, 0<=k<=n+1",
        .params = [] { return range_nk(0, 15, 0, 1); },
        // k(n+1-k) <= (n+1)^2/4, plus at most n+1 from the q powers
        .q_degree_bound = [](const Params& p) { return (p["n"] + 1) * (p["n"] + 1) / 4 + p["n"] + 2; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            const Rational lhs = gauss_binom(n + 1, k, c.q);
            const Rational qk = c.mutation == "drop-qk" ? Rational(1) : c.q.pow(k);
            const long second_exp = c.mutation == "exponent-n-minus-k" ? n - k : n + 1 - k;
            if (auto bad = compare_scalar(lhs, gauss_binom(n, k - 1, c.q) + qk * gauss_binom(n, k, c.q))) return bad;
            return compare_scalar(lhs, c.q.pow(second_exp) * gauss_binom(n, k - 1, c.q) + gauss_binom(n, k, c.q));
        },
        .mutations = {{"drop-qk", "omit q^k in the first recursion"},
                      {"exponent-n-minus-k", "second recursion with q^(n-k)"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq2-qbinomial-theorem",
        .statement = "prod_{i=1..n} (1 - b q^(i-1)) = sum_i C(n,i)_q q^C(i,2) (-1)^i b^i",
        .param_ranges = "0<=n<=12",
        .params = [] { return range_n("n", 0, 12); },
        .q_degree_bound = [](const Params& p) { return c2(p["n"]); },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"];
            Poly product{Rational(1)};
            for (long i = 1; i <= n; ++i) product = product * Poly{Rational(1), -c.q.pow(i - 1)};
            Poly expansion = q_binom_expand(n, c.q);
            if (c.mutation == "drop-sign") {
                std::vector<Rational> cs;
                for (const auto& v : expansion.coeffs()) cs.push_back(abs(v));
                expansion = Poly(std::move(cs));
            }
            return compare(product, expansion);
        },
        .mutations = {{"drop-sign", "drop the (-1)^i factor"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq2-reciprocal-series",
        .statement = "1/(1-b)_q^n = sum_i C(n+i-1,i)_q b^i (checked as a truncated series product)",
        .param_ranges = "1<=n<=6, 0<=N<=12",
        .params = [] { return range_grid("n", 1, 6, "N", 0, 12); },
        // C(n,2) from the expansion, i(n-1) from C(n+i-1,i)_q
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + p["N"] * (p["n"] - 1); },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], order = p["N"];
            TruncSeries recip = q_reciprocal_series(order, n, c.q);
            if (c.mutation == "shift-index") {
                std::vector<Rational> cs;
                for (long i = 0; i <= order; ++i) cs.push_back(gauss_binom(n + i, i, c.q));
                recip = TruncSeries(std::move(cs), static_cast<std::size_t>(order));
            }
            const TruncSeries expand(q_binom_expand(n, c.q).coeffs(), static_cast<std::size_t>(order));
            const TruncSeries product = expand * recip;
            const TruncSeries one = TruncSeries::one(static_cast<std::size_t>(order));
            for (std::size_t i = 0; i <= product.order(); ++i)
                if (auto bad = compare_scalar(product[i], one[i])) return bad;
            return std::nullopt;
        },
        .mutations = {{"shift-index", "use C(n+i,i)_q"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq8-product-rule",
        .statement = "D_q(fg)(x) = g(x) D_q f(x) + f(qx) D_q g(x)",
        .param_ranges = "20 random polynomial pairs of degree <= 8",
        .q_domain = QDomain::open_interval,
        .params = [] { return range_n("case", 0, 19); },
        // [m]_q has degree m-1 <= 15; f(qx) adds at most 8
        .q_degree_bound = [](const Params&) { return 16L; },
        .check = [](const Params&, const CheckContext& c) -> std::optional<Mismatch> {
            InstanceRng rng(c.seed);
            const Poly f = rng.poly_exact(rng.integer(0, 8)), g = rng.poly_exact(rng.integer(0, 8));
            const Poly shifted = c.mutation == "no-q-shift" ? f : f.scale_argument(c.q.value());
            return compare(q_derivative(f * g, c.q), g * q_derivative(f, c.q) + shifted * q_derivative(g, c.q));
        },
        .mutations = {{"no-q-shift", "use f(x) in place of f(qx)"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq10-qbinomial-product",
        .statement = "C(n,k)_q C(n-k,j)_q = C(n,k+j)_q C(k+j,k)_q",
        .param_ranges = "0<=n<=12, 0<=k<=n, 0<=j<=n-k",
        .params =
            [] {
                std::vector<Params> out;
                for (long n = 0; n <= 12; ++n)
                    for (long k = 0; k <= n; ++k)
                        for (long j = 0; j <= n - k; ++j) out.push_back({{"n", n}, {"k", k}, {"j", j}});
                return out;
            },
        .q_degree_bound = [](const Params& p) { return p["n"] * p["n"] / 2 + 1; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"], j = p["j"];
            const Rational lhs = gauss_binom(n, k, c.q) * gauss_binom(n - k, j, c.q);
            const long top = c.mutation == "wrong-top" ? n - j : k + j;
            return compare_scalar(lhs, gauss_binom(n, k + j, c.q) * gauss_binom(top, k, c.q));
        },
        .mutations = {{"wrong-top", "C(n-j,k)_q in place of C(k+j,k)_q"}},
    });

    r.push_back(IdentitySpec{
        .id = "prop1-expansion",
        .statement = "B_{n,q}(f|x) = sum_m C(n,m)_q x^m sum_k C(m,k)_q q^C(m-k,2) (-1)^(m-k) f([k]/[n])",
        .param_ranges = "1<=n<=8, f random of degree d, 0<=d<=5",
        .params = operator_grid,
        .q_degree_bound = operator_bound,
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"];
            const auto f = instance_function(p, c);
            const auto values = operator_node_values(f, n, c.q);
            std::vector<Rational> cs;
            for (long m = 0; m <= n; ++m) {
                Rational inner(0);
                for (long k = 0; k <= m; ++k) {
                    Rational term = gauss_binom(m, k, c.q) * values[static_cast<std::size_t>(k)];
                    if (c.mutation != "drop-q-power") term *= c.q.pow(c2(m - k));
                    inner += (m - k) % 2 == 0 ? term : -term;
                }
                cs.push_back(gauss_binom(n, m, c.q) * inner);
            }
            return compare(operator_poly(f, n, c.q), Poly(std::move(cs)));
        },
        .mutations = {{"drop-q-power", "omit q^C(m-k,2)"}},
    });

    r.push_back(IdentitySpec{
        .id = "thm2-delta-form",
        .statement = "B_{n,q}(f|x) = sum_k C(n,k)_q x^k Delta_q^k f(0/[n]_q)",
        .param_ranges = "1<=n<=8, f random of degree d, 0<=d<=5",
        .params = operator_grid,
        .q_degree_bound = operator_bound,
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"];
            const auto f = instance_function(p, c);
            if (c.mutation == "classical-difference") {
                const auto values = operator_node_values(f, n, c.q);
                const QParam one(Rational(1));
                std::vector<Rational> cs;
                for (long k = 0; k <= n; ++k) cs.push_back(gauss_binom(n, k, c.q) * q_difference(values, k, one));
                return compare(operator_poly(f, n, c.q), Poly(std::move(cs)));
            }
            return compare(operator_poly(f, n, c.q), operator_delta_poly(f, n, c.q));
        },
        .mutations = {{"classical-difference", "use the ordinary forward difference in place of Delta_q"}},
    });

    r.push_back(IdentitySpec{
        .id = "cor3-delta-zero-power",
        .statement = "[n]_q^m B_{n,q}(t^m|x) = sum_k C(n,k)_q x^k Delta_q^k 0^m",
        .param_ranges = "1<=n<=8, 0<=m<=5",
        .params = [] { return range_grid("n", 1, 8, "m", 0, 5); },
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + p["m"] * (p["n"] - 1) + 1; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], m = p["m"];
            Poly lhs = scaled_power_image(n, m, c.q);
            if (c.mutation == "unscaled") lhs = lhs * (Rational(1) / pow(q_int(n, c.q), m));
            return compare(lhs, corollary_rhs(n, m, c.q, CorollaryForm::delta_form));
        },
        .mutations = {{"unscaled", "drop the [n]_q^m factor"}},
    });

    r.push_back(IdentitySpec{
        .id = "cor4-q-stirling",
        .statement = "[n]_q^m B_{n,q}(t^m|x) = sum_k C(n,k)_q x^k [k]_q! q^C(k,2) S(m,k:q)",
        .param_ranges = "1<=n<=8, 0<=m<=5",
        .params = [] { return range_grid("n", 1, 8, "m", 0, 5); },
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + p["m"] * (p["n"] - 1) + 1; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], m = p["m"];
            if (c.mutation == "drop-q-binomial-power") {
                std::vector<Rational> cs;
                for (long k = 0; k <= n; ++k)
                    cs.push_back(gauss_binom(n, k, c.q) * q_factorial(k, c.q) * q_stirling2(m, k, c.q));
                return compare(scaled_power_image(n, m, c.q), Poly(std::move(cs)));
            }
            return compare(scaled_power_image(n, m, c.q), corollary_rhs(n, m, c.q, CorollaryForm::stirling_form));
        },
        .mutations = {{"drop-q-binomial-power", "omit q^C(k,2)"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq14-stirling-recurrence",
        .statement = "Delta^k 0^n / k! equals the S(n+1,k) = k S(n,k) + S(n,k-1) triangle",
        .param_ranges = "0<=n<=10, 0<=k<=n+1",
        .q_domain = QDomain::one_only,
        .params = [] { return range_nk(0, 10, 0, 1); },
        .q_degree_bound = [](const Params&) { return 0L; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            const long mult_shift = c.mutation == "off-by-one" ? 1 : 0;
            std::vector<std::vector<Rational>> t(static_cast<std::size_t>(n + 1));
            for (long a = 0; a <= n; ++a) {
                t[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(n + 2), Rational(0));
                if (a == 0) {
                    t[0][0] = Rational(1);
                    continue;
                }
                for (long b = 1; b <= n + 1; ++b)
                    t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                        Rational(b + mult_shift) * t[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b)] +
                        t[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
            }
            return compare_scalar(stirling2(n, k), t[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
        },
        .mutations = {{"off-by-one", "use (k+1) S(n,k) in the triangle"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq15-classical-limit",
        .statement = "Delta_q^k 0^n at q = 1 equals k! S(n,k) = Delta^k 0^n",
        .param_ranges = "0<=n<=10, 0<=k<=10",
        .q_domain = QDomain::one_only,
        .params = [] { return range_grid("n", 0, 10, "k", 0, 10); },
        .q_degree_bound = [](const Params&) { return 0L; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            const Rational expected = c.mutation == "drop-factorial" ? stirling2(n, k) : factorial(k) * stirling2(n, k);
            return compare_scalar(delta_q_zero_power(k, n, c.q), expected);
        },
        .mutations = {{"drop-factorial", "compare against S(n,k) without k!"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq16-q-difference-orderings",
        .statement = "sum_k C(n,k)_q (-1)^k q^C(k,2) f(n-k) = sum_k C(n,k)_q (-1)^(n-k) q^C(n-k,2) f(k)",
        .param_ranges = "0<=n<=10, random sequences",
        .params = [] { return range_n("n", 0, 10); },
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + 1; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"];
            InstanceRng rng(c.seed);
            const auto seq = rng.sequence(n + 1);
            Rational lhs = q_difference_reversed(seq, n, c.q);
            if (c.mutation == "drop-sign") {
                lhs = Rational(0);
                for (long k = 0; k <= n; ++k)
                    lhs += gauss_binom(n, k, c.q) * c.q.pow(c2(k)) * seq[static_cast<std::size_t>(n - k)];
            }
            return compare_scalar(lhs, q_difference(seq, n, c.q));
        },
        .mutations = {{"drop-sign", "omit (-1)^k in the first ordering"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq18-q-stirling-orderings",
        .statement = "S(n,k:q) by the [k-j]_q^n ordering equals the [j]_q^n ordering",
        .param_ranges = "0<=n<=8, 0<=k<=8",
        .params = [] { return range_grid("n", 0, 8, "k", 0, 8); },
        // after clearing q^-C(k,2)/[k]_q!: C(k,j) q^C(j,2) [k-j]^n
        .q_degree_bound = [](const Params& p) { return c2(p["k"]) + p["n"] * p["k"] + 1; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            const Rational lhs =
                c.mutation == "wrong-power" ? q_stirling2_reversed(n + 1, k, c.q) : q_stirling2_reversed(n, k, c.q);
            return compare_scalar(lhs, q_stirling2(n, k, c.q));
        },
        .mutations = {{"wrong-power", "raise [k-j]_q to n+1"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq18-q-stirling-limit",
        .statement = "S(n,k:q) at q = 1 equals S(n,k)",
        .param_ranges = "0<=n<=10, 0<=k<=10",
        .q_domain = QDomain::one_only,
        .params = [] { return range_grid("n", 0, 10, "k", 0, 10); },
        .q_degree_bound = [](const Params&) { return 0L; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            Rational lhs = q_stirling2(n, k, c.q);
            if (c.mutation == "drop-prefactor") lhs = delta_q_zero_power(k, n, c.q);
            return compare_scalar(lhs, stirling2(n, k));
        },
        .mutations = {{"drop-prefactor", "omit q^-C(k,2)/[k]_q!"}},
    });

    r.push_back(IdentitySpec{
        .id = "thm5-recurrence",
        .statement = "B_{k,n} = q^k (1 - q^(n-k-1) x) B_{k,n-1} + x B_{k-1,n-1} and "
                     "D_q B_{k,n} = [n]_q q^-k (q B_{k-1,n-1}(qx) - B_{k,n-1}(qx))",
        .param_ranges = "1<=n<=10, 0<=k<=n",
        .params = [] { return range_nk(1, 10, 0, 0); },
        // C(n,2) + n covers the recurrence; clearing q^-k adds up to n more
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + 2 * p["n"]; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            const Poly target = basis_poly(k, n, c.q);
            Poly rec;
            const Poly same = basis_poly(k, n - 1, c.q);
            if (!same.is_zero()) {
                const Rational qk = c.mutation == "drop-qk" ? Rational(1) : c.q.pow(k);
                rec += Poly{Rational(1), -c.q.pow(n - k - 1)} * same * qk;
            }
            rec += basis_poly(k - 1, n - 1, c.q).shift_up(1);
            if (auto bad = compare(target, rec)) return bad;
            if (c.q.is_one()) return std::nullopt;
            Poly closed = basis_qderivative(k, n, c.q);
            if (c.mutation == "derivative-sign") {
                const Poly lower = basis_poly(k - 1, n - 1, c.q).scale_argument(c.q.value()) * c.q.value();
                closed = (lower + same.scale_argument(c.q.value())) * (q_int(n, c.q) * c.q.pow(-k));
            }
            return compare(q_derivative(target, c.q), closed);
        },
        .mutations = {{"drop-qk", "omit the q^k factor in the recurrence"},
                      {"derivative-sign", "add instead of subtract B_{k,n-1}(qx)"}},
    });

    r.push_back(IdentitySpec{
        .id = "thm6-degree-reduction",
        .statement = "([n-k]/[n]) B_{k,n} + ([k+1]/[n]) B_{k+1,n} = B_{k,n-1} + x [n-k-1]_q (1-q) B_{k,n-1}",
        .param_ranges = "1<=n<=10, 0<=k<=n",
        .params = [] { return range_nk(1, 10, 0, 0); },
        // multiply through by [n]_q
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + 2 * p["n"]; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            auto sides = degree_reduction_sides(k, n, c.q);
            if (c.mutation == "drop-one-minus-q") {
                const Poly reduced = basis_poly(k, n - 1, c.q);
                sides.right = reduced + reduced.shift_up(1) * q_int(n - k - 1, c.q);
            }
            return compare(sides.left, sides.right);
        },
        .mutations = {{"drop-one-minus-q", "omit the (1-q) factor"}},
    });

    r.push_back(IdentitySpec{
        .id = "prop7-ratio-step",
        .statement = "B_{k,n} = ([n-k+1]/[k]) (x/(1 - x q^(n-k))) B_{k-1,n}",
        .param_ranges = "1<=n<=9, 1<=k<=n, x grid minus poles",
        .mode = ComparisonMode::pointwise,
        .params = [] { return range_nk(1, 9, 1, 0); },
        // clear [k]_q (1 - x q^(n-k))
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + 2 * p["n"]; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            const long pole_exp = c.mutation == "shift-q-power" ? n - k + 1 : n - k;
            std::vector<Rational> xs;
            for (const auto& x : c.x_samples)
                if (!(Rational(1) - x * c.q.pow(pole_exp)).is_zero()) xs.push_back(x);
            if (c.mutation == "shift-q-power") {
                const Poly cur = basis_poly(k, n, c.q), prev = basis_poly(k - 1, n, c.q);
                const Rational coeff = q_int(n - k + 1, c.q) / q_int(k, c.q);
                return compare_on(
                    xs, [&](const Rational& x) { return cur.eval(x); },
                    [&](const Rational& x) { return coeff * x / (Rational(1) - x * c.q.pow(pole_exp)) * prev.eval(x); });
            }
            for (const auto& chk : ratio_step(k, n, c.q, xs))
                if (auto bad = compare(chk.x, chk.lhs, chk.rhs)) return bad;
            return std::nullopt;
        },
        .mutations = {{"shift-q-power", "q^(n-k+1) in the pole factor"}},
    });

    r.push_back(IdentitySpec{
        .id = "thm8-power-basis",
        .statement = "B_{k,n} = sum_{i=k..n} C(n,i)_q C(i,k)_q (-1)^(i-k) q^C(i-k,2) x^i",
        .param_ranges = "0<=n<=10, 0<=k<=n",
        .params = [] { return range_nk(0, 10, 0, 0); },
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + 1; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            Poly expansion = basis_power_expansion(k, n, c.q);
            if (c.mutation == "drop-sign") {
                std::vector<Rational> cs;
                for (const auto& v : expansion.coeffs()) cs.push_back(abs(v));
                expansion = Poly(std::move(cs));
            }
            return compare(basis_poly(k, n, c.q), expansion);
        },
        .mutations = {{"drop-sign", "drop (-1)^(i-k)"}},
    });

    r.push_back(IdentitySpec{
        .id = "thm9-moments",
        .statement = "sum_{k=i..n} (C(k,i)_q / C(n,i)_q) B_{k,n}(x,q) = x^i",
        .param_ranges = "0<=i<=n<=8",
        .params =
            [] {
                std::vector<Params> out;
                for (long n = 0; n <= 8; ++n)
                    for (long i = 0; i <= n; ++i) out.push_back({{"n", n}, {"i", i}});
                return out;
            },
        // clear C(n,i)_q
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + 2 * p["i"] * (p["n"] - p["i"]) + 1; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], i = p["i"];
            if (c.mutation == "classical-weights") {
                Poly sum;
                for (long k = i; k <= n; ++k) sum += basis_poly(k, n, c.q) * (binomial(k, i) / binomial(n, i));
                return compare(sum, Poly::monomial(static_cast<std::size_t>(i)));
            }
            return compare(moment_sum(i, n, c.q), Poly::monomial(static_cast<std::size_t>(i)));
        },
        .mutations = {{"classical-weights", "use C(k,i)/C(n,i) without q"}},
    });

    r.push_back(IdentitySpec{
        .id = "partition-of-unity",
        .statement = "sum_k B_{k,n}(x,q) = 1",
        .param_ranges = "0<=n<=12",
        .params = [] { return range_n("n", 0, 12); },
        .q_degree_bound = [](const Params& p) { return c2(p["n"]); },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"];
            const long top = c.mutation == "drop-last" ? n - 1 : n;
            Poly sum;
            for (long k = 0; k <= top; ++k) sum += basis_poly(k, n, c.q);
            return compare(sum, Poly{Rational(1)});
        },
        .mutations = {{"drop-last", "omit B_{n,n}"}},
    });

    r.push_back(IdentitySpec{
        .id = "linear-precision",
        .statement = "B_{n,q}(t|x) = x",
        .param_ranges = "1<=n<=12",
        .params = [] { return range_n("n", 1, 12); },
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + p["n"]; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"];
            if (c.mutation == "classical-nodes") {
                Poly sum;
                for (long k = 0; k <= n; ++k) sum += basis_poly(k, n, c.q) * Rational(k, n);
                return compare(sum, x_poly());
            }
            return compare(operator_poly(SampledFunction::polynomial("t", x_poly()), n, c.q), x_poly());
        },
        .mutations = {{"classical-nodes", "sample f at k/n instead of [k]_q/[n]_q"}},
    });

    r.push_back(IdentitySpec{
        .id = "genfun-coefficient",
        .statement = "[n]_q! [t^n] x^k t^k/[k]_q! e_q((1-x)_q t) = B_{k,n}(x,q)",
        .param_ranges = "0<=n<=10, 0<=k<=n+1, x grid",
        .mode = ComparisonMode::pointwise,
        .params = [] { return range_nk(0, 10, 0, 1); },
        // clear [k]_q! [n-k]_q!
        .q_degree_bound = [](const Params& p) { return 2 * c2(p["n"]) + 1; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            const Poly b = basis_poly(k, n, c.q);
            if (c.mutation == "ordinary-exponential") {
                return compare_on(
                    c.x_samples,
                    [&](const Rational& x) {
                        if (n < k) return Rational(0);
                        return q_factorial(n, c.q) / q_factorial(k, c.q) * pow(x, k) *
                               q_shifted_factorial(x, n - k, c.q) / factorial(n - k);
                    },
                    [&](const Rational& x) { return b.eval(x); });
            }
            return compare_on(
                c.x_samples, [&](const Rational& x) { return genfun_coefficient(k, n, x, c.q); },
                [&](const Rational& x) { return b.eval(x); });
        },
        .mutations = {{"ordinary-exponential", "normalize by m! instead of [m]_q!"}},
    });

    // Shared by the three Bernoulli closed-form entries.
    const auto bernoulli_grid = [] { return range_grid("k", 1, 3, "l", 0, 6); };
    // deg_q of [k]_q! B_{k,l}(x,q) is at most C(l,2) + C(k,2) for fixed x
    const auto bernoulli_bound = [](const Params& p) { return c2(p["l"] + p["k"]) + c2(p["k"]) + 1; };

    r.push_back(IdentitySpec{
        .id = "eq30-series-oracle",
        .statement = "[l]_q! [t^l] (tx)^k/[k]_q! e_q((1-x)_q t) = B_{k,l}(x,q)",
        .param_ranges = "1<=k<=3, 0<=l<=6, x grid",
        .mode = ComparisonMode::pointwise,
        .params = bernoulli_grid,
        .q_degree_bound = bernoulli_bound,
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long k = p["k"], l = p["l"];
            const Poly b = basis_poly(k, l, c.q);
            return compare_on(
                c.x_samples,
                [&](const Rational& x) {
                    const Rational v = genfun30_coefficient(k, l, x, c.q);
                    return c.mutation == "drop-x-power" && !x.is_zero() ? v / pow(x, k) : v;
                },
                [&](const Rational& x) { return b.eval(x); });
        },
        .mutations = {{"drop-x-power", "use t^k in place of (tx)^k"}},
    });

    r.push_back(IdentitySpec{
        .id = "thm10-closed-form",
        .statement = "B_{k,l} = (k!/[k]_q!) x^k sum_m ([m]_q!/m!) S(m,k) C(l,m)_q beta_{l-m}^(k)((1-x)_q, q)",
        .param_ranges = "1<=k<=3, 0<=l<=6, x grid",
        .mode = ComparisonMode::pointwise,
        .params = bernoulli_grid,
        .q_degree_bound = bernoulli_bound,
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long k = p["k"], l = p["l"];
            const Poly b = basis_poly(k, l, c.q);
            auto closed = [&](const Rational& x) {
                if (c.mutation != "q-stirling") return theorem10_rhs(k, l, x, c.q);
                const auto table = bernoulli_numbers(k, l);
                const auto powers = shifted_factorial_powers(x, c.q);
                Rational sum(0);
                for (long m = 0; m <= l; ++m)
                    sum += q_factorial(m, c.q) / factorial(m) * factorial(k) * q_stirling2(m, k, c.q) *
                           gauss_binom(l, m, c.q) * q_bernoulli_kernel(l - m, table, c.q, powers);
                return pow(x, k) / q_factorial(k, c.q) * sum;
            };
            if (auto bad = compare_on(c.x_samples, closed, [&](const Rational& x) { return genfun30_coefficient(k, l, x, c.q); }))
                return bad;
            return compare_on(c.x_samples, closed, [&](const Rational& x) { return b.eval(x); });
        },
        .mutations = {{"q-stirling", "read S(m,k) as S(m,k:q)"}},
    });

    r.push_back(IdentitySpec{
        .id = "cor11-forward-difference",
        .statement = "B_{k,l} = (x^k/[k]_q!) sum_m ([m]_q!/m!) C(l,m)_q beta_{l-m}^(k)((1-x)_q, q) Delta^k 0^m",
        .param_ranges = "1<=k<=3, 0<=l<=6, x grid",
        .mode = ComparisonMode::pointwise,
        .params = bernoulli_grid,
        .q_degree_bound = bernoulli_bound,
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long k = p["k"], l = p["l"];
            const Poly b = basis_poly(k, l, c.q);
            auto closed = [&](const Rational& x) {
                if (c.mutation != "q-difference") return theorem10_rhs(k, l, x, c.q, ClosedFormVariant::forward_difference);
                const auto table = bernoulli_numbers(k, l);
                const auto powers = shifted_factorial_powers(x, c.q);
                Rational sum(0);
                for (long m = 0; m <= l; ++m)
                    sum += q_factorial(m, c.q) / factorial(m) * gauss_binom(l, m, c.q) *
                           q_bernoulli_kernel(l - m, table, c.q, powers) * delta_q_zero_power(k, m, c.q);
                return pow(x, k) / q_factorial(k, c.q) * sum;
            };
            if (auto bad = compare_on(c.x_samples, closed, [&](const Rational& x) { return genfun30_coefficient(k, l, x, c.q); }))
                return bad;
            return compare_on(c.x_samples, closed, [&](const Rational& x) { return b.eval(x); });
        },
        .mutations = {{"q-difference", "use Delta_q^k 0^m in place of Delta^k 0^m"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq29-classical-limit",
        .statement = "beta_n^(k)(x,1) equals the classical order-k Bernoulli polynomial",
        .param_ranges = "0<=n<=8, 1<=k<=3, x grid",
        .mode = ComparisonMode::pointwise,
        .q_domain = QDomain::one_only,
        .params = [] { return range_grid("n", 0, 8, "k", 1, 3); },
        .q_degree_bound = [](const Params&) { return 0L; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"], k = p["k"];
            auto lhs = [&](const Rational& x) {
                if (c.mutation != "drop-binomial") return q_bernoulli(n, k, x, c.q);
                const auto table = bernoulli_numbers(k, n);
                Rational sum(0);
                for (long m = 0; m <= n; ++m) sum += pow(x, n - m) * table.at(m);
                return sum;
            };
            return compare_on(c.x_samples, lhs, [&](const Rational& x) { return bernoulli_polynomial_classical(n, k, x); });
        },
        .mutations = {{"drop-binomial", "omit C(n,m)_q [m]_q!/m!"}},
    });

    r.push_back(IdentitySpec{
        .id = "eq31-falling-factorial",
        .statement = "x^n = sum_k C(x,k) k! S(n,k)",
        .param_ranges = "0<=n<=8, 10 rational x",
        .mode = ComparisonMode::pointwise,
        .q_domain = QDomain::one_only,
        .params = [] { return range_n("n", 0, 8); },
        .q_degree_bound = [](const Params&) { return 0L; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"];
            return compare_on(
                c.x_samples, [&](const Rational& x) { return pow(x, n); },
                [&](const Rational& x) {
                    if (c.mutation != "drop-factorial") return falling_factorial_identity(n, x).second;
                    Rational sum(0);
                    for (long k = 0; k <= n; ++k) sum += binomial_rational(x, k) * stirling2(n, k);
                    return sum;
                });
        },
        .mutations = {{"drop-factorial", "omit k!"}},
        .x_samples = {Rational(0), Rational(1, 7), Rational(2, 7), Rational(3, 7), Rational(4, 7), Rational(5, 7),
                      Rational(6, 7), Rational(1), Rational(2), Rational(-3, 2)},
    });

    r.push_back(IdentitySpec{
        .id = "bernoulli-recurrence",
        .statement = "sum_{j=0..m} C(m+1,j) B_j = 0",
        .param_ranges = "1<=m<=20",
        .q_domain = QDomain::one_only,
        .params = [] { return range_n("m", 1, 20); },
        .q_degree_bound = [](const Params&) { return 0L; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long m = p["m"];
            const auto t = bernoulli_numbers(1, m);
            const long top = c.mutation == "wrong-top" ? m : m + 1;
            Rational s(0);
            for (long j = 0; j <= m; ++j) s += binomial(top, j) * t.at(j);
            return compare_scalar(s, Rational(0));
        },
        .mutations = {{"wrong-top", "use C(m,j)"}},
    });

    r.push_back(IdentitySpec{
        .id = "bernoulli-order-additivity",
        .statement = "B_m^(a+b) = sum_j C(m,j) B_j^(a) B_{m-j}^(b)",
        .param_ranges = "a,b>=1, a+b<=4, 0<=m<=12",
        .q_domain = QDomain::one_only,
        .params =
            [] {
                std::vector<Params> out;
                for (long a = 1; a <= 3; ++a)
                    for (long b = 1; a + b <= 4; ++b)
                        for (long m = 0; m <= 12; ++m) out.push_back({{"a", a}, {"b", b}, {"m", m}});
                return out;
            },
        .q_degree_bound = [](const Params&) { return 0L; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long a = p["a"], b = p["b"], m = p["m"];
            const auto ta = bernoulli_numbers(a, m), tb = bernoulli_numbers(b, m), tab = bernoulli_numbers(a + b, m);
            Rational s(0);
            for (long j = 0; j <= m; ++j)
                s += (c.mutation == "drop-binomial" ? Rational(1) : binomial(m, j)) * ta.at(j) * tb.at(m - j);
            return compare_scalar(s, tab.at(m));
        },
        .mutations = {{"drop-binomial", "omit C(m,j)"}},
    });

    r.push_back(IdentitySpec{
        .id = "sec3-conversion-matrix",
        .statement = "power matrix of B_{k,n} times the moment matrix C(k,i)_q/C(n,i)_q is the identity; "
                     "n=2 equals [[1,0,0],[-[2],[2],0],[q,-[2],1]]",
        .param_ranges = "0<=n<=10",
        .params = [] { return range_n("n", 0, 10); },
        // column c of the product carries the single denominator C(n,c)_q
        .q_degree_bound = [](const Params& p) { return c2(p["n"]) + p["n"] * p["n"] / 4 + 1; },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"];
            const auto size = static_cast<std::size_t>(n + 1);
            RMatrix m = to_power_matrix(n, c.q);
            if (c.mutation == "transpose") {
                RMatrix t(size, size);
                for (std::size_t i = 0; i < size; ++i)
                    for (std::size_t j = 0; j < size; ++j) t(i, j) = m(j, i);
                m = t;
            }
            const RMatrix product = m * from_power_matrix(n, c.q);
            const RMatrix id = RMatrix::identity(size);
            for (std::size_t i = 0; i < size; ++i)
                for (std::size_t j = 0; j < size; ++j)
                    if (auto bad = compare_scalar(product(i, j), id(i, j))) return bad;
            if (n == 2) {
                const Rational two = q_int(2, c.q);
                const RMatrix shown(std::vector<std::vector<Rational>>{
                    {Rational(1), Rational(0), Rational(0)}, {-two, two, Rational(0)}, {c.q.value(), -two, Rational(1)}});
                for (std::size_t i = 0; i < 3; ++i)
                    for (std::size_t j = 0; j < 3; ++j)
                        if (auto bad = compare_scalar(m(i, j), shown(i, j))) return bad;
            }
            return std::nullopt;
        },
        .mutations = {{"transpose", "use the transposed power matrix"}},
    });

    r.push_back(IdentitySpec{
        .id = "pmf-normalization",
        .statement = "sum_k C(n,k)_q x^k (1-x)_q^(n-k) = 1 with every mass >= 0",
        .param_ranges = "0<=n<=12, x grid",
        .mode = ComparisonMode::pointwise,
        .params = [] { return range_n("n", 0, 12); },
        .q_degree_bound = [](const Params& p) { return c2(p["n"]); },
        .check = [](const Params& p, const CheckContext& c) -> std::optional<Mismatch> {
            const long n = p["n"];
            for (const auto& x : c.x_samples) {
                Rational total(0);
                for (long k = 0; k <= n; ++k) {
                    const Rational mass = c.mutation == "classical-binomial"
                                              ? binomial(n, k) * pow(x, k) * q_shifted_factorial(x, n - k, c.q)
                                              : pmf(n, k, x, c.q);
                    if (mass.sign() < 0) return Mismatch{x, mass.str(), ">= 0"};
                    total += mass;
                }
                if (auto bad = compare(x, total, Rational(1))) return bad;
            }
            return std::nullopt;
        },
        .mutations = {{"classical-binomial", "use C(n,k) in place of C(n,k)_q"}},
    });

    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return r;
}

/// The registry, sorted by id.
inline const std::vector<IdentitySpec>& registry() {
    static const std::vector<IdentitySpec> specs = build_registry();
    return specs;
}

inline const IdentitySpec& find_identity(std::string_view id) {
    for (const auto& s : registry())
        if (s.id == id) return s;
    throw UnknownIdentity("no identity with id '" + std::string(id) + "'");
}

inline std::vector<IdentityReport> run_suite(std::string_view filter, std::uint64_t seed, unsigned workers = 0) {
    return run_suite(registry(), filter, seed, workers);
}

} // namespace qbern::verify
