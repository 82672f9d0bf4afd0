#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bernstein.hpp"
#include "errors.hpp"
#include "qcore.hpp"
#include "rational.hpp"
#include "serialize.hpp"

namespace qbern::approx {

enum class ScheduleKind { fixed, one_minus_inverse, custom };

struct QSchedule {
    ScheduleKind kind = ScheduleKind::one_minus_inverse;
    Rational fixed{1, 2};
    std::vector<Rational> custom;

    /// q values used at degree n.
    [[nodiscard]] std::vector<Rational> at(long n) const {
        switch (kind) {
        case ScheduleKind::fixed: return {fixed};
        case ScheduleKind::custom: return custom;
        case ScheduleKind::one_minus_inverse: break;
        }
        if (n < 2) throw InvalidQ("q = 1 - 1/n needs n >= 2");
        return {Rational(n - 1, n)};
    }
};

struct ExperimentConfig {
    std::string function = "runge";
    std::vector<long> degrees{4, 8, 16, 32, 64};
    QSchedule schedule;
    long grid_size = 101;
};

struct ErrorRow {
    long n = 0;
    double q = 0.0;
    double sup_error = 0.0;
    double mean_error = 0.0;

    bool operator==(const ErrorRow&) const = default;
};

struct ErrorTable {
    std::vector<ErrorRow> rows;

    bool operator==(const ErrorTable&) const = default;
};

/// Built-in test functions. "poly:c0,c1,..." takes rational coefficients.
inline SampledFunction lookup_function(const std::string& name) {
    if (name == "exp") return {name, {}, [](double t) { return std::exp(t); }};
    if (name == "sin-pi") return {name, {}, [](double t) { return std::sin(std::numbers::pi * t); }};
    if (name == "abs-shift")
        return {name, [](const Rational& t) { return abs(t - Rational(1, 2)); },
                [](double t) { return std::fabs(t - 0.5); }};
    if (name == "runge")
        return {name,
                [](const Rational& t) {
                    const Rational s = t - Rational(1, 2);
                    return Rational(1) / (Rational(1) + Rational(25) * s * s);
                },
                [](double t) { return 1.0 / (1.0 + 25.0 * (t - 0.5) * (t - 0.5)); }};
    if (name.starts_with("poly:")) {
        std::vector<Rational> cs;
        std::stringstream ss(name.substr(5));
        std::string item;
        while (std::getline(ss, item, ',')) cs.push_back(Rational::parse(item));
        if (cs.empty()) throw UnknownFunction("poly: needs at least one coefficient");
        return SampledFunction::polynomial(name, Poly(std::move(cs)));
    }
    throw UnknownFunction("unknown function '" + name + "' (exp, sin-pi, abs-shift, runge, poly:c0,c1,...)");
}

/// C(n,k)_q for k = 0..n.
inline std::vector<Rational> gauss_binom_row(long n, const QParam& q) {
    std::vector<Rational> ints{Rational(0)};
    Rational qi(1);
    for (long j = 1; j <= n; ++j) {
        ints.push_back(ints.back() + qi);
        qi *= q.value();
    }
    std::vector<Rational> row{Rational(1)};
    for (long k = 1; k <= n; ++k)
        row.push_back(row.back() * ints[static_cast<std::size_t>(n - k + 1)] / ints[static_cast<std::size_t>(k)]);
    return row;
}

/// Exact weight as an unreduced integer fraction.
struct ExactWeight {
    mpz_class num;
    mpz_class den;

    [[nodiscard]] Rational value() const { return Rational(num, den); }
    [[nodiscard]] double to_double() const {
        long en = 0, ed = 0;
        const double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
        const double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
        return std::ldexp(mn / md, static_cast<int>(en - ed));
    }
};

/// Per-(n, q) data shared by every grid point.
class WeightKernel {
public:
    WeightKernel(long n, const QParam& q) : n_(n), c_(q.value().numerator()), d_(q.value().denominator()) {
        for (const auto& b : gauss_binom_row(n, q)) {
            binom_num_.push_back(b.numerator());
            binom_den_.push_back(b.denominator());
        }
        mpz_class cp = 1, dp = 1, dc2 = 1;
        for (long j = 0; j <= n; ++j) {
            c_pow_.push_back(cp);
            d_pow_.push_back(dp);
            d_c2_.push_back(dc2); // d^C(j,2)
            dc2 *= dp;
            cp *= c_;
            dp *= d_;
        }
    }

    [[nodiscard]] long degree() const { return n_; }

    /// B_{k,n}(x,q) for k = 0..n from the product form; asserts every weight >= 0.
    [[nodiscard]] std::vector<ExactWeight> weights(const Rational& x) const {
        check_unit_interval(x);
        const mpz_class a = x.numerator(), b = x.denominator();
        // (1-x)_q^j = tail[j] / (b^j d^C(j,2))
        std::vector<mpz_class> tail{mpz_class(1)};
        for (long j = 1; j <= n_; ++j) {
            const mpz_class factor = b * d_pow_[static_cast<std::size_t>(j - 1)] - a * c_pow_[static_cast<std::size_t>(j - 1)];
            if (sgn(factor) < 0) throw DomainError("negative factor in q-Bernstein weight");
            tail.push_back(tail.back() * factor);
        }
        mpz_class bn;
        mpz_pow_ui(bn.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n_));
        std::vector<ExactWeight> w;
        w.reserve(static_cast<std::size_t>(n_ + 1));
        mpz_class ak = 1;
        for (long k = 0; k <= n_; ++k) {
            const auto ku = static_cast<std::size_t>(k), ju = static_cast<std::size_t>(n_ - k);
            w.push_back({binom_num_[ku] * ak * tail[ju], binom_den_[ku] * bn * d_c2_[ju]});
            if (sgn(w.back().num) < 0) throw DomainError("negative q-Bernstein weight");
            ak *= a;
        }
        return w;
    }

private:
    long n_;
    mpz_class c_, d_;
    std::vector<mpz_class> binom_num_, binom_den_, c_pow_, d_pow_, d_c2_;
};

inline std::vector<Rational> basis_weights(long n, const Rational& x, const QParam& q) {
    std::vector<Rational> out;
    for (const auto& w : WeightKernel(n, q).weights(x)) out.push_back(w.value());
    return out;
}

/// Operator value at grid point x, weights exact then converted to binary64.
inline double operator_value(const std::vector<double>& node_values, const WeightKernel& kernel, const Rational& x) {
    const auto w = kernel.weights(x);
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) acc += w[k].to_double() * node_values[k];
    return acc;
}

inline ErrorRow measure(const SampledFunction& f, long n, const Rational& qv, long grid_size) {
    const QParam q(qv);
    const Rational denom = q_int(n, q);
    std::vector<double> nodes;
    for (long k = 0; k <= n; ++k) nodes.push_back(f.approx((q_int(k, q) / denom).to_double()));
    const WeightKernel kernel(n, q);
    ErrorRow row{n, qv.to_double(), 0.0, 0.0};
    double total = 0.0;
    for (long i = 0; i < grid_size; ++i) {
        const Rational x(i, grid_size - 1);
        const double err = std::fabs(operator_value(nodes, kernel, x) - f.approx(x.to_double()));
        row.sup_error = std::max(row.sup_error, err);
        total += err;
    }
    row.mean_error = total / static_cast<double>(grid_size);
    return row;
}

inline void sort_rows(ErrorTable& t) {
    std::sort(t.rows.begin(), t.rows.end(), [](const ErrorRow& a, const ErrorRow& b) {
        return a.n != b.n ? a.n < b.n : a.q < b.q;
    });
}

/// Runs every (n, q) cell of the config; cells are computed in parallel and
/// the table is sorted by (n, q).
inline ErrorTable approximate(const ExperimentConfig& cfg, unsigned workers = 0) {
    const SampledFunction f = lookup_function(cfg.function);
    if (cfg.grid_size < 2) throw DomainError("grid_size must be at least 2");
    struct Cell {
        long n;
        Rational q;
    };
    std::vector<Cell> cells;
    for (long n : cfg.degrees) {
        if (n < 1) throw DomainError("degrees must be positive");
        for (const auto& q : cfg.schedule.at(n)) {
            QParam check(q);
            cells.push_back({n, q});
        }
    }
    ErrorTable table;
    table.rows.resize(cells.size());
    if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++)
            table.rows[i] = measure(f, cells[i].n, cells[i].q, cfg.grid_size);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    sort_rows(table);
    return table;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string to_csv(ErrorTable table) {
    sort_rows(table);
    std::string out = "n,q,sup_error,mean_error\n";
    for (const auto& r : table.rows)
        out += std::to_string(r.n) + "," + format_double(r.q) + "," + format_double(r.sup_error) + "," +
               format_double(r.mean_error) + "\n";
    return out;
}

inline void emit_csv(const ErrorTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << to_csv(table);
    if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

inline ErrorTable parse_csv(const std::string& text) {
    std::stringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "n,q,sup_error,mean_error") throw ParseError("missing CSV header");
    ErrorTable t;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ErrorRow r;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf%c", &r.n, &r.q, &r.sup_error, &r.mean_error, &tail) != 4)
            throw ParseError("bad CSV row '" + line + "'");
        t.rows.push_back(r);
    }
    return t;
}

inline ErrorTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

inline json to_json(const ErrorTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"n", r.n}, {"q", r.q}, {"sup_error", r.sup_error}, {"mean_error", r.mean_error}});
    return json{{"rows", rows}};
}

/// {"function": "runge", "degrees": [4, 8], "grid_size": 101,
///  "schedule": "one-minus-inverse" | {"fixed": "1/2"} | {"custom": ["1/2", "2/3"]}}
inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    try {
        if (j.contains("function")) cfg.function = j.at("function").get<std::string>();
        if (j.contains("degrees")) cfg.degrees = j.at("degrees").get<std::vector<long>>();
        if (j.contains("grid_size")) cfg.grid_size = j.at("grid_size").get<long>();
        if (j.contains("schedule")) {
            const json& s = j.at("schedule");
            if (s.is_string() && s.get<std::string>() == "one-minus-inverse") {
                cfg.schedule.kind = ScheduleKind::one_minus_inverse;
            } else if (s.is_object() && s.contains("fixed")) {
                cfg.schedule.kind = ScheduleKind::fixed;
                cfg.schedule.fixed = Rational::parse(s.at("fixed").get<std::string>());
            } else if (s.is_object() && s.contains("custom")) {
                cfg.schedule.kind = ScheduleKind::custom;
                for (const auto& q : s.at("custom")) cfg.schedule.custom.push_back(Rational::parse(q.get<std::string>()));
            } else {
                throw ParseError("schedule must be \"one-minus-inverse\", {\"fixed\": q} or {\"custom\": [q, ...]}");
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad experiment config: ") + e.what());
    }
    return cfg;
}

} // namespace qbern::approx
