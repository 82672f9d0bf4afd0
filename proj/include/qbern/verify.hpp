#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "qcore.hpp"
#include "rational.hpp"
#include "serialize.hpp"

namespace qbern::verify {

/// Named integer parameters of one identity instance, in declaration order.
class Params {
public:
    Params() = default;
    Params(std::initializer_list<std::pair<std::string, long>> values) : values_(values) {}

    [[nodiscard]] long operator[](std::string_view name) const {
        for (const auto& [key, value] : values_)
            if (key == name) return value;
        throw DomainError("identity parameter '" + std::string(name) + "' not set");
    }
    [[nodiscard]] const std::vector<std::pair<std::string, long>>& values() const { return values_; }

    [[nodiscard]] json to_json() const {
        json j = json::object();
        for (const auto& [key, value] : values_) j[key] = value;
        return j;
    }

    /// Stable 64-bit mix of the values, for per-instance random inputs.
    [[nodiscard]] std::uint64_t mix(std::uint64_t seed) const {
        std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
        for (const auto& kv : values_) {
            h ^= static_cast<std::uint64_t>(kv.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ULL;
            h ^= h >> 31;
        }
        return h;
    }

private:
    std::vector<std::pair<std::string, long>> values_;
};

enum class ComparisonMode { poly_in_x, pointwise };

/// Which q values an identity is checked at.
enum class QDomain {
    open_interval,          // samples in (0,1) only
    open_interval_and_one,  // samples in (0,1), then q = 1
    one_only,               // the q = 1 specialization
};

struct Mismatch {
    std::optional<Rational> x;
    std::string lhs;
    std::string rhs;
};

struct CheckContext {
    const QParam& q;
    std::string_view mutation;
    std::uint64_t seed;
    const std::vector<Rational>& x_samples;
};

using CheckFn = std::function<std::optional<Mismatch>(const Params&, const CheckContext&)>;

struct MutationSpec {
    std::string name;
    std::string description;
};

/// One registered identity.
struct IdentitySpec {
    std::string id;
    std::string statement;
    std::string param_ranges;
    ComparisonMode mode = ComparisonMode::poly_in_x;
    QDomain q_domain = QDomain::open_interval_and_one;
    std::function<std::vector<Params>()> params;
    /// Upper bound on the degree in q of (lhs - rhs) after clearing the
    /// documented denominators; the engine samples bound + 1 distinct q in (0,1).
    std::function<long(const Params&)> q_degree_bound;
    CheckFn check;
    std::vector<MutationSpec> mutations;
    /// Pointwise samples; empty means the default x grid.
    std::vector<Rational> x_samples;
};

/// Fixed sequence of distinct rationals in (0,1): a/p for primes p = 2, 3, 5, 7, ...
inline std::vector<Rational> q_sample_sequence(std::size_t count) {
    std::vector<Rational> out;
    out.reserve(count);
    for (long p = 2; out.size() < count; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (!prime) continue;
        for (long a = 1; a < p && out.size() < count; ++a) out.emplace_back(a, p);
    }
    return out;
}

/// {0, 1/7, ..., 6/7, 1}
inline std::vector<Rational> default_x_grid() {
    std::vector<Rational> xs{Rational(0)};
    for (long i = 1; i <= 6; ++i) xs.emplace_back(i, 7);
    xs.emplace_back(1);
    return xs;
}

enum class Status { certified, failed };

struct Counterexample {
    Params params;
    Rational q;
    std::optional<Rational> x;
    std::string lhs;
    std::string rhs;
};

struct IdentityReport {
    std::string id;
    std::string mutation;
    std::string param_ranges;
    long params_tested = 0;
    long max_q_degree_bound = 0;
    std::vector<Rational> q_samples;
    std::vector<Rational> x_samples;
    Status status = Status::certified;
    std::optional<Counterexample> counterexample;
    double wall_time_ms = 0.0;

    [[nodiscard]] bool certified() const { return status == Status::certified; }

    [[nodiscard]] json to_json(bool include_time = true) const {
        json j;
        j["id"] = id;
        if (!mutation.empty()) j["mutation"] = mutation;
        j["status"] = status == Status::certified ? "certified" : "failed";
        j["param_ranges"] = param_ranges;
        j["params_tested"] = params_tested;
        j["max_q_degree_bound"] = max_q_degree_bound;
        json qs = json::array();
        for (const auto& q : q_samples) qs.push_back(q.str());
        j["q_samples"] = qs;
        json xs = json::array();
        for (const auto& x : x_samples) xs.push_back(x.str());
        j["x_samples"] = xs;
        if (counterexample) {
            const auto& c = *counterexample;
            j["counterexample"] = {{"params", c.params.to_json()},
                                   {"q", c.q.str()},
                                   {"x", c.x ? json(c.x->str()) : json(nullptr)},
                                   {"lhs", c.lhs},
                                   {"rhs", c.rhs}};
        } else {
            j["counterexample"] = nullptr;
        }
        if (include_time) j["wall_time_ms"] = wall_time_ms;
        return j;
    }
};

inline std::optional<Mismatch> compare(const Poly& lhs, const Poly& rhs) {
    if (lhs == rhs) return std::nullopt;
    return Mismatch{std::nullopt, to_string(lhs), to_string(rhs)};
}

inline std::optional<Mismatch> compare(const Rational& x, const Rational& lhs, const Rational& rhs) {
    if (lhs == rhs) return std::nullopt;
    return Mismatch{x, lhs.str(), rhs.str()};
}

inline std::optional<Mismatch> compare_scalar(const Rational& lhs, const Rational& rhs) {
    if (lhs == rhs) return std::nullopt;
    return Mismatch{std::nullopt, lhs.str(), rhs.str()};
}

/// q values used for one instance with the given degree bound.
inline std::vector<Rational> q_samples_for(QDomain domain, long bound) {
    if (domain == QDomain::one_only) return {Rational(1)};
    auto qs = q_sample_sequence(static_cast<std::size_t>(std::max(bound, 0L) + 1));
    if (domain == QDomain::open_interval_and_one) qs.emplace_back(1);
    return qs;
}

/// Runs every parameter tuple at interpolation-complete q samples. The
/// first mismatch, in (parameter order, q order), is reported.
inline IdentityReport run_identity(const IdentitySpec& spec, std::uint64_t seed, std::string_view mutation = {}) {
    if (!mutation.empty() &&
        std::none_of(spec.mutations.begin(), spec.mutations.end(), [&](const auto& m) { return m.name == mutation; }))
        throw UnknownIdentity("identity '" + spec.id + "' has no mutation named '" + std::string(mutation) + "'");

    const auto start = std::chrono::steady_clock::now();
    IdentityReport report;
    report.id = spec.id;
    report.mutation = std::string(mutation);
    report.param_ranges = spec.param_ranges;
    if (spec.mode == ComparisonMode::pointwise) report.x_samples = spec.x_samples.empty() ? default_x_grid() : spec.x_samples;

    const auto tuples = spec.params();
    for (const auto& params : tuples) {
        ++report.params_tested;
        const long bound = spec.q_domain == QDomain::one_only ? 0 : spec.q_degree_bound(params);
        report.max_q_degree_bound = std::max(report.max_q_degree_bound, bound);
        const auto qs = q_samples_for(spec.q_domain, bound);
        if (qs.size() > report.q_samples.size()) report.q_samples = qs;
        for (const auto& qv : qs) {
            const QParam q(qv);
            const CheckContext ctx{q, mutation, params.mix(seed), report.x_samples};
            std::optional<Mismatch> bad;
            try {
                bad = spec.check(params, ctx);
            } catch (const Error& e) {
                bad = Mismatch{std::nullopt, "error", e.what()};
            }
            if (bad) {
                report.status = Status::failed;
                report.counterexample = Counterexample{params, qv, bad->x, bad->lhs, bad->rhs};
                break;
            }
        }
        if (report.status == Status::failed) break;
    }
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// Worker count from QBERN_WORKERS, else the number of processors.
inline unsigned default_workers() {
    if (const char* env = std::getenv("QBERN_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs every spec whose id starts with filter. Reports come back in the
/// order of `specs` regardless of scheduling.
inline std::vector<IdentityReport> run_suite(const std::vector<IdentitySpec>& specs, std::string_view filter,
                                             std::uint64_t seed, unsigned workers = 0) {
    std::vector<const IdentitySpec*> selected;
    for (const auto& s : specs)
        if (s.id.starts_with(filter)) selected.push_back(&s);
    std::vector<IdentityReport> reports(selected.size());
    if (workers == 0) workers = default_workers();
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(selected.size(), 1)));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < selected.size(); i = next++) reports[i] = run_identity(*selected[i], seed);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return reports;
}

inline bool all_certified(const std::vector<IdentityReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.certified(); });
}

} // namespace qbern::verify
