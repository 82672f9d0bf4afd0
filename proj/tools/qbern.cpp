// qbern: command-line front end for the q-Bernstein library.
//
// Exit codes: 0 success, 1 identity failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <qbern/approx.hpp>
#include <qbern/bernoulli.hpp>
#include <qbern/bernstein.hpp>
#include <qbern/identities.hpp>
#include <qbern/serialize.hpp>
#include <qbern/stirling.hpp>

using namespace qbern;

namespace {

constexpr int kOk = 0;
constexpr int kIdentityFailure = 1;
constexpr int kUsage = 2;

/// A usage error with a one-line fix hint.
class UsageError : public Error {
public:
    UsageError(const std::string& what, std::string hint) : Error(what), hint_(std::move(hint)) {}
    [[nodiscard]] const std::string& hint() const { return hint_; }

private:
    std::string hint_;
};

bool g_json = false;

Rational parse_rational(const std::string& text, const std::string& what) {
    try {
        return Rational::parse(text);
    } catch (const Error& e) {
        throw UsageError(e.what(), what + " must be an integer or p/q, e.g. 3 or -2/5");
    }
}

QParam parse_q(const std::string& text) {
    const Rational v = parse_rational(text, "q");
    try {
        return QParam(v);
    } catch (const InvalidQ& e) {
        throw UsageError(e.what(), "choose q with 0 < q <= 1, e.g. 1/2");
    }
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

std::string join(const std::vector<Rational>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? " " : "") + values[i].str();
    return out;
}

struct BasisArgs {
    long k = 0, n = 0;
    std::string q, x;
    bool poly = false, derivative = false;
};

int run_basis(const BasisArgs& a) {
    const QParam q = parse_q(a.q);
    if (a.n < 0) throw UsageError("degree n must be nonnegative", "pass n >= 0");
    const Poly b = basis_poly(a.k, a.n, q);
    const json head{{"k", a.k}, {"n", a.n}, {"q", q.value().str()}};
    if (a.derivative) {
        if (q.is_one()) throw UsageError("the q-derivative needs q != 1", "pass q in (0,1) with --derivative");
        const Poly d = q_derivative(b, q);
        if (g_json) {
            json j = head;
            j["derivative"] = to_json(d);
            emit(j);
        } else {
            std::cout << to_string(d) << '\n';
        }
        return kOk;
    }
    if (a.poly) {
        if (g_json) {
            json j = head;
            j["poly"] = to_json(b);
            emit(j);
        } else {
            std::cout << to_string(b) << '\n';
        }
        return kOk;
    }
    if (a.x.empty()) throw UsageError("missing x", "pass a point x or use --poly, e.g. qbern basis 0 2 1/2 1/3");
    const Rational x = parse_rational(a.x, "x");
    const Rational v = b.eval(x);
    if (g_json) {
        json j = head;
        j["x"] = x.str();
        j["value"] = v.str();
        emit(j);
    } else {
        std::cout << v.str() << '\n';
    }
    return kOk;
}

int run_matrix(long n, const std::string& qs, bool inverse) {
    const QParam q = parse_q(qs);
    if (n < 0) throw UsageError("degree n must be nonnegative", "pass n >= 0");
    const RMatrix m = inverse ? from_power_matrix(n, q) : to_power_matrix(n, q);
    if (g_json)
        emit({{"n", n}, {"q", q.value().str()}, {"inverse", inverse}, {"matrix", to_json(m)}});
    else
        std::cout << to_table(m);
    return kOk;
}

SampledFunction exact_function(const std::string& name) {
    SampledFunction f;
    try {
        f = approx::lookup_function(name);
    } catch (const UnknownFunction& e) {
        throw UsageError(e.what(), "use abs-shift, runge or poly:c0,c1,... (e.g. poly:0,1)");
    } catch (const ParseError& e) {
        throw UsageError(e.what(), "poly coefficients must be integers or p/q, e.g. poly:1,-1/2");
    }
    if (!f.has_exact())
        throw UsageError("function '" + name + "' has no exact evaluator",
                         "use abs-shift, runge or poly:c0,c1,...; exp and sin-pi are approx-only");
    return f;
}

int run_operator(const std::string& fn, long n, const std::string& qs, const std::string& xs, bool poly, bool delta) {
    const QParam q = parse_q(qs);
    if (n < 1) throw UsageError("operator degree must be positive", "pass n >= 1");
    const SampledFunction f = exact_function(fn);
    const json head{{"function", fn}, {"n", n}, {"q", q.value().str()}};
    if (poly) {
        const Poly p = operator_poly(f, n, q);
        if (g_json) {
            json j = head;
            j["poly"] = to_json(p);
            emit(j);
        } else {
            std::cout << to_string(p) << '\n';
        }
        return kOk;
    }
    if (xs.empty()) throw UsageError("missing x", "pass a point x in [0,1] or use --poly");
    const Rational x = parse_rational(xs, "x");
    const Rational v = delta ? operator_delta_form(f, n, q, x) : operator_apply(f, n, q, x);
    if (g_json) {
        json j = head;
        j["x"] = x.str();
        j["value"] = v.str();
        emit(j);
    } else {
        std::cout << v.str() << '\n';
    }
    return kOk;
}

int run_stirling(long n, long k, const std::string& qs, bool triangle) {
    if (n < 0 || k < 0) throw UsageError("n and k must be nonnegative", "pass n >= 0 and k >= 0");
    std::optional<QParam> q;
    if (!qs.empty()) q = parse_q(qs);
    auto value = [&](long a, long b) { return q ? q_stirling2(a, b, *q) : stirling2(a, b); };
    if (triangle) {
        json rows = json::array();
        for (long a = 0; a <= n; ++a) {
            std::vector<Rational> row;
            for (long b = 0; b <= a; ++b) row.push_back(value(a, b));
            if (g_json) {
                json r = json::array();
                for (const auto& v : row) r.push_back(v.str());
                rows.push_back(r);
            } else {
                std::cout << join(row) << '\n';
            }
        }
        if (g_json) emit({{"n", n}, {"q", q ? json(q->value().str()) : json(nullptr)}, {"triangle", rows}});
        return kOk;
    }
    const Rational v = value(n, k);
    if (g_json)
        emit({{"n", n}, {"k", k}, {"q", q ? json(q->value().str()) : json(nullptr)}, {"value", v.str()}});
    else
        std::cout << v.str() << '\n';
    return kOk;
}

int run_bernoulli(long order, long max_m) {
    if (order < 1 || max_m < 0) throw UsageError("need order >= 1 and max_m >= 0", "e.g. qbern bernoulli 1 10");
    const BernoulliTable t = bernoulli_numbers(order, max_m);
    if (g_json) {
        json vals = json::array();
        for (const auto& v : t.values) vals.push_back(v.str());
        emit({{"order", order}, {"max_m", max_m}, {"values", vals}});
    } else {
        for (long m = 0; m <= max_m; ++m) std::cout << m << "  " << t.at(m).str() << '\n';
    }
    return kOk;
}

int run_qbernoulli(long n, long k, const std::string& xs, const std::string& qs, bool umbral) {
    if (n < 0 || k < 1) throw UsageError("need n >= 0 and order k >= 1", "e.g. qbern qbernoulli 3 1 1/2 1/2");
    const Rational x = parse_rational(xs, "x");
    const QParam q = parse_q(qs);
    const Rational v = umbral ? q_bernoulli_umbral(n, k, x, q) : q_bernoulli(n, k, x, q);
    if (g_json)
        emit({{"n", n}, {"k", k}, {"x", x.str()}, {"q", q.value().str()}, {"umbral", umbral}, {"value", v.str()}});
    else
        std::cout << v.str() << '\n';
    return kOk;
}

int run_pmf(long n, long k, const std::string& xs, const std::string& qs) {
    const Rational x = parse_rational(xs, "x");
    const QParam q = parse_q(qs);
    Rational v;
    try {
        v = pmf(n, k, x, q);
    } catch (const DomainError& e) {
        throw UsageError(e.what(), "need 0 <= k <= n and x in [0,1]");
    }
    if (g_json)
        emit({{"n", n}, {"k", k}, {"x", x.str()}, {"q", q.value().str()}, {"value", v.str()}, {"decimal", v.to_double()}});
    else
        std::cout << v.str() << '\n';
    return kOk;
}

struct VerifyArgs {
    std::string filter, out, mutation;
    std::uint64_t seed = 1;
    bool list = false;
};

int run_verify(const VerifyArgs& a) {
    using namespace qbern::verify;
    if (a.list) {
        for (const auto& s : registry()) {
            if (!s.id.starts_with(a.filter)) continue;
            if (g_json) {
                json muts = json::array();
                for (const auto& m : s.mutations) muts.push_back({{"name", m.name}, {"description", m.description}});
                emit({{"id", s.id}, {"statement", s.statement}, {"param_ranges", s.param_ranges}, {"mutations", muts}});
            } else {
                std::cout << s.id << "  " << s.statement << '\n';
            }
        }
        return kOk;
    }
    std::vector<IdentityReport> reports;
    if (!a.mutation.empty()) {
        for (const auto& s : registry()) {
            if (!s.id.starts_with(a.filter)) continue;
            for (const auto& m : s.mutations)
                if (m.name == a.mutation) reports.push_back(run_identity(s, a.seed, a.mutation));
        }
        if (reports.empty())
            throw UsageError("no identity matching '" + a.filter + "' has mutation '" + a.mutation + "'",
                             "list mutations with: qbern --json verify --list");
    } else {
        reports = run_suite(a.filter, a.seed);
    }

    if (!a.out.empty()) {
        std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot open '" + a.out + "' for writing", "pass a writable --out path");
        for (const auto& r : reports) out << r.to_json().dump() << '\n';
    }
    if (g_json) {
        for (const auto& r : reports) emit(r.to_json());
    } else {
        std::size_t width = 2;
        for (const auto& r : reports) width = std::max(width, r.id.size());
        std::cout << std::left << std::setw(static_cast<int>(width)) << "id" << "  status     params  q-bound  ms\n";
        for (const auto& r : reports) {
            std::cout << std::left << std::setw(static_cast<int>(width)) << r.id << "  " << std::setw(9)
                      << (r.certified() ? "certified" : "FAILED") << "  " << std::right << std::setw(6) << r.params_tested
                      << "  " << std::setw(7) << r.max_q_degree_bound << "  " << std::fixed << std::setprecision(1)
                      << r.wall_time_ms << std::defaultfloat << '\n';
            if (r.counterexample) {
                const auto& c = *r.counterexample;
                std::cout << "    counterexample " << c.params.to_json().dump() << " q=" << c.q.str();
                if (c.x) std::cout << " x=" << c.x->str();
                std::cout << "\n    lhs " << c.lhs << "\n    rhs " << c.rhs << '\n';
            }
        }
        std::size_t ok = 0;
        for (const auto& r : reports) ok += r.certified() ? 1 : 0;
        std::cout << ok << "/" << reports.size() << " certified\n";
    }
    return all_certified(reports) ? kOk : kIdentityFailure;
}

struct ApproxArgs {
    std::string config, function = "runge", schedule = "one-minus-inverse", csv;
    std::vector<long> degrees;
    long grid = 101;
};

approx::QSchedule parse_schedule(const std::string& text) {
    approx::QSchedule s;
    if (text == "one-minus-inverse") return s;
    if (text.starts_with("fixed:")) {
        s.kind = approx::ScheduleKind::fixed;
        s.fixed = parse_rational(text.substr(6), "fixed q");
        return s;
    }
    if (text.starts_with("custom:")) {
        s.kind = approx::ScheduleKind::custom;
        std::stringstream ss(text.substr(7));
        std::string item;
        while (std::getline(ss, item, ',')) s.custom.push_back(parse_rational(item, "custom q"));
        return s;
    }
    throw UsageError("unknown schedule '" + text + "'", "use one-minus-inverse, fixed:Q or custom:Q1,Q2,...");
}

int run_approx(const ApproxArgs& a) {
    approx::ExperimentConfig cfg;
    if (!a.config.empty()) {
        std::ifstream in(a.config);
        if (!in) throw UsageError("cannot read config '" + a.config + "'", "pass an existing JSON config file");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw UsageError(e.what(), "the config file must be valid JSON");
        }
        try {
            cfg = approx::config_from_json(j);
        } catch (const ParseError& e) {
            throw UsageError(e.what(), R"(e.g. {"function": "runge", "degrees": [4, 8], "schedule": {"fixed": "1/2"}})");
        }
    } else {
        cfg.function = a.function;
        if (!a.degrees.empty()) cfg.degrees = a.degrees;
        cfg.schedule = parse_schedule(a.schedule);
        cfg.grid_size = a.grid;
    }
    approx::ErrorTable table;
    try {
        table = approx::approximate(cfg);
    } catch (const UnknownFunction& e) {
        throw UsageError(e.what(), "use exp, sin-pi, abs-shift, runge or poly:c0,c1,...");
    } catch (const InvalidQ& e) {
        throw UsageError(e.what(), "every scheduled q must lie in (0,1]; q = 1 - 1/n needs n >= 2");
    } catch (const DomainError& e) {
        throw UsageError(e.what(), "degrees must be positive and grid size at least 2");
    }
    if (!a.csv.empty()) {
        try {
            approx::emit_csv(table, a.csv);
        } catch (const IoError& e) {
            throw UsageError(e.what(), "pass a writable --csv path");
        }
    }
    if (g_json)
        emit(approx::to_json(table));
    else
        std::cout << approx::to_csv(table);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact q-Bernstein, q-Stirling and q-Bernoulli computations"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g_json, "Emit JSON instead of text");

    BasisArgs basis;
    auto* basis_cmd = app.add_subcommand("basis", "Evaluate B_{k,n}(x,q), or print it with --poly");
    basis_cmd->add_option("k", basis.k)->required();
    basis_cmd->add_option("n", basis.n)->required();
    basis_cmd->add_option("q", basis.q)->required();
    basis_cmd->add_option("x", basis.x);
    basis_cmd->add_flag("--poly", basis.poly, "Print the polynomial in x");
    basis_cmd->add_flag("--derivative", basis.derivative, "Print the Jackson q-derivative");

    long mat_n = 0;
    std::string mat_q;
    bool mat_inverse = false;
    auto* matrix_cmd = app.add_subcommand("matrix", "Power-basis conversion matrix of degree n");
    matrix_cmd->add_option("n", mat_n)->required();
    matrix_cmd->add_option("q", mat_q)->required();
    matrix_cmd->add_flag("--inverse", mat_inverse, "Power to q-Bernstein direction");

    std::string op_fn, op_q, op_x;
    long op_n = 0;
    bool op_poly = false, op_delta = false;
    auto* operator_cmd = app.add_subcommand("operator", "Apply the q-Bernstein operator to an exact function");
    operator_cmd->add_option("fn", op_fn)->required();
    operator_cmd->add_option("n", op_n)->required();
    operator_cmd->add_option("q", op_q)->required();
    operator_cmd->add_option("x", op_x);
    operator_cmd->add_flag("--poly", op_poly, "Print the operator image as a polynomial");
    operator_cmd->add_flag("--delta", op_delta, "Evaluate through the q-difference form");

    long st_n = 0, st_k = 0;
    std::string st_q;
    bool st_triangle = false;
    auto* stirling_cmd = app.add_subcommand("stirling", "Stirling numbers S(n,k), or S(n,k:q) with --q");
    stirling_cmd->add_option("n", st_n)->required();
    stirling_cmd->add_option("k", st_k);
    stirling_cmd->add_option("--q", st_q, "q for the q-Stirling numbers");
    stirling_cmd->add_flag("--triangle", st_triangle, "Print rows 0..n");

    long be_order = 1, be_max = 0;
    auto* bernoulli_cmd = app.add_subcommand("bernoulli", "Higher-order Bernoulli numbers B_0..B_max_m");
    bernoulli_cmd->add_option("order", be_order)->required();
    bernoulli_cmd->add_option("max_m", be_max)->required();

    long qb_n = 0, qb_k = 1;
    std::string qb_x, qb_q;
    bool qb_umbral = false;
    auto* qbernoulli_cmd = app.add_subcommand("qbernoulli", "q-Bernoulli polynomial beta_n^(k)(x,q)");
    qbernoulli_cmd->add_option("n", qb_n)->required();
    qbernoulli_cmd->add_option("k", qb_k)->required();
    qbernoulli_cmd->add_option("x", qb_x)->required();
    qbernoulli_cmd->add_option("q", qb_q)->required();
    qbernoulli_cmd->add_flag("--umbral", qb_umbral, "Substitute (1-x)_q^j for x^j");

    VerifyArgs ver;
    auto* verify_cmd = app.add_subcommand("verify", "Certify the registered identities");
    verify_cmd->add_option("--filter", ver.filter, "Identity id prefix");
    verify_cmd->add_option("--seed", ver.seed, "Seed for randomized identity inputs");
    verify_cmd->add_option("--out", ver.out, "Write JSON-lines reports to FILE");
    verify_cmd->add_option("--mutation", ver.mutation, "Run a documented mutation instead (expected to fail)");
    verify_cmd->add_flag("--list", ver.list, "List identities without running them");

    ApproxArgs ap;
    auto* approx_cmd = app.add_subcommand("approx", "Sup-norm error sweep of the operator in binary64");
    approx_cmd->add_option("config", ap.config, "JSON experiment config");
    approx_cmd->add_option("--function", ap.function, "exp, sin-pi, abs-shift, runge or poly:c0,c1,...");
    approx_cmd->add_option("--degrees", ap.degrees, "Degrees n")->delimiter(',');
    approx_cmd->add_option("--schedule", ap.schedule, "one-minus-inverse, fixed:Q or custom:Q1,Q2,...");
    approx_cmd->add_option("--grid", ap.grid, "Number of grid points");
    approx_cmd->add_option("--csv", ap.csv, "Also write the table as CSV to FILE");

    long pm_n = 0, pm_k = 0;
    std::string pm_x, pm_q;
    auto* pmf_cmd = app.add_subcommand("pmf", "q-binomial probability C(n,k)_q x^k (1-x)_q^(n-k)");
    pmf_cmd->add_option("n", pm_n)->required();
    pmf_cmd->add_option("k", pm_k)->required();
    pmf_cmd->add_option("x", pm_x)->required();
    pmf_cmd->add_option("q", pm_q)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\nhint: run 'qbern --help' or 'qbern <command> --help'\n";
        return kUsage;
    }

    try {
        if (*basis_cmd) return run_basis(basis);
        if (*matrix_cmd) return run_matrix(mat_n, mat_q, mat_inverse);
        if (*operator_cmd) return run_operator(op_fn, op_n, op_q, op_x, op_poly, op_delta);
        if (*stirling_cmd) {
            if (!st_triangle && stirling_cmd->count("k") == 0)
                throw UsageError("missing k", "pass k, or --triangle to print rows 0..n");
            return run_stirling(st_n, st_k, st_q, st_triangle);
        }
        if (*bernoulli_cmd) return run_bernoulli(be_order, be_max);
        if (*qbernoulli_cmd) return run_qbernoulli(qb_n, qb_k, qb_x, qb_q, qb_umbral);
        if (*verify_cmd) return run_verify(ver);
        if (*approx_cmd) return run_approx(ap);
        if (*pmf_cmd) return run_pmf(pm_n, pm_k, pm_x, pm_q);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\nhint: " << e.hint() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\nhint: check the argument ranges with 'qbern <command> --help'\n";
        return kUsage;
    }
    return kUsage;
}
