#ifndef QINEQ_CLI_HPP
#define QINEQ_CLI_HPP

// Command-line front end:
//
//   qineq eval     --function aq --q 0.5 --z 1+0i
//   qineq envelope --function aq --q 0.5 --abs-z 1
//   qineq audit    --function theta --q 0.3 --alpha 0.5 --grid 1e-4:1e4:41 --angles 8 --out report.csv
//   qineq identity --identity euler --q 0.5 --z 0.5
//
// Exit codes: 0 success, 1 audit violation (or unevaluable audit point),
// 2 usage or validation error. QINEQ_THREADS caps audit parallelism.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bounds.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "qcore.hpp"
#include "report.hpp"
#include "series.hpp"
#include "verify.hpp"

namespace qineq::cli {

enum class Subcommand { eval, envelope, audit, identity };
enum class OutputFormat { csv, json };

struct CliConfig {
    Subcommand subcommand = Subcommand::eval;
    FunctionTag function = FunctionTag::aq;
    double q = 0.5;
    std::string a_text;
    std::string b_text;
    double l = 1.0;
    double alpha = 0.5;
    std::string z_text = "0";
    double abs_z = 1.0;
    std::string grid = "1e-4:1e4:41";
    std::size_t angles = 8;
    std::size_t draws = 0;
    double tol = default_tol;
    double slack = 1e-12;
    std::uint64_t seed = 0;
    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::csv;
    std::string variant = "default";
    std::string identity = "euler";
};

// Carries a one-line diagnostic that names the offending flag.
class usage_error : public std::runtime_error {
public:
    usage_error(const std::string& flag, const std::string& what)
        : std::runtime_error(flag + ": " + what)
    {
    }
};

namespace detail {

template <class Fn>
auto with_flag(const std::string& flag, Fn fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception& e) {
        throw usage_error(flag, e.what());
    }
}

inline std::vector<complex> parse_a(const std::string& text)
{
    return with_flag("--a", [&] { return qineq::detail::parse_complex_list(text, ','); });
}

inline std::vector<double> parse_b(const std::string& text)
{
    auto b = with_flag("--b", [&] { return qineq::detail::parse_real_list(text, ','); });
    for (double bj : b) {
        if (!(bj >= 0.0 && bj < 1.0)) {
            throw usage_error("--b", "each value must lie in [0,1), got " + format_real(bj));
        }
    }
    return b;
}

inline double check_alpha(double alpha, bool open_unit)
{
    if (!(alpha > 0.0) || (open_unit && !(alpha < 1.0))) {
        throw usage_error("--alpha", open_unit ? "must lie in (0,1)" : "must be positive");
    }
    return alpha;
}

inline AuditTarget build_target(const CliConfig& cfg)
{
    const QBase q = with_flag("--q", [&] { return QBase(cfg.q); });
    switch (cfg.function) {
    case FunctionTag::confluent_f: {
        auto a = parse_a(cfg.a_text);
        auto b = parse_b(cfg.b_text);
        if (!(cfg.l > 0.0)) {
            throw usage_error("--l", "must be positive");
        }
        return ConfluentParams(std::move(a), std::move(b), cfg.l, q);
    }
    case FunctionTag::phi: {
        auto a = parse_a(cfg.a_text);
        auto b = parse_b(cfg.b_text);
        return with_flag("--a", [&] { return AuditTarget(PhiParams(a, b, q)); });
    }
    case FunctionTag::aq:
        return AqTarget{q};
    case FunctionTag::theta:
        return ThetaTarget{q, check_alpha(cfg.alpha, true)};
    case FunctionTag::laurent:
        return LaurentTarget{theta_laurent_spec(q, check_alpha(cfg.alpha, true)), "theta"};
    }
    throw usage_error("--function", "unsupported");
}

inline complex parse_z(const std::string& text)
{
    const auto z = parse_complex(text);
    if (!z) {
        throw usage_error("--z", "expected <re>[+|-]<im>i, got '" + text + "'");
    }
    return *z;
}

inline std::vector<double> parse_grid(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw usage_error("--grid", "expected lo:hi:count, got '" + text + "'");
    }
    const auto lo = parse_real(parts[0]);
    const auto hi = parse_real(parts[1]);
    const auto count = parse_real(parts[2]);
    if (!lo || !hi || !count || *count < 1 || *count != std::floor(*count)) {
        throw usage_error("--grid", "expected lo:hi:count, got '" + text + "'");
    }
    return with_flag("--grid", [&] { return log_grid(*lo, *hi, static_cast<std::size_t>(*count)); });
}

inline unsigned threads_from_env()
{
    const char* env = std::getenv("QINEQ_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    const auto v = parse_real(env);
    if (!v || *v < 1 || *v != std::floor(*v) || *v > 4096) {
        throw usage_error("QINEQ_THREADS", "must be a positive integer");
    }
    return static_cast<unsigned>(*v);
}

// Writes to --out when given, otherwise to `out`.
template <class Writer>
void emit(const CliConfig& cfg, std::ostream& out, Writer writer)
{
    if (cfg.output_path) {
        std::ofstream file(*cfg.output_path, std::ios::binary);
        if (!file) {
            throw usage_error("--out", "cannot open '" + *cfg.output_path + "' for writing");
        }
        writer(file);
    } else {
        writer(out);
    }
}

inline int run_eval(const CliConfig& cfg, std::ostream& out)
{
    const PreparedTarget target(build_target(cfg));
    const complex z = parse_z(cfg.z_text);
    const EvalResult res = with_flag("--z", [&] { return target.evaluate(z, cfg.tol); });
    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == OutputFormat::json) {
            nlohmann::json j;
            j["function"] = std::string(to_string(cfg.function));
            j["q"] = cfg.q;
            j["re_z"] = z.real();
            j["im_z"] = z.imag();
            j["re_value"] = res.value.real();
            j["im_value"] = res.value.imag();
            j["abs_value"] = std::abs(res.value);
            j["log_abs"] = res.log_abs;
            j["terms_used"] = res.terms_used;
            j["tail_bound"] = res.tail_bound;
            j["converged"] = res.converged;
            os << j.dump(2) << '\n';
        } else {
            os << "function,q,re_z,im_z,re_value,im_value,abs_value,log_abs,terms_used,tail_bound,converged\n"
               << to_string(cfg.function) << ',' << format_real(cfg.q) << ','
               << format_real(z.real()) << ',' << format_real(z.imag()) << ','
               << format_real(res.value.real()) << ',' << format_real(res.value.imag()) << ','
               << format_real(std::abs(res.value)) << ',' << format_real(res.log_abs) << ','
               << res.terms_used << ',' << format_real(res.tail_bound) << ','
               << (res.converged ? "true" : "false") << '\n';
        }
    });
    return 0;
}

inline EnvelopeResult compute_envelope(const CliConfig& cfg, const AuditTarget& target)
{
    const double r = cfg.abs_z;
    const std::string& v = cfg.variant;
    auto bad_variant = [&] {
        return usage_error("--variant", "'" + v + "' is not available for --function " +
                                            std::string(to_string(cfg.function)));
    };
    if (cfg.function == FunctionTag::aq && v == "exponential") {
        if (!(r >= 0.0)) {
            throw usage_error("--abs-z", "must be non-negative");
        }
        return envelope_aq_exponential(std::get<AqTarget>(target).q, r);
    }
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw usage_error("--abs-z", "must be positive and finite");
    }
    switch (cfg.function) {
    case FunctionTag::confluent_f:
        if (v != "default") throw bad_variant();
        return envelope_entire(std::get<ConfluentParams>(target), r);
    case FunctionTag::phi:
        if (v == "closed-form") return envelope_phi_closed_form(std::get<PhiParams>(target), r);
        if (v != "default") throw bad_variant();
        return envelope_phi(std::get<PhiParams>(target), r);
    case FunctionTag::aq:
        if (v != "default" && v != "gaussian") throw bad_variant();
        return envelope_aq_gaussian(std::get<AqTarget>(target).q, r);
    case FunctionTag::theta: {
        const auto& t = std::get<ThetaTarget>(target);
        if (v == "as-printed") return envelope_theta_as_printed(t.alpha, t.q, r);
        if (v != "default") throw bad_variant();
        return envelope_theta(t.alpha, t.q, r);
    }
    case FunctionTag::laurent: {
        if (v != "default") throw bad_variant();
        const auto& spec = std::get<LaurentTarget>(target).spec;
        return envelope_meromorphic(meromorphic_bound_params(spec.alpha, spec.q), spec.c_weighted, r);
    }
    }
    throw bad_variant();
}

inline int run_envelope(const CliConfig& cfg, std::ostream& out)
{
    const AuditTarget target = build_target(cfg);
    const EnvelopeResult env = compute_envelope(cfg, target);
    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == OutputFormat::json) {
            nlohmann::json j;
            j["function"] = std::string(to_string(cfg.function));
            j["q"] = cfg.q;
            j["abs_z"] = cfg.abs_z;
            j["log_bound"] = env.log_bound;
            j["bound"] = env.bound ? nlohmann::json(*env.bound) : nlohmann::json("overflow");
            j["constant_c"] = env.constant_c;
            j["prefactor_log"] = env.prefactor_log;
            j["exponent_term"] = env.exponent_term;
            os << j.dump(2) << '\n';
        } else {
            os << "function,q,abs_z,log_bound,bound,constant_c,prefactor_log,exponent_term\n"
               << to_string(cfg.function) << ',' << format_real(cfg.q) << ','
               << format_real(cfg.abs_z) << ',' << format_real(env.log_bound) << ','
               << (env.bound ? format_real(*env.bound) : std::string("overflow")) << ','
               << format_real(env.constant_c) << ',' << format_real(env.prefactor_log) << ','
               << format_real(env.exponent_term) << '\n';
        }
    });
    return 0;
}

inline int run_audit(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    SweepPlan plan;
    plan.abs_z_grid = parse_grid(cfg.grid);
    if (cfg.angles == 0) {
        throw usage_error("--angles", "must be at least 1");
    }
    if (!(cfg.slack >= 0.0)) {
        throw usage_error("--slack", "must be non-negative");
    }
    plan.angle_count = cfg.angles;
    plan.parameter_draws = cfg.draws;
    plan.seed = cfg.seed;
    plan.slack = cfg.slack;
    plan.tol = cfg.tol;
    plan.threads = threads_from_env();

    std::vector<AuditRecord> records;
    if (cfg.draws > 0) {
        if (cfg.function != FunctionTag::confluent_f) {
            throw usage_error("--draws", "random parameter draws are only available for --function f");
        }
        with_flag("--q", [&] { return QBase(cfg.q); });
        records = random_confluent_audit(plan);
    } else {
        records = audit_envelope(plan, build_target(cfg));
    }

    emit(cfg, out, [&](std::ostream& os) {
        cfg.format == OutputFormat::json ? write_json(os, records) : write_csv(os, records);
    });
    const AuditSummary s = summarize(records);
    err << "audit: " << s.records << " records, " << s.passed << " passed, " << s.failed
        << " failed, " << s.errors << " unevaluated, max ratio " << format_real(s.max_ratio) << '\n';
    return (s.failed > 0 || s.errors > 0) ? 1 : 0;
}

inline int run_identity(const CliConfig& cfg, std::ostream& out)
{
    const QBase q = with_flag("--q", [&] { return QBase(cfg.q); });
    double residual = 0.0;
    if (cfg.identity == "euler") {
        const complex z = parse_z(cfg.z_text);
        residual = with_flag("--z", [&] { return identity_euler(q, z, cfg.tol); });
    } else if (cfg.identity == "qbinomial") {
        const complex z = parse_z(cfg.z_text);
        const auto a = parse_a(cfg.a_text.empty() ? "0" : cfg.a_text);
        if (a.size() != 1) {
            throw usage_error("--a", "exactly one value expected");
        }
        residual = with_flag("--z", [&] { return identity_qbinomial_theorem(a[0], q, z, cfg.tol); });
    } else if (cfg.identity == "ql-sum") {
        residual = with_flag("--l", [&] { return identity_ql_sum(cfg.l, q, cfg.tol); });
    } else if (cfg.identity == "triple-product") {
        const complex z = parse_z(cfg.z_text);
        residual = with_flag("--z", [&] { return identity_theta_triple_product(q, z, cfg.tol); });
    } else {
        throw usage_error("--identity", "unknown identity '" + cfg.identity + "'");
    }
    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == OutputFormat::json) {
            nlohmann::json j{{"identity", cfg.identity}, {"q", cfg.q}, {"residual", residual}};
            os << j.dump(2) << '\n';
        } else {
            os << "identity,q,residual\n"
               << cfg.identity << ',' << format_real(cfg.q) << ',' << format_real(residual) << '\n';
        }
    });
    return 0;
}

} // namespace detail

inline int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CliConfig cfg;
    std::string function_name = "aq";
    std::string format_name = "csv";
    std::string out_path;

    CLI::App app{"q-series evaluation, envelope bounds and certification audits", "qineq"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--function", function_name, "f, phi, aq, theta or laurent")
            ->check(CLI::IsMember({"f", "phi", "aq", "theta", "laurent"}));
        sub->add_option("--q", cfg.q, "base, 0 < q < 1");
        sub->add_option("--a", cfg.a_text, "numerator parameters, comma separated complex literals");
        sub->add_option("--b", cfg.b_text, "denominator parameters in [0,1), comma separated");
        sub->add_option("--l", cfg.l, "Gaussian weight l > 0 (function f)");
        sub->add_option("--alpha", cfg.alpha, "Laurent-class exponent, 0 < alpha < 1 for theta");
        sub->add_option("--tol", cfg.tol, "series truncation tolerance");
        sub->add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "output file (default: standard output)");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate a function at one point");
    add_common(eval);
    eval->add_option("--z", cfg.z_text, "argument, e.g. 0.3-0.4i")->required();

    CLI::App* envelope = app.add_subcommand("envelope", "compute the envelope at one modulus");
    add_common(envelope);
    envelope->add_option("--abs-z", cfg.abs_z, "modulus |z|")->required();
    envelope->add_option("--variant", cfg.variant,
                         "aq: gaussian|exponential; phi: closed-form; theta: as-printed");

    CLI::App* audit = app.add_subcommand("audit", "sweep |z| and arg z and check the envelope");
    add_common(audit);
    audit->add_option("--grid", cfg.grid, "log-spaced |z| grid lo:hi:count");
    audit->add_option("--angles", cfg.angles, "angles per modulus");
    audit->add_option("--draws", cfg.draws, "random parameter draws (function f only)");
    audit->add_option("--seed", cfg.seed, "seed for random draws");
    audit->add_option("--slack", cfg.slack, "relative slack for the pass test");

    CLI::App* identity = app.add_subcommand("identity", "residual of a classical q-series identity");
    add_common(identity);
    identity->add_option("--identity", cfg.identity, "euler, qbinomial, ql-sum or triple-product")
        ->check(CLI::IsMember({"euler", "qbinomial", "ql-sum", "triple-product"}));
    identity->add_option("--z", cfg.z_text, "argument");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("qineq");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    cfg.function = *parse_function_tag(function_name);
    cfg.format = format_name == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!out_path.empty()) {
        cfg.output_path = out_path;
    }
    try {
        if (!(cfg.tol > 0.0)) {
            throw usage_error("--tol", "must be positive");
        }
        if (eval->parsed()) {
            cfg.subcommand = Subcommand::eval;
            return detail::run_eval(cfg, out);
        }
        if (envelope->parsed()) {
            cfg.subcommand = Subcommand::envelope;
            return detail::run_envelope(cfg, out);
        }
        if (audit->parsed()) {
            cfg.subcommand = Subcommand::audit;
            return detail::run_audit(cfg, out, err);
        }
        cfg.subcommand = Subcommand::identity;
        return detail::run_identity(cfg, out);
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

inline int run(std::span<const std::string> args)
{
    return run(args, std::cout, std::cerr);
}

} // namespace qineq::cli

#endif // QINEQ_CLI_HPP
