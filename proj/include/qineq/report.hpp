#ifndef QINEQ_REPORT_HPP
#define QINEQ_REPORT_HPP

// CSV and JSON writers for audit records, plus the reverse direction (CSV
// rows and param digests back into evaluable targets).
//
// CSV columns, in order:
//   function,q,l,param_digest,re_z,im_z,abs_value,envelope_log,ratio,pass,terms_used,tail_bound
// `l` is empty for the Laurent-class functions; `pass` is "error" for points
// that could not be evaluated.

#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "series.hpp"
#include "verify.hpp"

namespace qineq {

inline constexpr std::string_view csv_header =
    "function,q,l,param_digest,re_z,im_z,abs_value,envelope_log,ratio,pass,terms_used,tail_bound";

inline void write_csv(std::ostream& os, const std::vector<AuditRecord>& records)
{
    os << csv_header << '\n';
    for (const auto& r : records) {
        os << to_string(r.function_tag) << ',' << format_real(r.q) << ','
           << (r.l ? format_real(*r.l) : std::string{}) << ',' << r.param_digest << ','
           << format_real(r.z.real()) << ',' << format_real(r.z.imag()) << ','
           << format_real(r.abs_value) << ',' << format_real(r.envelope_log) << ','
           << format_real(r.ratio) << ','
           << (r.evaluated() ? (r.pass ? "true" : "false") : "error") << ',' << r.terms_used
           << ',' << format_real(r.tail_bound) << '\n';
    }
}

inline nlohmann::json to_json(const AuditRecord& r)
{
    nlohmann::json j;
    j["function"] = std::string(to_string(r.function_tag));
    j["q"] = r.q;
    j["l"] = r.l ? nlohmann::json(*r.l) : nlohmann::json(nullptr);
    j["param_digest"] = r.param_digest;
    j["re_z"] = r.z.real();
    j["im_z"] = r.z.imag();
    // JSON has no inf/nan; those travel as strings.
    auto num = [](double x) {
        return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(format_real(x));
    };
    j["abs_value"] = num(r.abs_value);
    j["envelope_log"] = num(r.envelope_log);
    j["ratio"] = num(r.ratio);
    j["pass"] = r.pass;
    j["terms_used"] = r.terms_used;
    j["tail_bound"] = num(r.tail_bound);
    if (!r.evaluated()) {
        j["error"] = r.error;
    }
    return j;
}

inline void write_json(std::ostream& os, const std::vector<AuditRecord>& records)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        arr.push_back(to_json(r));
    }
    os << arr.dump(2) << '\n';
}

struct CsvRow {
    FunctionTag function_tag;
    double q;
    std::optional<double> l;
    std::string param_digest;
    complex z;
    double abs_value;
    double envelope_log;
    double ratio;
    std::string pass;
    std::size_t terms_used;
    double tail_bound;
};

inline std::vector<CsvRow> read_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != csv_header) {
        throw invalid_argument("read_csv: missing or unexpected header");
    }
    auto real = [](std::string_view s) {
        const auto v = parse_real(s);
        if (!v) {
            throw invalid_argument("read_csv: bad number '" + std::string(s) + "'");
        }
        return *v;
    };
    std::vector<CsvRow> rows;
    while (std::getline(is, line)) {
        const auto f = split(line, ',');
        if (f.size() != 12) {
            throw invalid_argument("read_csv: expected 12 fields, got " + std::to_string(f.size()));
        }
        const auto tag = parse_function_tag(f[0]);
        if (!tag) {
            throw invalid_argument("read_csv: unknown function '" + std::string(f[0]) + "'");
        }
        CsvRow row{*tag,
                   real(f[1]),
                   f[2].empty() ? std::nullopt : std::optional<double>(real(f[2])),
                   std::string(f[3]),
                   complex(real(f[4]), real(f[5])),
                   real(f[6]),
                   real(f[7]),
                   real(f[8]),
                   std::string(f[9]),
                   static_cast<std::size_t>(real(f[10])),
                   real(f[11])};
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail {

inline std::map<std::string, std::string, std::less<>> digest_fields(std::string_view digest)
{
    std::map<std::string, std::string, std::less<>> out;
    for (auto part : split(digest, ';')) {
        const auto eq = part.find('=');
        if (eq == std::string_view::npos) {
            throw invalid_argument("param digest: malformed field '" + std::string(part) + "'");
        }
        out.emplace(std::string(part.substr(0, eq)), std::string(part.substr(eq + 1)));
    }
    return out;
}

inline std::vector<complex> parse_complex_list(std::string_view text, char sep)
{
    std::vector<complex> out;
    for (auto item : split(text, sep)) {
        const auto v = parse_complex(item);
        if (!v) {
            throw invalid_argument("bad complex value '" + std::string(item) + "'");
        }
        out.push_back(*v);
    }
    return out;
}

inline std::vector<double> parse_real_list(std::string_view text, char sep)
{
    std::vector<double> out;
    for (auto item : split(text, sep)) {
        const auto v = parse_real(item);
        if (!v) {
            throw invalid_argument("bad real value '" + std::string(item) + "'");
        }
        out.push_back(*v);
    }
    return out;
}

inline std::string_view field(const std::map<std::string, std::string, std::less<>>& fields,
                              std::string_view key)
{
    const auto it = fields.find(key);
    if (it == fields.end()) {
        throw invalid_argument("param digest: missing field '" + std::string(key) + "'");
    }
    return it->second;
}

inline double required_real(const std::map<std::string, std::string, std::less<>>& fields,
                           std::string_view key)
{
    const auto v = parse_real(field(fields, key));
    if (!v) {
        throw invalid_argument("param digest: bad value for '" + std::string(key) + "'");
    }
    return *v;
}

} // namespace detail

// Laurent spec for the built-in theta coefficient stream a_k = q^{k^2}.
inline LaurentSpec theta_laurent_spec(QBase q, double alpha)
{
    const double log_q = q.log();
    LaurentSpec spec{.center = {},
                     .coeff = [log_q](long long k) {
                         const double kk = static_cast<double>(k);
                         return complex(std::exp(kk * kk * log_q), 0.0);
                     },
                     .alpha = alpha,
                     .q = q,
                     .c_weighted = theta_weighted_constant(alpha, q)};
    return spec;
}

// Rebuilds the target a record was produced from.
inline AuditTarget target_from_digest(FunctionTag tag, double q_value, std::string_view digest)
{
    const QBase q(q_value);
    if (tag == FunctionTag::aq) {
        return AqTarget{q};
    }
    const auto fields = detail::digest_fields(digest);
    switch (tag) {
    case FunctionTag::confluent_f:
        return ConfluentParams(detail::parse_complex_list(detail::field(fields, "a"), '|'),
                               detail::parse_real_list(detail::field(fields, "b"), '|'),
                               detail::required_real(fields, "l"), q);
    case FunctionTag::phi:
        return PhiParams(detail::parse_complex_list(detail::field(fields, "a"), '|'),
                         detail::parse_real_list(detail::field(fields, "b"), '|'), q);
    case FunctionTag::theta: {
        return ThetaTarget{q, detail::required_real(fields, "alpha")};
    }
    case FunctionTag::laurent: {
        if (detail::field(fields, "stream") != "theta") {
            throw invalid_argument("param digest: only the theta coefficient stream can be rebuilt");
        }
        const auto center = parse_complex(detail::field(fields, "center"));
        if (!center) {
            throw invalid_argument("param digest: bad Laurent center");
        }
        LaurentSpec spec = theta_laurent_spec(q, detail::required_real(fields, "alpha"));
        spec.c_weighted = detail::required_real(fields, "c");
        spec.center = *center;
        return LaurentTarget{std::move(spec), "theta"};
    }
    default:
        break;
    }
    throw invalid_argument("target_from_digest: unsupported function");
}

} // namespace qineq

#endif // QINEQ_REPORT_HPP
