#ifndef QINEQ_FORMAT_HPP
#define QINEQ_FORMAT_HPP

// Text forms shared by the audit digests, the report writers and the CLI.
// Reals use the shortest representation that parses back to the same double;
// complex literals are written "<re>+<im>i" / "<re>-<im>i".

#include <charconv>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace qineq {

inline std::string format_real(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string format_complex(std::complex<double> z)
{
    std::string out = format_real(z.real());
    const double im = z.imag();
    if (std::signbit(im)) {
        out += format_real(im);
    } else {
        out += '+';
        out += format_real(im);
    }
    out += 'i';
    return out;
}

inline std::optional<double> parse_real(std::string_view text)
{
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return std::nullopt;
    }
    double out = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return out;
}

// Accepts "x", "x+yi", "x-yi", "yi", "+i", "-i".
inline std::optional<std::complex<double>> parse_complex(std::string_view text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    if (text.back() != 'i') {
        const auto re = parse_real(text);
        if (!re) {
            return std::nullopt;
        }
        return std::complex<double>(*re, 0.0);
    }
    text.remove_suffix(1);

    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = text.size(); i-- > 1;) {
        if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string_view re_part = split == std::string_view::npos ? std::string_view{}
                                                                      : text.substr(0, split);
    std::string_view im_part = split == std::string_view::npos ? text : text.substr(split);

    double im = 0.0;
    if (im_part.empty() || im_part == "+") {
        im = 1.0;
    } else if (im_part == "-") {
        im = -1.0;
    } else {
        const auto v = parse_real(im_part);
        if (!v) {
            return std::nullopt;
        }
        im = *v;
    }
    double re = 0.0;
    if (!re_part.empty()) {
        const auto v = parse_real(re_part);
        if (!v) {
            return std::nullopt;
        }
        re = *v;
    }
    return std::complex<double>(re, im);
}

inline std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> out;
    if (text.empty()) {
        return out;
    }
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

} // namespace qineq

#endif // QINEQ_FORMAT_HPP
