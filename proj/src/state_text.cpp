#include <cctype>
#include <cmath>
#include <map>
#include <optional>

#include "ncarea/errors.hpp"
#include "ncarea/io.hpp"
#include "ncarea/states.hpp"

namespace ncarea {

namespace {

double parse_real(const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            fail(ErrorCode::parse_error, "trailing characters in number: " + text);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorCode::parse_error, "not a number: " + text);
    }
}

int parse_int(const std::string& text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size())
            fail(ErrorCode::parse_error, "trailing characters in integer: " + text);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorCode::parse_error, "not an integer: " + text);
    }
}

// Accepts "a", "bi", "a+bi", "a-bi" and "mag@phase" (phase in radians).
Complex parse_complex(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    if (text.empty()) fail(ErrorCode::parse_error, "empty complex value");

    if (const auto at = text.find('@'); at != std::string::npos) {
        const double mag = parse_real(text.substr(0, at));
        const double phase = parse_real(text.substr(at + 1));
        return std::polar(mag, phase);
    }
    if (text.back() != 'i') return Complex(parse_real(text), 0.0);

    std::string body = text.substr(0, text.size() - 1);
    // Split at the last +/- that is not an exponent sign and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    std::string re_part, im_part;
    if (split == std::string::npos) {
        re_part = "0";
        im_part = body;
    } else {
        re_part = body.substr(0, split);
        im_part = body.substr(split);
    }
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    return Complex(parse_real(re_part), parse_real(im_part));
}

using KeyValues = std::map<std::string, std::string>;

const std::string& require(const KeyValues& kv, const std::string& key,
                           const std::string& family) {
    auto it = kv.find(key);
    if (it == kv.end())
        fail(ErrorCode::parse_error, family + " spec needs key '" + key + "'");
    return it->second;
}

double optional_real(const KeyValues& kv, const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_real(it->second);
}

int parse_count(const std::string& text, const char* name) {
    const int v = parse_int(text);
    if (v < 0) fail(ErrorCode::invalid_parameter, std::string(name) + " must be >= 0");
    return v;
}

double parse_squeeze(const std::string& text) {
    const double r = parse_real(text);
    if (!(r >= 0.0)) fail(ErrorCode::invalid_parameter, "r must be >= 0");
    return r;
}

}  // namespace

std::string state_family(const StateSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Fock>) return "fock";
            else if constexpr (std::is_same_v<T, Coherent>) return "coherent";
            else if constexpr (std::is_same_v<T, SqueezedVacuum>) return "sqvac";
            else if constexpr (std::is_same_v<T, SqueezedFock>) return "sqfock";
            else if constexpr (std::is_same_v<T, DisplacedSqueezedFock>) return "dsqfock";
            else if constexpr (std::is_same_v<T, PhotonAddedCoherent>) return "pacs";
            else if constexpr (std::is_same_v<T, EvenOddCoherent>) return "cat";
            else return "custom";
        },
        spec);
}

std::string to_string(const StateSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Fock>) {
                return "fock:n=" + std::to_string(s.n);
            } else if constexpr (std::is_same_v<T, Coherent>) {
                return "coherent:alpha=" + format_complex(s.alpha);
            } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
                return "sqvac:r=" + format_double(s.r) +
                       ",delta=" + format_double(s.delta);
            } else if constexpr (std::is_same_v<T, SqueezedFock>) {
                return "sqfock:n=" + std::to_string(s.n) + ",r=" + format_double(s.r) +
                       ",delta=" + format_double(s.delta);
            } else if constexpr (std::is_same_v<T, DisplacedSqueezedFock>) {
                return "dsqfock:alpha=" + format_complex(s.alpha) +
                       ",n=" + std::to_string(s.n) + ",r=" + format_double(s.r) +
                       ",delta=" + format_double(s.delta);
            } else if constexpr (std::is_same_v<T, PhotonAddedCoherent>) {
                return "pacs:alpha=" + format_complex(s.alpha) +
                       ",m=" + std::to_string(s.m);
            } else if constexpr (std::is_same_v<T, EvenOddCoherent>) {
                return "cat:alpha=" + format_complex(s.alpha) +
                       ",h=" + std::to_string(s.h);
            } else {
                std::string out = "custom:coeffs=";
                for (std::size_t k = 0; k < s.coefficients.size(); ++k) {
                    if (k) out.push_back(';');
                    out += format_complex(s.coefficients[k]);
                }
                return out;
            }
        },
        spec);
}

StateSpec parse_state_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string family = text.substr(0, colon);
    KeyValues kv;
    if (colon != std::string::npos && colon + 1 < text.size()) {
        for (const auto& item : split(text.substr(colon + 1), ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                fail(ErrorCode::parse_error, "expected key=value, got '" + item + "'");
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }

    if (family == "fock") {
        return Fock{parse_count(require(kv, "n", family), "n")};
    }
    if (family == "coherent") {
        return Coherent{parse_complex(require(kv, "alpha", family))};
    }
    if (family == "sqvac") {
        return SqueezedVacuum{parse_squeeze(require(kv, "r", family)),
                              optional_real(kv, "delta", 0.0)};
    }
    if (family == "sqfock") {
        return SqueezedFock{parse_count(require(kv, "n", family), "n"),
                            parse_squeeze(require(kv, "r", family)),
                            optional_real(kv, "delta", 0.0)};
    }
    if (family == "dsqfock") {
        return DisplacedSqueezedFock{parse_complex(require(kv, "alpha", family)),
                                     parse_count(require(kv, "n", family), "n"),
                                     parse_squeeze(require(kv, "r", family)),
                                     optional_real(kv, "delta", 0.0)};
    }
    if (family == "pacs") {
        return PhotonAddedCoherent{parse_complex(require(kv, "alpha", family)),
                                   parse_count(require(kv, "m", family), "m")};
    }
    if (family == "cat") {
        const int h = parse_int(require(kv, "h", family));
        if (h != 0 && h != 1)
            fail(ErrorCode::invalid_parameter, "cat parameter h must be 0 or 1");
        return EvenOddCoherent{parse_complex(require(kv, "alpha", family)), h};
    }
    if (family == "custom") {
        CustomFock custom;
        for (const auto& part : split(require(kv, "coeffs", family), ';'))
            custom.coefficients.push_back(parse_complex(part));
        return custom;
    }
    fail(ErrorCode::parse_error, "unknown state family '" + family + "'");
}

}  // namespace ncarea
