#include "ncarea/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ncarea/errors.hpp"

namespace ncarea {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_double17(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_complex(const std::complex<double>& z) {
    const double re = z.real();
    const double im = z.imag();
    if (im == 0.0) return format_double(re);
    std::string imag_part = format_double(im) + "i";
    if (re == 0.0) return imag_part;
    if (im > 0.0) return format_double(re) + "+" + imag_part;
    return format_double(re) + imag_part;  // sign carried by format_double
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io_error, "cannot open for writing: " + path);
    out << content;
    if (!out) fail(ErrorCode::io_error, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io_error, "cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& text, char delim) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == delim) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace ncarea
