#pragma once

#include <complex>
#include <string>
#include <vector>

namespace ncarea {

/// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

/// Fixed 17-significant-digit form used in CSV exports.
std::string format_double17(double v);

/// Complex in the spec-string form "a+bi" / "a-bi" / "bi" / "a".
std::string format_complex(const std::complex<double>& z);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Splits on a delimiter, keeping empty fields.
std::vector<std::string> split(const std::string& text, char delim);

}  // namespace ncarea
