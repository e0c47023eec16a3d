#ifndef MTW_IO_HPP
#define MTW_IO_HPP

#include <string>
#include <vector>

#include "mtw/sim.hpp"

namespace mtw {

enum class SampleFormat { plain, csv };

SampleFormat parse_sample_format(const std::string& name);

/// Shortest round-trip-safe text: 17 significant digits, '.' separator,
/// independent of the locale.
std::string format_double(double v);

/// Parses a finite decimal; throws ValidationError naming `context` otherwise.
double parse_double(const std::string& text, const std::string& context);

/// Raw values from a file. Plain: one number per non-empty line ('#' starts a
/// comment). CSV: `column` is a header name or 0-based index (default 0); a
/// first line that does not parse as numbers is taken as the header.
std::vector<double> read_values(const std::string& path, SampleFormat format, const std::string& column = "");

/// read_values plus checks (non-empty, nonnegative) and, for envelopes,
/// scaling to unit mean power r / sqrt(mean r^2) with the scale recorded.
EnvelopeSamples load_samples(const std::string& path, SampleFormat format, const std::string& column = "",
                             SampleKind kind = SampleKind::envelope, bool normalize = true);

/// One value per line with 17 significant digits.
void save_samples(const std::string& path, const EnvelopeSamples& samples);

}  // namespace mtw

#endif  // MTW_IO_HPP
