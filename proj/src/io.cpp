#include "mtw/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mtw/error.hpp"

namespace mtw {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(ValidationCode::invalid_argument, what); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool try_parse(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    const char* first = t.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(out);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

SampleFormat parse_sample_format(const std::string& name) {
    if (name == "plain") return SampleFormat::plain;
    if (name == "csv" || name == "csv-column") return SampleFormat::csv;
    fail("unknown sample format '" + name + "' (expected plain or csv)");
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

double parse_double(const std::string& text, const std::string& context) {
    double v = 0.0;
    if (!try_parse(text, v)) fail(context + ": '" + text + "' is not a finite number");
    return v;
}

std::vector<double> read_values(const std::string& path, SampleFormat format, const std::string& column) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    std::size_t col = 0;
    bool first_row = true;
    if (format == SampleFormat::csv && !column.empty()) {
        double idx = 0.0;
        if (try_parse(column, idx) && idx >= 0.0 && idx == std::floor(idx)) col = static_cast<std::size_t>(idx);
    }
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::string where = path + ":" + std::to_string(lineno);
        if (format == SampleFormat::plain) {
            values.push_back(parse_double(t, where));
            continue;
        }
        const auto cells = split_csv(t);
        if (first_row) {
            first_row = false;
            double probe = 0.0;
            const bool header = !try_parse(cells.empty() ? "" : cells[0], probe) ||
                                (col < cells.size() && !try_parse(cells[col], probe));
            if (header) {
                if (!column.empty()) {
                    double idx = 0.0;
                    if (!try_parse(column, idx)) {
                        bool found = false;
                        for (std::size_t i = 0; i < cells.size(); ++i) {
                            if (cells[i] == column) {
                                col = i;
                                found = true;
                            }
                        }
                        if (!found) fail(where + ": no column named '" + column + "'");
                    }
                }
                continue;
            }
        }
        if (col >= cells.size()) fail(where + ": missing column " + std::to_string(col));
        values.push_back(parse_double(cells[col], where));
    }
    return values;
}

EnvelopeSamples load_samples(const std::string& path, SampleFormat format, const std::string& column, SampleKind kind,
                             bool normalize) {
    EnvelopeSamples s;
    s.values = read_values(path, format, column);
    if (s.values.empty()) fail("'" + path + "' contains no samples");
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (s.values[i] < 0.0) fail("'" + path + "': sample " + std::to_string(i + 1) + " is negative");
    }
    s.count = s.values.size();
    s.kind = kind;
    if (normalize) {
        // Envelopes scale to unit mean power; SNR and power samples to unit mean.
        double m = 0.0;
        for (double v : s.values) m += kind == SampleKind::envelope ? v * v : v;
        m /= static_cast<double>(s.values.size());
        if (!(m > 0.0)) fail("'" + path + "': all samples are zero");
        s.normalization_scale = kind == SampleKind::envelope ? std::sqrt(m) : m;
        for (double& v : s.values) v /= s.normalization_scale;
    }
    return s;
}

void save_samples(const std::string& path, const EnvelopeSamples& samples) {
    std::ofstream out(path);
    if (!out) fail("cannot write '" + path + "'");
    for (double v : samples.values) out << format_double(v) << '\n';
    if (!out) throw NumericError("write to '" + path + "' failed");
}

}  // namespace mtw
