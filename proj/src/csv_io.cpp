#include "ekzft/csv_io.hpp"

#include "ekzft/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ekzft {

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    const std::size_t begin = s.find_first_not_of(ws);
    if (begin == std::string::npos)
        return "";
    const std::size_t end = s.find_last_not_of(ws);
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

double parse_double(const std::string& field, const std::string& origin, std::size_t line_no) {
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0' || errno == ERANGE) {
        std::ostringstream msg;
        msg << origin << ": line " << line_no << ": cannot parse number '" << field << "'";
        throw DataError(msg.str());
    }
    return value;
}

long long parse_int(const std::string& field, const std::string& origin, std::size_t line_no) {
    char* end = nullptr;
    errno = 0;
    const long long value = std::strtoll(field.c_str(), &end, 10);
    if (end == field.c_str() || *end != '\0' || errno == ERANGE) {
        std::ostringstream msg;
        msg << origin << ": line " << line_no << ": cannot parse integer '" << field << "'";
        throw DataError(msg.str());
    }
    return value;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", value);
    return buf;
}

RealSeries read_series_csv(std::istream& in, const std::string& origin) {
    std::string line;
    std::size_t line_no = 0;

    // Header row: "value" required, "t" and an all-zero "missing" optional.
    int col_t = -1;
    int col_value = -1;
    int col_missing = -1;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const std::vector<std::string> header = split_csv_line(line);
        columns = header.size();
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == "t")
                col_t = static_cast<int>(i);
            else if (header[i] == "value")
                col_value = static_cast<int>(i);
            else if (header[i] == "missing")
                col_missing = static_cast<int>(i);
            else
                throw DataError(origin + ": unexpected column '" + header[i] + "'");
        }
        break;
    }
    if (col_value < 0)
        throw DataError(origin + ": no 'value' column in header");

    RealSeries series;
    bool have_first_t = false;
    long long expected_t = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != columns) {
            std::ostringstream msg;
            msg << origin << ": line " << line_no << ": expected " << columns
                << " fields, found " << fields.size();
            throw DataError(msg.str());
        }
        if (col_t >= 0) {
            const long long t = parse_int(fields[static_cast<std::size_t>(col_t)], origin, line_no);
            if (!have_first_t) {
                series.start_offset = t;
                expected_t = t;
                have_first_t = true;
            }
            if (t != expected_t) {
                std::ostringstream msg;
                msg << origin << ": line " << line_no << ": time index " << t
                    << " is not consecutive (expected " << expected_t << ")";
                throw DataError(msg.str());
            }
            ++expected_t;
        }
        if (col_missing >= 0 &&
            parse_int(fields[static_cast<std::size_t>(col_missing)], origin, line_no) != 0)
            throw DataError(origin + ": input series may not contain missing rows");
        const double value =
            parse_double(fields[static_cast<std::size_t>(col_value)], origin, line_no);
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg << origin << ": line " << line_no << ": non-finite value";
            throw DataError(msg.str());
        }
        series.values.push_back(value);
    }
    if (series.values.empty())
        throw DataError(origin + ": no data rows");
    series.missing.assign(series.values.size(), 0);
    return series;
}

RealSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open '" + path + "' for reading");
    return read_series_csv(in, path);
}

void write_complex_csv(std::ostream& out, const ComplexSeries& z) {
    out << "t,re,im,missing\n";
    for (std::size_t i = 0; i < z.size(); ++i) {
        out << (z.start_offset + static_cast<std::int64_t>(i)) << ','
            << format_double(z.values[i].real()) << ','
            << format_double(z.values[i].imag()) << ',' << (z.is_missing(i) ? 1 : 0)
            << '\n';
    }
}

void write_real_csv(std::ostream& out, const RealSeries& x) {
    out << "t,value,missing\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        out << (x.start_offset + static_cast<std::int64_t>(i)) << ','
            << format_double(x.values[i]) << ',' << (x.is_missing(i) ? 1 : 0) << '\n';
    }
}

void write_transfer_csv(std::ostream& out, const TransferCurve& curve) {
    out << "# window=" << format_double(curve.spec.window.length)
        << " iterations=" << curve.spec.iterations
        << " frequency=" << format_double(curve.spec.frequency)
        << " kind=" << (curve.kind == TransferKind::exact ? "exact" : "closed_form") << '\n';
    const bool with_log = !curve.log_gains.empty();
    out << (with_log ? "shift,gain,log_gain\n" : "shift,gain\n");
    for (std::size_t i = 0; i < curve.shifts.size(); ++i) {
        out << format_double(curve.shifts[i]) << ',' << format_double(curve.gains[i]);
        if (with_log)
            out << ',' << format_double(curve.log_gains[i]);
        out << '\n';
    }
}

void write_periodogram_csv(std::ostream& out, const PeriodogramCurve& curve) {
    out << "frequency,power\n";
    for (std::size_t i = 0; i < curve.frequencies.size(); ++i)
        out << format_double(curve.frequencies[i]) << ',' << format_double(curve.power[i])
            << '\n';
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw DataError("cannot open '" + tmp + "' for writing");
        out << content;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw DataError("failed while writing '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw DataError("cannot move '" + tmp + "' to '" + path + "': " +
                        std::strerror(errno));
    }
}

} // namespace ekzft
