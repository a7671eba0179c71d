#pragma once

#include "ekzft/series.hpp"
#include "ekzft/spectral_analysis.hpp"

#include <iosfwd>
#include <string>

namespace ekzft {

// %.15g rendering used for every real written to CSV.
std::string format_double(double value);

// Input format: one header row, columns "t" (optional, consecutive integers)
// and "value" (finite reals).  Extra columns are rejected except a "missing"
// column that must be all zero.  Throws DataError on anything malformed.
RealSeries read_series_csv(std::istream& in, const std::string& origin = "<stream>");
RealSeries read_series_csv(const std::string& path);

// "t,re,im,missing" rows; missing rows print nan for both parts.
void write_complex_csv(std::ostream& out, const ComplexSeries& z);

// "t,value,missing"; missing rows print nan.
void write_real_csv(std::ostream& out, const RealSeries& x);

// "shift,gain[,log_gain]" preceded by "# key=value" metadata lines.
void write_transfer_csv(std::ostream& out, const TransferCurve& curve);

// "frequency,power".
void write_periodogram_csv(std::ostream& out, const PeriodogramCurve& curve);

// Writes content to path atomically: a temp file in the same directory is
// renamed over the target only after a successful write.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace ekzft
