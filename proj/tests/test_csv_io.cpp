#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekzft/csv_io.hpp"
#include "ekzft/errors.hpp"
#include "ekzft/filter_engine.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ekzft;

TEST_CASE("reads a plain value column") {
    std::istringstream in("value\n1.5\n-2\n3e2\n");
    const RealSeries x = read_series_csv(in);
    CHECK(x.values == std::vector<double>{1.5, -2.0, 300.0});
    CHECK(x.start_offset == 0);
    CHECK_FALSE(x.any_missing());
}

TEST_CASE("reads t and value columns, keeping the offset") {
    std::istringstream in("t,value\n4,1\n5,2\n6,3\n");
    const RealSeries x = read_series_csv(in);
    CHECK(x.values == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(x.start_offset == 4);
}

TEST_CASE("tolerates blank lines and surrounding spaces") {
    std::istringstream in("t, value\n\n0, 1.0\n1, 2.0\n\n");
    const RealSeries x = read_series_csv(in);
    CHECK(x.values == std::vector<double>{1.0, 2.0});
}

TEST_CASE("rejects malformed input") {
    SUBCASE("no value column") {
        std::istringstream in("t,amount\n0,1\n");
        CHECK_THROWS_AS(read_series_csv(in), DataError);
    }
    SUBCASE("unknown column") {
        std::istringstream in("value,color\n1,red\n");
        CHECK_THROWS_AS(read_series_csv(in), DataError);
    }
    SUBCASE("unparsable number") {
        std::istringstream in("value\nabc\n");
        CHECK_THROWS_AS(read_series_csv(in), DataError);
    }
    SUBCASE("field count mismatch") {
        std::istringstream in("t,value\n0,1,2\n");
        CHECK_THROWS_AS(read_series_csv(in), DataError);
    }
    SUBCASE("non-consecutive time index") {
        std::istringstream in("t,value\n0,1\n2,2\n");
        CHECK_THROWS_AS(read_series_csv(in), DataError);
    }
    SUBCASE("non-finite value") {
        std::istringstream in("value\nnan\n");
        CHECK_THROWS_AS(read_series_csv(in), DataError);
    }
    SUBCASE("flagged missing row") {
        std::istringstream in("value,missing\n1,0\n2,1\n");
        CHECK_THROWS_AS(read_series_csv(in), DataError);
    }
    SUBCASE("empty file") {
        std::istringstream in("");
        CHECK_THROWS_AS(read_series_csv(in), DataError);
    }
    SUBCASE("header only") {
        std::istringstream in("value\n");
        CHECK_THROWS_AS(read_series_csv(in), DataError);
    }
}

TEST_CASE("missing file reports a data error") {
    CHECK_THROWS_AS(read_series_csv(std::string("/nonexistent/nowhere.csv")), DataError);
}

TEST_CASE("complex series round-trips through the writer format") {
    RealSeries x(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8});
    const ComplexSeries z = apply_direct(x, make_filter_spec(3.0, 1, 0.2));
    std::ostringstream out;
    write_complex_csv(out, z);

    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,re,im,missing");
    std::string first;
    std::getline(lines, first);
    CHECK(first == "0,nan,nan,1");
    std::string second;
    std::getline(lines, second);
    const double re = z.values[1].real();
    CHECK(second.substr(0, 2) == "1,");
    CHECK(std::stod(second.substr(2)) == doctest::Approx(re).epsilon(1e-14));
}

TEST_CASE("dropped output starts at the recorded offset") {
    RealSeries x(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8});
    const ComplexSeries z = apply_direct(x, make_filter_spec(3.0, 1, 0.0), EdgePolicy::drop);
    std::ostringstream out;
    write_complex_csv(out, z);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    std::string first;
    std::getline(lines, first);
    CHECK(first.substr(0, 2) == "1,"); // h = 1 for window 3
}

TEST_CASE("real series writer emits value and missing columns") {
    const RealSeries x = apply_lowpass(RealSeries(std::vector<double>{1, 1, 1, 1, 1}), 3.0, 1);
    std::ostringstream out;
    write_real_csv(out, x);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,value,missing");
    std::string row;
    std::getline(lines, row);
    CHECK(row == "0,nan,1");
    std::getline(lines, row);
    CHECK(row == "1,1,0");
}

TEST_CASE("transfer and periodogram writers") {
    const FilterSpec spec = make_filter_spec(7.0, 1, 0.25);
    TransferCurve curve = transfer_exact(spec, std::vector<double>{-0.25, 0.0, 0.25});
    std::ostringstream out;
    write_transfer_csv(out, curve);
    const std::string text = out.str();
    CHECK(text.find("# window=7") == 0);
    CHECK(text.find("kind=exact") != std::string::npos);
    CHECK(text.find("shift,gain\n") != std::string::npos);

    add_log_gains(curve);
    std::ostringstream out2;
    write_transfer_csv(out2, curve);
    CHECK(out2.str().find("shift,gain,log_gain\n") != std::string::npos);

    PeriodogramCurve pg;
    pg.frequencies = {0.0, 0.25};
    pg.power = {1.0, 0.5};
    std::ostringstream out3;
    write_periodogram_csv(out3, pg);
    CHECK(out3.str() == "frequency,power\n0,1\n0.25,0.5\n");
}

TEST_CASE("format_double keeps fifteen significant digits") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333333");
    CHECK(std::stod(format_double(3.141592653589793)) ==
          doctest::Approx(3.141592653589793).epsilon(1e-15));
}

TEST_CASE("atomic write lands complete files and cleans up") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ekzft_io_test";
    fs::create_directories(dir);
    const fs::path target = dir / "out.csv";

    write_file_atomic(target.string(), "a,b\n1,2\n");
    std::ifstream in(target);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == "a,b\n1,2\n");
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));

    CHECK_THROWS_AS(write_file_atomic((dir / "no" / "such" / "dir.csv").string(), "x"),
                    DataError);
    fs::remove_all(dir);
}
