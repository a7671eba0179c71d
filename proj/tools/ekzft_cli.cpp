#include "ekzft/csv_io.hpp"
#include "ekzft/errors.hpp"
#include "ekzft/filter_engine.hpp"
#include "ekzft/sim_harness.hpp"
#include "ekzft/spectral_analysis.hpp"
#include "ekzft/window_algebra.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ekzft;

double parse_window_text(const std::string& text) {
    if (text == "pi")
        return std::numbers::pi;
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        throw CLI::ValidationError("--window", "expected a real number or 'pi', got '" + text + "'");
    return value;
}

// Print to stdout, or write the whole document atomically to a file.
void emit(const std::string& content, const std::string& path) {
    if (path.empty())
        std::cout << content;
    else
        write_file_atomic(path, content);
}

std::string window_token(double length) {
    char buf[32];
    if (length == std::floor(length))
        std::snprintf(buf, sizeof(buf), "%.1f", length);
    else
        std::snprintf(buf, sizeof(buf), "%.6g", length);
    return buf;
}

std::string file_prefix(const FilterSpec& spec) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s_m%s_k%d_v%.6g_",
                  spec.window.is_odd_integer() ? "kzft" : "ekzft",
                  window_token(spec.window.length).c_str(), spec.iterations,
                  spec.frequency);
    return buf;
}

struct CoeffsOptions {
    std::string window;
    int iterations = 1;
    std::string format = "json";
    std::string output;
};

void run_coeffs(const CoeffsOptions& opt) {
    const CoefficientTable table = coefficient_table(parse_window_text(opt.window), opt.iterations);
    std::string content;
    if (opt.format == "json") {
        content = table.to_json() + "\n";
    } else {
        std::ostringstream out;
        out << "# window=" << format_double(table.window.length)
            << " iterations=" << table.iterations << '\n';
        out << "s,weight\n";
        const int h = table.half_support();
        for (int s = -h; s <= h; ++s)
            out << s << ',' << format_double(table.weight(s)) << '\n';
        content = out.str();
    }
    emit(content, opt.output);
}

struct FilterOptions {
    std::string input;
    std::string window;
    int iterations = 1;
    double frequency = 0.0;
    std::string form = "direct";
    std::string edges = "missing";
    bool reconstruct = false;
    std::string output;
};

void run_filter(const FilterOptions& opt) {
    const FilterSpec spec =
        make_filter_spec(parse_window_text(opt.window), opt.iterations, opt.frequency);
    const EdgePolicy policy =
        opt.edges == "drop" ? EdgePolicy::drop : EdgePolicy::mark_missing;
    const RealSeries x = read_series_csv(opt.input);
    const ComplexSeries z = opt.form == "iterated" ? apply_iterated(x, spec, policy)
                                                   : apply_direct(x, spec, policy);
    std::ostringstream out;
    if (opt.reconstruct)
        write_real_csv(out, reconstruct_band(z, spec.frequency));
    else
        write_complex_csv(out, z);
    emit(out.str(), opt.output);
}

struct TransferOptions {
    std::vector<std::string> windows;
    int iterations = 1;
    double frequency = 0.0;
    bool exact = false;
    bool closed = false;
    bool both = false;
    std::size_t grid = 2001;
    bool log_gain = false;
    std::string format = "csv";
    std::string output;
};

void run_transfer(const TransferOptions& opt) {
    // A window list emits one curve (or pair) per entry, so a whole gallery
    // of filters can land in one invocation.
    std::vector<FilterSpec> specs;
    for (const std::string& token : opt.windows)
        specs.push_back(
            make_filter_spec(parse_window_text(token), opt.iterations, opt.frequency));
    const std::vector<double> grid = uniform_shift_grid(opt.grid);

    auto build = [&](const FilterSpec& spec, TransferKind kind) {
        TransferCurve curve = kind == TransferKind::exact ? transfer_exact(spec, grid)
                                                          : transfer_closed(spec, grid);
        if (opt.log_gain)
            add_log_gains(curve);
        return curve;
    };
    auto render_csv = [](const TransferCurve& curve) {
        std::ostringstream out;
        write_transfer_csv(out, curve);
        return out.str();
    };

    std::vector<TransferKind> kinds;
    if (opt.both) {
        kinds = {TransferKind::exact, TransferKind::closed_form};
    } else {
        kinds = {opt.closed ? TransferKind::closed_form : TransferKind::exact};
    }

    if (opt.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const FilterSpec& spec : specs)
            for (TransferKind kind : kinds)
                arr.push_back(nlohmann::json::parse(build(spec, kind).to_json()));
        // A single plain curve stays a plain object.
        emit((arr.size() == 1 ? arr[0].dump() : arr.dump()) + "\n", opt.output);
        return;
    }

    if (opt.output.empty()) {
        for (const FilterSpec& spec : specs)
            for (TransferKind kind : kinds)
                std::cout << render_csv(build(spec, kind));
        return;
    }

    if (specs.size() == 1 && kinds.size() == 1) {
        emit(render_csv(build(specs.front(), kinds.front())), opt.output);
        return;
    }

    std::string stem = opt.output;
    const std::string suffix = ".csv";
    if (stem.size() > suffix.size() &&
        stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
        stem.resize(stem.size() - suffix.size());
    for (const FilterSpec& spec : specs) {
        const std::string window_part =
            specs.size() > 1 ? "_m" + window_token(spec.window.length) : "";
        for (TransferKind kind : kinds) {
            const std::string kind_part =
                kinds.size() > 1 ? (kind == TransferKind::exact ? "_exact" : "_closed") : "";
            write_file_atomic(stem + window_part + kind_part + ".csv",
                              render_csv(build(spec, kind)));
        }
    }
}

struct CutoffOptions {
    std::string window;
    int iterations = 1;
    std::string format = "text";
    std::string output;
};

void run_cutoff(const CutoffOptions& opt) {
    const double window = parse_window_text(opt.window);
    const double shift = half_power_shift(window, opt.iterations);
    std::string content;
    if (opt.format == "json") {
        nlohmann::json j;
        j["window"] = window;
        j["iterations"] = opt.iterations;
        j["half_power_shift"] = shift;
        content = j.dump() + "\n";
    } else {
        content = format_double(shift) + "\n";
    }
    emit(content, opt.output);
}

struct PeriodogramOptions {
    std::string input;
    std::string format = "csv";
    std::string output;
};

void run_periodogram(const PeriodogramOptions& opt) {
    const PeriodogramCurve curve = periodogram(read_series_csv(opt.input));
    std::string content;
    if (opt.format == "json") {
        nlohmann::json j;
        j["frequencies"] = curve.frequencies;
        j["power"] = curve.power;
        content = j.dump() + "\n";
    } else {
        std::ostringstream out;
        write_periodogram_csv(out, curve);
        content = out.str();
    }
    emit(content, opt.output);
}

struct SimulateOptions {
    std::string window;
    int iterations = 1;
    double frequency = 0.0;
    std::size_t length = 1000;
    double sigma = 1.0;
    int replicates = 200;
    std::uint64_t seed = 20240101;
    std::vector<int> neighbors;
    std::string out_dir = ".";
};

void run_simulate(const SimulateOptions& opt) {
    ExperimentConfig config;
    config.spec = make_filter_spec(parse_window_text(opt.window), opt.iterations, opt.frequency);
    config.length = opt.length;
    config.sigma = opt.sigma;
    config.replicates = opt.replicates;
    config.seed = opt.seed;
    config.comparison_windows = opt.neighbors;
    for (int nb : opt.neighbors)
        if (nb <= 1 || nb % 2 == 0)
            throw DomainError("neighbors must be odd integers greater than one");

    const ExperimentReport report = run_band_experiment(config);

    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec)
        throw DataError("cannot create output directory '" + opt.out_dir + "': " + ec.message());
    const std::string prefix = (std::filesystem::path(opt.out_dir) / file_prefix(config.spec)).string();

    auto render = [](auto writer, const auto& payload) {
        std::ostringstream out;
        writer(out, payload);
        return out.str();
    };
    write_file_atomic(prefix + "report.json", report.to_json() + "\n");
    write_file_atomic(prefix + "raw_periodogram.csv",
                      render([](std::ostream& o, const PeriodogramCurve& c) { write_periodogram_csv(o, c); },
                             report.raw_periodogram_mean));
    write_file_atomic(prefix + "filtered_periodogram.csv",
                      render([](std::ostream& o, const PeriodogramCurve& c) { write_periodogram_csv(o, c); },
                             report.filtered_periodogram_mean));
    write_file_atomic(prefix + "theory_transfer.csv",
                      render([](std::ostream& o, const TransferCurve& c) { write_transfer_csv(o, c); },
                             report.theory_curve));

    // Transfer curves of the neighboring odd-window filters on the same shift
    // grid, for side-by-side plots against the filtered periodogram.
    for (int nb : opt.neighbors) {
        const FilterSpec nb_spec =
            make_filter_spec(static_cast<double>(nb), opt.iterations, opt.frequency);
        TransferCurve curve = transfer_exact(nb_spec, report.theory_curve.shifts);
        const double sigma2 = opt.sigma * opt.sigma;
        for (double& g : curve.gains)
            g *= sigma2;
        const std::string nb_prefix =
            (std::filesystem::path(opt.out_dir) / file_prefix(nb_spec)).string();
        write_file_atomic(nb_prefix + "theory_transfer.csv",
                          render([](std::ostream& o, const TransferCurve& c) { write_transfer_csv(o, c); },
                                 curve));
    }
}

struct AuditOptions {
    std::string window;
    int iterations = 1;
    double frequency = 0.0;
    std::vector<int> neighbors;
    std::string format = "csv";
    std::string output;
};

void run_audit(const AuditOptions& opt) {
    const FilterSpec spec =
        make_filter_spec(parse_window_text(opt.window), opt.iterations, opt.frequency);
    const std::vector<AuditEntry> entries = attenuation_audit(spec, opt.neighbors);
    emit(opt.format == "json" ? audit_to_json(entries) + "\n" : audit_to_csv(entries),
         opt.output);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Band-pass time series filtering with iterated Fourier-transform "
                 "(KZFT/EKZFT) filters"};
    app.require_subcommand(1);

    CoeffsOptions coeffs;
    CLI::App* cmd_coeffs = app.add_subcommand("coeffs", "Emit a filter coefficient table");
    cmd_coeffs->add_option("--window", coeffs.window, "window length (> 1, accepts 'pi')")->required();
    cmd_coeffs->add_option("--iterations", coeffs.iterations, "number of iterations k");
    cmd_coeffs->add_option("--format", coeffs.format)->check(CLI::IsMember({"csv", "json"}));
    cmd_coeffs->add_option("--output", coeffs.output, "output file (stdout if omitted)");
    cmd_coeffs->callback([&] { run_coeffs(coeffs); });

    FilterOptions filter;
    CLI::App* cmd_filter = app.add_subcommand("filter", "Band-pass filter a CSV series");
    cmd_filter->add_option("--input", filter.input, "input CSV with a 'value' column")->required();
    cmd_filter->add_option("--window", filter.window, "window length (> 1, accepts 'pi')")->required();
    cmd_filter->add_option("--iterations", filter.iterations, "number of iterations k");
    cmd_filter->add_option("--frequency", filter.frequency, "band center in cycles per step");
    cmd_filter->add_option("--form", filter.form)->check(CLI::IsMember({"direct", "iterated"}));
    cmd_filter->add_option("--edges", filter.edges)->check(CLI::IsMember({"missing", "drop"}));
    cmd_filter->add_flag("--reconstruct", filter.reconstruct,
                         "emit the real band-passed signal instead of complex output");
    cmd_filter->add_option("--output", filter.output, "output file (stdout if omitted)");
    cmd_filter->callback([&] { run_filter(filter); });

    TransferOptions transfer;
    CLI::App* cmd_transfer = app.add_subcommand("transfer", "Emit energy transfer curves");
    cmd_transfer->add_option("--window", transfer.windows, "one or more window lengths")
        ->required()
        ->delimiter(',');
    cmd_transfer->add_option("--iterations", transfer.iterations);
    cmd_transfer->add_option("--frequency", transfer.frequency);
    CLI::Option* flag_exact = cmd_transfer->add_flag("--exact", transfer.exact, "exact gain of the generated weights (default)");
    CLI::Option* flag_closed = cmd_transfer->add_flag("--closed", transfer.closed, "closed-form gain");
    CLI::Option* flag_both = cmd_transfer->add_flag("--both", transfer.both, "emit both curves");
    flag_both->excludes(flag_exact)->excludes(flag_closed);
    flag_exact->excludes(flag_closed);
    cmd_transfer->add_option("--grid", transfer.grid, "number of shift grid points");
    cmd_transfer->add_flag("--log", transfer.log_gain, "add a log-gain column");
    cmd_transfer->add_option("--format", transfer.format)->check(CLI::IsMember({"csv", "json"}));
    cmd_transfer->add_option("--output", transfer.output,
                             "output file; with --both, suffixes _exact/_closed are added");
    cmd_transfer->callback([&] { run_transfer(transfer); });

    CutoffOptions cutoff;
    CLI::App* cmd_cutoff = app.add_subcommand("cutoff", "Half-power frequency shift");
    cmd_cutoff->add_option("--window", cutoff.window)->required();
    cmd_cutoff->add_option("--iterations", cutoff.iterations);
    cmd_cutoff->add_option("--format", cutoff.format)->check(CLI::IsMember({"text", "json"}));
    cmd_cutoff->add_option("--output", cutoff.output);
    cmd_cutoff->callback([&] { run_cutoff(cutoff); });

    PeriodogramOptions pgram;
    CLI::App* cmd_pgram = app.add_subcommand("periodogram", "Periodogram of a CSV series");
    cmd_pgram->add_option("--input", pgram.input)->required();
    cmd_pgram->add_option("--format", pgram.format)->check(CLI::IsMember({"csv", "json"}));
    cmd_pgram->add_option("--output", pgram.output);
    cmd_pgram->callback([&] { run_periodogram(pgram); });

    SimulateOptions simulate;
    CLI::App* cmd_simulate =
        app.add_subcommand("simulate", "White-noise band-pass experiment with report files");
    cmd_simulate->add_option("--window", simulate.window)->required();
    cmd_simulate->add_option("--iterations", simulate.iterations);
    cmd_simulate->add_option("--frequency", simulate.frequency);
    cmd_simulate->add_option("--length", simulate.length, "series length n");
    cmd_simulate->add_option("--sigma", simulate.sigma, "noise standard deviation");
    cmd_simulate->add_option("--replicates", simulate.replicates);
    cmd_simulate->add_option("--seed", simulate.seed);
    cmd_simulate->add_option("--neighbors", simulate.neighbors, "odd windows for comparison curves")
        ->delimiter(',');
    cmd_simulate->add_option("--out", simulate.out_dir, "output directory");
    cmd_simulate->callback([&] { run_simulate(simulate); });

    AuditOptions audit;
    CLI::App* cmd_audit =
        app.add_subcommand("audit", "Attenuation audit against neighboring odd windows");
    cmd_audit->add_option("--window", audit.window)->required();
    cmd_audit->add_option("--iterations", audit.iterations);
    cmd_audit->add_option("--frequency", audit.frequency);
    cmd_audit->add_option("--neighbors", audit.neighbors)->delimiter(',');
    cmd_audit->add_option("--format", audit.format)->check(CLI::IsMember({"csv", "json"}));
    cmd_audit->add_option("--output", audit.output);
    cmd_audit->callback([&] { run_audit(audit); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
