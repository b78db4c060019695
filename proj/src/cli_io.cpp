#include "taco/cli_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

#include "taco/completion_analysis.hpp"
#include "taco/thread_calculus.hpp"

namespace taco {

namespace {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view field, int lineno, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        throw ParseError("line " + std::to_string(lineno) + ": invalid " + what + " '" +
                         std::string(field) + "'");
    }
    return v;
}

} // namespace

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest '" + path.string() + "'");

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("manifest: ") + e.what());
    }

    if (!doc.is_object() || !doc.contains("channels") || !doc["channels"].is_array()) {
        throw ParseError("manifest: expected an object with a 'channels' array");
    }

    Manifest manifest;
    if (doc.contains("time_unit")) {
        if (!doc["time_unit"].is_string()) {
            throw ParseError("manifest: 'time_unit' must be a string");
        }
        manifest.time_unit = doc["time_unit"].get<std::string>();
    }

    std::unordered_set<std::string> seen;
    for (const auto& entry : doc["channels"]) {
        if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
            !entry.contains("role") || !entry["role"].is_string() ||
            !entry.contains("unit_cost") || !entry["unit_cost"].is_number()) {
            throw ParseError(
                "manifest: every channel needs a string 'id', a string 'role' and a "
                "numeric 'unit_cost'");
        }
        ChannelSpec ch;
        ch.id = entry["id"].get<std::string>();
        const std::string role = entry["role"].get<std::string>();
        if (role == "input") {
            ch.role = ChannelRole::Input;
        } else if (role == "output") {
            ch.role = ChannelRole::Output;
        } else {
            throw ValidationError("channel '" + ch.id + "' has invalid role '" + role + "'");
        }
        ch.unit_cost = entry["unit_cost"].get<double>();
        if (!std::isfinite(ch.unit_cost) || ch.unit_cost < 0.0) {
            throw ValidationError("channel '" + ch.id +
                                  "' has invalid unit_cost (must be finite and >= 0)");
        }
        if (!seen.insert(ch.id).second) {
            throw ValidationError("duplicate channel id '" + ch.id + "'");
        }
        manifest.channels.push_back(std::move(ch));
    }
    return manifest;
}

OperationRecord load_events(const std::filesystem::path& path, const Manifest& manifest) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open events file '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("events: empty file (missing header)");
    }
    strip_cr(line);
    if (line != "time,channel,quantity") {
        throw ParseError("events: header must be exactly 'time,channel,quantity'");
    }

    OperationRecord record;
    record.channels = manifest.channels;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 3) {
            throw ParseError("line " + std::to_string(lineno) + ": expected 3 fields, got " +
                             std::to_string(fields.size()));
        }
        RegistrationEvent ev;
        ev.time = parse_number(fields[0], lineno, "time");
        ev.channel = std::string(fields[1]);
        ev.quantity = parse_number(fields[2], lineno, "quantity");
        if (!std::isfinite(ev.time) || !std::isfinite(ev.quantity)) {
            throw NonFiniteValue("line " + std::to_string(lineno) +
                                 ": time and quantity must be finite");
        }
        if (ev.quantity <= 0.0) {
            throw NonPositiveQuantity("line " + std::to_string(lineno) +
                                      ": quantity must be > 0");
        }
        if (record.find_channel(ev.channel) == nullptr) {
            throw UnknownChannel("line " + std::to_string(lineno) + ": unknown channel '" +
                                 ev.channel + "'");
        }
        record.events.push_back(std::move(ev));
    }
    return validate_record(std::move(record));
}

OperationRecord load_gridded(const std::filesystem::path& path, const Manifest& manifest,
                             std::optional<double> dt) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open gridded file '" + path.string() + "'");

    if (dt && !(*dt > 0.0 && std::isfinite(*dt))) {
        throw NonUniformGrid("grid spacing dt must be positive and finite");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("grid: empty file (missing header)");
    }
    strip_cr(line);
    const auto header = split_fields(line);
    if (header.empty() || header[0] != "time") {
        throw ParseError("grid: header must start with 'time'");
    }
    if (header.size() < 2) {
        throw ParseError("grid: header declares no channel columns");
    }
    std::vector<std::string> columns;
    std::unordered_set<std::string> seen;
    for (std::size_t c = 1; c < header.size(); ++c) {
        std::string id(header[c]);
        bool declared = false;
        for (const auto& ch : manifest.channels) declared = declared || ch.id == id;
        if (!declared) {
            throw UnknownChannel("grid column '" + id + "' is not a declared channel");
        }
        if (!seen.insert(id).second) {
            throw ParseError("grid: duplicate column '" + id + "'");
        }
        columns.push_back(std::move(id));
    }

    OperationRecord record;
    record.channels = manifest.channels;
    std::vector<double> times;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        const double t = parse_number(fields[0], lineno, "time");
        if (!std::isfinite(t)) {
            throw NonFiniteValue("line " + std::to_string(lineno) + ": time must be finite");
        }
        times.push_back(t);
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const double q = parse_number(fields[c + 1], lineno, "quantity");
            if (!std::isfinite(q)) {
                throw NonFiniteValue("line " + std::to_string(lineno) +
                                     ": sample values must be finite");
            }
            if (q == 0.0) continue;
            if (q < 0.0) {
                throw NonPositiveQuantity("line " + std::to_string(lineno) +
                                          ": sample values must be >= 0");
            }
            record.events.push_back({t, columns[c], q});
        }
    }

    if (times.size() >= 2) {
        const double spacing = dt ? *dt : times[1] - times[0];
        for (std::size_t k = 1; k < times.size(); ++k) {
            const double gap = times[k] - times[k - 1];
            if (gap <= 0.0) {
                throw NonUniformGrid("grid times must strictly increase");
            }
            if (std::fabs(gap - spacing) > 1e-9 * std::max(1.0, std::fabs(spacing))) {
                throw NonUniformGrid("grid spacing " + format_double(gap) +
                                     " does not match dt " + format_double(spacing));
            }
        }
    }
    return validate_record(std::move(record));
}

std::string report_json(const IndicatorReport& report) {
    nlohmann::ordered_json doc;
    doc["RE"] = report.RE;
    doc["PE"] = report.PE;
    doc["added_value"] = report.added_value;
    if (report.conditional_return) doc["conditional_return"] = *report.conditional_return;
    doc["T_op"] = report.T_op;
    doc["t_s"] = report.t_s;
    doc["t_f"] = report.t_f;
    if (report.t_a_numeric) doc["t_a_numeric"] = *report.t_a_numeric;
    if (report.t_a_analytic) doc["t_a_analytic"] = *report.t_a_analytic;
    doc["effective"] = report.effective;
    doc["reserve_closed"] = report.reserve_closed;
    return doc.dump(2) + "\n";
}

void write_report(const IndicatorReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << report_json(report);
    if (!out) throw IoError("failed writing report to '" + path.string() + "'");
}

PlotSeries build_plot(const OperationRecord& record, std::optional<double> sample_dt) {
    const OperationBounds bounds = physical_completion(record);
    const auto [re, pe] = cost_impulses(record);
    const StepFunction consumption = cumulate(re);
    const StepFunction productivity = cumulate(pe);
    const StepFunction net = add(consumption, productivity);
    const ThreadSplit split = split_signs(net);
    const double from = std::min(0.0, bounds.start);
    const PiecewiseLinear vre = integrate(consumption, true, from);
    const PiecewiseLinear vpe = integrate(productivity, false, from);
    const PiecewiseLinear vbe = integrate(split.tight, true, from);
    const PiecewiseLinear vde = integrate(split.target, false, from);
    const TacoResult taco = evaluate_taco(re, pe, bounds.physical_end);

    std::vector<double> times{from, bounds.start, bounds.physical_end};
    for (const auto& ev : record.events) times.push_back(ev.time);
    if (taco.numeric) times.push_back(*taco.numeric);
    if (taco.analytic) times.push_back(*taco.analytic);
    const double end = *std::max_element(times.begin(), times.end());
    if (sample_dt) {
        for (std::size_t k = 0;; ++k) {
            const double t = from + static_cast<double>(k) * *sample_dt;
            if (t >= end) break;
            times.push_back(t);
        }
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    PlotSeries series;
    series.rows.reserve(times.size());
    std::size_t ri = 0, pi = 0;
    for (const double t : times) {
        PlotRow row;
        row.t = t;
        while (ri < re.size() && re.impulses()[ri].time <= t) row.re += re.impulses()[ri++].amount;
        while (pi < pe.size() && pe.impulses()[pi].time <= t) row.pe += pe.impulses()[pi++].amount;
        row.ire = consumption.value(t);
        row.ipe = productivity.value(t);
        row.ice = net.value(t);
        row.ibe = split.tight.value(t);
        row.ide = split.target.value(t);
        row.vre = vre.value(t);
        row.vpe = vpe.value(t);
        row.vbe = vbe.value(t);
        row.vde = vde.value(t);
        series.rows.push_back(row);
    }
    return series;
}

std::string plot_csv(const PlotSeries& series) {
    std::string out = "t,re,pe,ire,ipe,ice,ibe,ide,vre,vpe,vbe,vde\n";
    for (const auto& row : series.rows) {
        out += format_double(row.t);
        for (const double v : {row.re, row.pe, row.ire, row.ipe, row.ice, row.ibe, row.ide,
                               row.vre, row.vpe, row.vbe, row.vde}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

void write_plot(const PlotSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << plot_csv(series);
    if (!out) throw IoError("failed writing plot series to '" + path.string() + "'");
}

bool run_check(const OperationRecord& record, std::ostream& out) {
    bool all_pass = true;
    const auto emit = [&](bool ok, const std::string& label) {
        out << (ok ? "[PASS] " : "[FAIL] ") << label << "\n";
        all_pass = all_pass && ok;
    };

    const OperationBounds bounds = physical_completion(record);
    const auto [re, pe] = cost_impulses(record);
    const StepFunction consumption = cumulate(re);
    const StepFunction productivity = cumulate(pe);
    const StepFunction net = add(consumption, productivity);
    const ThreadSplit split = split_signs(net);
    const double from = std::min(0.0, bounds.start);
    const PiecewiseLinear vre = integrate(consumption, true, from);
    const PiecewiseLinear vpe = integrate(productivity, false, from);
    const PiecewiseLinear vbe = integrate(split.tight, true, from);
    const PiecewiseLinear vde = integrate(split.target, false, from);

    {
        std::vector<double> probes;
        const auto& bps = net.breakpoints();
        if (bps.empty()) {
            probes.push_back(0.0);
        } else {
            probes.push_back(bps.front().time - 1.0);
            for (std::size_t i = 0; i < bps.size(); ++i) {
                probes.push_back(bps[i].time);
                if (i + 1 < bps.size()) {
                    probes.push_back(0.5 * (bps[i].time + bps[i + 1].time));
                }
            }
            probes.push_back(bps.back().time + 1.0);
        }
        bool ok = true;
        for (const double t : probes) {
            const double tight = split.tight.value(t);
            const double target = split.target.value(t);
            ok = ok && tight + target == net.value(t) && tight <= 0.0 && target >= 0.0 &&
                 tight * target == 0.0;
        }
        emit(ok, "decomposition identity: tight + target == net with tight <= 0 <= target");
    }

    {
        std::vector<double> knot_times;
        for (const auto* f : {&vre, &vpe, &vbe, &vde}) {
            for (const auto& k : f->knots()) knot_times.push_back(k.time);
        }
        std::sort(knot_times.begin(), knot_times.end());
        knot_times.erase(std::unique(knot_times.begin(), knot_times.end()), knot_times.end());
        double max_gap = 0.0;
        double max_mag = 0.0;
        for (const double t : knot_times) {
            const double route_threads = vde.value(t) - vbe.value(t);
            const double route_signals = vpe.value(t) - vre.value(t);
            max_gap = std::max(max_gap, std::fabs(route_threads - route_signals));
            for (const double v : {vre.value(t), vpe.value(t), vbe.value(t), vde.value(t)}) {
                max_mag = std::max(max_mag, std::fabs(v));
            }
        }
        const double tol = 1e-9 * (1.0 + max_mag);
        std::ostringstream label;
        label << "thread-route identity: max |(vde-vbe)-(vpe-vre)| = " << max_gap
              << " <= " << tol;
        emit(max_gap <= tol, label.str());
    }

    {
        const TacoResult taco = evaluate_taco(re, pe, bounds.physical_end);
        if (!taco.effective) {
            emit(true, "numeric/analytic agreement: skipped (operation not effective)");
        } else if (*taco.analytic < bounds.physical_end) {
            emit(true,
                 "numeric/analytic agreement: not applicable (compensation precedes "
                 "physical completion)");
        } else {
            emit(taco.agreement, "numeric/analytic agreement: t_a_numeric " +
                                     format_double(*taco.numeric) + " vs t_a_analytic " +
                                     format_double(*taco.analytic));
        }
    }
    return all_pass;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Target operation identification and completion analytics"};
    app.require_subcommand(1);

    std::string events_file;
    std::string manifest_file;
    std::string out_file;
    bool gridded = false;
    double dt = 0.0;
    double sample_dt = 0.0;

    auto* analyze = app.add_subcommand(
        "analyze", "Analyze an operation log and emit the indicator report");
    analyze->add_option("events", events_file, "registration events CSV")->required();
    analyze->add_option("--manifest", manifest_file, "channel manifest JSON")->required();
    auto* gridded_flag =
        analyze->add_flag("--gridded", gridded, "treat the events file as a uniform time grid");
    auto* dt_opt = analyze->add_option("--dt", dt, "grid spacing (inferred when omitted)")
                       ->check(CLI::PositiveNumber)
                       ->needs(gridded_flag);
    auto* out_opt = analyze->add_option(
        "--out", out_file, "write the JSON report to this path instead of stdout");

    auto* plot =
        app.add_subcommand("plot", "Emit plot-ready CSV series for every analysis curve");
    plot->add_option("events", events_file, "registration events CSV")->required();
    plot->add_option("--manifest", manifest_file, "channel manifest JSON")->required();
    plot->add_option("--out", out_file, "output CSV path")->required();
    auto* sample_opt =
        plot->add_option("--sample-dt", sample_dt, "additional uniform sampling step")
            ->check(CLI::PositiveNumber);

    auto* check =
        app.add_subcommand("check", "Run the invariant suite on one operation log");
    check->add_option("events", events_file, "registration events CSV")->required();
    check->add_option("--manifest", manifest_file, "channel manifest JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Manifest manifest = load_manifest(manifest_file);
        const OperationRecord record =
            gridded ? load_gridded(events_file, manifest,
                                   *dt_opt ? std::optional<double>(dt) : std::nullopt)
                    : load_events(events_file, manifest);

        if (analyze->parsed()) {
            const IndicatorReport report = assemble_report(record);
            if (*out_opt) {
                write_report(report, out_file);
            } else {
                std::cout << report_json(report);
            }
            return 0;
        }
        if (plot->parsed()) {
            const PlotSeries series = build_plot(
                record, *sample_opt ? std::optional<double>(sample_dt) : std::nullopt);
            write_plot(series, out_file);
            return 0;
        }
        if (check->parsed()) {
            return run_check(record, std::cout) ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace taco
