#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "taco/indicators.hpp"
#include "taco/signal_model.hpp"

namespace taco {

/// Channel declarations plus a free-text time unit label (metadata only).
struct Manifest {
    std::vector<ChannelSpec> channels;
    std::string time_unit;
};

/// One sampled row of the analysis curves. `re` and `pe` hold the impulse
/// sums that fired in the enclosing sampling interval (prev row, this row].
struct PlotRow {
    double t = 0.0;
    double re = 0.0, pe = 0.0;
    double ire = 0.0, ipe = 0.0, ice = 0.0, ibe = 0.0, ide = 0.0;
    double vre = 0.0, vpe = 0.0, vbe = 0.0, vde = 0.0;
};

struct PlotSeries {
    std::vector<PlotRow> rows;
};

Manifest load_manifest(const std::filesystem::path& path);

/// Event-form log: CSV with header `time,channel,quantity`.
OperationRecord load_events(const std::filesystem::path& path, const Manifest& manifest);

/// Gridded log: CSV with header `time,<id>,...` on a uniform time grid.
/// Sample values are per-interval quantities; each nonzero sample becomes an
/// impulse event at its bin timestamp. `dt` is validated when supplied,
/// inferred from the grid otherwise.
OperationRecord load_gridded(const std::filesystem::path& path, const Manifest& manifest,
                             std::optional<double> dt);

/// Report as a single JSON object; absent optionals are omitted, not null.
std::string report_json(const IndicatorReport& report);
void write_report(const IndicatorReport& report, const std::filesystem::path& path);

/// Samples every curve of the analysis at the breakpoints/knots plus the
/// completion times, with an optional uniform grid interleaved.
PlotSeries build_plot(const OperationRecord& record, std::optional<double> sample_dt);

std::string plot_csv(const PlotSeries& series);
void write_plot(const PlotSeries& series, const std::filesystem::path& path);

/// Runs the invariant suite (decomposition identity, thread-route identity,
/// numeric/analytic agreement) on one record, printing one line per check.
/// Returns true when every check passes.
bool run_check(const OperationRecord& record, std::ostream& out);

/// Entry point behind the `taco` binary. Exit codes: 0 success, 1 analysis
/// error (typed error name on stderr), 2 usage error.
int cli_main(int argc, char** argv);

} // namespace taco
