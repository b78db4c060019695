#pragma once

#include <optional>

#include "taco/completion_analysis.hpp"
#include "taco/signal_model.hpp"

namespace taco {

/// The full indicator set of one target operation. Field names are also the
/// JSON keys of the emitted report; optionals are omitted when absent.
struct IndicatorReport {
    double RE = 0.0;         // total input cost
    double PE = 0.0;         // total output cost
    double added_value = 0.0; // PE - RE
    std::optional<double> conditional_return; // (PE - RE) / RE, absent when RE = 0
    double T_op = 0.0;       // physical duration, t_f - t_s
    double t_s = 0.0;
    double t_f = 0.0;
    std::optional<double> t_a_numeric;
    std::optional<double> t_a_analytic;
    bool effective = false;  // PE > RE
    bool reserve_closed = false;

    bool operator==(const IndicatorReport&) const = default;
};

/// Total input cost: sum of impulse magnitudes of the consumption train.
double economic_cost(const ImpulseTrain& re);

/// Total output cost: sum of impulse amounts of the production train.
double economic_income(const ImpulseTrain& pe);

/// Runs the whole pipeline on a validated, non-empty record and fills the
/// report. Non-effective operations are a result (effective=false, completion
/// times absent), not an error. Throws EmptyOperation.
IndicatorReport assemble_report(const OperationRecord& record);

} // namespace taco
