#pragma once

#include <optional>

#include "taco/signal_model.hpp"
#include "taco/thread_calculus.hpp"

namespace taco {

/// Time frame of an operation: start, physical completion, and whether the
/// internal reserve returned exactly to zero at physical completion.
struct OperationBounds {
    double start = 0.0;        // t_s, earliest registration
    double physical_end = 0.0; // t_f, all internal product transferred out
    bool reserve_closed = false;

    bool operator==(const OperationBounds&) const = default;
};

/// Actual-completion times by both routes. `numeric` intersects the integral
/// functions; `analytic` evaluates the discrete cost-centroid formula. Both
/// absent when the operation is not effective.
struct TacoResult {
    std::optional<double> numeric;
    std::optional<double> analytic;
    bool effective = false;
    bool agreement = false;

    bool operator==(const TacoResult&) const = default;
};

/// Linear replacements of the integral functions for a reduced operation:
/// vre*(t) = slope_r*t - C_r + C and vpe*(t) = slope_p*t - C_p + C, both
/// passing through the true intersection at the completion time.
struct LinearizedPair {
    double slope_r = 0.0; // |RE|, magnitude of the single input impulse
    double slope_p = 0.0; // PE, the single output impulse
    double C = 0.0;       // common displacement, value of both integrals at t_a
    double C_r = 0.0;     // slope_r * t_a
    double C_p = 0.0;     // slope_p * t_a
    double t_r = 0.0;     // time-axis crossing of vre*, the input registration time
    double t_p = 0.0;     // time-axis crossing of vpe*, the output registration time

    bool operator==(const LinearizedPair&) const = default;
};

/// Earliest registration time. Throws EmptyOperation.
double start_time(const OperationRecord& record);

/// Physical completion: the moment reserves return exactly to zero, or the
/// latest registration when quantities are not conserved. Throws EmptyOperation.
OperationBounds physical_completion(const OperationRecord& record);

/// Smallest t >= physical_end where the two integral functions meet, solved
/// exactly on their linear segments (final slopes extrapolated). Accepts the
/// (vre, vpe) pair or the (vbe, vde) pair; both give the same crossing.
/// If compensation already holds at physical_end and is never lost again,
/// returns physical_end. Throws NonEffectiveOperation when the final slope of
/// `productivity_integral` does not exceed that of `consumption_integral`.
double taco_numeric(const PiecewiseLinear& consumption_integral,
                    const PiecewiseLinear& productivity_integral,
                    double physical_end);

/// Discrete cost-centroid form of the actual-completion time:
/// (sum pe_j*t_j - sum |re_i|*t_i) / (sum pe_j - sum |re_i|).
/// Throws NonEffectiveOperation when the denominator is not positive.
double taco_analytic(const ImpulseTrain& re, const ImpulseTrain& pe);

/// Closed form for a reduced operation: one input of cost `input_cost` at
/// `input_time`, one output of cost `output_cost` at `output_time`.
double taco_reduced(double input_cost, double input_time,
                    double output_cost, double output_time);

/// Linear replacement construction for a reduced operation (single-impulse
/// trains) at a known completion time. Throws NotReducedOperation unless each
/// train carries exactly one impulse; NonEffectiveOperation when PE <= |RE|.
LinearizedPair linearize(const ImpulseTrain& re, const ImpulseTrain& pe,
                         double completion_time);

/// Runs both completion routes on the cost trains of an operation whose
/// physical completion is already known, and compares them.
TacoResult evaluate_taco(const ImpulseTrain& re, const ImpulseTrain& pe,
                         double physical_end);

} // namespace taco
