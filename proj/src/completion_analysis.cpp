#include "taco/completion_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace taco {

namespace {

double earliest_event(const OperationRecord& record) {
    double t = std::numeric_limits<double>::infinity();
    for (const auto& ev : record.events) t = std::min(t, ev.time);
    return t;
}

double latest_event(const OperationRecord& record) {
    double t = -std::numeric_limits<double>::infinity();
    for (const auto& ev : record.events) t = std::max(t, ev.time);
    return t;
}

double magnitude_total(const ImpulseTrain& train) {
    double sum = 0.0;
    for (const auto& imp : train.impulses()) sum += std::fabs(imp.amount);
    return sum;
}

} // namespace

double start_time(const OperationRecord& record) {
    if (record.events.empty()) throw EmptyOperation("operation has no registration events");
    return earliest_event(record);
}

OperationBounds physical_completion(const OperationRecord& record) {
    if (record.events.empty()) throw EmptyOperation("operation has no registration events");

    const StepFunction reserves = cumulate(reserve_impulses(record));
    OperationBounds bounds;
    bounds.start = earliest_event(record);
    if (reserves.final_level() == 0.0) {
        bounds.reserve_closed = true;
        bounds.physical_end = reserves.breakpoints().empty()
                                  ? latest_event(record)
                                  : reserves.breakpoints().back().time;
    } else {
        bounds.reserve_closed = false;
        bounds.physical_end = latest_event(record);
    }
    return bounds;
}

double taco_numeric(const PiecewiseLinear& consumption_integral,
                    const PiecewiseLinear& productivity_integral,
                    double physical_end) {
    const double slope_gap =
        productivity_integral.slope_after() - consumption_integral.slope_after();
    if (!(slope_gap > 0.0)) {
        throw NonEffectiveOperation(
            "output value never overtakes input value (PE <= |RE|)");
    }

    // Merged knot times at or after physical completion; the difference
    // vpe - vre is linear between consecutive ones.
    std::vector<double> grid;
    grid.reserve(consumption_integral.knots().size() +
                 productivity_integral.knots().size() + 1);
    grid.push_back(physical_end);
    for (const auto& k : consumption_integral.knots()) {
        if (k.time > physical_end) grid.push_back(k.time);
    }
    for (const auto& k : productivity_integral.knots()) {
        if (k.time > physical_end) grid.push_back(k.time);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const auto gap = [&](double t) {
        return productivity_integral.value(t) - consumption_integral.value(t);
    };

    double prev_t = grid.front();
    double prev_d = gap(prev_t);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (prev_d == 0.0) return prev_t;
        const double t = grid[i];
        const double d = gap(t);
        if ((prev_d < 0.0 && d > 0.0) || (prev_d > 0.0 && d < 0.0)) {
            return prev_t + (-prev_d) * (t - prev_t) / (d - prev_d);
        }
        prev_t = t;
        prev_d = d;
    }
    if (prev_d == 0.0) return prev_t;
    if (prev_d < 0.0) return prev_t + (-prev_d) / slope_gap;

    // Compensation already held at physical completion and is never lost
    // again: actual completion coincides with physical completion.
    return physical_end;
}

double taco_analytic(const ImpulseTrain& re, const ImpulseTrain& pe) {
    double moment = 0.0;
    double balance = 0.0;
    for (const auto& imp : pe.impulses()) {
        moment += imp.amount * imp.time;
        balance += imp.amount;
    }
    for (const auto& imp : re.impulses()) {
        moment -= std::fabs(imp.amount) * imp.time;
        balance -= std::fabs(imp.amount);
    }
    if (!(balance > 0.0)) {
        throw NonEffectiveOperation(
            "output value never overtakes input value (PE <= |RE|)");
    }
    return moment / balance;
}

double taco_reduced(double input_cost, double input_time,
                    double output_cost, double output_time) {
    if (!std::isfinite(input_cost) || !std::isfinite(input_time) ||
        !std::isfinite(output_cost) || !std::isfinite(output_time)) {
        throw NonFiniteValue("reduced-operation parameters must be finite");
    }
    if (input_cost < 0.0) {
        throw std::invalid_argument("input cost must be nonnegative");
    }
    if (!(output_cost > input_cost)) {
        throw NonEffectiveOperation(
            "output value never overtakes input value (PE <= |RE|)");
    }
    return (output_cost * output_time - input_cost * input_time) /
           (output_cost - input_cost);
}

LinearizedPair linearize(const ImpulseTrain& re, const ImpulseTrain& pe,
                         double completion_time) {
    if (re.size() != 1 || pe.size() != 1) {
        throw NotReducedOperation(
            "linearization needs exactly one input and one output impulse");
    }
    const Impulse& in = re.impulses().front();
    const Impulse& out = pe.impulses().front();

    LinearizedPair lin;
    lin.slope_r = std::fabs(in.amount);
    lin.slope_p = out.amount;
    if (!(lin.slope_p > lin.slope_r)) {
        throw NonEffectiveOperation(
            "output value never overtakes input value (PE <= |RE|)");
    }

    // Common displacement: the true integral of |consumption| at completion
    // (equal to the productivity integral there when completion_time is the
    // actual crossing).
    lin.C = lin.slope_r * std::max(0.0, completion_time - in.time);
    lin.C_r = lin.slope_r * completion_time;
    lin.C_p = lin.slope_p * completion_time;
    lin.t_r = (lin.C_r - lin.C) / lin.slope_r;
    lin.t_p = (lin.C_p - lin.C) / lin.slope_p;
    return lin;
}

TacoResult evaluate_taco(const ImpulseTrain& re, const ImpulseTrain& pe,
                         double physical_end) {
    TacoResult result;
    const double income = pe.total();
    const double cost = magnitude_total(re);
    result.effective = income > cost;
    if (!result.effective) return result;

    double first = physical_end;
    if (!re.empty()) first = std::min(first, re.impulses().front().time);
    if (!pe.empty()) first = std::min(first, pe.impulses().front().time);
    const double from = std::min(0.0, first);

    const PiecewiseLinear vre = integrate(cumulate(re), /*absolute=*/true, from);
    const PiecewiseLinear vpe = integrate(cumulate(pe), /*absolute=*/false, from);

    result.numeric = taco_numeric(vre, vpe, physical_end);
    result.analytic = taco_analytic(re, pe);
    const double scale = 1.0 + std::max(std::fabs(*result.numeric), std::fabs(*result.analytic));
    result.agreement = std::fabs(*result.numeric - *result.analytic) <= 1e-9 * scale;
    return result;
}

} // namespace taco
