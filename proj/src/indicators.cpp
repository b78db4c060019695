#include "taco/indicators.hpp"

#include <cmath>

namespace taco {

double economic_cost(const ImpulseTrain& re) {
    double sum = 0.0;
    for (const auto& imp : re.impulses()) sum += std::fabs(imp.amount);
    return sum;
}

double economic_income(const ImpulseTrain& pe) {
    return pe.total();
}

IndicatorReport assemble_report(const OperationRecord& record) {
    const OperationBounds bounds = physical_completion(record);
    const auto [re, pe] = cost_impulses(record);

    IndicatorReport report;
    report.RE = economic_cost(re);
    report.PE = economic_income(pe);
    report.added_value = report.PE - report.RE;
    if (report.RE > 0.0) {
        report.conditional_return = report.added_value / report.RE;
    }
    report.t_s = bounds.start;
    report.t_f = bounds.physical_end;
    report.T_op = bounds.physical_end - bounds.start;
    report.reserve_closed = bounds.reserve_closed;

    const TacoResult taco = evaluate_taco(re, pe, bounds.physical_end);
    report.effective = taco.effective;
    report.t_a_numeric = taco.numeric;
    report.t_a_analytic = taco.analytic;
    return report;
}

} // namespace taco
