#include "taco/batch.hpp"

#include <cstddef>
#include <exception>

namespace taco {

std::vector<IndicatorReport> analyze_batch_serial(std::span<const OperationRecord> records) {
    std::vector<IndicatorReport> reports(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        reports[i] = assemble_report(records[i]);
    }
    return reports;
}

std::vector<IndicatorReport> analyze_batch(std::span<const OperationRecord> records) {
    std::vector<IndicatorReport> reports(records.size());
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(records.size()); ++i) {
        try {
            reports[static_cast<std::size_t>(i)] =
                assemble_report(records[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical
            {
                if (!failure) failure = std::current_exception();
            }
        }
    }

    if (failure) std::rethrow_exception(failure);
    return reports;
}

} // namespace taco
