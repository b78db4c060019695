#pragma once

#include <span>
#include <vector>

#include "taco/indicators.hpp"

namespace taco {

/// Analyzes independent records in parallel (OpenMP when available).
/// Output order matches input order and is identical to the serial path.
std::vector<IndicatorReport> analyze_batch(std::span<const OperationRecord> records);

/// Serial reference for analyze_batch.
std::vector<IndicatorReport> analyze_batch_serial(std::span<const OperationRecord> records);

} // namespace taco
