// Compares the parallel batch analyzer against its serial reference on
// synthetic workloads. Record shapes follow the randomized test corpus:
// 2..20 registrations with times in [0,100] and quantities in (0,10].

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "taco/batch.hpp"
#include "taco/signal_model.hpp"

namespace {

std::vector<taco::OperationRecord> make_records(std::size_t count) {
    std::mt19937_64 rng(0xbe9c);
    std::uniform_int_distribution<int> total_dist(2, 20);
    std::uniform_real_distribution<double> time_dist(0.0, 100.0);
    std::uniform_real_distribution<double> qty_dist(0.0, 10.0);

    std::vector<taco::OperationRecord> records;
    records.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        taco::OperationRecord record;
        record.channels = {{"in", taco::ChannelRole::Input, 1.0},
                           {"out", taco::ChannelRole::Output, 1.0}};
        const int total = total_dist(rng);
        std::uniform_int_distribution<int> split(1, total - 1);
        const int inputs = split(rng);
        for (int i = 0; i < total; ++i) {
            double qty = 0.0;
            while (!(qty > 0.0)) qty = qty_dist(rng);
            record.events.push_back({time_dist(rng), i < inputs ? "in" : "out", qty});
        }
        records.push_back(taco::validate_record(std::move(record)));
    }
    return records;
}

void BM_batch_serial(benchmark::State& state) {
    const auto records = make_records(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto reports = taco::analyze_batch_serial(records);
        benchmark::DoNotOptimize(reports);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_batch_parallel(benchmark::State& state) {
    const auto records = make_records(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto reports = taco::analyze_batch(records);
        benchmark::DoNotOptimize(reports);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_batch_serial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_batch_parallel)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
