#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "support/generators.hpp"
#include "taco/completion_analysis.hpp"

using namespace taco;

namespace {

OperationRecord unit_record(std::vector<RegistrationEvent> events) {
    OperationRecord record;
    record.channels = {{"in", ChannelRole::Input, 1.0},
                       {"out", ChannelRole::Output, 1.0}};
    record.events = std::move(events);
    return validate_record(std::move(record));
}

struct IntegralPairs {
    PiecewiseLinear vre, vpe, vbe, vde;
};

IntegralPairs integral_pairs(const testsupport::TrainPair& pair) {
    const StepFunction consumption = cumulate(pair.re);
    const StepFunction productivity = cumulate(pair.pe);
    const ThreadSplit split = split_signs(add(consumption, productivity));
    double first = 0.0;
    if (!pair.re.empty()) first = std::min(first, pair.re.impulses().front().time);
    if (!pair.pe.empty()) first = std::min(first, pair.pe.impulses().front().time);
    return {integrate(consumption, true, first), integrate(productivity, false, first),
            integrate(split.tight, true, first), integrate(split.target, false, first)};
}

} // namespace

TEST_CASE("start_time returns the earliest registration") {
    CHECK(start_time(unit_record({{2.0, "in", 2.0}, {8.0, "out", 3.0}})) == 2.0);
    CHECK(start_time(unit_record({{0.0, "in", 1.0}})) == 0.0);
    CHECK(start_time(unit_record({{4.0, "in", 1.0}, {0.0, "in", 2.0}, {6.0, "out", 1.0}})) ==
          0.0);
    CHECK_THROWS_AS(start_time(unit_record({})), EmptyOperation);
}

TEST_CASE("physical_completion tracks the internal reserve") {
    SUBCASE("conserved quantities close the reserve") {
        const OperationBounds bounds =
            physical_completion(unit_record({{2.0, "in", 2.0}, {8.0, "out", 2.0}}));
        CHECK(bounds.start == 2.0);
        CHECK(bounds.physical_end == 8.0);
        CHECK(bounds.reserve_closed);
    }
    SUBCASE("single input leaves the reserve open") {
        const OperationBounds bounds = physical_completion(unit_record({{3.0, "in", 1.0}}));
        CHECK(bounds.physical_end == 3.0);
        CHECK_FALSE(bounds.reserve_closed);
    }
    SUBCASE("staged inputs fully transferred out") {
        const OperationBounds bounds = physical_completion(
            unit_record({{0.0, "in", 1.0}, {4.0, "in", 1.0}, {6.0, "out", 2.0}}));
        CHECK(bounds.physical_end == 6.0);
        CHECK(bounds.reserve_closed);
    }
    SUBCASE("unbalanced output keeps the latest event") {
        const OperationBounds bounds =
            physical_completion(unit_record({{2.0, "in", 2.0}, {8.0, "out", 3.0}}));
        CHECK(bounds.physical_end == 8.0);
        CHECK_FALSE(bounds.reserve_closed);
    }
    SUBCASE("empty record") {
        CHECK_THROWS_AS(physical_completion(unit_record({})), EmptyOperation);
    }
}

TEST_CASE("taco_numeric finds the crossing of the integral functions") {
    SUBCASE("reduced operation crosses at 20") {
        const testsupport::TrainPair pair{ImpulseTrain({{2.0, -2.0}}),
                                          ImpulseTrain({{8.0, 3.0}})};
        const auto curves = integral_pairs(pair);
        CHECK(taco_numeric(curves.vre, curves.vpe, 8.0) == 20.0);
        CHECK(taco_numeric(curves.vbe, curves.vde, 8.0) == 20.0);
    }
    SUBCASE("two inputs against one output cross at 10") {
        const testsupport::TrainPair pair{ImpulseTrain({{0.0, -1.0}, {4.0, -1.0}}),
                                          ImpulseTrain({{6.0, 4.0}})};
        const auto curves = integral_pairs(pair);
        CHECK(taco_numeric(curves.vre, curves.vpe, 6.0) == 10.0);
        CHECK(taco_numeric(curves.vbe, curves.vde, 6.0) == 10.0);
    }
    SUBCASE("instantaneous operation completes on the spot") {
        const testsupport::TrainPair pair{ImpulseTrain({{5.0, -1.0}}),
                                          ImpulseTrain({{5.0, 2.0}})};
        const auto curves = integral_pairs(pair);
        CHECK(taco_numeric(curves.vre, curves.vpe, 5.0) == 5.0);
    }
    SUBCASE("compensation already held at physical completion") {
        const testsupport::TrainPair pair{ImpulseTrain({{5.0, -1.0}}),
                                          ImpulseTrain({{0.0, 3.0}})};
        const auto curves = integral_pairs(pair);
        CHECK(taco_numeric(curves.vre, curves.vpe, 5.0) == 5.0);
    }
    SUBCASE("non-effective operation has no crossing") {
        const testsupport::TrainPair pair{ImpulseTrain({{0.0, -2.0}}),
                                          ImpulseTrain({{4.0, 2.0}})};
        const auto curves = integral_pairs(pair);
        CHECK_THROWS_AS(taco_numeric(curves.vre, curves.vpe, 4.0), NonEffectiveOperation);
    }
}

TEST_CASE("taco_analytic evaluates the cost centroid") {
    CHECK(taco_analytic(ImpulseTrain({{2.0, -2.0}}), ImpulseTrain({{8.0, 3.0}})) == 20.0);
    CHECK(taco_analytic(ImpulseTrain({{0.0, -1.0}, {4.0, -1.0}}), ImpulseTrain({{6.0, 4.0}})) ==
          10.0);
    // Free output: the centroid degenerates to the output time.
    CHECK(taco_analytic(ImpulseTrain{}, ImpulseTrain({{7.3, 4.0}})) == 7.3);
    CHECK_THROWS_AS(taco_analytic(ImpulseTrain({{0.0, -3.0}}), ImpulseTrain({{4.0, 3.0}})),
                    NonEffectiveOperation);
}

TEST_CASE("taco_reduced golden value and guards") {
    CHECK(taco_reduced(2.0, 2.0, 3.0, 8.0) == 20.0);
    CHECK(std::fabs(taco_reduced(2.0, 2.0, 3.0, 8.0) - 20.0) <= 1e-12);
    CHECK_THROWS_AS(taco_reduced(3.0, 0.0, 3.0, 5.0), NonEffectiveOperation);
    CHECK_THROWS_AS(taco_reduced(4.0, 0.0, 3.0, 5.0), NonEffectiveOperation);
    CHECK_THROWS_AS(taco_reduced(-1.0, 0.0, 3.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(taco_reduced(std::numeric_limits<double>::quiet_NaN(), 0.0, 3.0, 5.0),
                    NonFiniteValue);
}

TEST_CASE("taco_reduced specializes taco_analytic on single-impulse trains") {
    std::mt19937_64 rng(0x5eed0201);
    for (int round = 0; round < 500; ++round) {
        const double a = testsupport::draw_amount(rng, false);
        const double b = a + testsupport::draw_amount(rng, false);
        const double t1 = testsupport::draw_time(rng, false);
        const double t2 = testsupport::draw_time(rng, false);
        const double via_trains =
            taco_analytic(ImpulseTrain({{t1, -a}}), ImpulseTrain({{t2, b}}));
        CHECK(taco_reduced(a, t1, b, t2) == via_trains);
    }
}

TEST_CASE("reduced operations complete no earlier than their output") {
    std::mt19937_64 rng(0x5eed0202);
    for (int round = 0; round < 500; ++round) {
        // Separated draws keep the ordering claims decidable in floating point.
        const double a = 0.1 + testsupport::draw_amount(rng, false);
        const double b = a + 0.5 + testsupport::draw_amount(rng, false);
        const double t1 = testsupport::draw_time(rng, false);
        const double t2 = t1 + 0.1 + testsupport::draw_amount(rng, false);
        const double t_a = taco_reduced(a, t1, b, t2);
        CHECK(t_a > t2);
        CHECK(t2 > t1);
    }
}

TEST_CASE("reduced completion hits the output time exactly in the degenerate cases") {
    std::mt19937_64 rng(0x5eed0203);
    for (int round = 0; round < 200; ++round) {
        const double b = testsupport::draw_amount(rng, true);
        const double t2 = testsupport::draw_time(rng, true);
        CHECK(taco_reduced(0.0, testsupport::draw_time(rng, true), b, t2) == t2);

        const double a = testsupport::draw_amount(rng, true);
        CHECK(taco_reduced(a, t2, a + testsupport::draw_amount(rng, true), t2) == t2);
    }
}

TEST_CASE("linearize reproduces the worked reduced operation") {
    const LinearizedPair lin =
        linearize(ImpulseTrain({{2.0, -2.0}}), ImpulseTrain({{8.0, 3.0}}), 20.0);
    CHECK(lin.slope_r == 2.0);
    CHECK(lin.slope_p == 3.0);
    CHECK(lin.C == 36.0);
    CHECK(lin.C_r == 40.0);
    CHECK(lin.C_p == 60.0);
    CHECK(lin.t_r == 2.0);
    CHECK(lin.t_p == 8.0);
    // Crossing of the two replacement lines returns the completion time.
    CHECK((lin.C_p - lin.C_r) / (lin.slope_p - lin.slope_r) == 20.0);
}

TEST_CASE("linearize handles degenerate and invalid inputs") {
    const LinearizedPair origin =
        linearize(ImpulseTrain({{0.0, -1.0}}), ImpulseTrain({{0.0, 2.0}}), 0.0);
    CHECK(origin.C == 0.0);
    CHECK(origin.t_r == 0.0);
    CHECK(origin.t_p == 0.0);

    const LinearizedPair derived =
        linearize(ImpulseTrain({{1.0, -1.0}}), ImpulseTrain({{5.0, 3.0}}), 7.0);
    CHECK(derived.C == 6.0);
    CHECK(derived.t_r == 1.0);
    CHECK(derived.t_p == 5.0);

    CHECK_THROWS_AS(linearize(ImpulseTrain({{0.0, -1.0}, {1.0, -1.0}}),
                              ImpulseTrain({{5.0, 3.0}}), 7.0),
                    NotReducedOperation);
    CHECK_THROWS_AS(linearize(ImpulseTrain({{1.0, -1.0}}), ImpulseTrain{}, 7.0),
                    NotReducedOperation);
    CHECK_THROWS_AS(linearize(ImpulseTrain({{0.0, -2.0}}), ImpulseTrain({{5.0, 2.0}}), 7.0),
                    NonEffectiveOperation);
}

TEST_CASE("linearize round trip recovers the completion time and registration times") {
    std::mt19937_64 rng(0x5eed0204);
    for (int round = 0; round < 500; ++round) {
        const double a = testsupport::draw_amount(rng, false);
        const double b = a + 0.25 + testsupport::draw_amount(rng, false);
        const double t1 = testsupport::draw_time(rng, false);
        const double t2 = t1 + testsupport::draw_amount(rng, false);
        const double t_a = taco_reduced(a, t1, b, t2);
        const LinearizedPair lin =
            linearize(ImpulseTrain({{t1, -a}}), ImpulseTrain({{t2, b}}), t_a);
        const double round_trip = (lin.C_p - lin.C_r) / (lin.slope_p - lin.slope_r);
        CHECK(std::fabs(round_trip - t_a) <= 1e-12 * (1.0 + std::fabs(t_a)));
        CHECK(std::fabs(lin.t_r - t1) <= 1e-12 * (1.0 + std::fabs(t1)));
        CHECK(std::fabs(lin.t_p - t2) <= 1e-12 * (1.0 + std::fabs(t2)));
    }
}

TEST_CASE("linearize round trip is exact when the cost gap is a power of two") {
    std::mt19937_64 rng(0x5eed0205);
    for (int round = 0; round < 300; ++round) {
        const double a = testsupport::draw_amount(rng, true);
        std::uniform_int_distribution<int> exp_dist(-1, 1);
        const double b = a + std::ldexp(1.0, exp_dist(rng));
        const double t1 = testsupport::draw_time(rng, true);
        const double t2 = t1 + testsupport::draw_amount(rng, true);
        const double t_a = taco_reduced(a, t1, b, t2);
        const LinearizedPair lin =
            linearize(ImpulseTrain({{t1, -a}}), ImpulseTrain({{t2, b}}), t_a);
        CHECK(lin.t_r == t1);
        CHECK(lin.t_p == t2);
        CHECK((lin.C_p - lin.C_r) / (lin.slope_p - lin.slope_r) == t_a);
    }
}

TEST_CASE("evaluate_taco reports both routes and their agreement") {
    SUBCASE("worked reduced operation") {
        const TacoResult result =
            evaluate_taco(ImpulseTrain({{2.0, -2.0}}), ImpulseTrain({{8.0, 3.0}}), 8.0);
        CHECK(result.effective);
        REQUIRE(result.numeric.has_value());
        REQUIRE(result.analytic.has_value());
        CHECK(*result.numeric == 20.0);
        CHECK(*result.analytic == 20.0);
        CHECK(result.agreement);
    }
    SUBCASE("non-effective operation carries no completion times") {
        const TacoResult result =
            evaluate_taco(ImpulseTrain({{0.0, -3.0}}), ImpulseTrain({{4.0, 2.0}}), 4.0);
        CHECK_FALSE(result.effective);
        CHECK_FALSE(result.numeric.has_value());
        CHECK_FALSE(result.analytic.has_value());
    }
}

TEST_CASE("both completion routes return the same double on dyadic operations") {
    std::mt19937_64 rng(0x5eed0206);
    int tested = 0;
    while (tested < 300) {
        const auto pair = testsupport::random_trains(rng, /*dyadic=*/true);
        if (testsupport::shares_timestamp(pair)) continue;
        if (!(pair.pe.total() + pair.re.total() > 0.0)) continue;
        const auto curves = integral_pairs(pair);

        // Tail crossings and interior crossings alike: anchor the search at
        // the latest impulse and at the earliest one.
        const double t_last = testsupport::last_impulse_time(pair);
        double t_first = t_last;
        if (!pair.re.empty()) t_first = std::min(t_first, pair.re.impulses().front().time);
        if (!pair.pe.empty()) t_first = std::min(t_first, pair.pe.impulses().front().time);

        for (const double anchor : {t_last, t_first}) {
            const double via_signals = taco_numeric(curves.vre, curves.vpe, anchor);
            const double via_threads = taco_numeric(curves.vbe, curves.vde, anchor);
            CHECK(via_signals == via_threads);
        }
        ++tested;
    }
}

TEST_CASE("numeric and analytic completion agree when the crossing follows physical completion") {
    std::mt19937_64 rng(0x5eed0207);
    int tested = 0;
    while (tested < 300) {
        const auto pair = testsupport::random_trains(rng);
        if (!(pair.pe.total() + pair.re.total() > 0.0)) continue;
        const double t_f = testsupport::last_impulse_time(pair);
        const TacoResult result = evaluate_taco(pair.re, pair.pe, t_f);
        REQUIRE(result.effective);
        if (*result.analytic < t_f) continue; // crossing precedes physical completion
        CHECK(result.agreement);
        CHECK(std::fabs(*result.numeric - *result.analytic) <=
              1e-9 * (1.0 + std::fabs(*result.analytic)));
        ++tested;
    }
}
