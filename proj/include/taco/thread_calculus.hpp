#pragma once

#include <vector>

#include "taco/signal_model.hpp"

namespace taco {

struct Breakpoint {
    double time = 0.0;
    double level = 0.0; // value from this time onward (right-continuous)

    bool operator==(const Breakpoint&) const = default;
};

/// Right-continuous piecewise-constant function. Construction canonicalizes:
/// breakpoint times strictly increase and consecutive levels differ, so two
/// equal functions compare equal structurally.
class StepFunction {
public:
    StepFunction() = default; // constant 0
    StepFunction(double initial_level, std::vector<Breakpoint> breakpoints);

    double initial_level() const noexcept { return initial_level_; }
    const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }

    /// Value at t (right-continuous: the level set at t applies at t).
    double value(double t) const noexcept;

    /// Level after the last breakpoint.
    double final_level() const noexcept;

    bool operator==(const StepFunction&) const = default;

private:
    double initial_level_ = 0.0;
    std::vector<Breakpoint> breakpoints_;
};

struct Knot {
    double time = 0.0;
    double value = 0.0;

    bool operator==(const Knot&) const = default;
};

/// Continuous piecewise-linear function: linear between knots, extended as a
/// ray beyond the ends with explicit slopes. The integrals of step functions
/// live here, so the extension slopes are the step function's first and last
/// levels rather than the first/last inter-knot slope.
class PiecewiseLinear {
public:
    PiecewiseLinear(std::vector<Knot> knots, double slope_before, double slope_after);

    const std::vector<Knot>& knots() const noexcept { return knots_; }
    double slope_before() const noexcept { return slope_before_; }
    double slope_after() const noexcept { return slope_after_; }

    /// Exact linear interpolation between knots, ray extrapolation outside.
    /// Evaluation at a knot returns the stored knot value.
    double value(double t) const noexcept;

    bool operator==(const PiecewiseLinear&) const = default;

private:
    std::vector<Knot> knots_;
    double slope_before_ = 0.0;
    double slope_after_ = 0.0;
};

/// Pointwise evaluation, free-function alias for PiecewiseLinear::value.
inline double eval(const PiecewiseLinear& f, double t) noexcept { return f.value(t); }

/// Running sum of an impulse train: a step function that jumps by each
/// impulse's amount at its time, starting from level 0.
StepFunction cumulate(const ImpulseTrain& train);

/// Pointwise sum with merged breakpoints; equal consecutive levels coalesce.
StepFunction add(const StepFunction& a, const StepFunction& b);

/// Negative and positive parts of a net-value thread.
/// tight(t) = min(f(t), 0) binds the consumed value; target(t) = max(f(t), 0)
/// carries the released surplus. tight + target == f pointwise.
struct ThreadSplit {
    StepFunction tight;  // <= 0 everywhere
    StepFunction target; // >= 0 everywhere
};

ThreadSplit split_signs(const StepFunction& net);

/// Exact running integral of f (or |f| when `absolute`), as a piecewise-linear
/// function anchored at value 0 at `from`. Requires from <= first breakpoint.
PiecewiseLinear integrate(const StepFunction& f, bool absolute, double from);

/// Same, with the default lower bound min(0, first breakpoint).
PiecewiseLinear integrate(const StepFunction& f, bool absolute);

} // namespace taco
