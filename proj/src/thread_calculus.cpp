#include "taco/thread_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace taco {

StepFunction::StepFunction(double initial_level, std::vector<Breakpoint> breakpoints)
    : initial_level_(initial_level) {
    breakpoints_.reserve(breakpoints.size());
    double level = initial_level;
    for (const auto& bp : breakpoints) {
        if (!breakpoints_.empty() && bp.time <= breakpoints_.back().time) {
            throw std::invalid_argument("step function breakpoints must strictly increase");
        }
        if (bp.level != level) {
            breakpoints_.push_back(bp);
            level = bp.level;
        }
    }
}

double StepFunction::value(double t) const noexcept {
    // rightmost breakpoint with time <= t
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                               [](double x, const Breakpoint& bp) { return x < bp.time; });
    if (it == breakpoints_.begin()) return initial_level_;
    return std::prev(it)->level;
}

double StepFunction::final_level() const noexcept {
    return breakpoints_.empty() ? initial_level_ : breakpoints_.back().level;
}

PiecewiseLinear::PiecewiseLinear(std::vector<Knot> knots, double slope_before,
                                 double slope_after)
    : knots_(std::move(knots)), slope_before_(slope_before), slope_after_(slope_after) {
    if (knots_.empty()) {
        throw std::invalid_argument("piecewise-linear function needs at least one knot");
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (knots_[i].time <= knots_[i - 1].time) {
            throw std::invalid_argument("piecewise-linear knot times must strictly increase");
        }
    }
}

double PiecewiseLinear::value(double t) const noexcept {
    if (t <= knots_.front().time) {
        return knots_.front().value + slope_before_ * (t - knots_.front().time);
    }
    if (t >= knots_.back().time) {
        return knots_.back().value + slope_after_ * (t - knots_.back().time);
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double x, const Knot& k) { return x < k.time; });
    const Knot& hi = *it;
    const Knot& lo = *std::prev(it);
    if (t == lo.time) return lo.value;
    const double slope = (hi.value - lo.value) / (hi.time - lo.time);
    return lo.value + slope * (t - lo.time);
}

StepFunction cumulate(const ImpulseTrain& train) {
    std::vector<Breakpoint> bps;
    bps.reserve(train.size());
    double level = 0.0;
    for (const auto& imp : train.impulses()) {
        level += imp.amount;
        bps.push_back({imp.time, level});
    }
    return StepFunction(0.0, std::move(bps));
}

StepFunction add(const StepFunction& a, const StepFunction& b) {
    const auto& abp = a.breakpoints();
    const auto& bbp = b.breakpoints();
    std::vector<Breakpoint> merged;
    merged.reserve(abp.size() + bbp.size());

    double la = a.initial_level();
    double lb = b.initial_level();
    std::size_t i = 0, j = 0;
    while (i < abp.size() || j < bbp.size()) {
        double t;
        if (j >= bbp.size() || (i < abp.size() && abp[i].time <= bbp[j].time)) {
            t = abp[i].time;
        } else {
            t = bbp[j].time;
        }
        if (i < abp.size() && abp[i].time == t) la = abp[i++].level;
        if (j < bbp.size() && bbp[j].time == t) lb = bbp[j++].level;
        merged.push_back({t, la + lb});
    }
    return StepFunction(a.initial_level() + b.initial_level(), std::move(merged));
}

ThreadSplit split_signs(const StepFunction& net) {
    std::vector<Breakpoint> neg, pos;
    neg.reserve(net.breakpoints().size());
    pos.reserve(net.breakpoints().size());
    for (const auto& bp : net.breakpoints()) {
        neg.push_back({bp.time, std::min(bp.level, 0.0)});
        pos.push_back({bp.time, std::max(bp.level, 0.0)});
    }
    return {StepFunction(std::min(net.initial_level(), 0.0), std::move(neg)),
            StepFunction(std::max(net.initial_level(), 0.0), std::move(pos))};
}

PiecewiseLinear integrate(const StepFunction& f, bool absolute, double from) {
    const auto& bps = f.breakpoints();
    if (!bps.empty() && from > bps.front().time) {
        throw std::invalid_argument("integration start must not exceed the first breakpoint");
    }
    const auto weigh = [absolute](double level) { return absolute ? std::fabs(level) : level; };

    std::vector<Knot> knots;
    knots.reserve(bps.size() + 1);
    knots.push_back({from, 0.0});

    double level = f.initial_level();
    double value = 0.0;
    double prev = from;
    for (const auto& bp : bps) {
        if (bp.time > prev) {
            value += weigh(level) * (bp.time - prev);
            knots.push_back({bp.time, value});
            prev = bp.time;
        }
        level = bp.level;
    }
    return PiecewiseLinear(std::move(knots), weigh(f.initial_level()), weigh(level));
}

PiecewiseLinear integrate(const StepFunction& f, bool absolute) {
    const double first = f.breakpoints().empty() ? 0.0 : f.breakpoints().front().time;
    return integrate(f, absolute, std::min(0.0, first));
}

} // namespace taco
