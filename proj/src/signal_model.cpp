#include "taco/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace taco {

const ChannelSpec* OperationRecord::find_channel(const std::string& id) const {
    for (const auto& ch : channels) {
        if (ch.id == id) return &ch;
    }
    return nullptr;
}

ImpulseTrain::ImpulseTrain(std::vector<Impulse> raw) {
    for (const auto& imp : raw) {
        if (!std::isfinite(imp.time) || !std::isfinite(imp.amount)) {
            throw NonFiniteValue("impulse with non-finite time or amount");
        }
    }
    std::sort(raw.begin(), raw.end(),
              [](const Impulse& a, const Impulse& b) { return a.time < b.time; });
    impulses_.reserve(raw.size());
    for (const auto& imp : raw) {
        if (!impulses_.empty() && impulses_.back().time == imp.time) {
            impulses_.back().amount += imp.amount;
        } else {
            impulses_.push_back(imp);
        }
    }
    std::erase_if(impulses_, [](const Impulse& imp) { return imp.amount == 0.0; });
}

double ImpulseTrain::total() const noexcept {
    double sum = 0.0;
    for (const auto& imp : impulses_) sum += imp.amount;
    return sum;
}

OperationRecord validate_record(OperationRecord record) {
    std::unordered_set<std::string> seen;
    for (const auto& ch : record.channels) {
        if (!std::isfinite(ch.unit_cost)) {
            throw NonFiniteValue("channel '" + ch.id + "' has non-finite unit cost");
        }
        if (ch.unit_cost < 0.0) {
            throw ValidationError("channel '" + ch.id + "' has negative unit cost");
        }
        if (!seen.insert(ch.id).second) {
            throw ValidationError("duplicate channel id '" + ch.id + "'");
        }
    }

    for (const auto& ev : record.events) {
        if (!std::isfinite(ev.time) || !std::isfinite(ev.quantity)) {
            throw NonFiniteValue("event on channel '" + ev.channel +
                                 "' has non-finite time or quantity");
        }
        if (ev.quantity <= 0.0) {
            throw NonPositiveQuantity("event on channel '" + ev.channel +
                                      "' has quantity <= 0");
        }
        if (record.find_channel(ev.channel) == nullptr) {
            throw UnknownChannel("event references undeclared channel '" + ev.channel + "'");
        }
    }

    std::stable_sort(record.events.begin(), record.events.end(),
                     [](const RegistrationEvent& a, const RegistrationEvent& b) {
                         if (a.time != b.time) return a.time < b.time;
                         return a.channel < b.channel;
                     });

    std::vector<RegistrationEvent> merged;
    merged.reserve(record.events.size());
    for (const auto& ev : record.events) {
        if (!merged.empty() && merged.back().time == ev.time &&
            merged.back().channel == ev.channel) {
            merged.back().quantity += ev.quantity;
        } else {
            merged.push_back(ev);
        }
    }
    record.events = std::move(merged);
    return record;
}

std::pair<ImpulseTrain, ImpulseTrain> cost_impulses(const OperationRecord& record) {
    std::vector<Impulse> inputs;
    std::vector<Impulse> outputs;
    for (const auto& ev : record.events) {
        const ChannelSpec* ch = record.find_channel(ev.channel);
        if (ch == nullptr) {
            throw UnknownChannel("event references undeclared channel '" + ev.channel + "'");
        }
        if (ch->unit_cost == 0.0) continue;
        const double cost = ch->unit_cost * ev.quantity;
        if (ch->role == ChannelRole::Input) {
            inputs.push_back({ev.time, -cost});
        } else {
            outputs.push_back({ev.time, +cost});
        }
    }
    return {ImpulseTrain(std::move(inputs)), ImpulseTrain(std::move(outputs))};
}

ImpulseTrain reserve_impulses(const OperationRecord& record) {
    std::vector<Impulse> stock;
    for (const auto& ev : record.events) {
        const ChannelSpec* ch = record.find_channel(ev.channel);
        if (ch == nullptr) {
            throw UnknownChannel("event references undeclared channel '" + ev.channel + "'");
        }
        const double sign = (ch->role == ChannelRole::Input) ? +1.0 : -1.0;
        stock.push_back({ev.time, sign * ev.quantity});
    }
    return ImpulseTrain(std::move(stock));
}

} // namespace taco
