#pragma once

#include <string>
#include <utility>
#include <vector>

#include "taco/errors.hpp"

namespace taco {

enum class ChannelRole { Input, Output };

/// One registered product stream crossing the system boundary.
/// `unit_cost` converts product units into the common cost scale
/// (inputs and outputs become comparable through it).
struct ChannelSpec {
    std::string id;
    ChannelRole role = ChannelRole::Input;
    double unit_cost = 0.0; // >= 0, finite

    bool operator==(const ChannelSpec&) const = default;
};

/// A timestamped delivery (or transfer) of `quantity > 0` product units
/// on one channel. Registrations are instantaneous.
struct RegistrationEvent {
    double time = 0.0;
    std::string channel;
    double quantity = 0.0;

    bool operator==(const RegistrationEvent&) const = default;
};

/// The raw operation log: the declared channels and the registration
/// events recorded against them. Canonical form keeps events sorted by
/// (time, channel id) with same-time same-channel events merged.
struct OperationRecord {
    std::vector<ChannelSpec> channels;
    std::vector<RegistrationEvent> events;

    const ChannelSpec* find_channel(const std::string& id) const;

    bool operator==(const OperationRecord&) const = default;
};

struct Impulse {
    double time = 0.0;
    double amount = 0.0; // signed, never 0 after normalization

    bool operator==(const Impulse&) const = default;
};

/// A sorted train of signed impulses. Same-time impulses are merged by
/// summation and zero amounts dropped, so times are strictly increasing.
class ImpulseTrain {
public:
    ImpulseTrain() = default;
    explicit ImpulseTrain(std::vector<Impulse> raw);

    const std::vector<Impulse>& impulses() const noexcept { return impulses_; }
    bool empty() const noexcept { return impulses_.empty(); }
    std::size_t size() const noexcept { return impulses_.size(); }

    /// Sum of all amounts.
    double total() const noexcept;

    bool operator==(const ImpulseTrain&) const = default;

private:
    std::vector<Impulse> impulses_;
};

/// Checks every record invariant, sorts events by (time, channel id) and
/// merges same-time same-channel events. Throws UnknownChannel,
/// NonPositiveQuantity, NonFiniteValue or ValidationError.
OperationRecord validate_record(OperationRecord record);

/// Cost-domain view of the record: one impulse per registration, scaled by
/// the channel's unit cost. Inputs are negative (consumption), outputs
/// positive (production). Zero-cost channels contribute nothing.
/// Returns {re, pe} = {input train, output train}.
std::pair<ImpulseTrain, ImpulseTrain> cost_impulses(const OperationRecord& record);

/// Reserve-domain (quantity) view: inputs add stock (+quantity), outputs
/// remove it (-quantity). Unit costs are ignored entirely.
ImpulseTrain reserve_impulses(const OperationRecord& record);

} // namespace taco
