#pragma once

#include "relviews/command.hpp"
#include "relviews/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace relviews {

struct Event {
    ThreadId thread = 1;
    bool call = true;
    int method = 0;
    Value value = 0; // argument of a call, result of a return

    auto operator<=>(const Event&) const = default;
};

using History = std::vector<Event>;

std::string format_event(const Event& e, const Domains& d);
std::string format_history(const History& h, const Domains& d);
// Shorter histories first, then lexicographic.
bool history_less(const History& a, const History& b);

// A library instance ready for exploration: one command per token-alphabet
// entry L(m, a, v), bound to the location table of `initial`.
struct Library {
    const Domains* domains = nullptr;
    std::vector<CommandPtr> bodies;
    Heap initial;
    const TransformerTable* table = &TransformerTable::builtin();
};

enum class BoundKind {
    Events, // the bound counts call and return events
    Steps,  // the bound counts every transition, internal steps included
};

struct HistoryOptions {
    std::size_t bound = 0;
    BoundKind kind = BoundKind::Events;
    std::size_t cap = 2'000'000; // configurations
};

struct HistorySet {
    std::vector<History> histories; // sorted by history_less, unique
    bool growing = false;           // some history at the bound can be extended
    std::size_t configurations = 0;
};

// Raised (as Error FaultReachable) with the schedule that faults.
HistorySet generate_histories(const Library& lib, const HistoryOptions& opt);

struct LinearizabilityResult {
    bool ok = true;
    std::optional<History> counterexample;
    std::size_t concrete_histories = 0;
    std::size_t abstract_histories = 0;
    std::size_t abstract_bound = 0;
    bool bound_too_small = false;
    std::size_t configurations = 0;
};

// Concrete histories up to the bound must all be abstract histories. In
// Steps mode the abstract bound is derived from the longest concrete
// history.
LinearizabilityResult check_linearizable(const Library& concrete, const Library& abstract, const HistoryOptions& opt,
                                         int jobs = 1);

// First element of `a` (in order) missing from `b`; both sorted.
std::optional<History> first_missing(const std::vector<History>& a, const std::vector<History>& b);

} // namespace relviews
