#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hil/errors.hpp"
#include "hil/settings.hpp"

namespace hil {

enum class Outcome { holds, fails, inconclusive };

const char* to_string(Outcome o) noexcept;

inline Outcome outcome_of(bool holds) noexcept { return holds ? Outcome::holds : Outcome::fails; }

using EvidenceValue = std::variant<bool, long long, double, cplx, std::string, std::vector<double>>;

struct Evidence {
    std::string name;
    EvidenceValue value;
};

/// One line of reasoning towards a verdict.
struct Leg {
    Outcome outcome = Outcome::inconclusive;
    std::vector<Evidence> evidence;
    std::string note;

    Leg& add(std::string name, EvidenceValue value);
    /// First evidence entry with this name, if any.
    const EvidenceValue* find(const std::string& name) const noexcept;
    double number(const std::string& name) const;
};

/// Brute-force leg: a finite battery of functions pushed through the operator.
struct DirectLeg : Leg {
    std::size_t battery_size = 0;
    double worst_violation = 0.0;
    std::optional<std::string> witness;
};

/// A structured answer with the truncation metadata that produced it.
///
/// agreement is set only when both legs are present; it is true when both are
/// conclusive and equal. Disagreeing conclusive legs make the overall outcome
/// inconclusive.
struct Verdict {
    std::string claim;
    Leg criterion;
    std::optional<DirectLeg> direct;
    Settings truncation;
    std::vector<std::string> notes;
    std::optional<bool> agreement;

    Outcome outcome() const noexcept;
    bool holds() const noexcept { return outcome() == Outcome::holds; }
    bool fails() const noexcept { return outcome() == Outcome::fails; }

    /// Recomputes agreement from the two legs.
    void settle();
};

}  // namespace hil
