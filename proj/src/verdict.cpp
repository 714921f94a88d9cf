#include "hil/verdict.hpp"

namespace hil {

const char* to_string(Outcome o) noexcept {
    switch (o) {
        case Outcome::holds: return "holds";
        case Outcome::fails: return "fails";
        case Outcome::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Leg& Leg::add(std::string name, EvidenceValue value) {
    evidence.push_back({std::move(name), std::move(value)});
    return *this;
}

const EvidenceValue* Leg::find(const std::string& name) const noexcept {
    for (const auto& e : evidence)
        if (e.name == name) return &e.value;
    return nullptr;
}

double Leg::number(const std::string& name) const {
    const EvidenceValue* v = find(name);
    if (v == nullptr) throw InvalidInput("no evidence named " + name);
    if (const auto* d = std::get_if<double>(v)) return *d;
    if (const auto* i = std::get_if<long long>(v)) return static_cast<double>(*i);
    if (const auto* b = std::get_if<bool>(v)) return *b ? 1.0 : 0.0;
    throw InvalidInput("evidence " + name + " is not numeric");
}

Outcome Verdict::outcome() const noexcept {
    if (!direct) return criterion.outcome;
    const Outcome a = criterion.outcome;
    const Outcome b = direct->outcome;
    if (a == Outcome::inconclusive) return b;
    if (b == Outcome::inconclusive) return a;
    return a == b ? a : Outcome::inconclusive;
}

void Verdict::settle() {
    if (!direct) {
        agreement.reset();
        return;
    }
    agreement = criterion.outcome != Outcome::inconclusive && direct->outcome != Outcome::inconclusive &&
                criterion.outcome == direct->outcome;
}

}  // namespace hil
