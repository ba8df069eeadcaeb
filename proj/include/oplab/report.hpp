#pragma once

// The common report shape every verification emits. Failing reports carry
// a re-checkable witness and, where applicable, a replay object holding
// everything needed to rebuild the instance and reproduce the violation.

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

namespace oplab {

struct VerificationReport {
    std::string equation;
    std::string mode = "exhaustive"; // "exhaustive" | "sampled"
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string outcome = "pass"; // "pass" | "fail" | "refused"
    nlohmann::json witness;       // null unless fail
    std::uint64_t checked = 0;
    double elapsed_ms = 0.0;
    nlohmann::json details = nlohmann::json::object();
    nlohmann::json replay; // null unless replayable

    bool passed() const { return outcome == "pass"; }
    bool failed() const { return outcome == "fail"; }
    bool refused() const { return outcome == "refused"; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema"] = "oplab/1";
        j["equation"] = equation;
        j["mode"] = mode;
        if (seed) j["seed"] = *seed;
        if (trials) j["trials"] = *trials;
        j["outcome"] = outcome;
        j["checked"] = checked;
        j["elapsed_ms"] = elapsed_ms;
        if (!witness.is_null()) j["witness"] = witness;
        if (!details.empty()) j["details"] = details;
        if (!replay.is_null()) j["replay"] = replay;
        return j;
    }
};

// Timing is excluded from the determinism contract; comparisons strip it.
inline nlohmann::json strip_timing(nlohmann::json j) {
    if (j.is_object()) {
        j.erase("elapsed_ms");
        for (auto& [k, v] : j.items()) v = strip_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_timing(v);
    }
    return j;
}

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace oplab
