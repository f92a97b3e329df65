#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cmczone {

// Outcome of a numeric verification. max_violation is the largest amount by
// which a checked inequality failed (0 when every check held); the smallest
// margin by which checks held is kept in `min_margin`.
struct VerificationReport {
    std::string lemma;
    nlohmann::json grid = nlohmann::json::array();
    double tolerance = 0.0;
    bool pass = true;
    double max_violation = 0.0;
    double min_margin = 0.0;
    nlohmann::json witness;  // where the worst case happened; null if nothing failed
    nlohmann::json data = nlohmann::json::object();
    std::vector<VerificationReport> sections;
    double wall_seconds = 0.0;  // logged separately, never serialized

    // Records a check of the form `margin >= -tolerance` (or `margin > 0` when
    // strict). The witness follows the smallest margin seen so far.
    void check(double margin, const nlohmann::json& where, bool strict = false);
    void add_section(VerificationReport section);
};

nlohmann::json to_json(const VerificationReport& report);
std::string dump(const VerificationReport& report);  // pretty JSON with trailing newline

}  // namespace cmczone
