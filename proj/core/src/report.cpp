#include "cmczone/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmczone {

void VerificationReport::check(double margin, const nlohmann::json& where, bool strict) {
    bool first = !data.contains("checks");
    data["checks"] = data.value("checks", 0) + 1;
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    if (first || margin < min_margin) {
        min_margin = margin;
        witness = where;
    }
    if (strict ? !(margin > 0) : !(margin >= -tolerance)) {
        pass = false;
        max_violation = std::max(max_violation, std::isfinite(margin) ? std::max(-margin, 0.0) : std::numeric_limits<double>::max());
    }
}

void VerificationReport::add_section(VerificationReport section) {
    if (sections.empty() && !data.contains("checks"))
        min_margin = section.min_margin;
    else
        min_margin = std::min(min_margin, section.min_margin);
    pass = pass && section.pass;
    max_violation = std::max(max_violation, section.max_violation);
    sections.push_back(std::move(section));
}

nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json j;
    j["schema"] = 1;
    j["lemma"] = r.lemma;
    j["grid"] = r.grid;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["max_violation"] = r.max_violation;
    j["min_margin"] = r.min_margin;
    j["witness"] = r.witness;
    if (!r.data.empty()) j["data"] = r.data;
    if (!r.sections.empty()) {
        j["sections"] = nlohmann::json::array();
        for (const auto& s : r.sections) j["sections"].push_back(to_json(s));
    }
    return j;
}

std::string dump(const VerificationReport& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace cmczone
