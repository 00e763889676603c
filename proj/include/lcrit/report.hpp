#pragma once

// Machine-readable claim reports. Values are rounded to 12 significant
// digits before insertion so identical inputs serialize to identical bytes.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "lcrit/version.hpp"

#include "json.hpp"

namespace lcrit {

enum class Provenance { paper_constant, derived_oracle, property };

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::paper_constant: return "paper-constant";
        case Provenance::derived_oracle: return "derived-oracle";
        case Provenance::property: return "property";
    }
    return "?";
}

// Round to 12 significant digits; the shortest round-trip of the rounded
// value then prints at most 12 digits.
inline double round12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

struct Claim {
    std::string name;
    double computed = 0.0;
    std::optional<double> reference; // printed constant being reproduced, if any
    std::optional<double> margin;
    bool passed = false;
    Provenance provenance = Provenance::property;
};

struct Report {
    std::string command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    std::vector<Claim> claims;
    std::optional<nlohmann::ordered_json> extra; // subcommand-specific payload
    bool timings_enabled = false;
    std::vector<std::pair<std::string, double>> timings_ms;

    bool all_passed() const {
        for (const auto& c : claims)
            if (!c.passed) return false;
        return true;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["tool"] = std::string(kToolName) + " " + kVersion;
        j["command"] = command;
        j["inputs"] = inputs;
        auto rows = nlohmann::ordered_json::array();
        for (const auto& c : claims) {
            nlohmann::ordered_json row;
            row["name"] = c.name;
            row["computed"] = round12(c.computed);
            if (c.reference) row["reference"] = round12(*c.reference);
            if (c.margin) row["margin"] = round12(*c.margin);
            row["passed"] = c.passed;
            row["provenance"] = provenance_name(c.provenance);
            rows.push_back(row);
        }
        j["claims"] = rows;
        if (extra) j["details"] = *extra;
        j["passed"] = all_passed();
        if (timings_enabled) {
            nlohmann::ordered_json t;
            for (const auto& [k, v] : timings_ms) t[k] = round12(v);
            j["timings_ms"] = t;
        }
        return j;
    }

    std::string to_csv() const {
        std::string out = "name,computed,reference,margin,passed,provenance\n";
        char buf[64];
        auto fmt = [&buf](double v) {
            std::snprintf(buf, sizeof(buf), "%.12g", v);
            return std::string(buf);
        };
        auto quoted = [](const std::string& s) {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) {
                if (ch == '"') q += '"';
                q += ch;
            }
            q += '"';
            return q;
        };
        for (const auto& c : claims) {
            out += quoted(c.name) + "," + fmt(c.computed) + ",";
            if (c.reference) out += fmt(*c.reference);
            out += ",";
            if (c.margin) out += fmt(*c.margin);
            out += ",";
            out += c.passed ? "true" : "false";
            out += ",";
            out += provenance_name(c.provenance);
            out += "\n";
        }
        return out;
    }
};

} // namespace lcrit
