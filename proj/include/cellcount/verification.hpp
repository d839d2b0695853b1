#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace cellcount {

// One verification check: a named identity with rendered sides. Failed
// checks always carry a witness; skipped checks carry the reason instead.
struct Check {
    std::string name;
    std::string status; // "pass", "fail", or "skipped"
    std::string lhs;
    std::string rhs;
    std::string witness;
};

struct VerificationReport {
    std::vector<Check> checks;

    void add_pass(std::string name, std::string lhs = "", std::string rhs = "") {
        checks.push_back({std::move(name), "pass", std::move(lhs), std::move(rhs), ""});
    }
    void add_fail(std::string name, std::string lhs, std::string rhs, std::string witness) {
        if (witness.empty())
            witness = "lhs != rhs";
        checks.push_back(
            {std::move(name), "fail", std::move(lhs), std::move(rhs), std::move(witness)});
    }
    void add_skip(std::string name, std::string reason) {
        checks.push_back({std::move(name), "skipped", "", "", std::move(reason)});
    }
    void add_equal(std::string name, std::string lhs, std::string rhs,
                   std::string witness = "") {
        if (lhs == rhs)
            add_pass(std::move(name), std::move(lhs), std::move(rhs));
        else
            add_fail(std::move(name), std::move(lhs), std::move(rhs), std::move(witness));
    }

    std::size_t failures() const {
        std::size_t n = 0;
        for (auto const &c : checks)
            if (c.status == "fail")
                ++n;
        return n;
    }
    bool all_passed() const { return failures() == 0; }

    void merge(VerificationReport const &other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }
};

inline nlohmann::ordered_json to_json(VerificationReport const &report) {
    nlohmann::ordered_json j;
    j["passed"] = report.all_passed();
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (auto const &c : report.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["status"] = c.status;
        if (!c.lhs.empty() || !c.rhs.empty()) {
            e["lhs"] = c.lhs;
            e["rhs"] = c.rhs;
        }
        if (!c.witness.empty())
            e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    return j;
}

} // namespace cellcount
