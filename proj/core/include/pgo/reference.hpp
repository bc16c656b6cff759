#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "pgo/gpa.hpp"
#include "pgo/lowweight.hpp"

namespace pgo {

// One comparison of a computed quantity against a published closed form.
struct ReferenceCheck {
    int criterion = 0;
    std::optional<Omega> omega;  // set for checks that belong to one eigenvalue
    std::string stage;           // elimination stage, when the check follows one
    std::string name;
    bool pass = false;
    std::string computed;
    std::string expected;
};

struct ReferenceOptions {
    std::optional<Omega> omega;  // restrict to the checks of one eigenvalue
    CollapseOptions faults;
    int digits = 30;
};

struct ReferenceReport {
    std::vector<ReferenceCheck> checks;
    bool all_pass() const;
    const ReferenceCheck* first_failure() const;
    nlohmann::json to_json() const;
};

ReferenceReport run_reference_checks(const ReferenceOptions& opt = {});

}  // namespace pgo
