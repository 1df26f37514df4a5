#pragma once

#include <map>
#include <string>
#include <vector>

// Invariant and oracle suite behind `openres validate`.
namespace openres::validate {

struct Check {
    std::string group;
    std::string model;
    double measured = 0.0;
    double tolerance = 0.0;
    // "<=" or "<"; compared against tolerance * tolerance_scale
    std::string relation = "<=";
    bool passed = false;
    std::string note;
};

struct ValidateConfig {
    // empty selects everything
    std::vector<std::string> only;
    std::vector<std::string> models;
    double tolerance_scale = 1.0;
    std::string oracle_grid;
};

struct ValidationReport {
    std::map<std::string, Check> checks;
    double tolerance_scale = 1.0;

    bool all_passed() const;
    std::size_t failures() const;
    // sorted keys, fixed 17-digit numbers
    std::string to_json() const;
};

const std::vector<std::string>& group_names();
const std::vector<std::string>& model_names();
// default location of the stored cylinder-function reference grid
std::string default_oracle_grid();

// throws DomainError for unknown group or model names
ValidationReport validate_all(const ValidateConfig& cfg);

}  // namespace openres::validate
