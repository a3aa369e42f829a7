#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdf/truncation.hpp"

namespace qdf {

struct Check {
    std::string name;
    bool hard = true; // soft checks are reported but never fail the run
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    std::string source;
    std::size_t n_orbitals = 0;
    std::vector<Check> checks;

    bool ok() const;
    std::vector<std::string> failed() const;
    nlohmann::json to_json() const;
    std::string table() const;
};

// Runs the dense oracle suite on an FCIDUMP file with at most six orbitals.
ValidationReport validate_fcidump(const std::string& path, Scheme sweep_scheme, const std::vector<double>& grid);

} // namespace qdf
