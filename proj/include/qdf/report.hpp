#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdf/costmodel.hpp"
#include "qdf/truncation.hpp"

namespace qdf {

struct TruncationInfo {
    Scheme scheme = Scheme::incoherent;
    double epsilon = 0.0;
    double coherent_score = 0.0;
    double incoherent_score = 0.0;
    std::size_t full_R = 0;
    std::size_t full_M = 0;
    double full_alpha = 0.0;
};

struct EstimateResult {
    std::string label;
    std::optional<TruncationInfo> truncation;
    CostReport cost;
};

struct SweepPoint {
    SweepRow row;
    CostReport cost;
};

struct SweepResult {
    std::string label;
    Scheme scheme = Scheme::incoherent;
    std::vector<SweepPoint> points;
};

// Shortest text that parses back to the same double; shared by JSON and CSV.
std::string format_number(double x);

nlohmann::json to_json(const EstimateResult& r);
nlohmann::json to_json(const SweepResult& s);

std::string estimate_csv(const std::vector<EstimateResult>& rows);
std::string estimate_table(const EstimateResult& r);
std::string sweep_csv(const SweepResult& s);
std::string sweep_table(const SweepResult& s);

} // namespace qdf
