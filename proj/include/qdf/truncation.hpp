#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qdf/factorization.hpp"

namespace qdf {

enum class Scheme { coherent, incoherent };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

struct ScoredPair {
    std::size_t r = 0; // position in DoubleFactorization::two_body
    std::size_t m = 0; // position within that rank
    double score = 0.0;
};

struct TruncationPlan {
    Scheme scheme = Scheme::coherent;
    double epsilon = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> removed;
    double coherent_score = 0.0;
    double incoherent_score = 0.0;
    std::size_t surviving_R = 0;
    std::size_t surviving_M = 0;
};

struct SweepRow {
    double epsilon = 0.0;
    std::size_t R = 0;
    std::size_t M = 0;
    std::size_t M_max = 0;
    double alpha_df = 0.0;
    double coherent_score = 0.0;
    double incoherent_score = 0.0;
};

// Ascending by score, ties by (r, m).
std::vector<ScoredPair> score_eigenpairs(const DoubleFactorization& df);

std::pair<DoubleFactorization, TruncationPlan> truncate(const DoubleFactorization& df, Scheme scheme,
                                                        double epsilon);

std::vector<SweepRow> threshold_sweep(const DoubleFactorization& df, Scheme scheme,
                                      const std::vector<double>& grid);

// n points log-spaced on [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, std::size_t n);
std::vector<double> default_grid();

} // namespace qdf
