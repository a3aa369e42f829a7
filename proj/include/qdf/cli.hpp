#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdf/factorization.hpp"

namespace qdf {

// Exit codes: 0 ok, 1 parse, 2 numeric/validation failure, 3 configuration.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "lo:hi:n" -> n log-spaced thresholds.
std::vector<double> parse_grid(const std::string& text);

// Parse + factorize, going through the binary cache when `cache` is non-empty.
DoubleFactorization load_factorization(const std::string& fcidump, const std::string& cache, unsigned threads);

} // namespace qdf
