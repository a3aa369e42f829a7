#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qdf/factorization.hpp"

namespace qdf {

// Binary DoubleFactorization cache. All fields little-endian.
//
//   char[8]  magic "QDFCACHE"
//   u32      version (1)
//   u32      reserved (0)
//   u64      fingerprint of the source integrals file
//   u64      N
//   f64      scalar shift
//   f64[N*N] h_tilde, row-major
//   f64[N*N] L^(-1), row-major
//   u64      K, then K x { f64 eigenvalue, f64[N] eigenvector }
//   u64      R, then R x { u64 rank index, f64 schatten norm, u64 M_r,
//                          M_r x { f64 eigenvalue, f64[N] eigenvector } }
constexpr std::uint32_t kCacheVersion = 1;

std::uint64_t file_fingerprint(const std::string& path);

void write_df_cache(const std::string& path, const DoubleFactorization& df, std::uint64_t fingerprint);

// nullopt if the file is absent or was built from different integrals.
std::optional<DoubleFactorization> read_df_cache(const std::string& path, std::uint64_t fingerprint);

} // namespace qdf
