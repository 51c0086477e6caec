#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace btn {

/// Closed-form size/width figures for a given (n, D, d, B).
struct BoundsReport {
  std::size_t n = 0;
  std::size_t dim = 0;        // D
  std::size_t code_dim = 0;   // d
  std::size_t block_size = 0; // B
  double lower_bound = 0.0;   // sqrt((D-1)/(3d)) * sqrt(n)
  bool meaningful = false;    // lower_bound >= D
  bool applicable = false;    // 3d <= D-1
  std::uint64_t perfect_width = 0;
  std::optional<std::uint64_t> approx_width; // absent when B < 3
  std::uint64_t perfect_size = 0;            // (ceil(n/B)+B) + B*D + D
  std::uint64_t counting_lhs = 0;            // 3*(N + d*N^2) with N = perfect_size
  std::uint64_t counting_rhs = 0;            // n*(D-1)
  bool counting_holds = false;
};

/// sqrt((D-1)/(3d)) * sqrt(n); 0 when n = 0 or D <= 1.
double decoder_size_lower_bound(std::size_t n, std::size_t dim, std::size_t code_dim);

/// Exact check of units + code_dim*units^2 > n*(D-1)/3, both sides scaled
/// by 3 to stay in integers.
bool counting_inequality_holds(std::uint64_t units, std::size_t n, std::size_t code_dim,
                               std::size_t dim);

/// Exact check of size >= sqrt((D-1)/(3d)) * sqrt(n) by comparing squares.
bool meets_size_lower_bound(std::uint64_t size, std::size_t n, std::size_t dim,
                            std::size_t code_dim);

/// max(ceil(n/B)+B, B*D); requires B >= 2.
std::uint64_t perfect_width_bound(std::size_t n, std::size_t dim, std::size_t block_size);

/// max(ceil(n/B)+B, (B-1)*D+1); requires B >= 3.
std::uint64_t approx_width_bound(std::size_t n, std::size_t dim, std::size_t block_size);

BoundsReport make_bounds_report(std::size_t n, std::size_t dim, std::size_t code_dim,
                                std::size_t block_size);

/// Aligned key=value lines.
std::string render_bounds_report(const BoundsReport& report);

} // namespace btn
