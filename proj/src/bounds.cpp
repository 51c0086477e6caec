#include "btn/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace btn {

double decoder_size_lower_bound(std::size_t n, std::size_t dim, std::size_t code_dim) {
  if (code_dim == 0)
    throw std::invalid_argument("lower bound: d must be positive");
  if (n == 0 || dim <= 1)
    return 0.0;
  return std::sqrt(static_cast<double>(dim - 1) / (3.0 * static_cast<double>(code_dim))) *
         std::sqrt(static_cast<double>(n));
}

bool counting_inequality_holds(std::uint64_t units, std::size_t n, std::size_t code_dim,
                               std::size_t dim) {
  using u128 = unsigned __int128;
  u128 lhs = u128{3} * (u128{units} + u128{code_dim} * units * units);
  u128 rhs = u128{n} * (dim == 0 ? 0 : dim - 1);
  return lhs > rhs;
}

bool meets_size_lower_bound(std::uint64_t size, std::size_t n, std::size_t dim,
                            std::size_t code_dim) {
  if (code_dim == 0)
    throw std::invalid_argument("lower bound: d must be positive");
  if (n == 0 || dim <= 1)
    return true;
  // size >= sqrt((D-1)*n / (3d))  <=>  3d * size^2 >= (D-1) * n
  using u128 = unsigned __int128;
  return u128{3} * code_dim * size * size >= u128{dim - 1} * n;
}

std::uint64_t perfect_width_bound(std::size_t n, std::size_t dim, std::size_t block_size) {
  if (block_size < 2)
    throw std::invalid_argument("perfect width formula: B must be at least 2");
  std::uint64_t selector = (n + block_size - 1) / block_size + block_size;
  std::uint64_t gates = std::uint64_t{block_size} * dim;
  return std::max(selector, gates);
}

std::uint64_t approx_width_bound(std::size_t n, std::size_t dim, std::size_t block_size) {
  if (block_size < 3)
    throw std::invalid_argument("approx width formula: B must be at least 3");
  std::uint64_t selector = (n + block_size - 1) / block_size + block_size;
  std::uint64_t votes = std::uint64_t{block_size - 1} * dim + 1;
  return std::max(selector, votes);
}

BoundsReport make_bounds_report(std::size_t n, std::size_t dim, std::size_t code_dim,
                                std::size_t block_size) {
  BoundsReport r;
  r.n = n;
  r.dim = dim;
  r.code_dim = code_dim;
  r.block_size = block_size;
  r.lower_bound = decoder_size_lower_bound(n, dim, code_dim);
  r.meaningful = r.lower_bound >= static_cast<double>(dim);
  r.applicable = dim >= 1 && 3 * code_dim <= dim - 1;
  r.perfect_width = perfect_width_bound(n, dim, block_size);
  if (block_size >= 3)
    r.approx_width = approx_width_bound(n, dim, block_size);
  std::uint64_t selector = (n + block_size - 1) / block_size + block_size;
  r.perfect_size = selector + std::uint64_t{block_size} * dim + dim;
  std::uint64_t units = r.perfect_size;
  r.counting_lhs = 3 * (units + code_dim * units * units);
  r.counting_rhs = std::uint64_t{n} * (dim == 0 ? 0 : dim - 1);
  r.counting_holds = counting_inequality_holds(units, n, code_dim, dim);
  return r;
}

std::string render_bounds_report(const BoundsReport& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  rows.emplace_back("n", std::to_string(r.n));
  rows.emplace_back("D", std::to_string(r.dim));
  rows.emplace_back("d", std::to_string(r.code_dim));
  rows.emplace_back("B", std::to_string(r.block_size));
  rows.emplace_back("lower_bound", num(r.lower_bound));
  rows.emplace_back("meaningful", r.meaningful ? "1" : "0");
  rows.emplace_back("applicable", r.applicable ? "1" : "0");
  rows.emplace_back("perfect_width", std::to_string(r.perfect_width));
  if (r.approx_width)
    rows.emplace_back("approx_width", std::to_string(*r.approx_width));
  rows.emplace_back("perfect_size", std::to_string(r.perfect_size));
  rows.emplace_back("counting_lhs", std::to_string(r.counting_lhs));
  rows.emplace_back("counting_rhs", std::to_string(r.counting_rhs));
  rows.emplace_back("counting_holds", r.counting_holds ? "1" : "0");

  std::size_t key_width = 0;
  for (const auto& [key, value] : rows)
    key_width = std::max(key_width, key.size());
  std::string out;
  for (const auto& [key, value] : rows) {
    out += key;
    out.append(key_width - key.size(), ' ');
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

} // namespace btn
