#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "btn/bitvec.hpp"

namespace btn {

/// An ordered set of equal-length binary vectors; position in the list is
/// the vector's code index.
struct VectorSet {
  std::vector<BitVec> vectors;

  std::size_t count() const { return vectors.size(); } // n
  std::size_t dim() const { return vectors.empty() ? 0 : vectors[0].dim(); } // D

  const BitVec& operator[](std::size_t k) const { return vectors[k]; }

  bool is_distinct() const;
};

VectorSet make_vector_set(std::vector<BitVec> vectors);

/// Text format: optional '#' comment lines; one vector per line as a string
/// of '0'/'1', all lines the same length; line order defines the code index.
std::string vector_set_to_text(const VectorSet& x);

VectorSet vector_set_from_text(std::string_view text);

} // namespace btn
