#include "btn/vector_set.hpp"

#include <stdexcept>
#include <unordered_set>

namespace btn {

bool VectorSet::is_distinct() const {
  std::unordered_set<std::string> seen;
  for (const BitVec& v : vectors)
    if (!seen.insert(v.to_string()).second)
      return false;
  return true;
}

VectorSet make_vector_set(std::vector<BitVec> vectors) {
  if (vectors.empty())
    throw std::invalid_argument("vector set: needs at least one vector");
  const std::size_t dim = vectors[0].dim();
  if (dim == 0)
    throw std::invalid_argument("vector set: zero-dimensional vectors");
  for (const BitVec& v : vectors)
    if (v.dim() != dim)
      throw std::invalid_argument("vector set: mixed dimensions (" + std::to_string(v.dim()) +
                                  " vs " + std::to_string(dim) + ")");
  return VectorSet{std::move(vectors)};
}

std::string vector_set_to_text(const VectorSet& x) {
  std::string out;
  out.reserve(x.count() * (x.dim() + 1));
  for (const BitVec& v : x.vectors) {
    out += v.to_string();
    out += '\n';
  }
  return out;
}

VectorSet vector_set_from_text(std::string_view text) {
  std::vector<BitVec> vectors;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#')
      continue;
    BitVec v;
    try {
      v = BitVec::from_string(line);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("vector set: line " + std::to_string(line_no) +
                               " is not a binary string");
    }
    if (!vectors.empty() && v.dim() != vectors[0].dim())
      throw std::runtime_error("vector set: line " + std::to_string(line_no) + " has length " +
                               std::to_string(v.dim()) + ", expected " +
                               std::to_string(vectors[0].dim()));
    vectors.push_back(std::move(v));
  }
  if (vectors.empty())
    throw std::runtime_error("vector set: no vectors found");
  return make_vector_set(std::move(vectors));
}

} // namespace btn
