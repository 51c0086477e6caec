#pragma once

#include <vector>

#include "btn/codec.hpp"
#include "btn/net.hpp"
#include "btn/vector_set.hpp"

namespace btn {

/// Code width d = ceil(log2 n); 1 for n = 1.
std::size_t code_dim(std::size_t n);

/// Binary code of index k over dim bits, most significant bit first.
BitVec code_of(std::size_t k, std::size_t dim);

/// Positional code assignment: vector k maps to code_of(k, code_dim(n)).
/// Throws on duplicate vectors (no injective encoder exists).
std::vector<BitVec> assign_codes(const VectorSet& x);

/// Two-layer encoder, architecture D / n / d: one recognizer per vector,
/// then one OR unit per code bit. encoder(x[k]) = codes[k]; the output on
/// vectors outside the set is unspecified.
LayeredNet build_encoder(const VectorSet& x, const std::vector<BitVec>& codes);

/// Selector layers: on a d-bit input encoding k < n, exactly two of the
/// final ceil(n/B)+B nodes fire, the block node floor(k/B) and the residue
/// node ceil(n/B) + (k mod B). One layer of single-unit recognizers when B
/// is a power of two; otherwise two layers of interval tests on the input's
/// integer value.
std::vector<Layer> build_block_selectors(std::size_t n, std::size_t block_size,
                                         std::size_t code_dim);

/// Perfect decoder: selector layers, then B*D residue gates (theta = 2),
/// then a D-unit OR output layer. decode(code_of(k)) = x[k] for every k.
CodecBundle build_perfect_decoder(const VectorSet& x, std::size_t block_size);

/// B = ceil(sqrt(n/D)), clamped to at least 2; requires n > D.
std::size_t optimal_block_size(std::size_t n, std::size_t dim);

} // namespace btn
