#pragma once

#include <cstdint>
#include <map>

#include "btn/codec.hpp"
#include "btn/vector_set.hpp"

namespace btn {

/// Block-pattern census: counts[p] is the number of (bit position, block)
/// pairs whose length-B column pattern equals p, c the least frequent
/// pattern (lexicographically smallest on ties, absent patterns count 0),
/// and a the correction mask derived from c.
struct PatternStats {
  std::size_t block_size = 0;
  std::map<std::uint64_t, std::uint64_t> counts; // only patterns that occur
  BitVec rare_pattern; // c
  BitVec mask;         // a: a_0 = c_0, a_h = 1 xor c_h for h >= 1

  std::uint64_t count_of(std::uint64_t pattern) const {
    auto it = counts.find(pattern);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Column pattern of block i at bit position j: bits x[B*i+m][j] for
/// m = 0..B-1, with 0 for the missing slots of a final partial block.
BitVec block_pattern(const VectorSet& x, std::size_t block_size, std::size_t j, std::size_t i);

PatternStats count_patterns(const VectorSet& x, std::size_t block_size);

/// Bitwise XOR of pattern with mask; involutive.
BitVec apply_mask(const BitVec& mask, const BitVec& pattern);

/// Data weight for vote h: the value of pattern_value's bits with bit h+1
/// moved to the front, bits 0..h shifted right by one, and bits h+2 onward
/// unchanged. h ranges over 0..B-2, pattern_value over [0, 2^B).
std::uint64_t permuted_weight(std::size_t h, std::uint64_t pattern_value,
                              std::size_t block_size);

/// Corrected approximate decoder. Hidden layers after the block
/// selectors: (B-1)*D vote units plus the mask-hit unit, D consensus units
/// plus its relay, a 2*D XOR pair layer, then the D-unit output layer.
/// Average Hamming error over the set is at most D*(1/(B*2^B) + 1/n).
CodecBundle build_approx_decoder(const VectorSet& x, std::size_t block_size);

/// build_approx_decoder specialized to B = 3; requires n >= 3.
CodecBundle build_approx_decoder_b3(const VectorSet& x);

/// Approximate decoder without the mask transform and XOR correction:
/// selector layers, (B-1)*D vote units, then the consensus layer as output.
CodecBundle build_uncorrected_decoder(const VectorSet& x, std::size_t block_size);

/// Semantic oracle for the corrected decoder: x[k] with bit j flipped
/// exactly when k is a multiple of B and block_pattern(x, B, j, k/B)
/// equals stats.rare_pattern.
BitVec predict_output(const VectorSet& x, std::size_t block_size, const PatternStats& stats,
                      std::size_t k);

/// Oracle for the uncorrected decoder: bit j of x[k] is forced to 1 when k
/// is a multiple of B and the block pattern is 011...1.
BitVec predict_uncorrected_output(const VectorSet& x, std::size_t block_size, std::size_t k);

} // namespace btn
