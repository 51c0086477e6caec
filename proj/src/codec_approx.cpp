#include "btn/codec_approx.hpp"

#include <stdexcept>
#include <string>

#include "btn/codec_perfect.hpp"

namespace btn {

namespace {

void check_approx_block_size(std::size_t n, std::size_t block_size) {
  if (block_size < 3)
    throw std::invalid_argument("approximate decoder: B must be at least 3");
  if (block_size > 32)
    throw std::invalid_argument("approximate decoder: B=" + std::to_string(block_size) +
                                " exceeds the capacity limit 32");
  if (block_size > n)
    throw std::invalid_argument("approximate decoder: B=" + std::to_string(block_size) +
                                " exceeds the vector count n=" + std::to_string(n));
}

std::uint64_t pattern_value(const VectorSet& x, std::size_t block_size, std::size_t j,
                            std::size_t i) {
  std::uint64_t v = 0;
  for (std::size_t m = 0; m < block_size; ++m) {
    std::size_t k = i * block_size + m;
    v = (v << 1) | (k < x.count() ? x[k][j] : 0);
  }
  return v;
}

// Shared decoder front: selector layers plus the vote layer. A non-null
// mask transforms the data weights and appends the unit that fires on
// residues with a set mask bit (the first half of the XOR correction).
LayeredNet build_vote_layers(const VectorSet& x, std::size_t block_size, const BitVec* mask) {
  const std::size_t n = x.count();
  const std::size_t dim = x.dim();
  const std::size_t d = code_dim(n);
  const std::size_t num_blocks = (n + block_size - 1) / block_size;
  const std::size_t votes = block_size - 1;

  LayeredNet net;
  net.input_dim = d;
  for (Layer& layer : build_block_selectors(n, block_size, d))
    net.layers.push_back(std::move(layer));
  const std::size_t selector_count = net.layers.back().size();

  const std::int64_t quarter = std::int64_t{1} << (block_size - 2); // 2^B / 4
  const std::int64_t half = std::int64_t{1} << (block_size - 1);    // 2^B / 2

  // Vote unit (j, h): permuted pattern value on the block node, penalty
  // -2^B/4 on residue 0 and -2^B/2 on residue h+1, theta 0.
  const std::uint64_t mask_value = mask ? mask->int_value() : 0;
  Layer votes_layer;
  votes_layer.reserve(dim * votes + (mask ? 1 : 0));
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t h = 0; h < votes; ++h) {
      ThresholdUnit u;
      u.weights.assign(selector_count, 0);
      u.theta = 0;
      for (std::size_t i = 0; i < num_blocks; ++i) {
        std::uint64_t p = pattern_value(x, block_size, j, i) ^ mask_value;
        u.weights[i] = static_cast<std::int64_t>(permuted_weight(h, p, block_size));
      }
      u.weights[num_blocks + 0] = -quarter;
      u.weights[num_blocks + h + 1] = -half;
      votes_layer.push_back(std::move(u));
    }
  }
  if (mask) {
    ThresholdUnit hit;
    hit.weights.assign(selector_count, 0);
    hit.theta = 1;
    for (std::size_t h = 0; h < block_size; ++h)
      hit.weights[num_blocks + h] = (*mask)[h];
    votes_layer.push_back(std::move(hit));
  }
  net.layers.push_back(std::move(votes_layer));
  return net;
}

// Consensus unit j: fires iff all B-1 votes for bit j fire.
Layer build_consensus_layer(std::size_t dim, std::size_t votes, std::size_t prev_width) {
  Layer layer(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    layer[j].weights.assign(prev_width, 0);
    layer[j].theta = static_cast<std::int64_t>(votes);
    for (std::size_t h = 0; h < votes; ++h)
      layer[j].weights[j * votes + h] = 1;
  }
  return layer;
}

} // namespace

BitVec block_pattern(const VectorSet& x, std::size_t block_size, std::size_t j, std::size_t i) {
  if (j >= x.dim())
    throw std::invalid_argument("block_pattern: bit position out of range");
  if (i * block_size >= x.count())
    throw std::invalid_argument("block_pattern: block index out of range");
  return BitVec::from_int(pattern_value(x, block_size, j, i), block_size);
}

PatternStats count_patterns(const VectorSet& x, std::size_t block_size) {
  if (block_size < 2 || block_size > 32)
    throw std::invalid_argument("count_patterns: B must be in [2, 32]");
  PatternStats stats;
  stats.block_size = block_size;
  const std::size_t num_blocks = (x.count() + block_size - 1) / block_size;
  for (std::size_t j = 0; j < x.dim(); ++j)
    for (std::size_t i = 0; i < num_blocks; ++i)
      ++stats.counts[pattern_value(x, block_size, j, i)];

  // Least frequent pattern, lexicographically smallest on ties. Patterns
  // outside the map have count zero; the smallest such value is the first
  // gap in the (sorted) key sequence.
  const std::uint64_t universe = std::uint64_t{1} << block_size;
  std::uint64_t c_value = 0;
  if (stats.counts.size() < universe) {
    std::uint64_t expected = 0;
    for (const auto& [pattern, count] : stats.counts) {
      if (pattern != expected)
        break;
      ++expected;
    }
    c_value = expected;
  } else {
    std::uint64_t best_count = std::uint64_t(-1);
    for (const auto& [pattern, count] : stats.counts)
      if (count < best_count) {
        best_count = count;
        c_value = pattern;
      }
  }
  stats.rare_pattern = BitVec::from_int(c_value, block_size);
  stats.mask = BitVec(block_size);
  stats.mask.set(0, stats.rare_pattern[0]);
  for (std::size_t h = 1; h < block_size; ++h)
    stats.mask.set(h, 1 ^ stats.rare_pattern[h]);
  return stats;
}

BitVec apply_mask(const BitVec& mask, const BitVec& pattern) { return mask ^ pattern; }

std::uint64_t permuted_weight(std::size_t h, std::uint64_t pattern_value,
                              std::size_t block_size) {
  if (block_size < 2 || block_size > 32)
    throw std::invalid_argument("permuted_weight: B must be in [2, 32]");
  if (h + 2 > block_size)
    throw std::invalid_argument("permuted_weight: h must be in [0, B-2]");
  if (pattern_value >> block_size)
    throw std::invalid_argument("permuted_weight: pattern value out of range");
  // Bit m (MSB first) sits at shift B-1-m. Keep bits h+2.., move bit h+1 to
  // the front, shift bits 0..h right by one.
  const std::uint64_t low_mask = (std::uint64_t{1} << (block_size - h - 2)) - 1;
  std::uint64_t low = pattern_value & low_mask;
  std::uint64_t front = (pattern_value >> (block_size - h - 2)) & 1u;
  std::uint64_t top = pattern_value >> (block_size - h - 1); // bits 0..h
  return (front << (block_size - 1)) | (top << (block_size - h - 2)) | low;
}

CodecBundle build_approx_decoder(const VectorSet& x, std::size_t block_size) {
  const std::size_t n = x.count();
  const std::size_t dim = x.dim();
  check_approx_block_size(n, block_size);
  const std::size_t votes = block_size - 1;

  PatternStats stats = count_patterns(x, block_size);
  LayeredNet decoder = build_vote_layers(x, block_size, &stats.mask);
  const std::size_t vote_width = dim * votes + 1;

  // Consensus layer plus the relay that carries the mask hit forward.
  Layer consensus = build_consensus_layer(dim, votes, vote_width);
  {
    ThresholdUnit relay;
    relay.weights.assign(vote_width, 0);
    relay.weights[vote_width - 1] = 1;
    relay.theta = 1;
    consensus.push_back(std::move(relay));
  }
  decoder.layers.push_back(std::move(consensus));

  // XOR pair layer: for each j, [z_j - hit >= 1] and [-z_j + hit >= 1].
  Layer xor_pairs(2 * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    xor_pairs[2 * j].weights.assign(dim + 1, 0);
    xor_pairs[2 * j].weights[j] = 1;
    xor_pairs[2 * j].weights[dim] = -1;
    xor_pairs[2 * j].theta = 1;
    xor_pairs[2 * j + 1].weights.assign(dim + 1, 0);
    xor_pairs[2 * j + 1].weights[j] = -1;
    xor_pairs[2 * j + 1].weights[dim] = 1;
    xor_pairs[2 * j + 1].theta = 1;
  }
  decoder.layers.push_back(std::move(xor_pairs));

  Layer outputs(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    outputs[j].weights.assign(2 * dim, 0);
    outputs[j].weights[2 * j] = 1;
    outputs[j].weights[2 * j + 1] = 1;
    outputs[j].theta = 1;
  }
  decoder.layers.push_back(std::move(outputs));

  CodecBundle bundle;
  bundle.mode = CodecMode::approx;
  bundle.n = n;
  bundle.dim = dim;
  bundle.code_dim = code_dim(n);
  bundle.block_size = block_size;
  bundle.decoder = std::move(decoder);
  bundle.rare_pattern = stats.rare_pattern;
  bundle.mask = stats.mask;
  if (x.is_distinct())
    bundle.encoder = build_encoder(x, assign_codes(x));
  return bundle;
}

CodecBundle build_approx_decoder_b3(const VectorSet& x) {
  if (x.count() < 3)
    throw std::invalid_argument("approximate decoder: B=3 requires n >= 3");
  return build_approx_decoder(x, 3);
}

CodecBundle build_uncorrected_decoder(const VectorSet& x, std::size_t block_size) {
  const std::size_t n = x.count();
  const std::size_t dim = x.dim();
  check_approx_block_size(n, block_size);
  const std::size_t votes = block_size - 1;

  LayeredNet decoder = build_vote_layers(x, block_size, nullptr);
  decoder.layers.push_back(build_consensus_layer(dim, votes, dim * votes));

  CodecBundle bundle;
  bundle.mode = CodecMode::approx_uncorrected;
  bundle.n = n;
  bundle.dim = dim;
  bundle.code_dim = code_dim(n);
  bundle.block_size = block_size;
  bundle.decoder = std::move(decoder);
  if (x.is_distinct())
    bundle.encoder = build_encoder(x, assign_codes(x));
  return bundle;
}

BitVec predict_output(const VectorSet& x, std::size_t block_size, const PatternStats& stats,
                      std::size_t k) {
  if (k >= x.count())
    throw std::invalid_argument("predict_output: index out of range");
  BitVec out = x[k];
  if (k % block_size != 0)
    return out;
  const std::uint64_t rare = stats.rare_pattern.int_value();
  const std::size_t i = k / block_size;
  for (std::size_t j = 0; j < x.dim(); ++j)
    if (pattern_value(x, block_size, j, i) == rare)
      out.set(j, 1 ^ out[j]);
  return out;
}

BitVec predict_uncorrected_output(const VectorSet& x, std::size_t block_size, std::size_t k) {
  if (k >= x.count())
    throw std::invalid_argument("predict_output: index out of range");
  BitVec out = x[k];
  if (k % block_size != 0)
    return out;
  const std::uint64_t error_prone = (std::uint64_t{1} << (block_size - 1)) - 1; // 011...1
  const std::size_t i = k / block_size;
  for (std::size_t j = 0; j < x.dim(); ++j)
    if (pattern_value(x, block_size, j, i) == error_prone)
      out.set(j, 1);
  return out;
}

} // namespace btn
