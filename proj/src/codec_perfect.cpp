#include "btn/codec_perfect.hpp"

#include <stdexcept>
#include <string>

namespace btn {

namespace {

constexpr std::size_t kMaxBlockSize = 32; // weight magnitudes stay below 2^32

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t log2_exact(std::size_t v) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < v)
    ++k;
  return k;
}

// Recognizer over a bit slice [first, first+count) of a dim-bit input; zero
// weight elsewhere. Fires iff the slice encodes value. count = 0 gives an
// always-firing unit.
ThresholdUnit make_slice_recognizer(std::size_t dim, std::size_t first, std::size_t count,
                                    std::uint64_t value) {
  ThresholdUnit u;
  u.weights.assign(dim, 0);
  u.theta = 0;
  for (std::size_t i = 0; i < count; ++i) {
    bool bit = (value >> (count - 1 - i)) & 1u;
    u.weights[first + i] = bit ? 1 : -1;
    u.theta += bit;
  }
  return u;
}

// [Int(input) >= bound] when ge, else [Int(input) <= bound].
ThresholdUnit make_int_compare(std::size_t dim, std::uint64_t bound, bool ge) {
  ThresholdUnit u;
  u.weights.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::int64_t w = std::int64_t{1} << (dim - 1 - i);
    u.weights[i] = ge ? w : -w;
  }
  u.theta = ge ? static_cast<std::int64_t>(bound) : -static_cast<std::int64_t>(bound);
  return u;
}

void check_block_size(std::size_t n, std::size_t block_size) {
  if (block_size < 2)
    throw std::invalid_argument("block size B must be at least 2");
  if (block_size > kMaxBlockSize)
    throw std::invalid_argument("block size B=" + std::to_string(block_size) +
                                " exceeds the capacity limit " + std::to_string(kMaxBlockSize));
  // n = 1 degenerates to a single block regardless of B.
  if (n > 1 && block_size > n)
    throw std::invalid_argument("block size B=" + std::to_string(block_size) +
                                " exceeds the vector count n=" + std::to_string(n));
}

} // namespace

std::size_t code_dim(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("code_dim: n must be positive");
  std::size_t d = 0;
  while ((std::size_t{1} << d) < n)
    ++d;
  return d == 0 ? 1 : d;
}

BitVec code_of(std::size_t k, std::size_t dim) { return BitVec::from_int(k, dim); }

std::vector<BitVec> assign_codes(const VectorSet& x) {
  if (!x.is_distinct())
    throw std::invalid_argument("assign_codes: vectors are not pairwise distinct");
  const std::size_t d = code_dim(x.count());
  std::vector<BitVec> codes;
  codes.reserve(x.count());
  for (std::size_t k = 0; k < x.count(); ++k)
    codes.push_back(code_of(k, d));
  return codes;
}

LayeredNet build_encoder(const VectorSet& x, const std::vector<BitVec>& codes) {
  if (codes.size() != x.count())
    throw std::invalid_argument("build_encoder: one code per vector required");
  const std::size_t n = x.count();
  const std::size_t d = codes[0].dim();

  Layer recognizers;
  recognizers.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    recognizers.push_back(make_vector_recognizer(x[k]));

  // Code bit j collects the recognizers whose code has bit j set.
  Layer code_bits(d);
  for (std::size_t j = 0; j < d; ++j) {
    code_bits[j].weights.assign(n, 0);
    code_bits[j].theta = 1;
    for (std::size_t k = 0; k < n; ++k)
      if (codes[k][j])
        code_bits[j].weights[k] = 1;
  }

  LayeredNet net;
  net.input_dim = x.dim();
  net.layers.push_back(std::move(recognizers));
  net.layers.push_back(std::move(code_bits));
  return net;
}

std::vector<Layer> build_block_selectors(std::size_t n, std::size_t block_size,
                                         std::size_t code_dim) {
  if (block_size < 2 || block_size > n)
    throw std::invalid_argument("block selectors: B must satisfy 1 < B <= n");
  if (code_dim != btn::code_dim(n))
    throw std::invalid_argument("block selectors: d must equal ceil(log2 n)");
  const std::size_t num_blocks = (n + block_size - 1) / block_size;

  if (is_power_of_two(block_size)) {
    // Top d-K bits hold the block index, bottom K bits the residue.
    const std::size_t k_bits = log2_exact(block_size);
    Layer selectors;
    selectors.reserve(num_blocks + block_size);
    for (std::size_t i = 0; i < num_blocks; ++i)
      selectors.push_back(make_slice_recognizer(code_dim, 0, code_dim - k_bits, i));
    for (std::size_t h = 0; h < block_size; ++h)
      selectors.push_back(make_slice_recognizer(code_dim, code_dim - k_bits, k_bits, h));
    return {std::move(selectors)};
  }

  // General B: each selector is a union of intervals of the input's integer
  // value. An interval becomes a (>= lo, <= hi) unit pair; a node with t
  // intervals fires iff at least t+1 of its 2t pair units fire.
  Layer pairs;
  Layer selectors;
  auto add_node = [&](const std::vector<std::pair<std::uint64_t, std::uint64_t>>& intervals) {
    ThresholdUnit node; // weights resized once the pair layer is complete
    std::vector<std::size_t> own;
    for (auto [lo, hi] : intervals) {
      own.push_back(pairs.size());
      pairs.push_back(make_int_compare(code_dim, lo, true));
      own.push_back(pairs.size());
      pairs.push_back(make_int_compare(code_dim, hi, false));
    }
    node.theta = static_cast<std::int64_t>(intervals.size()) + 1;
    selectors.push_back(std::move(node));
    return own;
  };

  std::vector<std::vector<std::size_t>> wiring;
  for (std::size_t i = 0; i < num_blocks; ++i)
    wiring.push_back(add_node({{i * block_size, i * block_size + block_size - 1}}));
  for (std::size_t h = 0; h < block_size; ++h) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> singletons;
    for (std::size_t m = h; m < n; m += block_size)
      singletons.push_back({m, m});
    wiring.push_back(add_node(singletons));
  }
  for (std::size_t s = 0; s < selectors.size(); ++s) {
    selectors[s].weights.assign(pairs.size(), 0);
    for (std::size_t p : wiring[s])
      selectors[s].weights[p] = 1;
  }
  return {std::move(pairs), std::move(selectors)};
}

CodecBundle build_perfect_decoder(const VectorSet& x, std::size_t block_size) {
  const std::size_t n = x.count();
  const std::size_t dim = x.dim();
  check_block_size(n, block_size);
  const std::size_t d = code_dim(n);

  LayeredNet decoder;
  decoder.input_dim = d;

  std::size_t selector_count = 0;
  if (n == 1) {
    // Degenerate single-vector set: one always-firing block node plus one
    // residue-0 recognizer over the single code bit.
    Layer selectors;
    selectors.push_back(make_slice_recognizer(d, 0, 0, 0));
    selectors.push_back(make_slice_recognizer(d, 0, d, 0));
    selector_count = 2;
    decoder.layers.push_back(std::move(selectors));
  } else {
    for (Layer& layer : build_block_selectors(n, block_size, d))
      decoder.layers.push_back(std::move(layer));
    selector_count = decoder.layers.back().size();
  }
  const std::size_t num_blocks = n == 1 ? 1 : (n + block_size - 1) / block_size;
  const std::size_t residues = n == 1 ? 1 : block_size;

  // Residue gate y_{j,b}: data weight x[B*i+b]_j on block node i, indicator
  // weight on residue node b, theta 2. Fires iff the input index k has
  // residue b and bit j of vector k is 1. Missing slots of the last block
  // keep zero weight.
  Layer gates;
  gates.reserve(dim * residues);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t b = 0; b < residues; ++b) {
      ThresholdUnit u;
      u.weights.assign(selector_count, 0);
      u.theta = 2;
      for (std::size_t i = 0; i < num_blocks; ++i) {
        std::size_t k = i * block_size + b;
        if (k < n && x[k][j])
          u.weights[i] = 1;
      }
      u.weights[num_blocks + b] = 1;
      gates.push_back(std::move(u));
    }
  }
  decoder.layers.push_back(std::move(gates));

  Layer outputs(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    outputs[j].weights.assign(dim * residues, 0);
    outputs[j].theta = 1;
    for (std::size_t b = 0; b < residues; ++b)
      outputs[j].weights[j * residues + b] = 1;
  }
  decoder.layers.push_back(std::move(outputs));

  CodecBundle bundle;
  bundle.mode = CodecMode::perfect;
  bundle.n = n;
  bundle.dim = dim;
  bundle.code_dim = d;
  bundle.block_size = block_size;
  bundle.decoder = std::move(decoder);
  if (x.is_distinct())
    bundle.encoder = build_encoder(x, assign_codes(x));
  return bundle;
}

std::size_t optimal_block_size(std::size_t n, std::size_t dim) {
  if (dim == 0)
    throw std::invalid_argument("optimal block size: D must be positive");
  if (n <= dim)
    throw std::invalid_argument("optimal block size: requires n > D");
  // Smallest B with B*B*D >= n, i.e. ceil(sqrt(n/D)).
  std::size_t b = 1;
  while (b * b * dim < n)
    ++b;
  return b < 2 ? 2 : b;
}

} // namespace btn
