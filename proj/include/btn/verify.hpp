#pragma once

#include <cstdint>
#include <string>

#include "btn/codec.hpp"
#include "btn/vector_set.hpp"

namespace btn {

/// splitmix64: state advances by 0x9E3779B97F4A7C15 per draw; the output is
/// the state mixed by two xor-shift-multiply rounds (0xBF58476D1CE4E5B9,
/// 0x94D049BB133111EB) and a final xor-shift. Fixed here so instance files
/// are reproducible from a seed across implementations.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

enum class Distribution { uniform_distinct, adversarial_pattern };

struct InstanceSpec {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  Distribution dist = Distribution::uniform_distinct;
  BitVec pattern; // adversarial only; its length is the block size
};

/// uniform_distinct: draws dim-bit candidates from splitmix64(seed) — bit j
/// is bit (j mod 64) of word floor(j/64), one word per next() call — and
/// rejects duplicates until n distinct vectors are collected.
/// adversarial_pattern: vector k is the constant vector of pattern[k mod B];
/// every column then shows the same block pattern, so the result usually
/// contains duplicates and admits no encoder.
VectorSet gen_random_set(const InstanceSpec& spec);

/// Per-vector Hamming distances between each source vector and its decode,
/// with the exact average and the mode's error bound as reduced rationals.
struct ErrorReport {
  std::vector<std::uint64_t> per_vector;
  std::uint64_t total = 0;
  std::uint64_t avg_num = 0, avg_den = 1;     // total/n reduced
  std::uint64_t bound_num = 0, bound_den = 1; // reduced
  bool satisfied = false;                     // avg <= bound, exact
};

/// Lines "k <k> dist <d_k>" then "avg <p>/<q> bound <p'>/<q'> ok <0|1>".
std::string render_error_report(const ErrorReport& report);

/// Distance of every vector from its round trip through the bundle
/// (encoder when present, else the positional code). Bound is 0: satisfied
/// means every vector is recovered exactly.
ErrorReport verify_perfect(const CodecBundle& bundle, const VectorSet& x);

/// Same measurement with the mode's bound: 0 for perfect bundles,
/// D*(1/(B*2^B) + 1/n) for both approximate modes.
ErrorReport measure_error(const CodecBundle& bundle, const VectorSet& x);

struct OracleResult {
  bool equivalent = true;
  std::size_t mismatch_k = 0; // first differing code index
  std::size_t mismatch_j = 0; // first differing bit within it
};

/// Bit-for-bit comparison of decoder simulation against the semantic
/// oracle, over every code index. Approximate bundles only.
OracleResult oracle_equivalence(const CodecBundle& bundle, const VectorSet& x);

struct MonteCarloStats {
  double mean = 0.0;
  double std_error = 0.0; // sample stddev / sqrt(runs)
  std::size_t runs = 0;
};

/// Average error of the uncorrected decoder over `runs` uniform instances
/// seeded seed_base, seed_base+1, ... Deterministic for a given seed base.
MonteCarloStats uncorrected_error_stats(std::size_t n, std::size_t dim, std::size_t block_size,
                                        std::size_t runs, std::uint64_t seed_base);

/// Worker count for fan-out over code indices: hardware concurrency capped
/// by the BTN_THREADS environment variable and by the job count.
std::size_t verify_workers(std::size_t jobs);

} // namespace btn
