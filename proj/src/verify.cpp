#include "btn/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "btn/codec_approx.hpp"
#include "btn/codec_perfect.hpp"

namespace btn {

namespace {

BitVec draw_vector(SplitMix64& rng, std::size_t dim) {
  BitVec v(dim);
  std::uint64_t word = 0;
  for (std::size_t j = 0; j < dim; ++j) {
    if (j % 64 == 0)
      word = rng.next();
    v.set(j, (word >> (j % 64)) & 1u);
  }
  return v;
}

std::uint64_t error_bound_num(const CodecBundle& bundle) {
  // D * (1/(B*2^B) + 1/n) = D * (n + B*2^B) / (B*2^B*n)
  std::uint64_t b2b = std::uint64_t{bundle.block_size} << bundle.block_size;
  return bundle.dim * (bundle.n + b2b);
}

std::uint64_t error_bound_den(const CodecBundle& bundle) {
  std::uint64_t b2b = std::uint64_t{bundle.block_size} << bundle.block_size;
  return b2b * bundle.n;
}


void run_over_codes(std::size_t n, const std::function<void(std::size_t, std::size_t)>& chunk) {
  std::size_t workers = verify_workers(n);
  if (workers <= 1) {
    chunk(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t per = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = w * per;
    std::size_t hi = std::min(n, lo + per);
    if (lo >= hi)
      break;
    pool.emplace_back([&chunk, lo, hi] { chunk(lo, hi); });
  }
  for (std::thread& t : pool)
    t.join();
}

ErrorReport measure(const CodecBundle& bundle, const VectorSet& x, std::uint64_t bound_num,
                    std::uint64_t bound_den) {
  if (x.count() != bundle.n || x.dim() != bundle.dim)
    throw std::invalid_argument("verify: vector set does not match the bundle's n/D");
  ErrorReport report;
  report.per_vector.assign(x.count(), 0);
  CompiledNet decoder(bundle.decoder);
  std::optional<CompiledNet> encoder;
  if (bundle.encoder)
    encoder.emplace(*bundle.encoder);
  run_over_codes(x.count(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      // Decoder input: the encoder's output when present, else the
      // positional code.
      BitVec code = encoder ? encoder->eval(x[k]) : code_of(k, bundle.code_dim);
      report.per_vector[k] = hamming(x[k], decoder.eval(code));
    }
  });
  for (std::uint64_t d : report.per_vector)
    report.total += d;

  std::uint64_t num = report.total, den = x.count();
  std::uint64_t g = std::gcd(num, den);
  report.avg_num = g ? num / g : 0;
  report.avg_den = g ? den / g : 1;
  g = std::gcd(bound_num, bound_den);
  report.bound_num = g ? bound_num / g : 0;
  report.bound_den = g ? bound_den / g : 1;
  // avg <= bound by cross multiplication, exact.
  using u128 = unsigned __int128;
  report.satisfied = u128{report.avg_num} * report.bound_den <=
                     u128{report.bound_num} * report.avg_den;
  return report;
}

} // namespace

VectorSet gen_random_set(const InstanceSpec& spec) {
  if (spec.n == 0 || spec.dim == 0)
    throw std::invalid_argument("instance: n and D must be positive");
  if (spec.dist == Distribution::adversarial_pattern) {
    if (spec.pattern.dim() == 0)
      throw std::invalid_argument("instance: adversarial mode needs a pattern");
    std::vector<BitVec> vectors;
    vectors.reserve(spec.n);
    for (std::size_t k = 0; k < spec.n; ++k) {
      BitVec v(spec.dim);
      if (spec.pattern[k % spec.pattern.dim()])
        for (std::size_t j = 0; j < spec.dim; ++j)
          v.set(j, 1);
      vectors.push_back(std::move(v));
    }
    return make_vector_set(std::move(vectors));
  }

  if (spec.dim < 64 && spec.n > (std::uint64_t{1} << spec.dim))
    throw std::invalid_argument("instance: n exceeds 2^D, distinct vectors impossible");
  SplitMix64 rng{spec.seed};
  std::vector<BitVec> vectors;
  vectors.reserve(spec.n);
  std::unordered_set<std::string> seen;
  while (vectors.size() < spec.n) {
    BitVec v = draw_vector(rng, spec.dim);
    if (seen.insert(v.to_string()).second)
      vectors.push_back(std::move(v));
  }
  return make_vector_set(std::move(vectors));
}

std::string render_error_report(const ErrorReport& report) {
  std::string out;
  out.reserve(report.per_vector.size() * 12 + 64);
  for (std::size_t k = 0; k < report.per_vector.size(); ++k)
    out += "k " + std::to_string(k) + " dist " + std::to_string(report.per_vector[k]) + "\n";
  out += "avg " + std::to_string(report.avg_num) + "/" + std::to_string(report.avg_den);
  out += " bound " + std::to_string(report.bound_num) + "/" + std::to_string(report.bound_den);
  out += " ok ";
  out += report.satisfied ? '1' : '0';
  out += '\n';
  return out;
}

ErrorReport verify_perfect(const CodecBundle& bundle, const VectorSet& x) {
  return measure(bundle, x, 0, 1);
}

ErrorReport measure_error(const CodecBundle& bundle, const VectorSet& x) {
  if (bundle.mode == CodecMode::perfect)
    return measure(bundle, x, 0, 1);
  return measure(bundle, x, error_bound_num(bundle), error_bound_den(bundle));
}

OracleResult oracle_equivalence(const CodecBundle& bundle, const VectorSet& x) {
  if (bundle.mode == CodecMode::perfect)
    throw std::invalid_argument("oracle_equivalence: approximate bundles only");
  if (x.count() != bundle.n || x.dim() != bundle.dim)
    throw std::invalid_argument("verify: vector set does not match the bundle's n/D");

  PatternStats stats;
  if (bundle.mode == CodecMode::approx) {
    stats = count_patterns(x, bundle.block_size);
    if (bundle.rare_pattern && *bundle.rare_pattern != stats.rare_pattern)
      throw std::invalid_argument("oracle_equivalence: bundle's pattern c was not derived "
                                  "from this vector set");
    if (bundle.mask && *bundle.mask != stats.mask)
      throw std::invalid_argument("oracle_equivalence: bundle's mask a was not derived "
                                  "from this vector set");
  }

  // First mismatch under (k, j) order; merged as a min across workers.
  const std::size_t npos = x.count();
  std::vector<std::size_t> first_k(verify_workers(x.count()) + 1, npos);
  std::vector<std::size_t> first_j(first_k.size(), 0);
  std::atomic<std::size_t> slot{0};
  CompiledNet decoder(bundle.decoder);
  run_over_codes(x.count(), [&](std::size_t lo, std::size_t hi) {
    std::size_t s = slot.fetch_add(1);
    for (std::size_t k = lo; k < hi; ++k) {
      BitVec simulated = decoder.eval(code_of(k, bundle.code_dim));
      BitVec predicted = bundle.mode == CodecMode::approx
                             ? predict_output(x, bundle.block_size, stats, k)
                             : predict_uncorrected_output(x, bundle.block_size, k);
      if (simulated != predicted) {
        for (std::size_t j = 0; j < x.dim(); ++j)
          if (simulated[j] != predicted[j]) {
            first_k[s] = k;
            first_j[s] = j;
            break;
          }
        return; // chunks scan k in order, first hit wins
      }
    }
  });

  OracleResult result;
  for (std::size_t s = 0; s < first_k.size(); ++s)
    if (first_k[s] < (result.equivalent ? npos : result.mismatch_k)) {
      result.equivalent = false;
      result.mismatch_k = first_k[s];
      result.mismatch_j = first_j[s];
    }
  return result;
}

MonteCarloStats uncorrected_error_stats(std::size_t n, std::size_t dim, std::size_t block_size,
                                        std::size_t runs, std::uint64_t seed_base) {
  if (runs < 2)
    throw std::invalid_argument("monte carlo: needs at least 2 runs");
  std::vector<double> errors;
  errors.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    InstanceSpec spec;
    spec.n = n;
    spec.dim = dim;
    spec.seed = seed_base + r;
    VectorSet x = gen_random_set(spec);
    ErrorReport report = measure_error(build_uncorrected_decoder(x, block_size), x);
    errors.push_back(static_cast<double>(report.total) / static_cast<double>(n));
  }
  MonteCarloStats stats;
  stats.runs = runs;
  for (double e : errors)
    stats.mean += e;
  stats.mean /= static_cast<double>(runs);
  double var = 0.0;
  for (double e : errors)
    var += (e - stats.mean) * (e - stats.mean);
  var /= static_cast<double>(runs - 1);
  stats.std_error = std::sqrt(var / static_cast<double>(runs));
  return stats;
}

std::size_t verify_workers(std::size_t jobs) {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0)
    hw = 1;
  if (const char* env = std::getenv("BTN_THREADS")) {
    char* end = nullptr;
    unsigned long cap = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && cap >= 1)
      hw = std::min<std::size_t>(hw, cap);
  }
  // Fan-out only pays off past a few hundred evaluations.
  if (jobs < 256)
    return 1;
  return std::min(hw, jobs);
}

} // namespace btn
